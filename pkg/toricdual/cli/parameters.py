"""
Runtime parameters of the command-line tool and the TOML reader that fills them.
"""

import os
from typing import Optional

from loguru import logger as log
from pydantic import field_validator

from toricdual.duality.parameters import CaseInsensitiveEnum, ParametersBase


class Backend(CaseInsensitiveEnum):
    serial = "serial"
    ray = "ray"


class LogLevel(CaseInsensitiveEnum):
    TRACE = "TRACE"
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


class RuntimeParameters(ParametersBase):
    """
    A class to hold the runtime parameters that inherits from the pydantic BaseModel

    args:
        search_bound (int): Coefficient box for the isotropic vector search
        max_support (int): Largest number of nonzero coefficients tried
        backend (Backend): "serial" or "ray" for checking several pairs
        number_of_workers (int): Concurrent tasks for the ray backend
        log_level (LogLevel): Level of the stderr log sink
        data_path (str, None): Replacement for the built-in table of pairs
        require_reflexive (bool): Treat non-reflexive input as an error
    """

    search_bound: int = 5
    max_support: int = 4
    backend: Backend = Backend.serial
    number_of_workers: int = 1
    log_level: LogLevel = LogLevel.WARNING
    data_path: Optional[str] = None
    require_reflexive: bool = False

    @field_validator("search_bound", "max_support", "number_of_workers")
    @classmethod
    def must_be_positive(cls, v, info) -> int:
        if v < 1:
            raise ValueError(f"{info.field_name} must be positive and greater than 0")
        return v


def read_config(config_path: Optional[str] = None, **overrides) -> RuntimeParameters:
    """
    Reads the ``[runtime]`` section of a TOML file into RuntimeParameters.

    Parameters
    ----------
    config_path : str, optional
        Path to the TOML configuration. Defaults are used when omitted.
    **overrides
        Values taking precedence over the file, typically command-line flags.
        Entries that are None are ignored.

    Returns
    -------
    RuntimeParameters
    """
    import toml

    runtime_config_dict = {}
    if config_path is not None:
        log.info(f"Reading config from : {config_path}")
        runtime_config_dict = toml.load(config_path).get("runtime", {})

    if runtime_config_dict.get("data_path") is None and os.environ.get(
        "TORICDUAL_DATA"
    ):
        runtime_config_dict["data_path"] = os.environ["TORICDUAL_DATA"]

    for key, value in overrides.items():
        if value is not None:
            runtime_config_dict[key] = value

    return RuntimeParameters(**runtime_config_dict)
