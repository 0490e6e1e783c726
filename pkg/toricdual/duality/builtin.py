"""
Built-in coupling pairs and reading/writing pair descriptions.

The table of coupling pairs is stored as package data in
``toricdual/duality/yaml_files/coupling_pairs.yaml``; ``TORICDUAL_DATA`` or an
explicit path replaces it with another file in the same layout.
"""

import json
import os
from functools import lru_cache
from typing import Dict, List, Optional, Union

from loguru import logger as log
from pydantic import ValidationError

from toricdual.utils.exceptions import ParseError, ToricDualError
from toricdual.utils.io import read_json

from .parameters import CouplingPair, PolytopeSpec


def _load_table(
    data_path: Optional[str] = None, version_select: str = "latest"
) -> List[Dict]:
    import yaml

    if data_path is None:
        data_path = os.environ.get("TORICDUAL_DATA")
    if data_path is None:
        from importlib import resources

        from toricdual.duality import yaml_files

        data_path = resources.files(yaml_files) / "coupling_pairs.yaml"

    log.debug(f"Loading coupling pairs from {data_path}")
    try:
        with open(data_path, "r") as file:
            data = yaml.safe_load(file)
    except yaml.YAMLError as e:
        raise ParseError(f"{data_path}: invalid YAML: {e}") from e
    except OSError as e:
        raise ParseError(f"{data_path}: cannot be read ({e.strerror})") from e

    if not isinstance(data, dict) or data.get("dataset_name") != "coupling_pairs":
        raise ParseError(f"{data_path} does not describe the table of coupling pairs")

    if version_select == "latest":
        version_select = data["latest"]
        log.debug(f"Latest version: {version_select}")
    if version_select not in data:
        raise ParseError(f"{data_path} has no version {version_select!r}")

    log.debug(f"Dataset: {version_select} version: {data[version_select]['version']}")
    return data[version_select]["pairs"]


def _validate(entry: Dict, source: str, model=CouplingPair):
    try:
        return model.model_validate(entry)
    except ValidationError as e:
        for error in e.errors():
            # errors raised inside our own validators keep their type
            cause = error.get("ctx", {}).get("error")
            if isinstance(cause, ToricDualError):
                raise cause from e
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(
            f"{source}: {location}: {first['msg']}", location=location
        ) from e


@lru_cache(maxsize=4)
def _cached_pairs(data_path: Optional[str], version_select: str) -> tuple:
    entries = _load_table(data_path, version_select)
    pairs = tuple(
        _validate(entry, f"entry {entry.get('id', k)}")
        for k, entry in enumerate(entries)
    )
    log.info(f"Loaded {len(pairs)} coupling pairs")
    return pairs


def builtin_pairs(
    data_path: Optional[str] = None, version_select: str = "latest"
) -> List[CouplingPair]:
    """
    Every built-in coupling pair, one per row and case.

    Parameters
    ----------
    data_path : str, optional
        Alternative data file; defaults to ``TORICDUAL_DATA`` or the package data.
    version_select : str, default="latest"
        Version key inside the data file.
    """
    if data_path is None:
        data_path = os.environ.get("TORICDUAL_DATA")
    return list(_cached_pairs(data_path, version_select))


def select_builtin(
    key: Union[str, int], data_path: Optional[str] = None
) -> List[CouplingPair]:
    """
    Pairs matching ``key``: an exact id such as ``"19:2"`` or a row number
    such as ``"15"``, which selects every case of the row containing it.
    """
    key = str(key).strip()
    pairs = builtin_pairs(data_path)
    exact = [p for p in pairs if p.id == key]
    if exact:
        return exact
    if key.isdigit():
        selected = [p for p in pairs if int(key) in p.numbers]
        if selected:
            return selected
    raise KeyError(f"No built-in coupling pair matches {key!r}")


def get_builtin(
    key: Union[str, int], data_path: Optional[str] = None
) -> CouplingPair:
    """The first pair matching ``key``; see ``select_builtin``."""
    return select_builtin(key, data_path)[0]


def load_pair(path: Union[str, os.PathLike]) -> CouplingPair:
    """Read a coupling pair from a JSON file."""
    return _validate(read_json(path), str(path))


def load_polytope(path: Union[str, os.PathLike]) -> PolytopeSpec:
    """Read one polytope, given by weights and monomials or by vertices."""
    return _validate(read_json(path), str(path), PolytopeSpec)


def dump_pair(
    pair: CouplingPair, path: Optional[Union[str, os.PathLike]] = None
) -> str:
    """Serialize ``pair`` as JSON, writing it to ``path`` when given."""
    text = json.dumps(pair.model_dump(mode="json"), indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w") as file:
            file.write(text + "\n")
    return text
