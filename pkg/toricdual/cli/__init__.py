"""Command-line front end."""

from .parameters import Backend, LogLevel, RuntimeParameters, read_config
from .report import ReportEnvelope
