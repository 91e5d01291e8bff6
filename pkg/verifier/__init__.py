"""
DimDatum - Verifier Package

Settings, verification suites, reports and the command-line entry point.
"""

from .config import Settings, get_settings
from .main import build_parser, main
from .report import CheckRecord, Report
from .suites import (
    averaged_character_document,
    run_affine,
    run_compare,
    run_identities,
    run_spectrum,
    run_theorem,
)

__all__ = [
    # Config
    "Settings",
    "get_settings",
    # Reports
    "CheckRecord",
    "Report",
    # Suites
    "run_identities",
    "run_theorem",
    "run_spectrum",
    "run_compare",
    "run_affine",
    "averaged_character_document",
    # Entry point
    "build_parser",
    "main",
]
