"""
deficit-lab utilities package.

Contains:
- conversion: [re, im] encoding and state/measurement document parsing
- formatting: Table and JSON rendering of command results
"""

from .conversion import (
    basis_to_document,
    complex_to_pair,
    load_measurement_file,
    load_state_file,
    measurement_to_document,
    pair_to_complex,
    parse_measurement_document,
    parse_state_document,
    state_to_document,
)
from .formatting import format_number, render_report, render_table, to_json

__all__ = [
    "complex_to_pair",
    "pair_to_complex",
    "state_to_document",
    "measurement_to_document",
    "basis_to_document",
    "parse_state_document",
    "parse_measurement_document",
    "load_state_file",
    "load_measurement_file",
    "format_number",
    "render_table",
    "render_report",
    "to_json",
]
