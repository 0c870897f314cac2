"""
Report rendering: aligned text tables and JSON documents.

Tables print numbers with a fixed number of significant digits; JSON keeps
full precision.
"""

import json
from typing import Any, Dict, List, Sequence

import numpy as np

from .conversion import complex_to_pair


def format_number(value: Any, digits: int = 6) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{digits}g}"
    return str(value)


def render_table(headers: Sequence[str], rows: Sequence[Sequence[Any]], digits: int = 6) -> str:
    """Left-aligned text columns separated by two spaces, with a rule under the header."""
    cells = [[format_number(v, digits) for v in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def line(values: Sequence[str]) -> str:
        return "  ".join(v.ljust(w) for v, w in zip(values, widths)).rstrip()

    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(row) for row in cells)
    return "\n".join(out)


def render_mapping(title: str, mapping: Dict[str, Any], digits: int = 6) -> str:
    return f"{title}\n" + render_table(["quantity", "value"], list(mapping.items()), digits)


def render_report(report: Dict[str, Any], digits: int = 6) -> str:
    """Text form of a ScenarioReport dictionary."""
    status = "PASS" if report["overall"] else "FAIL"
    parts = [f"== {report['name']} [{status}] =="]
    if report["quantities"]:
        parts.append(render_table(["quantity", "value"], list(report["quantities"].items()), digits))
    if report["checks"]:
        rows = [
            [
                c["description"],
                f"{c['relation']} {format_number(c['expected'], digits)}",
                c["actual"],
                c["tolerance"],
                "PASS" if c["passed"] else "FAIL",
            ]
            for c in report["checks"]
        ]
        parts.append(render_table(["check", "expected", "actual", "tolerance", "result"], rows, digits))
    if report["comparisons"]:
        rows = [
            [c["label"], c["target"], c["achieved"], c["deviation"], c["status"]]
            for c in report["comparisons"]
        ]
        parts.append(render_table(["published value", "target", "achieved", "deviation", "status"], rows, digits))
    for note in report.get("notes", []):
        parts.append(f"note: {note}")
    return "\n\n".join(parts)


def _complex_text(re: float, im: float, digits: int) -> str:
    sign = "+" if im >= 0 else "-"
    return f"{format_number(re, digits)}{sign}{format_number(abs(im), digits)}i"


def render_basis(vectors: List[List[List[float]]], digits: int = 6) -> str:
    """One line per basis vector, amplitudes as a+bi."""
    lines = []
    for k, vector in enumerate(vectors):
        amps = ", ".join(_complex_text(re, im, digits) for re, im in vector)
        lines.append(f"v{k}: ({amps})")
    return "\n".join(lines)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, complex):
        return complex_to_pair(value)
    return value


def to_json(document: Dict[str, Any]) -> str:
    """Serialize a result document with full float precision."""
    return json.dumps(_jsonable(document), indent=2)
