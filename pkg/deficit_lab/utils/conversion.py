"""
Conversion utilities for deficit-lab.

Complex numbers travel as two-element [re, im] arrays. States and
measurements are read from and written to JSON or YAML documents:

    state:        {"dims": [d_A, d_B], "matrix": [[[re, im], ...], ...]}
                  {"dims": [d_A, d_B], "pure": [[re, im], ...]}
    measurement:  {"kind": "basis", "vectors": [[[re, im], ...], ...]}
                  {"kind": "projectors", "matrices": [...]}
                  {"kind": "povm", "matrices": [...]}
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import yaml

from ..errors import DeficitLabError, ParseError
from ..quantum.measurement import Measurement, Povm, ProjectiveMeasurement, basis_measurement
from ..quantum.state import DensityMatrix, PureState

MEASUREMENT_KINDS = ("basis", "projectors", "povm")


def complex_to_pair(value: complex) -> List[float]:
    """Convert a complex number to [re, im]."""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def pair_to_complex(pair: Any, field: str = "", path: Optional[str] = None) -> complex:
    """Convert [re, im] to a complex number; plain real numbers are accepted too."""
    if isinstance(pair, (int, float)) and not isinstance(pair, bool):
        return complex(float(pair), 0.0)
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in pair)
    ):
        raise ParseError(f"expected a [re, im] pair of numbers, got {pair!r}", path=path, field=field)
    return complex(float(pair[0]), float(pair[1]))


def vector_to_pairs(vector: np.ndarray) -> List[List[float]]:
    """Convert a complex vector to a list of [re, im] pairs."""
    return [complex_to_pair(z) for z in np.asarray(vector).reshape(-1)]


def pairs_to_vector(data: Any, field: str = "", path: Optional[str] = None) -> np.ndarray:
    """Convert a list of [re, im] pairs to a complex vector."""
    if not isinstance(data, (list, tuple)) or not data:
        raise ParseError("expected a non-empty list of [re, im] pairs", path=path, field=field)
    return np.array([pair_to_complex(z, f"{field}[{i}]", path) for i, z in enumerate(data)], dtype=np.complex128)


def matrix_to_pairs(matrix: np.ndarray) -> List[List[List[float]]]:
    """Convert a complex matrix to nested rows of [re, im] pairs."""
    return [vector_to_pairs(row) for row in np.asarray(matrix)]


def pairs_to_matrix(data: Any, field: str = "", path: Optional[str] = None) -> np.ndarray:
    """Convert nested rows of [re, im] pairs to a square complex matrix."""
    if not isinstance(data, (list, tuple)) or not data:
        raise ParseError("expected a non-empty list of rows", path=path, field=field)
    rows = [pairs_to_vector(row, f"{field}[{i}]", path) for i, row in enumerate(data)]
    n = len(rows)
    for i, row in enumerate(rows):
        if row.size != n:
            raise ParseError(f"row has {row.size} entries, expected {n}", path=path, field=f"{field}[{i}]")
    return np.stack(rows)


# =========================================================================
# Documents
# =========================================================================


def state_to_document(rho: DensityMatrix) -> Dict[str, Any]:
    return {"dims": list(rho.dims), "matrix": matrix_to_pairs(rho.matrix)}


def pure_state_to_document(psi: PureState) -> Dict[str, Any]:
    return {"dims": list(psi.dims), "pure": vector_to_pairs(psi.amplitudes)}


def basis_to_document(unitary: np.ndarray) -> Dict[str, Any]:
    """Measurement document for the basis formed by the columns of a unitary."""
    unitary = np.asarray(unitary)
    return {"kind": "basis", "vectors": [vector_to_pairs(unitary[:, k]) for k in range(unitary.shape[1])]}


def measurement_to_document(m: Measurement) -> Dict[str, Any]:
    if isinstance(m, Povm):
        return {"kind": "povm", "matrices": [matrix_to_pairs(e) for e in m.elements]}
    if m.is_rank_one:
        return basis_to_document(m.basis())
    return {"kind": "projectors", "matrices": [matrix_to_pairs(p) for p in m.projectors]}


def _require_mapping(doc: Any, path: Optional[str]) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise ParseError(f"expected a mapping at the top level, got {type(doc).__name__}", path=path)
    return doc


def parse_state_document(doc: Any, path: Optional[str] = None) -> DensityMatrix:
    """Build a DensityMatrix from a parsed state document."""
    doc = _require_mapping(doc, path)
    dims = doc.get("dims")
    if (
        not isinstance(dims, (list, tuple))
        or len(dims) != 2
        or any(isinstance(d, bool) or not isinstance(d, int) or d < 1 for d in dims)
    ):
        raise ParseError("expected two positive integers", path=path, field="dims")
    dims = (int(dims[0]), int(dims[1]))
    d = dims[0] * dims[1]

    if ("matrix" in doc) == ("pure" in doc):
        raise ParseError("exactly one of 'matrix' or 'pure' is required", path=path)

    try:
        if "pure" in doc:
            amplitudes = pairs_to_vector(doc["pure"], "pure", path)
            if amplitudes.size != d:
                raise ParseError(f"expected {d} amplitudes, got {amplitudes.size}", path=path, field="pure")
            return PureState(amplitudes, dims).density()

        matrix = pairs_to_matrix(doc["matrix"], "matrix", path)
        if matrix.shape != (d, d):
            shape = f"{matrix.shape[0]}x{matrix.shape[1]}"
            raise ParseError(f"expected a {d}x{d} matrix, got {shape}", path=path, field="matrix")
        return DensityMatrix(matrix, dims)
    except ParseError:
        raise
    except DeficitLabError as e:
        raise ParseError(str(e), path=path, field="pure" if "pure" in doc else "matrix") from e


def parse_measurement_document(doc: Any, path: Optional[str] = None) -> Measurement:
    """Build a ProjectiveMeasurement or Povm from a parsed measurement document."""
    doc = _require_mapping(doc, path)
    kind = doc.get("kind")
    if kind not in MEASUREMENT_KINDS:
        raise ParseError(f"expected one of {', '.join(MEASUREMENT_KINDS)}, got {kind!r}", path=path, field="kind")

    key = "vectors" if kind == "basis" else "matrices"
    items = doc.get(key)
    if not isinstance(items, (list, tuple)) or not items:
        raise ParseError("expected a non-empty list", path=path, field=key)

    try:
        if kind == "basis":
            return basis_measurement([pairs_to_vector(v, f"vectors[{i}]", path) for i, v in enumerate(items)])
        matrices = tuple(pairs_to_matrix(m, f"matrices[{i}]", path) for i, m in enumerate(items))
        return ProjectiveMeasurement(matrices) if kind == "projectors" else Povm(matrices)
    except ParseError:
        raise
    except DeficitLabError as e:
        raise ParseError(str(e), path=path, field=key) from e


def load_document(path: Union[str, Path]) -> Any:
    """Read a JSON document, or YAML for .yaml/.yml files."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path=str(path)) from e

    if path.suffix.lower() in (".yaml", ".yml"):
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ParseError(f"invalid YAML: {getattr(e, 'problem', e)}", path=str(path), line=line) from e

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", path=str(path), line=e.lineno) from e


def load_state_file(path: Union[str, Path]) -> DensityMatrix:
    return parse_state_document(load_document(path), str(path))


def load_measurement_file(path: Union[str, Path]) -> Measurement:
    return parse_measurement_document(load_document(path), str(path))
