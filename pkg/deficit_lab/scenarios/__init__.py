"""
deficit-lab scenarios package.

Contains:
- constructions: Channel-ensemble states (sw99, knr01)
- reproductions: Self-checking reports, lemma demonstrations, diagram
  check and the orthogonal-ensemble scan
"""

from .constructions import (
    EnsembleConstruction,
    build_knr01_state,
    build_sw99_state,
    knr01_ensemble,
    sw99_ensemble,
)
from .reproductions import (
    PublishedComparison,
    ScenarioCheck,
    ScenarioReport,
    ScenarioRunner,
    diagram_check,
    lemma1_report,
    lemma2_demo,
    orthogonal_ensemble_scan,
    orthogonal_ensemble_search,
)

__all__ = [
    "EnsembleConstruction",
    "build_sw99_state",
    "build_knr01_state",
    "sw99_ensemble",
    "knr01_ensemble",
    "ScenarioCheck",
    "PublishedComparison",
    "ScenarioReport",
    "ScenarioRunner",
    "lemma1_report",
    "lemma2_demo",
    "diagram_check",
    "orthogonal_ensemble_scan",
    "orthogonal_ensemble_search",
]
