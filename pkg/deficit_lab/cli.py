"""
Command-line entry point for deficit-lab.

    deficit-lab reproduce {sw99,knr01,lemma1,lemma2,diagram,chi-scan}
    deficit-lab measures --state FILE [--measurement FILE]
    deficit-lab optimize --objective {chv,dcl,deficit} --state FILE
    deficit-lab version

Exit codes: 0 success, 1 a scenario check failed, 2 usage, parse or
configuration error.
"""

import argparse
import logging
import os
import sys
from dataclasses import replace
from typing import Any, Dict, List, Optional

from . import __version__
from .config import load_settings, set_settings
from .engine import get_executor, reset_executor
from .errors import ConfigurationError
from .quantum.measures import OBJECTIVES
from .scenarios.reproductions import ScenarioRunner
from .utils.formatting import render_basis, render_mapping, render_report, render_table, to_json

logger = logging.getLogger("deficit_lab")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_PREFIX = "deficit-lab: "


def configure_logging(level: str, log_file: Optional[str] = None):
    """Single stderr handler with the deficit-lab prefix, plus an optional file."""
    root = logging.getLogger("deficit_lab")
    root.handlers.clear()
    root.setLevel(getattr(logging, level.upper()))
    root.propagate = False

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_PREFIX + "%(message)s"))
    root.addHandler(handler)

    if log_file:
        file_handler = logging.FileHandler(os.path.expanduser(log_file))
        file_handler.setFormatter(logging.Formatter("%(asctime)s %(name)s %(levelname)s: %(message)s"))
        root.addHandler(file_handler)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deficit-lab",
        description="One-way information deficits and classical correlations of bipartite quantum states.",
    )
    parser.add_argument(
        "--config", help="YAML config file (default: $DEFICIT_LAB_CONFIG or ~/.deficit-lab/config.yaml)"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="errors only")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=("table", "json"), help="output format (default from config: table)")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--restarts", type=int, help="random starts per optimization")
    search.add_argument("--grid", type=int, help="grid points per angle for qubit scans")
    search.add_argument("--seed", type=int, help="seed for the random start stream")
    search.add_argument("--threads", type=int, help="worker threads for independent starts")

    sub = parser.add_subparsers(dest="command", required=True)

    reproduce = sub.add_parser("reproduce", parents=[output, search], help="run a self-checking reproduction")
    reproduce.add_argument("target", choices=ScenarioRunner().targets)

    measures = sub.add_parser("measures", parents=[output], help="entropies and per-measurement quantities")
    measures.add_argument("--state", required=True, help="state document (JSON or YAML)")
    measures.add_argument("--measurement", help="measurement document (JSON or YAML)")

    optimize = sub.add_parser("optimize", parents=[output, search], help="optimize a measure over Alice bases")
    optimize.add_argument("--objective", choices=OBJECTIVES, default="chv")
    optimize.add_argument("--state", required=True, help="state document (JSON or YAML)")
    optimize.add_argument(
        "--support-restricted",
        action="store_true",
        help="only search bases that split Alice's space into support and kernel of rho_A",
    )

    sub.add_parser("version", parents=[output], help="print package and library versions")
    return parser


# =========================================================================
# Rendering
# =========================================================================


def _render_reproduce(result: Dict[str, Any], digits: int) -> str:
    parts = [render_report(r, digits) for r in result["reports"]]
    parts.append(f"overall: {'PASS' if result['overall'] else 'FAIL'}")
    return "\n\n".join(parts)


def _render_measures(result: Dict[str, Any], digits: int) -> str:
    parts = [render_mapping(f"state dims {result['dims']}", result["quantities"], digits)]
    eig = result["eigenbasis"]
    eigen_rows = {"c_HV": eig["c_hv"], "delta_cl": eig["delta_cl"]}
    parts.append(render_mapping("eigenbasis of rho_A", eigen_rows, digits))
    if eig["degenerate_clusters"]:
        parts.append(f"note: eigenbasis is not unique, degenerate clusters {eig['degenerate_clusters']}")
    if "measurement" in result:
        report = dict(result["measurement"])
        weights = report.pop("outcome_weights", None)
        entropies = report.pop("per_outcome_entropies", None)
        parts.append(render_mapping("measurement", report, digits))
        if weights is not None:
            rows = [[k, p, s] for k, (p, s) in enumerate(zip(weights, entropies))]
            parts.append(render_table(["outcome", "p_i", "S(rho_i^B)"], rows, digits))
    return "\n\n".join(parts)


def _render_optimize(result: Dict[str, Any], digits: int) -> str:
    rows = {
        "objective": result["objective"],
        "value": result["value"],
        "starts": result["starts"],
        "evaluations": result["evaluations"],
        "converged": result["converged"],
        "best start": result["best_start"],
        "I_GO": result["I_GO"],
        "I_M": result["I_M"],
        "I_LO": result["I_LO"],
        "I_oneway": result["I_oneway"],
        "I_oneway - I_LO": result["I_oneway_minus_I_LO"],
    }
    basis = render_basis(result["best_basis"]["vectors"], digits)
    return render_mapping("optimization", rows, digits) + "\n\nbest basis\n" + basis


def _render_version(result: Dict[str, Any], digits: int) -> str:
    return "\n".join(f"{key} {result[key]}" for key in ("deficit_lab", "numpy", "scipy", "python"))


_RENDERERS = {
    "reproduce": _render_reproduce,
    "measures": _render_measures,
    "optimize": _render_optimize,
    "version": _render_version,
}


def _command_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for key in ("target", "state", "measurement", "objective", "restarts", "grid", "seed", "threads"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if getattr(args, "support_restricted", False):
        params["support_restricted"] = True
    return params


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = load_settings(args.config)
    except ConfigurationError as e:
        configure_logging("error")
        logger.error("%s", e)
        return EXIT_USAGE

    level = "debug" if args.verbose else "error" if args.quiet else settings.logging.level
    configure_logging(level, settings.logging.file)

    if getattr(args, "format", None):
        settings = replace(settings, output=replace(settings.output, format=args.format))
    try:
        settings = set_settings(settings)
    except ConfigurationError as e:
        logger.error("%s", e)
        return EXIT_USAGE

    # The executor picks up the settings installed above
    reset_executor()
    result = get_executor().execute(args.command, _command_params(args))

    status = result.get("status")
    if status == "error":
        logger.error("%s", result.get("error"))
        if settings.output.format == "json":
            print(to_json(result))
        return EXIT_USAGE

    if settings.output.format == "json":
        print(to_json(result))
    else:
        print(_RENDERERS[args.command](result, settings.output.significant_digits))

    return EXIT_FAILED if status == "failed" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
