"""
Centralized CLI argument parsing for the cascade-invariants commands.

Every subcommand shares the same option set (output format, seed, logging and
sampling overrides), so the options may appear before or after the algebra label.
"""

import argparse
import re
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.logging_config import get_logger

logger = get_logger(__name__)

SUBCOMMANDS = ("roots", "cascade", "ktable", "invariants", "spherical", "borel", "verify-all")
EMIT_FORMATS = ("json", "text", "latex")

_LABEL = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_algebra_label(label: str) -> Tuple[str, int]:
    """
    Split an algebra label such as ``G2`` or ``A10`` into (type, rank).

    Only the shape is checked here; admissible ranks are enforced by
    ``lie.rootsys.build_root_system``.
    """
    match = _LABEL.match(label.strip())
    if match is None:
        raise argparse.ArgumentTypeError(
            f"invalid algebra label {label!r}: expected <TYPE><RANK> with TYPE in A..G, e.g. G2"
        )
    return match.group(1).upper(), int(match.group(2))


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--emit",
        choices=EMIT_FORMATS,
        default=argparse.SUPPRESS,
        help="Output format (default: json)"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="Override the sampling seed for generic-point checks"
    )
    common.add_argument(
        "--samples",
        type=int,
        default=argparse.SUPPRESS,
        help="Override the number of generic points per rank check"
    )
    common.add_argument(
        "--degree-bound",
        type=int,
        default=argparse.SUPPRESS,
        help="Override the degree bound of brute-force invariant searches"
    )
    common.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=argparse.SUPPRESS,
        help="Override the logging level"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the top-level parser with one subparser per command."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="cascade-invariants",
        description="Kostant cascade and coadjoint invariants of simple Lie algebras",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, parents=[common])
        sub.add_argument("algebra", type=parse_algebra_label, help="Algebra label, e.g. A3, B2, G2, E8")
        return sub

    add("roots", "Cartan matrix, positive roots and fundamental weights")
    add("cascade", "Kostant cascade of strongly orthogonal roots")

    ktable = add("ktable", "Decomposition of varpi' in the cascade basis")
    ktable.add_argument(
        "--check-paper", "--check-golden",
        dest="check_paper",
        action="store_true",
        help="Compare against the printed cascade and varpi' tables"
    )

    invariants = add("invariants", "Cascade invariants Z_i and generators Q_i")
    invariants.add_argument("--verify", action="store_true", help="Run invariance, independence and rank checks")
    invariants.add_argument("--force", action="store_true", help="Attempt the reduction beyond the size guard")

    spherical = add("spherical", "Spherical-function expansion for type A")
    spherical.add_argument("--index", type=int, required=True, help="Fundamental index i")
    spherical.add_argument("--borel", action="store_true", help="Include the Cartan variables and J_i")

    borel = add("borel", "Invariants of the Borel subalgebra")
    borel.add_argument("--force", action="store_true", help="Attempt the reduction beyond the size guard")

    verify_all = add("verify-all", "Run cascade, ktable, invariants and borel checks")
    verify_all.add_argument("--force", action="store_true", help="Attempt the reduction beyond the size guard")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    """
    Parse command line arguments.

    Returns:
        Dictionary of parsed arguments; options that were not given are absent.

    Raises:
        SystemExit: with status 2 on usage errors (argparse behaviour)
    """
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    parsed = {k: v for k, v in vars(args).items() if v is not None}

    logger.debug(f"Parsed arguments: {parsed}")
    return parsed


def config_overrides(parsed: Dict[str, Any]) -> Dict[str, Any]:
    """Extract the options that map onto configuration keys."""
    keys: List[str] = ["seed", "samples", "degree_bound", "log_level"]
    overrides = {k: parsed[k] for k in keys if k in parsed}
    if overrides:
        logger.debug(f"CLI overrides provided: {overrides}")
    return overrides
