"""cascade-invariants command line

Runs one subcommand and writes its report to stdout; logs go to stderr.

Execution:
    python -m app roots G2
    python -m app ktable E8 --check-paper
    python -m app verify-all B3 --seed 7 --emit text
"""

import sys
from typing import List, Optional, Sequence

from config import get_config
from core import *
from lie.liealg import CONVENTION, chevalley_constants
from lie.rootsys import build_root_system

from .commands import COMMANDS, Invocation
from .render import LATEX_SECTIONS, render


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Execute one command line and return its exit status.

    0 when every check passed (discrepancies and skips allowed), 1 for failed
    checks or verifications, 2 for usage errors, 3 for size-guard rejections.
    """
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        parsed = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    config = get_config(reload=True, cli_overrides=config_overrides(parsed))
    setup_logging(level=config.logging.level, format_string=config.logging.format)
    logger = get_logger(__name__)

    command = parsed["command"]
    emit = parsed.get("emit", "json")
    if emit == "latex" and command not in LATEX_SECTIONS:
        logger.error(f"--emit latex is available for {', '.join(LATEX_SECTIONS)}, not {command}")
        return 2

    type_label, rank = parsed["algebra"]
    report = RunReport(
        command=argv,
        provenance=Provenance(version=config.app.version, convention=CONVENTION, seed=config.sampling.seed),
    )
    status = 0
    try:
        system = build_root_system(type_label, rank)
        report.algebra = system.label
        report.provenance.constants_sha256 = chevalley_constants(system).sha256()
        logger.info(f"Running {command} for {system.label} (environment {config.environment})")
        COMMANDS[command](Invocation(command=command, system=system, options=parsed, config=config), report)
    except CascadeInvariantsError as exc:
        status = exc.exit_status
        logger.error(f"{command} failed: {exc}")
        error = {"kind": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, GuardExceededError):
            error["size_report"] = exc.size_report
        report.results["error"] = error
        emit = "json" if emit == "latex" else emit
    except Exception as exc:
        logger.error(f"{command} failed: {exc}")
        logger.exception("Full error details:")
        report.results["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        report.checks.append(CheckResult(name="run.error", status="fail", detail=f"{type(exc).__name__}: {exc}"))
        emit = "json" if emit == "latex" else emit

    print(render(report, emit))

    if report.failed:
        logger.error(f"{len(report.failed)} check(s) failed: {', '.join(c.name for c in report.failed)}")
        status = status or 1
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
