"""
Report rendering: canonical JSON, pandas text tables, LaTeX cascade tables.
"""

import re
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import pandas as pd

from core.data import RunReport
from lie.rootsys import format_alpha

LATEX_SECTIONS = ("cascade", "ktable", "verify-all")
XI = "\\xi"


def render(report: RunReport, emit: str) -> str:
    if emit == "json":
        return report.to_json()
    if emit == "latex":
        return render_latex(report)
    return render_text(report)


# --- text -------------------------------------------------------------------

def _frame(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(list(rows))


def _scalars(payload: Dict[str, Any]) -> pd.DataFrame:
    items = [(k, v) for k, v in payload.items() if not isinstance(v, (list, dict))]
    return pd.DataFrame(items, columns=["field", "value"])


def _roots_frames(payload: Dict[str, Any]) -> List[Tuple[str, pd.DataFrame]]:
    rank = payload["rank"]
    labels = [f"a{j + 1}" for j in range(rank)]
    return [
        ("Cartan matrix", pd.DataFrame(payload["cartan_matrix"], index=labels, columns=labels)),
        ("Positive roots", _frame(
            {"root": format_alpha(root), "height": sum(root)} for root in payload["positive_roots"]
        )),
        ("Fundamental weights", pd.DataFrame(
            payload["fundamental_weights"], index=[f"w{j + 1}" for j in range(rank)], columns=labels
        )),
    ]


def _cascade_frames(payload: Dict[str, Any]) -> List[Tuple[str, pd.DataFrame]]:
    return [(f"Cascade (m = {payload['m']})", _frame(
        {
            "xi": format_alpha(step["xi"]),
            "level": step["level"],
            "singular": len(step["singular"]),
            "residual": "; ".join(
                ",".join(format_alpha(r) for r in component) for component in step["residual_simple_systems"]
            ),
        }
        for step in payload["steps"]
    ))]


def _ktable_frames(payload: Dict[str, Any]) -> List[Tuple[str, pd.DataFrame]]:
    rows = payload["k_prime"]
    m = len(rows[0]) if rows else 0
    table = pd.DataFrame(rows, index=[f"varpi'_{i + 1}" for i in range(len(rows))], columns=[f"xi_{j + 1}" for j in range(m)])
    table["gcd"] = payload["row_gcds"]
    frames = [("k' table", table)]
    if payload["L"]:
        frames.append(("L_i", pd.DataFrame.from_dict(payload["L"], orient="index")))
    if payload.get("discrepancies"):
        frames.append(("Printed-table discrepancies", _frame(payload["discrepancies"])))
    return frames


def _invariants_frames(payload: Dict[str, Any]) -> List[Tuple[str, pd.DataFrame]]:
    zs = _frame(
        {"Z": f"Z_{p + 1}", "weight": format_alpha(w), "terms": len(z["numerator"])}
        for p, (z, w) in enumerate(zip(payload["zs"], payload["weights"]["zs"]))
    )
    qs = _frame(
        {"Q": f"Q_{p + 1}", "row": row, "weight": " ".join(w), "terms": len(q)}
        for p, (q, row, w) in enumerate(zip(payload["qs"], payload["q_rows"], payload["weights"]["qs"]))
    )
    return [("Cascade invariants", zs), ("Generators", qs)]


def _borel_frames(payload: Dict[str, Any]) -> List[Tuple[str, pd.DataFrame]]:
    field = payload["field_invariants"]
    summary = pd.DataFrame(
        [
            ("polynomial invariants", payload["polynomial_invariants"] if isinstance(payload["polynomial_invariants"], str) else len(payload["polynomial_invariants"])),
            ("field invariants", field["status"]),
            ("A-set", field["a_set"]),
            ("index", payload["index"]),
        ],
        columns=["field", "value"],
    )
    return [("Borel", summary), ("Rank checks", _frame(payload["rank_checks"]))]


_SECTION_FRAMES = {
    "roots": _roots_frames,
    "cascade": _cascade_frames,
    "ktable": _ktable_frames,
    "invariants": _invariants_frames,
    "borel": _borel_frames,
}


def _frames(section: str, payload: Dict[str, Any]) -> List[Tuple[str, pd.DataFrame]]:
    if "skipped" in payload:
        return [("Skipped", pd.DataFrame(list(payload["skipped"].items()), columns=["field", "value"]))]
    builder = _SECTION_FRAMES.get(section)
    if builder is None:
        return [(section, _scalars(payload))]
    return builder(payload)


def render_text(report: RunReport) -> str:
    lines = [f"{report.algebra or '?'}: {' '.join(report.command)}"]
    for section, payload in report.results.items():
        lines.append("")
        lines.append(f"== {section} ==")
        for title, frame in _frames(section, payload):
            lines.append(f"-- {title}")
            lines.append(frame.to_string())
    if report.checks:
        lines.append("")
        lines.append("== checks ==")
        lines.append(_frame(c.model_dump() for c in report.checks).to_string(index=False))
    return "\n".join(lines)


# --- latex ------------------------------------------------------------------

def _latex_alpha(root: Sequence[int]) -> str:
    return re.sub(r"a(\d+)", r"\\alpha_{\1}", format_alpha(root))


def _latex_combination(coefficients: Iterable[int], symbol: str) -> str:
    parts = []
    for j, c in enumerate(coefficients):
        if not c:
            continue
        term = f"{symbol}_{{{j + 1}}}" if abs(c) == 1 else f"{abs(c)}{symbol}_{{{j + 1}}}"
        if parts:
            parts.append(f"{'-' if c < 0 else '+'} {term}")
        else:
            parts.append(f"-{term}" if c < 0 else term)
    return " ".join(parts) or "0"


def render_latex(report: RunReport) -> str:
    blocks = []
    cascade = report.results.get("cascade")
    if cascade:
        rows = [
            f"$\\xi_{{{p + 1}}}$ & ${_latex_alpha(xi)}$ \\\\"
            for p, xi in enumerate(cascade["xis"])
        ]
        blocks.append("\n".join(["\\begin{tabular}{ll}", *rows, "\\end{tabular}"]))
    ktable = report.results.get("ktable")
    if ktable:
        rows = []
        for i, row in enumerate(ktable["k"]):
            rows.append(f"$\\varpi'_{{{i + 1}}}$ & $= {_latex_combination(row, XI)}$ \\\\")
        blocks.append("\n".join(["\\begin{tabular}{ll}", *rows, "\\end{tabular}"]))
    return "\n\n".join(blocks)
