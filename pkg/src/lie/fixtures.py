"""
Golden cascade and k-tables, and their comparison with computed values.

The exceptional tables are loaded from ``golden_tables.yml``. The classical
families are printed symbolically (A_n, B_2l, B_2l+1, C_n, D_2l, D_2l+1) and
are instantiated here at the requested rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from core.data import CheckResult
from core.logging_config import get_logger

from .cascade import Cascade
from .rootsys import Root, RootSystem, from_epsilon
from .weight_table import KTable

logger = get_logger(__name__)

TABLES_PATH = Path(__file__).with_name("golden_tables.yml")


@dataclass(frozen=True)
class Erratum:
    kind: str
    index: int
    printed: Tuple[int, ...]
    corrected: Tuple[int, ...]
    detail: str = ""


@dataclass(frozen=True)
class GoldenTable:
    label: str
    xis: Tuple[Root, ...]
    rows: Tuple[Tuple[int, ...], ...]
    errata: Tuple[Erratum, ...] = ()
    notes: Tuple[str, ...] = field(default=())

    def erratum(self, kind: str, index: int) -> Optional[Erratum]:
        for entry in self.errata:
            if entry.kind == kind and entry.index == index:
                return entry
        return None


@lru_cache(maxsize=1)
def load_tables() -> Dict[str, Any]:
    with open(TABLES_PATH, "r") as f:
        return yaml.safe_load(f)


def _eps(system: RootSystem, terms: Dict[int, int]) -> Root:
    """Root from 1-based epsilon terms, e.g. {1: 1, 4: -1} for e1-e4."""
    size = system.rank + 1 if system.type_label == "A" else system.rank
    coeffs = [0] * size
    for index, value in terms.items():
        coeffs[index - 1] += value
    return from_epsilon(system, coeffs).as_root()


def _row(m: int, entries: Dict[int, int]) -> Tuple[int, ...]:
    """k-row of length m from 1-based xi positions."""
    row = [0] * m
    for position, value in entries.items():
        row[position - 1] += value
    return tuple(row)


def _odd_prefix(upto: int, weight: int) -> Dict[int, int]:
    """weight * (xi_1 + xi_3 + ... + xi_upto) for odd ``upto``."""
    return {p: weight for p in range(1, upto + 1, 2)}


def _family_a(system: RootSystem) -> Tuple[List[Root], List[Tuple[int, ...]]]:
    n = system.rank
    m = (n + 1) // 2
    xis = [_eps(system, {j: 1, n + 2 - j: -1}) for j in range(1, m + 1)]
    rows = []
    for i in range(1, n + 1):
        top = i if i <= m else n + 1 - i
        rows.append(_row(m, {p: 1 for p in range(1, top + 1)}))
    return xis, rows


def _paired_xis(system: RootSystem, pairs: int) -> List[Root]:
    xis = []
    for j in range(1, pairs + 1):
        xis.append(_eps(system, {2 * j - 1: 1, 2 * j: 1}))
        xis.append(_eps(system, {2 * j - 1: 1, 2 * j: -1}))
    return xis


def _paired_row(m: int, i: int) -> Tuple[int, ...]:
    """Rows shared by the B and D families for i below the tail."""
    if i % 2:
        j = (i + 1) // 2
        entries = _odd_prefix(2 * j - 3, 2)
        entries[2 * j - 1] = 1
        entries[2 * j] = 1
        return _row(m, entries)
    return _row(m, _odd_prefix(i - 1, 2))


def _family_b(system: RootSystem) -> Tuple[List[Root], List[Tuple[int, ...]]]:
    n = system.rank
    pairs = n // 2
    xis = _paired_xis(system, pairs)
    if n % 2:
        xis.append(_eps(system, {n: 1}))
    m = len(xis)
    rows = [_paired_row(m, i) for i in range(1, n)]
    tail = _odd_prefix(2 * pairs - 1, 1)
    if n % 2:
        tail[n] = 1
    rows.append(_row(m, tail))
    return xis, rows


def _family_c(system: RootSystem) -> Tuple[List[Root], List[Tuple[int, ...]]]:
    n = system.rank
    xis = [_eps(system, {j: 2}) for j in range(1, n + 1)]
    rows = [_row(n, {p: 1 for p in range(1, i + 1)}) for i in range(1, n + 1)]
    return xis, rows


def _family_d(system: RootSystem) -> Tuple[List[Root], List[Tuple[int, ...]]]:
    n = system.rank
    l = n // 2
    xis = _paired_xis(system, l)
    m = len(xis)
    if n % 2 == 0:
        # printed order: e(n-1)+e(n) before e(n-1)-e(n); rows use the computed order
        rows = [_paired_row(m, i) for i in range(1, n - 1)]
        head = _odd_prefix(2 * l - 3, 1)
        rows.append(_row(m, {**head, 2 * l - 1: 1}))
        rows.append(_row(m, {**head, 2 * l: 1}))
    else:
        rows = [_paired_row(m, i) for i in range(1, n - 1)]
        tail = _row(m, _odd_prefix(2 * l - 1, 1))
        rows.extend([tail, tail])
    return xis, rows


_FAMILIES = {"A": _family_a, "B": _family_b, "C": _family_c, "D": _family_d}


def golden_table(system: RootSystem) -> GoldenTable:
    """Golden table for ``system``; every admissible type has one."""
    tables = load_tables()
    if system.type_label in _FAMILIES:
        xis, rows = _FAMILIES[system.type_label](system)
        notes = tables.get("family_notes", {}).get(system.type_label) or []
        return GoldenTable(
            label=system.label,
            xis=tuple(xis),
            rows=tuple(rows),
            notes=tuple(notes),
        )

    entry = tables["exceptional"][system.label]
    errata = tuple(
        Erratum(
            kind=e["kind"],
            index=int(e["index"]),
            printed=tuple(e["printed"]),
            corrected=tuple(e["corrected"]),
            detail=e.get("detail", ""),
        )
        for e in entry.get("errata", [])
    )
    return GoldenTable(
        label=system.label,
        xis=tuple(tuple(x) for x in entry["xis"]),
        rows=tuple(tuple(r) for r in entry["rows"]),
        errata=errata,
        notes=tuple(entry.get("notes", [])),
    )


def compare_cascade(cascade: Cascade, golden: GoldenTable) -> List[CheckResult]:
    """Compare cascade roots level by level, as sets."""
    checks: List[CheckResult] = []
    if cascade.m != len(golden.xis):
        checks.append(CheckResult(
            name="golden.m", status="fail",
            detail=f"computed m={cascade.m}, printed m={len(golden.xis)}",
        ))
        return checks
    checks.append(CheckResult(name="golden.m", status="pass", detail=f"m={cascade.m}"))

    position = 0
    for level, computed in enumerate(cascade.levels()):
        printed = list(golden.xis[position:position + len(computed)])
        corrected = list(printed)
        errata_hit = []
        for offset in range(len(printed)):
            entry = golden.erratum("xi", position + offset + 1)
            if entry is not None:
                corrected[offset] = entry.corrected
                errata_hit.append(entry)
        name = f"golden.xi.level{level}"
        if set(printed) == computed:
            checks.append(CheckResult(name=name, status="pass"))
        elif set(corrected) == computed and errata_hit:
            detail = "; ".join(f"xi_{e.index} printed {list(e.printed)}, computed {list(e.corrected)}: {e.detail}" for e in errata_hit)
            checks.append(CheckResult(name=name, status="discrepancy", detail=detail))
        else:
            checks.append(CheckResult(
                name=name, status="fail",
                detail=f"computed {sorted(computed)}, printed {printed}",
            ))
        position += len(computed)
    return checks


def compare_ktable(table: KTable, golden: GoldenTable) -> List[CheckResult]:
    """Compare k rows positionally in the computed cascade order."""
    checks: List[CheckResult] = []
    for i, computed in enumerate(table.k, start=1):
        name = f"golden.row{i}"
        printed = golden.rows[i - 1] if i - 1 < len(golden.rows) else None
        if printed == computed:
            checks.append(CheckResult(name=name, status="pass"))
            continue
        entry = golden.erratum("row", i)
        if entry is not None and entry.corrected == computed:
            checks.append(CheckResult(
                name=name, status="discrepancy",
                detail=f"varpi'_{i} printed {list(entry.printed)}, computed {list(computed)}: {entry.detail}",
            ))
        else:
            checks.append(CheckResult(
                name=name, status="fail",
                detail=f"varpi'_{i} printed {list(printed) if printed else None}, computed {list(computed)}",
            ))
    return checks


def check_against_golden(cascade: Cascade, table: KTable) -> Dict[str, Any]:
    """Payload for ``ktable --check-paper``: matches, discrepancies and the checks."""
    golden = golden_table(cascade.system)
    checks = compare_cascade(cascade, golden) + compare_ktable(table, golden)
    discrepancies = [c.model_dump() for c in checks if c.status == "discrepancy"]
    failures = [c for c in checks if c.status == "fail"]
    logger.info(
        f"{cascade.system.label}: golden-table comparison with {len(discrepancies)} discrepancies, {len(failures)} failures"
    )
    return {
        "matches": not failures and not discrepancies,
        "discrepancies": discrepancies,
        "notes": list(golden.notes),
        "checks": checks,
    }
