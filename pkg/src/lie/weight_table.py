"""
Decomposition of varpi'_i = (1 - w0) varpi_i in the cascade basis.

Indices are 0-based throughout the library; reports add 1 when rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from core.errors import VerificationError
from core.logging_config import get_logger

from . import linalg
from .cascade import Cascade, kostant_cascade
from .rootsys import RootSystem, Weight, diagram_automorphism_phi, w0_image

logger = get_logger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class KTable:
    k: IntMatrix
    k_prime: IntMatrix
    row_gcds: Tuple[int, ...]
    selected_rows: Tuple[int, ...]
    det_sign: int
    a_set: Tuple[int, ...]
    L: Dict[int, Weight]

    def eta(self, cascade: Cascade, i: int) -> Weight:
        """Weight of Q_i: sum_j k'_ij xi_j."""
        total = Weight.zero(cascade.system.rank)
        for coefficient, xi in zip(self.k_prime[i], cascade.xis):
            if coefficient:
                total = total + Weight.of(xi).scale(coefficient)
        return total


def varpi_prime(system: RootSystem, i: int) -> Weight:
    """varpi_i - w0(varpi_i)."""
    varpi = system.fundamental_weights[i]
    return varpi - w0_image(system, varpi)


def solve_k_matrix(cascade: Cascade, varpi_primes: Sequence[Weight]) -> IntMatrix:
    """
    Solve varpi'_i = sum_j k_ij xi_j exactly.

    Raises:
        VerificationError: for an inconsistent or non-integral solution
    """
    basis = cascade.xis
    n = cascade.system.rank
    columns = [[basis[j][r] for j in range(len(basis))] for r in range(n)]
    rows = []
    for i, target in enumerate(varpi_primes):
        solution = linalg.solve_unique(columns, target.coords)
        if any(c.denominator != 1 for c in solution):
            raise VerificationError(
                f"{cascade.system.label}: varpi'_{i + 1} has non-integral cascade coordinates {solution}"
            )
        rows.append(tuple(int(c) for c in solution))
    return tuple(rows)


def normalize_k(k: IntMatrix) -> Tuple[IntMatrix, Tuple[int, ...]]:
    """
    Divide each row by its gcd.

    Raises:
        VerificationError: when a row gcd is not 1 or 2
    """
    k_prime = []
    gcds = []
    for i, row in enumerate(k):
        g = 0
        for c in row:
            g = gcd(g, c)
        if g not in (1, 2):
            raise VerificationError(f"row {i + 1} of k has gcd {g}, expected 1 or 2")
        gcds.append(g)
        k_prime.append(tuple(c // g for c in row))
    return tuple(k_prime), tuple(gcds)


def determinant_rows(phi: Sequence[int]) -> Tuple[int, ...]:
    """One row per phi-orbit: {i : i <= phi(i)}."""
    return tuple(i for i in range(len(phi)) if i <= phi[i])


def unimodularity_check(k_prime: IntMatrix, cascade: Cascade) -> int:
    """
    Sign of det k' on the rows {i : i <= phi(i)}.

    Raises:
        VerificationError: when the selection is not square or |det| != 1
    """
    rows = determinant_rows(diagram_automorphism_phi(cascade.system))
    if len(rows) != cascade.m:
        raise VerificationError(
            f"{cascade.system.label}: {len(rows)} phi-orbits but cascade length {cascade.m}"
        )
    det = linalg.determinant([k_prime[i] for i in rows])
    if abs(det) != 1:
        raise VerificationError(f"{cascade.system.label}: det k' = {det}, expected +-1")
    return int(det)


def select_A_set(phi: Sequence[int]) -> Tuple[int, ...]:
    """Smaller index of every two-element phi-orbit; empty when phi is the identity."""
    return tuple(i for i in range(len(phi)) if i < phi[i])


def L_weights(system: RootSystem, a_set: Sequence[int]) -> Dict[int, Weight]:
    """L_i = (varpi_i + w0 varpi_i) / 2 for i in the A-set."""
    result = {}
    for i in a_set:
        varpi = system.fundamental_weights[i]
        result[i] = (varpi + w0_image(system, varpi)).scale(Fraction(1, 2))
    return result


def compute_ktable(system: RootSystem, cascade: Cascade | None = None) -> KTable:
    """Full k-table with the gcd, determinant and A-set bookkeeping."""
    cascade = cascade or kostant_cascade(system)
    primes = [varpi_prime(system, i) for i in range(system.rank)]
    k = solve_k_matrix(cascade, primes)
    k_prime, gcds = normalize_k(k)
    sign = unimodularity_check(k_prime, cascade)
    phi = diagram_automorphism_phi(system)
    a_set = select_A_set(phi)
    if len(a_set) != system.rank - cascade.m:
        raise VerificationError(
            f"{system.label}: |A| = {len(a_set)} but n - m = {system.rank - cascade.m}"
        )
    table = KTable(
        k=k,
        k_prime=k_prime,
        row_gcds=gcds,
        selected_rows=determinant_rows(phi),
        det_sign=sign,
        a_set=a_set,
        L=L_weights(system, a_set),
    )
    logger.debug(f"{system.label}: k-table gcds={gcds}, det sign {sign}, A-set {a_set}")
    return table


def orthogonality_defects(cascade: Cascade, table: KTable) -> List[Tuple[int, int]]:
    """Pairs (i, j) with <L_i, xi_j> != 0; empty when everything is orthogonal."""
    system = cascade.system
    return [
        (i, j)
        for i, weight in table.L.items()
        for j, xi in enumerate(cascade.xis)
        if system.inner_product(weight, xi) != 0
    ]
