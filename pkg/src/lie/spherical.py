"""
Spherical-function oracle for type A_n.

The fundamental spherical functions of SL(n+1) are corner minors. Writing
x~ = x + y for a point of b_- (x strictly lower triangular, y diagonal), the
i-th corner minor of exp(t x~) expands as t^k (S_i0 + t S_i1 + ...). S_i0 is
an N-invariant polynomial of weight varpi'_i; for i with phi(i) != i the
ratio J_i = S_i1 / S_i0 is a B-invariant rational function.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import GuardExceededError, OracleScopeError, VerificationError
from core.logging_config import get_logger

from .polyalg import Polynomial, PoissonContext, RationalFunction, make_context, poisson_bracket
from .reduction import verify_ad_invariance
from .rootsys import RootSystem, Weight, build_root_system, diagram_automorphism_phi, w0_image
from .weight_table import varpi_prime

logger = get_logger(__name__)

Series = List[Polynomial]  # coefficients of t^0, t^1, ...


class Orientation(str, enum.Enum):
    LOWER_LEFT = "lower_left"
    UPPER_RIGHT = "upper_right"


@dataclass(frozen=True)
class MatrixSeries:
    """Truncated exp(t x~): entries[r][c][j] is the t^j coefficient."""

    size: int
    order: int
    entries: Tuple[Tuple[Tuple[Polynomial, ...], ...], ...]

    def coefficient(self, row: int, col: int, power: int) -> Polynomial:
        return self.entries[row][col][power]


@dataclass(frozen=True)
class SphericalExpansion:
    i: int
    k: int
    s0: Polynomial
    s1: Polynomial
    include_cartan: bool
    orientation: Orientation


@dataclass(frozen=True)
class S1Structure:
    """S_i1 = L_i(y) S_i0(x) + R_i(x)."""

    i: int
    L: Weight
    L_form: Polynomial
    y_part: Polynomial
    R: Polynomial


def _require_type_a(system: RootSystem) -> None:
    if system.type_label != "A":
        raise OracleScopeError(f"the spherical oracle covers type A only, not {system.label}")


def root_sign(system: RootSystem, ctx: PoissonContext) -> Dict[Tuple[int, int], int]:
    """
    Signs s with e_(a,b) = s * E_ab, for 0-based a < b.

    Simple roots have sign +1; s_(a,c) = s_(a,b) s_(b,c) N for every a < b < c,
    and all choices of b must agree.
    """
    size = system.rank + 1
    signs: Dict[Tuple[int, int], int] = {(a, a + 1): 1 for a in range(size - 1)}
    for length in range(2, size):
        for a in range(size - length):
            c = a + length
            values = set()
            for b in range(a + 1, c):
                n = ctx.constants.N(_pair_root(system, a, b), _pair_root(system, b, c))
                values.add(signs[(a, b)] * signs[(b, c)] * int(n))
            if len(values) != 1:
                raise VerificationError(f"inconsistent matrix signs for root ({a + 1},{c + 1}): {values}")
            signs[(a, c)] = values.pop()
    return signs


def _pair_root(system: RootSystem, a: int, b: int) -> Tuple[int, ...]:
    """e_a - e_b (0-based, a < b) in simple-root coordinates."""
    return tuple(1 if a <= j < b else 0 for j in range(system.rank))


def matrix_variable(system: RootSystem, include_cartan: bool) -> Tuple[PoissonContext, List[List[Polynomial]]]:
    """x~ as a matrix of context variables."""
    _require_type_a(system)
    ctx = make_context(system, "borel" if include_cartan else "nilpotent")
    size = system.rank + 1
    signs = root_sign(system, ctx)
    zero = Polynomial.zero(ctx.nvars)
    matrix = [[zero for _ in range(size)] for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            matrix[b][a] = ctx.e(_pair_root(system, a, b)).scale(signs[(a, b)])
    if include_cartan:
        for a in range(size):
            upper = ctx.h(a) if a < system.rank else zero
            lower = ctx.h(a - 1) if a > 0 else zero
            matrix[a][a] = upper - lower
    return ctx, matrix


def exp_series(matrix: Sequence[Sequence[Polynomial]], order: int, max_series_size: int = 8) -> MatrixSeries:
    """
    sum_{j <= order} t^j x~^j / j!.

    Raises:
        GuardExceededError: when the matrix is larger than ``max_series_size``
        ValueError: when ``order`` is below the matrix size
    """
    size = len(matrix)
    if size > max_series_size:
        raise GuardExceededError(
            f"series of a {size}x{size} matrix exceeds the guard {max_series_size}",
            size_report={"size": size, "max_series_size": max_series_size},
        )
    if order < size:
        raise ValueError(f"truncation order {order} is below the matrix size {size}")
    nvars = matrix[0][0].nvars
    identity = [[Polynomial.constant(nvars, int(r == c)) for c in range(size)] for r in range(size)]
    powers = [identity]
    for _ in range(order):
        previous = powers[-1]
        powers.append([
            [
                sum((previous[r][m] * matrix[m][c] for m in range(size)), Polynomial.zero(nvars))
                for c in range(size)
            ]
            for r in range(size)
        ])
    entries = tuple(
        tuple(
            tuple(powers[j][r][c].scale(Fraction(1, factorial(j))) for j in range(order + 1))
            for c in range(size)
        )
        for r in range(size)
    )
    return MatrixSeries(size=size, order=order, entries=entries)


def _series_mul(a: Series, b: Series, cap: int) -> Series:
    nvars = a[0].nvars
    result = [Polynomial.zero(nvars) for _ in range(cap + 1)]
    for i, x in enumerate(a[: cap + 1]):
        if x.is_zero():
            continue
        for j, y in enumerate(b[: cap + 1 - i]):
            if not y.is_zero():
                result[i + j] = result[i + j] + x * y
    return result


def series_minor(series: MatrixSeries, rows: Sequence[int], cols: Sequence[int], cap: int) -> Series:
    """Determinant of the (rows, cols) block by Laplace expansion, truncated at t^cap."""
    nvars = series.entries[0][0][0].nvars
    if not rows:
        return [Polynomial.constant(nvars, 1)] + [Polynomial.zero(nvars) for _ in range(cap)]
    total = [Polynomial.zero(nvars) for _ in range(cap + 1)]
    first, rest = rows[0], rows[1:]
    for position, col in enumerate(cols):
        entry = list(series.entries[first][col][: cap + 1])
        if all(p.is_zero() for p in entry):
            continue
        sub = series_minor(series, rest, cols[:position] + cols[position + 1:], cap)
        term = _series_mul(entry, sub, cap)
        sign = -1 if position % 2 else 1
        total = [t + p.scale(sign) for t, p in zip(total, term)]
    return total


def _block(orientation: Orientation, size: int, minor: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if orientation is Orientation.LOWER_LEFT:
        return tuple(range(size - minor, size)), tuple(range(minor))
    return tuple(range(minor)), tuple(range(size - minor, size))


def _expand(system: RootSystem, i: int, include_cartan: bool, orientation: Orientation, max_series_size: int) -> Optional[SphericalExpansion]:
    ctx, matrix = matrix_variable(system, include_cartan)
    size = system.rank + 1
    series = exp_series(matrix, order=size, max_series_size=max_series_size)
    rows, cols = _block(orientation, size, i + 1)
    coefficients = series_minor(series, rows, cols, cap=size)
    nonzero = [j for j, p in enumerate(coefficients) if not p.is_zero()]
    if not nonzero or nonzero[0] + 1 > size:
        return None
    k = nonzero[0]
    return SphericalExpansion(
        i=i,
        k=k,
        s0=coefficients[k],
        s1=coefficients[k + 1],
        include_cartan=include_cartan,
        orientation=orientation,
    )


@lru_cache(maxsize=None)
def select_orientation(rank: int, max_series_size: int = 8) -> Orientation:
    """
    The corner whose lowest coefficients have weight varpi'_i and are
    N-invariant for every i.

    Raises:
        VerificationError: when neither corner qualifies
    """
    system = build_root_system("A", rank)
    ctx = make_context(system, "nilpotent")
    for orientation in Orientation:
        good = True
        for i in range(rank):
            expansion = _expand(system, i, False, orientation, max_series_size)
            if expansion is None:
                good = False
                break
            if ctx.weight_of(expansion.s0) != varpi_prime(system, i).as_root():
                good = False
                break
            if not verify_ad_invariance(expansion.s0, ctx, "nilpotent"):
                good = False
                break
        if good:
            logger.debug(f"A{rank}: corner minors use the {orientation.value} block")
            return orientation
    raise VerificationError(f"A{rank}: no corner orientation gives invariant lowest coefficients")


def spherical_expansion(
    system: RootSystem,
    i: int,
    include_cartan: bool = False,
    max_series_size: int = 8,
) -> SphericalExpansion:
    """
    Lowest degree k and coefficients S_i0, S_i1 of the i-th corner minor (0-based i).

    Raises:
        OracleScopeError: for types other than A
    """
    _require_type_a(system)
    if not 0 <= i < system.rank:
        raise ValueError(f"fundamental index {i + 1} out of range for {system.label}")
    orientation = select_orientation(system.rank, max_series_size)
    expansion = _expand(system, i, include_cartan, orientation, max_series_size)
    if expansion is None:
        raise VerificationError(f"{system.label}: corner minor {i + 1} vanishes identically")
    return expansion


def lowest_coefficient_P(system: RootSystem, i: int, max_series_size: int = 8) -> Polynomial:
    """
    P_i = S_i0 of the nilpotent expansion.

    Raises:
        VerificationError: if P_i is not N-invariant
    """
    expansion = spherical_expansion(system, i, include_cartan=False, max_series_size=max_series_size)
    ctx = make_context(system, "nilpotent")
    if not verify_ad_invariance(expansion.s0, ctx, "nilpotent"):
        raise VerificationError(f"{system.label}: P_{i + 1} is not N-invariant")
    return expansion.s0


def _require_moved(system: RootSystem, i: int) -> None:
    _require_type_a(system)
    if system.rank < 2:
        raise OracleScopeError(f"{system.label} has w0 = -id; there are no J invariants")
    phi = diagram_automorphism_phi(system)
    if phi[i] == i:
        raise OracleScopeError(f"phi fixes index {i + 1} of {system.label}; J_{i + 1} is not an invariant")


def compute_J(system: RootSystem, i: int, max_series_size: int = 8) -> RationalFunction:
    """
    J_i = S_i1 / S_i0 over the Borel variables.

    Raises:
        OracleScopeError: outside type A or for a phi-fixed index
        VerificationError: if J_i is not B-invariant
    """
    _require_moved(system, i)
    expansion = spherical_expansion(system, i, include_cartan=True, max_series_size=max_series_size)
    j = RationalFunction.quotient(expansion.s1, expansion.s0)
    ctx = make_context(system, "borel")
    if not verify_ad_invariance(j, ctx, "borel"):
        raise VerificationError(f"{system.label}: J_{i + 1} is not B-invariant")
    return j


def L_form(system: RootSystem, L: Weight, ctx: PoissonContext) -> Polynomial:
    """L(y) = sum_j (L, alpha_j) h_j."""
    total = Polynomial.zero(ctx.nvars)
    for j, alpha in enumerate(system.simple_roots):
        c = system.inner_product(L, alpha)
        if c:
            total = total + ctx.h(j).scale(c)
    return total


def check_S1_structure(system: RootSystem, i: int, max_series_size: int = 8) -> S1Structure:
    """
    Split S_i1 into its y-linear part and its y-free part R_i.

    Raises:
        OracleScopeError: outside type A or for a phi-fixed index
        VerificationError: when the y-part is not L_i(y) S_i0(x)
    """
    _require_moved(system, i)
    expansion = spherical_expansion(system, i, include_cartan=True, max_series_size=max_series_size)
    ctx = make_context(system, "borel")
    h_positions = ctx.h_indices

    y_terms, free_terms = {}, {}
    for exponents, c in expansion.s1.terms():
        h_degree = sum(exponents[k] for k in h_positions)
        if h_degree == 0:
            free_terms[exponents] = c
        elif h_degree == 1:
            y_terms[exponents] = c
        else:
            raise VerificationError(f"{system.label}: S_{i + 1},1 has a term of degree {h_degree} in y")
    if any(exponents[k] for exponents, _ in expansion.s0.terms() for k in h_positions):
        raise VerificationError(f"{system.label}: S_{i + 1},0 depends on the Cartan variables")

    varpi = system.fundamental_weights[i]
    L = (varpi + w0_image(system, varpi)).scale(Fraction(1, 2))
    form = L_form(system, L, ctx)
    y_part = Polynomial(ctx.nvars, y_terms)
    if y_part != form * expansion.s0:
        raise VerificationError(
            f"{system.label}: y-part of S_{i + 1},1 is {y_part.format(ctx.names)}, "
            f"expected ({form.format(ctx.names)}) * S_{i + 1},0"
        )
    return S1Structure(i=i, L=L, L_form=form, y_part=y_part, R=Polynomial(ctx.nvars, free_terms))


def semi_invariance_defects(system: RootSystem, i: int, max_series_size: int = 8) -> List[int]:
    """Cartan indices j with {h_j, S_i0} != varpi'_i(h_j) S_i0 in the Borel context."""
    expansion = spherical_expansion(system, i, include_cartan=True, max_series_size=max_series_size)
    ctx = make_context(system, "borel")
    weight = varpi_prime(system, i).as_root()
    return [
        j for j in range(system.rank)
        if poisson_bracket(ctx.h(j), expansion.s0, ctx) != expansion.s0.scale(weight[j])
    ]


def borel_zero_term_matches(system: RootSystem, i: int, max_series_size: int = 8) -> bool:
    """S_i0 of the Borel expansion equals the nilpotent one (after dropping the h variables)."""
    borel = spherical_expansion(system, i, include_cartan=True, max_series_size=max_series_size)
    nilpotent = spherical_expansion(system, i, include_cartan=False, max_series_size=max_series_size)
    n = system.dim_n
    if any(any(e[n:]) for e, _ in borel.s0.terms()):
        return False
    restricted = Polynomial(n, {e[:n]: c for e, c in borel.s0.terms()})
    return restricted == nilpotent.s0


def proportional(a: Polynomial, b: Polynomial) -> bool:
    """a = c * b for a nonzero scalar c."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.scale(b.leading_coefficient) == b.scale(a.leading_coefficient)


def oracle_agreement(
    system: RootSystem,
    qs: Sequence[Polynomial],
    q_rows: Sequence[int],
    max_series_size: int = 8,
) -> Dict[int, Optional[str]]:
    """
    Compare P_i with the generator Q of the same row.

    Maps each row to "Q" or "Q^2" by the relation found, or None when P_i is
    neither a multiple of Q nor of Q^2.
    """
    result: Dict[int, Optional[str]] = {}
    for q, i in zip(qs, q_rows):
        p = lowest_coefficient_P(system, i, max_series_size=max_series_size)
        if proportional(p, q):
            result[i] = "Q"
        elif proportional(p, q * q):
            result[i] = "Q^2"
        else:
            result[i] = None
            logger.warning(f"{system.label}: P_{i + 1} is not a multiple of Q or Q^2")
    return result
