"""
Invariants of the Borel subalgebra acting on b^*.

Polynomial invariants are trivial. The invariant field is trivial when
w0 = -id, and otherwise generated by the J_i (i in the A-set), which the type-A
oracle computes explicitly. Rank and level-set checks are exact evaluations
at seeded generic points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from core.errors import VerificationError
from core.logging_config import get_logger

from . import linalg
from .cascade import Cascade, kostant_cascade
from .polyalg import Element, Polynomial, PoissonContext, RationalFunction, make_context
from .reduction import brute_force_invariants, jacobian_matrix, jacobian_rank, poisson_generic_rank
from .rootsys import RootSystem, Weight, diagram_automorphism_phi
from .sampling import PointSampler
from .spherical import compute_J
from .weight_table import KTable, L_weights, compute_ktable, select_A_set

logger = get_logger(__name__)

TRIVIAL = "trivial"
COMPUTED = "computed"
OUT_OF_SCOPE = "out_of_scope"


@dataclass(frozen=True)
class BorelContext:
    """The Borel Poisson context with the cascade data it is studied against."""

    ctx: PoissonContext = field(repr=False)
    cascade: Cascade
    ktable: KTable

    @property
    def system(self) -> RootSystem:
        return self.ctx.system

    @property
    def a_set(self) -> Tuple[int, ...]:
        return self.ktable.a_set

    @property
    def index(self) -> int:
        return len(self.a_set)

    def consistency_defects(self) -> List[str]:
        """Brackets disagreeing with the nilpotent context or with {h_j, e_a} = a(h_j) e_a."""
        nilpotent = make_context(self.system, "nilpotent")
        defects = []
        for a in range(nilpotent.nvars):
            for b in range(nilpotent.nvars):
                expected = lift_to_borel(_bracket_variables(nilpotent, a, b), self.ctx)
                if _bracket_variables(self.ctx, a, b) != expected:
                    defects.append(f"{{{nilpotent.names[a]}, {nilpotent.names[b]}}}")
        for j in range(self.system.rank):
            for root in self.system.positive_roots:
                k = self.ctx.root_variable_index(root)
                if _bracket_variables(self.ctx, self.ctx.h_index(j), k) != self.ctx.variable(k).scale(root[j]):
                    defects.append(f"{{h{j + 1}, {self.ctx.names[k]}}}")
        return defects


def _bracket_variables(ctx: PoissonContext, a: int, b: int) -> Polynomial:
    total = Polynomial.zero(ctx.nvars)
    for left, right, k, c in ctx.table:
        if left == a and right == b:
            total = total + ctx.variable(k).scale(c)
    return total


def borel_context(system: RootSystem) -> BorelContext:
    cascade = kostant_cascade(system)
    return BorelContext(ctx=make_context(system, "borel"), cascade=cascade, ktable=compute_ktable(system, cascade))


def lift_to_borel(f: Element, ctx: PoissonContext) -> Element:
    """Read an element over the n-variables as one over the b-variables (h's appended last)."""
    extra = ctx.nvars - f.nvars
    if extra < 0:
        raise ValueError(f"cannot lift an element over {f.nvars} variables into {ctx.nvars}")

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(ctx.nvars, {e + (0,) * extra: c for e, c in p.terms()})

    if isinstance(f, RationalFunction):
        return RationalFunction(lift(f.numerator), tuple((lift(g), e) for g, e in f.factors))
    return lift(f)


@dataclass(frozen=True)
class PolynomialInvariantReport:
    flavor: str
    degree_bound: int
    basis: Tuple[Polynomial, ...]

    @property
    def constants_only(self) -> bool:
        return not self.basis


def no_polynomial_invariants_check(
    ctx: PoissonContext,
    degree_bound: int,
    max_monomials: int = 100000,
    generators: str = "all",
) -> PolynomialInvariantReport:
    """
    Exact kernel of all generator brackets on polynomials of degree <= d.

    In a Borel context the kernel is the constants. A nilpotent context is
    accepted too, and then finds the cascade invariants.

    Raises:
        GuardExceededError: when the monomial space exceeds ``max_monomials``
    """
    basis = brute_force_invariants(ctx, degree_bound, max_monomials=max_monomials, generators=generators)
    report = PolynomialInvariantReport(flavor=ctx.flavor, degree_bound=degree_bound, basis=tuple(basis))
    logger.info(
        f"{ctx.system.label} ({ctx.flavor}): "
        f"{'constants only' if report.constants_only else f'{len(basis)} invariants'} up to degree {degree_bound}"
    )
    return report


@dataclass(frozen=True)
class FieldInvariantReport:
    status: str
    a_set: Tuple[int, ...]
    L: Dict[int, Weight]
    invariants: Tuple[RationalFunction, ...] = ()
    jacobian_rank: int | None = None

    @property
    def expected_count(self) -> int:
        return len(self.a_set)

    @property
    def independent(self) -> bool | None:
        if self.jacobian_rank is None:
            return None
        return self.jacobian_rank == self.expected_count


def borel_field_invariants(
    system: RootSystem,
    seed: int = 0,
    coordinate_bound: int = 99,
    max_retries: int = 50,
    max_series_size: int = 8,
) -> FieldInvariantReport:
    """
    Generators of the invariant field of b^*.

    Empty when w0 = -id. For type A these are the J_i, verified B-invariant,
    of weight zero and algebraically independent at a seeded generic point.
    Other types with w0 != -id get the A-set and L_i only.

    Raises:
        VerificationError: when a J_i is not invariant or not of weight zero
    """
    phi = diagram_automorphism_phi(system)
    a_set = select_A_set(phi)
    L = L_weights(system, a_set)
    if not a_set:
        logger.info(f"{system.label}: w0 = -id, the invariant field of b^* is trivial")
        return FieldInvariantReport(status=TRIVIAL, a_set=a_set, L=L)
    if system.type_label != "A":
        logger.info(f"{system.label}: {len(a_set)} field invariants expected, outside the type-A oracle")
        return FieldInvariantReport(status=OUT_OF_SCOPE, a_set=a_set, L=L)

    ctx = make_context(system, "borel")
    js = tuple(compute_J(system, i, max_series_size=max_series_size) for i in a_set)
    zero = (0,) * system.rank
    for i, j in zip(a_set, js):
        if ctx.weight_of(j) != zero:
            raise VerificationError(f"{system.label}: J_{i + 1} has weight {ctx.weight_of(j)}, expected 0")
    sampler = PointSampler(seed=seed, bound=coordinate_bound)
    point = sampler.generic_point(ctx.nvars, avoid=[j.denominator for j in js], max_retries=max_retries)
    rank = jacobian_rank(js, point, ctx.nvars)
    report = FieldInvariantReport(status=COMPUTED, a_set=a_set, L=L, invariants=js, jacobian_rank=rank)
    logger.info(f"{system.label}: {len(js)} J invariants, Jacobian rank {rank}")
    return report


@dataclass(frozen=True)
class IndexReport:
    rank: int
    dimension: int
    index: int

    @property
    def expected_rank(self) -> int:
        return self.dimension - self.index

    @property
    def passed(self) -> bool:
        return self.rank == self.expected_rank


def borel_index_check(bctx: BorelContext, point: Sequence[Fraction]) -> IndexReport:
    """Rank of the Borel Poisson matrix at a generic point against dim b - |A|."""
    rank = poisson_generic_rank(bctx.ctx, point)
    return IndexReport(rank=rank, dimension=bctx.ctx.nvars, index=bctx.index)


@dataclass(frozen=True)
class LevelSetReport:
    poisson_rank: int
    expected_rank: int
    jacobian_rank: int
    invariant_count: int
    tangent: bool

    @property
    def passed(self) -> bool:
        return (
            self.poisson_rank == self.expected_rank
            and self.jacobian_rank == self.invariant_count
            and self.tangent
        )


def orbit_level_set_check(ctx: PoissonContext, point: Sequence[Fraction], invariants: Sequence[Element]) -> LevelSetReport:
    """
    Dimension bookkeeping for the level set of ``invariants`` through ``point``.

    The orbit has dimension rank P(point); the level set has codimension
    rank of the differentials. They agree when rank P = N - #invariants and the
    differentials are independent. The differentials must also annihilate the
    image of P, so orbit directions stay inside the level set.
    """
    poisson = ctx.poisson_matrix(point)
    rank = linalg.rank(poisson)
    jrank = jacobian_rank(invariants, point, ctx.nvars)
    tangent = True
    if invariants:
        gradients = jacobian_matrix(invariants, point, ctx.nvars)
        product = linalg.matrix(gradients, ctx.nvars) * linalg.matrix(poisson, ctx.nvars)
        tangent = all(entry == 0 for entry in product)
    return LevelSetReport(
        poisson_rank=rank,
        expected_rank=ctx.nvars - len(invariants),
        jacobian_rank=jrank,
        invariant_count=len(invariants),
        tangent=tangent,
    )


def generic_borel_point(
    bctx: BorelContext,
    sampler: PointSampler,
    avoid: Sequence[Element] = (),
    max_retries: int = 50,
) -> Tuple[Fraction, ...]:
    """A point of b^* where every element of ``avoid`` (over n- or b-variables) is nonzero."""
    lifted = [lift_to_borel(f, bctx.ctx) for f in avoid]
    return sampler.generic_point(bctx.ctx.nvars, avoid=lifted, max_retries=max_retries)
