"""
Iterated reduction along the cascade.

At every cascade root xi the singular roots pair up into a Heisenberg frame
around z = e_xi. Each surviving root vector e_beta acts on the frame as a
derivation; its Hamiltonian a_beta = z^-1 * (quadratic form) is found by an
exact linear solve, and e_beta - a_beta commutes with the whole frame. Pushing
every surviving root vector through these corrections level by level yields
the invariants Z_1..Z_m; the generators Q_i are monomials in the Z's whose
exponents come from the k'-table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from core.errors import GuardExceededError, VerificationError
from core.logging_config import get_logger

from . import linalg
from .cascade import Cascade, CascadeStep, kostant_cascade
from .polyalg import (
    Element,
    Polynomial,
    PoissonContext,
    RationalFunction,
    as_rational,
    clear_to_polynomial,
    make_context,
    poisson_bracket,
)
from .rootsys import Root, RootSystem, Weight
from .weight_table import KTable, compute_ktable

logger = get_logger(__name__)

RESIDUAL_ORDERS = ("height", "reverse")


def _add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class HeisenbergFrame:
    """z = e_xi and the pairs (x_k, y_k) with {x_k, y_k} = c_k z."""

    ctx: PoissonContext = field(repr=False, compare=False)
    z: Root
    v_pairs: Tuple[Tuple[Root, Root], ...]
    pair_constants: Tuple[Fraction, ...]
    residual: Tuple[Root, ...]

    @property
    def v_roots(self) -> Tuple[Root, ...]:
        roots = [r for pair in self.v_pairs for r in pair]
        index = self.ctx.system.root_index
        return tuple(sorted(roots, key=index.__getitem__))

    def omega(self, a: Root, b: Root) -> Fraction:
        """{x_a, x_b} / z inside the frame."""
        if _add(a, b) != self.z:
            return Fraction(0)
        return self.ctx.constants.N(a, b)


def heisenberg_frame(ctx: PoissonContext, xi: Root, step: Optional[CascadeStep] = None) -> HeisenbergFrame:
    """
    Frame around a cascade root.

    Raises:
        VerificationError: if the singular roots do not pair up as alpha <-> xi - alpha
    """
    system = ctx.system
    xi = tuple(xi)
    if step is None:
        step = kostant_cascade(system).step_for(xi)
    singular = set(step.singular)
    index = system.root_index
    pairs = []
    constants = []
    for alpha in sorted(singular, key=index.__getitem__):
        partner = _sub(xi, alpha)
        if partner not in singular:
            raise VerificationError(f"{system.label}: singular root {alpha} of {xi} has no partner")
        if index[alpha] < index[partner]:
            pairs.append((alpha, partner))
            constants.append(ctx.constants.N(alpha, partner))
    if 2 * len(pairs) != len(singular):
        raise VerificationError(f"{system.label}: {len(singular)} singular roots of {xi} do not pair up")
    return HeisenbergFrame(
        ctx=ctx,
        z=xi,
        v_pairs=tuple(pairs),
        pair_constants=tuple(constants),
        residual=step.residual,
    )


Derivation = Mapping[Root, Mapping[Root, Fraction]]


def derivation_of(frame: HeisenbergFrame, beta: Root) -> Dict[Root, Dict[Root, Fraction]]:
    """ad e_beta on the frame: v -> N_{beta,v} e_{beta+v}."""
    system = frame.ctx.system
    result: Dict[Root, Dict[Root, Fraction]] = {}
    for v in frame.v_roots:
        target = _add(beta, v)
        if system.is_positive_root(target):
            result[v] = {target: frame.ctx.constants.N(beta, v)}
    return result


def solve_quadratic_form(frame: HeisenbergFrame, derivation: Derivation) -> Dict[Tuple[Root, Root], Fraction]:
    """
    Coefficients c_ab (a <= b in frame order) with {z^-1 sum c_ab x_a x_b, x_c} = D(x_c).

    Raises:
        VerificationError: when D is not a derivation of the frame
    """
    v = frame.v_roots
    allowed = set(v)
    for source, image in derivation.items():
        if source not in allowed or not set(image) <= allowed:
            raise VerificationError(f"derivation moves {source} outside the frame of {frame.z}")
    unknowns = [(a, b) for i, a in enumerate(v) for b in v[i:]]
    if not derivation or not any(any(img.values()) for img in derivation.values()):
        return {}
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for c in v:
        image = derivation.get(c, {})
        for d in v:
            row = []
            for a, b in unknowns:
                coefficient = Fraction(0)
                if d == a:
                    coefficient += frame.omega(b, c)
                if d == b:
                    coefficient += frame.omega(a, c)
                row.append(coefficient)
            rows.append(row)
            rhs.append(Fraction(image.get(d, 0)))
    try:
        solution = linalg.solve_unique(rows, rhs)
    except VerificationError as exc:
        raise VerificationError(f"not a derivation of the frame around {frame.z}: {exc}") from exc
    return {pair: value for pair, value in zip(unknowns, solution) if value}


def _quadratic_image(
    frame: HeisenbergFrame,
    coefficients: Mapping[Tuple[Root, Root], Fraction],
    images: Mapping[Root, Element],
) -> RationalFunction:
    ctx = frame.ctx
    total = RationalFunction(Polynomial.zero(ctx.nvars))
    if not coefficients:
        return total
    top = RationalFunction(Polynomial.zero(ctx.nvars))
    for (a, b), c in coefficients.items():
        top = top + as_rational(images[a]) * as_rational(images[b]) * c
    return top / as_rational(images[frame.z])


def _identity_images(ctx: PoissonContext) -> Dict[Root, Polynomial]:
    return {root: ctx.e(root) for root in ctx.system.positive_roots}


def hamiltonian_of_derivation(
    frame: HeisenbergFrame,
    derivation: Derivation,
    images: Optional[Mapping[Root, Element]] = None,
) -> RationalFunction:
    """a_D = z^-1 * q(V) with {a_D, v} = D(v) on the frame and {a_D, z} = 0, written in ``images``."""
    coefficients = solve_quadratic_form(frame, derivation)
    return _quadratic_image(frame, coefficients, images if images is not None else _identity_images(frame.ctx))


def embed_complement(
    frame: HeisenbergFrame,
    beta: Root,
    images: Optional[Mapping[Root, Element]] = None,
    check: bool = True,
) -> RationalFunction:
    """
    e~_beta = e_beta - a_beta, commuting with every frame variable.

    ``images`` maps roots to their current images (the identity by default).

    Raises:
        VerificationError: if beta is a frame root or the commutation check fails
    """
    beta = tuple(beta)
    if beta == frame.z or beta in frame.v_roots:
        raise VerificationError(f"{beta} belongs to the frame around {frame.z}")
    images = images if images is not None else _identity_images(frame.ctx)
    correction = hamiltonian_of_derivation(frame, derivation_of(frame, beta), images)
    embedded = as_rational(images[beta])
    if not correction.is_zero():
        embedded = embedded - correction
    if check:
        for root in (frame.z,) + frame.v_roots:
            if not poisson_bracket(embedded, images[root], frame.ctx).is_zero():
                raise VerificationError(f"e~{beta} does not commute with the frame variable {root}")
    return embedded


def _normalized(f: Element) -> Element:
    lead = f.numerator.leading_coefficient if isinstance(f, RationalFunction) else f.leading_coefficient
    return f.scale(1 / lead)


@dataclass
class InvariantSet:
    """Z_1..Z_m, the generators Q and where each came from."""

    cascade: Cascade
    ktable: KTable
    zs: List[RationalFunction]
    qs: List[Polynomial] = field(default_factory=list)
    q_rows: Tuple[int, ...] = ()
    z_steps: Tuple[int, ...] = ()

    def q_weight(self, position: int) -> Weight:
        return self.ktable.eta(self.cascade, self.q_rows[position])


def reduction_guard(system: RootSystem, max_reduction_dim: int, force: bool) -> None:
    if system.dim_n > max_reduction_dim and not force:
        raise GuardExceededError(
            f"{system.label}: reduction over dim n = {system.dim_n} exceeds the guard {max_reduction_dim}; "
            f"pass --force to attempt it",
            size_report={"algebra": system.label, "dim_n": system.dim_n, "max_reduction_dim": max_reduction_dim},
        )


def cascade_invariants(
    system: RootSystem,
    residual_order: str = "height",
    verify: bool = True,
    generators: str = "all",
    max_reduction_dim: int = 36,
    force: bool = False,
    cascade: Optional[Cascade] = None,
) -> List[RationalFunction]:
    """
    Z_1..Z_m in the coordinates of n^*, each normalized to leading coefficient +1.

    Raises:
        GuardExceededError: when dim n exceeds ``max_reduction_dim`` and ``force`` is not set
        VerificationError: when a Z_i fails the invariance check
    """
    if residual_order not in RESIDUAL_ORDERS:
        raise ValueError(f"unknown residual order {residual_order!r}; expected one of {RESIDUAL_ORDERS}")
    reduction_guard(system, max_reduction_dim, force)
    ctx = make_context(system, "nilpotent")
    cascade = cascade or kostant_cascade(system)

    images: Dict[Root, Element] = dict(_identity_images(ctx))
    alive = set(system.positive_roots)
    raw_zs: List[RationalFunction] = []
    for position, step in enumerate(cascade.steps):
        frame = heisenberg_frame(ctx, step.xi, step)
        raw_zs.append(as_rational(images[step.xi]))
        alive -= {step.xi, *step.singular}
        order = sorted(alive, key=lambda r: (sum(r), r), reverse=residual_order == "reverse")
        updated = {beta: embed_complement(frame, beta, images, check=False) for beta in order}
        images.update(updated)
        logger.debug(f"{system.label}: level step {position + 1}/{cascade.m} at xi={step.xi}, {len(updated)} roots re-embedded")

    zs = [_normalized(z) for z in raw_zs]
    if verify:
        for i, z in enumerate(zs):
            if not verify_ad_invariance(z, ctx, "nilpotent", generators):
                raise VerificationError(f"{system.label}: Z_{i + 1} is not N-invariant")
            weight = ctx.weight_of(z)
            if weight != cascade.xis[i]:
                raise VerificationError(f"{system.label}: Z_{i + 1} has weight {weight}, expected {cascade.xis[i]}")
    logger.info(f"{system.label}: constructed {len(zs)} cascade invariants")
    return zs


def assemble_Q(
    zs: Sequence[RationalFunction],
    ktable: KTable,
    rows: Optional[Sequence[int]] = None,
) -> List[Polynomial]:
    """
    Q_i = prod_j Z_j^{k'_ij} on the selected rows, cleared to polynomials.

    Raises:
        VerificationError: when a product does not clear to a polynomial
    """
    rows = ktable.selected_rows if rows is None else rows
    qs = []
    for i in rows:
        product = RationalFunction(Polynomial.constant(zs[0].nvars, 1))
        for z, exponent in zip(zs, ktable.k_prime[i]):
            if exponent:
                product = product * (z ** exponent)
        cleared = clear_to_polynomial(product)
        if cleared is None:
            raise VerificationError(f"Q for varpi'_{i + 1} does not clear to a polynomial: {product.format()}")
        qs.append(_normalized(cleared))
    return qs


def compute_invariant_set(
    system: RootSystem,
    verify: bool = True,
    generators: str = "all",
    max_reduction_dim: int = 36,
    force: bool = False,
) -> InvariantSet:
    """Z's, Q's and the bookkeeping for one algebra."""
    cascade = kostant_cascade(system)
    ktable = compute_ktable(system, cascade)
    zs = cascade_invariants(
        system,
        verify=verify,
        generators=generators,
        max_reduction_dim=max_reduction_dim,
        force=force,
        cascade=cascade,
    )
    qs = assemble_Q(zs, ktable)
    invariant_set = InvariantSet(
        cascade=cascade,
        ktable=ktable,
        zs=zs,
        qs=qs,
        q_rows=ktable.selected_rows,
        z_steps=tuple(range(cascade.m)),
    )
    if verify:
        ctx = make_context(system, "nilpotent")
        for position, q in enumerate(qs):
            if not verify_ad_invariance(q, ctx, "nilpotent", generators):
                raise VerificationError(f"{system.label}: Q_{position + 1} is not N-invariant")
            expected = invariant_set.q_weight(position).as_root()
            if ctx.weight_of(q) != expected:
                raise VerificationError(f"{system.label}: Q_{position + 1} has weight {ctx.weight_of(q)}, expected {expected}")
    return invariant_set


def verify_ad_invariance(
    f: Element,
    ctx: PoissonContext,
    subalgebra: str = "nilpotent",
    generators: str = "all",
) -> bool:
    """True iff {v, f} = 0 for every generator v of the chosen subalgebra."""
    if subalgebra not in ("nilpotent", "borel"):
        raise ValueError(f"unknown subalgebra {subalgebra!r}")
    if subalgebra == "borel" and ctx.flavor != "borel":
        raise ValueError("borel invariance needs a borel context")
    indices = ctx.generator_indices(generators)
    if subalgebra == "nilpotent":
        indices = tuple(k for k in indices if k in ctx.e_indices)
    for k in indices:
        if not poisson_bracket(ctx.variable(k), f, ctx).is_zero():
            logger.debug(f"bracket with {ctx.names[k]} does not vanish")
            return False
    return True


def monomial_count(nvars: int, degree_bound: int) -> int:
    """Monomials of degree <= d in N variables: C(N + d, d)."""
    return comb(nvars + degree_bound, degree_bound)


def brute_force_invariants(
    ctx: PoissonContext,
    degree_bound: int,
    max_monomials: int = 100000,
    generators: str = "all",
) -> List[Polynomial]:
    """
    Basis of the invariant polynomials of positive degree <= d, one
    (degree, weight) component at a time. Constants are implicit.

    Raises:
        GuardExceededError: when the monomial space exceeds ``max_monomials``
    """
    count = monomial_count(ctx.nvars, degree_bound)
    if count > max_monomials:
        raise GuardExceededError(
            f"{count} monomials of degree <= {degree_bound} in {ctx.nvars} variables exceed the guard {max_monomials}",
            size_report={"nvars": ctx.nvars, "degree_bound": degree_bound, "monomials": count, "max_monomials": max_monomials},
        )
    subalgebra = "borel" if ctx.flavor == "borel" else "nilpotent"
    indices = ctx.generator_indices(generators)
    if subalgebra == "nilpotent":
        indices = tuple(k for k in indices if k in ctx.e_indices)
    basis: List[Polynomial] = []
    for degree in range(1, degree_bound + 1):
        components: Dict[Root, List[Tuple[int, ...]]] = {}
        for combo in combinations_with_replacement(range(ctx.nvars), degree):
            exponents = [0] * ctx.nvars
            for k in combo:
                exponents[k] += 1
            exponents = tuple(exponents)
            components.setdefault(ctx.monomial_weight(exponents), []).append(exponents)
        for weight, monomials in sorted(components.items()):
            images = [
                [poisson_bracket(ctx.variable(k), Polynomial.monomial(m), ctx) for k in indices]
                for m in monomials
            ]
            targets = sorted({
                (g, e) for column in images for g, image in enumerate(column) for e, _ in image.terms()
            })
            rows = [[column[g].coefficient(e) for column in images] for g, e in targets]
            for vector in linalg.nullspace(rows, len(monomials)):
                poly = Polynomial(ctx.nvars, {m: c for m, c in zip(monomials, vector) if c})
                basis.append(_normalized(poly))
        logger.debug(f"degree {degree}: {len(basis)} invariants so far")
    return basis


def express_in_generators(f: Polynomial, qs: Sequence[Polynomial], ctx: PoissonContext) -> Optional[Polynomial]:
    """
    Write a homogeneous, weight-homogeneous f as a polynomial in the Q's.

    Returns a polynomial over len(qs) variables, or None when f is not in the
    subring generated by the Q's.
    """
    if f.is_zero():
        return Polynomial.zero(len(qs))
    degree = f.degree()
    weight = ctx.weight_of(f)
    if weight is None or not f.is_homogeneous():
        return None
    q_degrees = [q.degree() for q in qs]
    q_weights = [ctx.weight_of(q) for q in qs]

    candidates: List[Tuple[int, ...]] = []

    def extend(prefix: List[int], remaining: int) -> None:
        position = len(prefix)
        if position == len(qs):
            if remaining == 0:
                total = [0] * ctx.system.rank
                for e, w in zip(prefix, q_weights):
                    total = [t + e * c for t, c in zip(total, w)]
                if tuple(total) == weight:
                    candidates.append(tuple(prefix))
            return
        for e in range(remaining // q_degrees[position] + 1):
            extend(prefix + [e], remaining - e * q_degrees[position])

    extend([], degree)
    if not candidates:
        return None
    products = []
    for exponents in candidates:
        product = Polynomial.constant(ctx.nvars, 1)
        for q, e in zip(qs, exponents):
            if e:
                product = product * (q ** e)
        products.append(product)
    monomials = sorted({e for p in products for e, _ in p.terms()} | {e for e, _ in f.terms()})
    rows = [[p.coefficient(m) for p in products] for m in monomials]
    rhs = [f.coefficient(m) for m in monomials]
    try:
        solution = linalg.solve_unique(rows, rhs)
    except VerificationError:
        return None
    return Polynomial(len(qs), {e: c for e, c in zip(candidates, solution) if c})


def poisson_generic_rank(ctx: PoissonContext, point: Sequence[Fraction]) -> int:
    """Rank of ({x_a, x_b}(point))."""
    return linalg.rank(ctx.poisson_matrix(point))


def jacobian_matrix(fs: Sequence[Element], point: Sequence[Fraction], nvars: int) -> List[List[Fraction]]:
    rows = []
    for f in fs:
        f = as_rational(f)
        numerators, shared = f.gradient_numerators()
        denominator = Fraction(1)
        for g, e in shared:
            denominator *= g.evaluate(point) ** e
        rows.append([
            numerators[k].evaluate(point) / denominator if k in numerators else Fraction(0)
            for k in range(nvars)
        ])
    return rows


def jacobian_rank(fs: Sequence[Element], point: Sequence[Fraction], nvars: int) -> int:
    """Rank of the differentials of ``fs`` at ``point``."""
    if not fs:
        return 0
    return linalg.rank(jacobian_matrix(fs, point, nvars))
