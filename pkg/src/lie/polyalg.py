"""
Exact sparse polynomials, rational functions with factored denominators, and
the linear Poisson bracket of a nilpotent or Borel subalgebra.

Polynomials are maps exponent-tuple -> Fraction over a fixed variable order.
The canonical term order is graded lexicographic, descending, so the first
term is the leading term. Rational functions keep their denominator as a list
of (monic polynomial, exponent) pairs; cancellation only ever tries exact
division by those tracked factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import PoleError
from core.logging_config import get_logger

from .liealg import BasisElement, StructureConstants, borel_basis, chevalley_constants
from .rootsys import Root, RootSystem

logger = get_logger(__name__)

Exponents = Tuple[int, ...]
Scalar = Union[Fraction, int]
Point = Union[Sequence[Scalar], Mapping[int, Scalar]]

FLAVORS = ("nilpotent", "borel")


def _order_key(exponents: Exponents) -> Tuple[int, Exponents]:
    return sum(exponents), exponents


def format_fraction(value: Fraction) -> str:
    """Rational as "p/q"; integers included."""
    return f"{value.numerator}/{value.denominator}"


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "_terms", "_ordered")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], Scalar]] = None):
        clean: Dict[Exponents, Fraction] = {}
        for exponents, coeff in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != nvars:
                raise ValueError(f"exponent vector {exponents} does not have {nvars} entries")
            coeff = Fraction(coeff)
            if coeff:
                clean[exponents] = clean.get(exponents, Fraction(0)) + coeff
        self.nvars = nvars
        self._terms = {e: c for e, c in clean.items() if c}
        self._ordered: Optional[Tuple[Tuple[Exponents, Fraction], ...]] = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponents, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._ordered = None
        return poly

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> "Polynomial":
        value = Fraction(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "Polynomial":
        exponents = [0] * nvars
        exponents[k] = 1
        return cls._raw(nvars, {tuple(exponents): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): coeff})

    # inspection

    def terms(self) -> Tuple[Tuple[Exponents, Fraction], ...]:
        """Terms in canonical (graded lex, descending) order."""
        if self._ordered is None:
            self._ordered = tuple(sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True))
        return self._ordered

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    @property
    def leading_term(self) -> Tuple[Exponents, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms()[0]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term[1]

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def support(self) -> Tuple[int, ...]:
        """Indices of the variables that occur."""
        used = set()
        for e in self._terms:
            used.update(k for k, v in enumerate(e) if v)
        return tuple(sorted(used))

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result = dict(self._terms)
        for e, c in other._terms.items():
            value = result.get(e, Fraction(0)) + c
            if value:
                result[e] = value
            else:
                result.pop(e, None)
        return Polynomial._raw(self.nvars, result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        result: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                result[e] = result.get(e, Fraction(0)) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def exact_divide(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """Quotient if ``divisor`` divides exactly, else None (leading-term division)."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = divisor.leading_term
        remainder = dict(self._terms)
        quotient: Dict[Exponents, Fraction] = {}
        while remainder:
            e = max(remainder, key=_order_key)
            if any(a < b for a, b in zip(e, lead_e)):
                return None
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = remainder[e] / lead_c
            quotient[qe] = qc
            for de, dc in divisor._terms.items():
                target = tuple(a + b for a, b in zip(qe, de))
                value = remainder.get(target, Fraction(0)) - qc * dc
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return Polynomial._raw(self.nvars, quotient)

    def monic(self) -> Tuple[Fraction, "Polynomial"]:
        """(c, p) with self == c * p and p monic."""
        c = self.leading_coefficient
        return c, self.scale(1 / c)

    def derivative(self, k: int) -> "Polynomial":
        result = {}
        for e, c in self._terms.items():
            if e[k]:
                lowered = list(e)
                lowered[k] -= 1
                result[tuple(lowered)] = c * e[k]
        return Polynomial._raw(self.nvars, result)

    def evaluate(self, point: Point) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for k, power in enumerate(e):
                if power:
                    term *= Fraction(point[k]) ** power
            total += term
        return total

    # comparison and output

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if isinstance(other, RationalFunction):
            return other == self
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def to_json(self) -> List[Dict[str, object]]:
        return [{"exponents": list(e), "coeff": format_fraction(c)} for e, c in self.terms()]

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{k}" for k in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            factors = [
                names[k] if p == 1 else f"{names[k]}^{p}"
                for k, p in enumerate(e) if p
            ]
            magnitude = abs(c)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


def _product(nvars: int, factors: Iterable[Tuple[Polynomial, int]]) -> Polynomial:
    result = Polynomial.constant(nvars, 1)
    for f, e in factors:
        if e:
            result = result * (f ** e)
    return result


def _decompose(g: Polynomial, basis: List[Polynomial]) -> Tuple[Fraction, Dict[int, int]]:
    """
    Write a nonzero polynomial as scalar * prod basis[i]^e_i.

    Basis elements are divided out greedily; a nonconstant remainder is made
    monic and appended to ``basis``.
    """
    exponents: Dict[int, int] = {}
    progress = True
    while progress and not g.is_constant():
        progress = False
        for idx, f in enumerate(basis):
            q = g.exact_divide(f)
            if q is not None:
                exponents[idx] = exponents.get(idx, 0) + 1
                g = q
                progress = True
                break
    if g.is_constant():
        return g.constant_value(), exponents
    c, monic = g.monic()
    basis.append(monic)
    exponents[len(basis) - 1] = exponents.get(len(basis) - 1, 0) + 1
    return c, exponents


class RationalFunction:
    """numerator / prod factor^exponent with monic, tracked denominator factors."""

    __slots__ = ("numerator", "factors")

    def __init__(self, numerator: Polynomial, factors: Sequence[Tuple[Polynomial, int]] = ()):
        self.numerator = numerator
        self.factors: Tuple[Tuple[Polynomial, int], ...] = tuple((f, e) for f, e in factors if e)

    @classmethod
    def from_polynomial(cls, poly: Polynomial) -> "RationalFunction":
        return cls(poly)

    @classmethod
    def quotient(cls, numerator: Polynomial, denominator: Polynomial) -> "RationalFunction":
        """numerator/denominator without any cancellation."""
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        c, monic = denominator.monic()
        if monic.is_constant():
            return cls(numerator.scale(1 / c))
        return cls(numerator.scale(1 / c), [(monic, 1)])

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def denominator(self) -> Polynomial:
        return _product(self.nvars, self.factors)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return not self.factors

    # normalization

    def reduced(self) -> "RationalFunction":
        """Cancel tracked denominator factors that divide the numerator."""
        if self.numerator.is_zero():
            return RationalFunction(Polynomial.zero(self.nvars))
        numerator = self.numerator
        kept = []
        for f, e in self.factors:
            while e:
                q = numerator.exact_divide(f)
                if q is None:
                    break
                numerator = q
                e -= 1
            if e:
                kept.append((f, e))
        return RationalFunction(numerator, kept)

    def _aligned(self, other: "RationalFunction") -> Tuple[List[Polynomial], Dict[int, int], Dict[int, int], Fraction]:
        """Common factor basis; returns (basis, self exps, other exps, other's scalar)."""
        basis = [f for f, _ in self.factors]
        mine = {i: e for i, (_, e) in enumerate(self.factors)}
        theirs: Dict[int, int] = {}
        scalar = Fraction(1)
        for g, e in other.factors:
            c, parts = _decompose(g, basis)
            scalar *= c ** e
            for idx, power in parts.items():
                theirs[idx] = theirs.get(idx, 0) + power * e
        return basis, mine, theirs, scalar

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError(f"variable mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(self.numerator._coerce(other))
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial.constant(self.nvars, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self.reduced()
        if self.is_zero():
            return other.reduced()
        basis, mine, theirs, scalar = self._aligned(other)
        top = {i: max(mine.get(i, 0), theirs.get(i, 0)) for i in range(len(basis))}
        left = self.numerator * _product(self.nvars, ((basis[i], top[i] - mine.get(i, 0)) for i in top))
        right = other.numerator.scale(1 / scalar) * _product(
            self.nvars, ((basis[i], top[i] - theirs.get(i, 0)) for i in top)
        )
        return RationalFunction(left + right, [(basis[i], top[i]) for i in top]).reduced()

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.factors)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Scalar) -> "RationalFunction":
        return RationalFunction(self.numerator.scale(factor), self.factors if factor else ())

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalFunction(Polynomial.zero(self.nvars))
        basis, mine, theirs, scalar = self._aligned(other)
        exps = {i: mine.get(i, 0) + theirs.get(i, 0) for i in range(len(basis))}
        numerator = (self.numerator * other.numerator).scale(1 / scalar)
        return RationalFunction(numerator, [(basis[i], exps[i]) for i in range(len(basis))]).reduced()

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        flipped = RationalFunction.quotient(Polynomial.constant(self.nvars, 1), self.numerator)
        return flipped * RationalFunction(_product(self.nvars, self.factors))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = RationalFunction(Polynomial.constant(self.nvars, 1))
        for _ in range(exponent):
            result = result * self
        return result

    # calculus

    def gradient_numerators(self, variables: Optional[Iterable[int]] = None) -> Tuple[Dict[int, Polynomial], Tuple[Tuple[Polynomial, int], ...]]:
        """
        Numerators of all partial derivatives over the shared denominator
        prod f^(e+1); returns ({k: numerator_k}, shared factors).
        """
        variables = range(self.nvars) if variables is None else variables
        plain = _product(self.nvars, ((f, 1) for f, _ in self.factors))
        cofactors = [
            _product(self.nvars, ((g, 1) for j, (g, _) in enumerate(self.factors) if j != i))
            for i in range(len(self.factors))
        ]
        numerators = {}
        for k in variables:
            value = self.numerator.derivative(k) * plain
            for (f, e), cofactor in zip(self.factors, cofactors):
                df = f.derivative(k)
                if not df.is_zero():
                    value = value - (self.numerator * df * cofactor).scale(e)
            if not value.is_zero():
                numerators[k] = value
        return numerators, tuple((f, e + 1) for f, e in self.factors)

    def partial(self, k: int) -> "RationalFunction":
        numerators, shared = self.gradient_numerators([k])
        return RationalFunction(numerators.get(k, Polynomial.zero(self.nvars)), shared).reduced()

    def evaluate(self, point: Point) -> Fraction:
        """
        Raises:
            PoleError: when the denominator vanishes at ``point``
        """
        denominator = Fraction(1)
        for f, e in self.factors:
            denominator *= f.evaluate(point) ** e
        if not denominator:
            raise PoleError(f"denominator vanishes at {list(point) if not isinstance(point, Mapping) else point}")
        return self.numerator.evaluate(point) / denominator

    # comparison and output

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_json(self) -> Dict[str, object]:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": [{"factor": f.to_json(), "exponent": e} for f, e in self.factors],
        }

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        top = self.numerator.format(names)
        if not self.factors:
            return top
        bottom = " * ".join(
            f"({f.format(names)})" + (f"^{e}" if e > 1 else "") for f, e in self.factors
        )
        return f"({top}) / {bottom}"

    def __repr__(self) -> str:
        return f"RationalFunction({self.format()})"


Element = Union[Polynomial, RationalFunction]


def as_rational(f: Element) -> RationalFunction:
    return f if isinstance(f, RationalFunction) else RationalFunction(f)


def evaluate(f: Element, point: Point) -> Fraction:
    """Exact value at ``point``; PoleError at a vanishing denominator."""
    return f.evaluate(point)


def clear_to_polynomial(f: Element) -> Optional[Polynomial]:
    """The polynomial equal to ``f`` if its denominator divides exactly, else None."""
    if isinstance(f, Polynomial):
        return f
    numerator = f.numerator
    for g, e in f.factors:
        for _ in range(e):
            numerator = numerator.exact_divide(g)
            if numerator is None:
                return None
    return numerator


def substitute(poly: Polynomial, images: Sequence[Element]) -> RationalFunction:
    """poly(images[0], images[1], ...) as a rational function."""
    if len(images) != poly.nvars:
        raise ValueError(f"{len(images)} images for {poly.nvars} variables")
    if not images:
        raise ValueError("substitute needs at least one image")
    target = as_rational(images[0]).nvars
    powers: Dict[Tuple[int, int], RationalFunction] = {}
    total = RationalFunction(Polynomial.zero(target))
    for exponents, coeff in poly.terms():
        term = RationalFunction(Polynomial.constant(target, coeff))
        for k, p in enumerate(exponents):
            if p:
                key = (k, p)
                if key not in powers:
                    powers[key] = as_rational(images[k]) ** p
                term = term * powers[key]
        total = total + term
    return total


# --- Poisson context ------------------------------------------------------

def root_name(root: Sequence[int]) -> str:
    return "e" + "".join(str(c) for c in root) if max(root) < 10 else "e[" + ",".join(map(str, root)) + "]"


@dataclass(frozen=True)
class PoissonContext:
    """Variables of S(n) or S(b) with the linear bracket {x, y} = [x, y]."""

    system: RootSystem
    flavor: str
    constants: StructureConstants = field(repr=False, compare=False)

    @cached_property
    def labels(self) -> Tuple[BasisElement, ...]:
        basis = borel_basis(self.system)
        if self.flavor == "nilpotent":
            basis = [b for b in basis if b[0] == "e"]
        return tuple(basis)

    @property
    def nvars(self) -> int:
        return len(self.labels)

    @cached_property
    def names(self) -> Tuple[str, ...]:
        roots = self.system.positive_roots
        return tuple(root_name(roots[i]) if kind == "e" else f"h{i + 1}" for kind, i in self.labels)

    @cached_property
    def weights(self) -> Tuple[Root, ...]:
        zero = (0,) * self.system.rank
        roots = self.system.positive_roots
        return tuple(roots[i] if kind == "e" else zero for kind, i in self.labels)

    @cached_property
    def _position(self) -> Dict[BasisElement, int]:
        return {label: k for k, label in enumerate(self.labels)}

    @cached_property
    def table(self) -> Tuple[Tuple[int, int, int, Fraction], ...]:
        """Entries (a, b, k, c) with {x_a, x_b} = c x_k."""
        entries = []
        for a, la in enumerate(self.labels):
            for b, lb in enumerate(self.labels):
                for target, c in self.constants.bracket(la, lb).items():
                    entries.append((a, b, self._position[target], c))
        return tuple(entries)

    def variable(self, k: int) -> Polynomial:
        return Polynomial.variable(self.nvars, k)

    def root_variable_index(self, root: Sequence[int]) -> int:
        return self._position[("e", self.system.root_index[tuple(root)])]

    def e(self, root: Sequence[int]) -> Polynomial:
        return self.variable(self.root_variable_index(root))

    def h_index(self, j: int) -> int:
        if self.flavor != "borel":
            raise ValueError("the nilpotent context has no Cartan variables")
        return self._position[("h", j)]

    def h(self, j: int) -> Polynomial:
        return self.variable(self.h_index(j))

    @property
    def e_indices(self) -> Tuple[int, ...]:
        return tuple(k for k, (kind, _) in enumerate(self.labels) if kind == "e")

    @property
    def h_indices(self) -> Tuple[int, ...]:
        return tuple(k for k, (kind, _) in enumerate(self.labels) if kind == "h")

    def generator_indices(self, mode: str = "all") -> Tuple[int, ...]:
        """Variables whose brackets detect invariance: all e's (or simple ones) plus the h's."""
        if mode == "simple":
            simple = {self.root_variable_index(a) for a in self.system.simple_roots}
            chosen = tuple(k for k in self.e_indices if k in simple)
        elif mode == "all":
            chosen = self.e_indices
        else:
            raise ValueError(f"unknown generator mode {mode!r}")
        return chosen + self.h_indices

    def monomial_weight(self, exponents: Sequence[int]) -> Root:
        total = [0] * self.system.rank
        for k, p in enumerate(exponents):
            if p:
                for r, c in enumerate(self.weights[k]):
                    total[r] += p * c
        return tuple(total)

    def weight_of(self, f: Element) -> Optional[Root]:
        """Weight of a weight-homogeneous element (numerator minus denominator), else None."""
        if isinstance(f, RationalFunction):
            top = self.weight_of(f.numerator)
            if top is None:
                return None
            result = list(top)
            for g, e in f.factors:
                w = self.weight_of(g)
                if w is None:
                    return None
                result = [x - e * y for x, y in zip(result, w)]
            return tuple(result)
        weights = {self.monomial_weight(e) for e, _ in f.terms()}
        if len(weights) > 1:
            return None
        return weights.pop() if weights else (0,) * self.system.rank

    def poisson_matrix(self, point: Point) -> List[List[Fraction]]:
        """({x_a, x_b}(point))_{a,b}."""
        n = self.nvars
        matrix = [[Fraction(0)] * n for _ in range(n)]
        for a, b, k, c in self.table:
            matrix[a][b] += c * Fraction(point[k])
        return matrix


@lru_cache(maxsize=None)
def make_context(system: RootSystem, flavor: str = "nilpotent") -> PoissonContext:
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    return PoissonContext(system=system, flavor=flavor, constants=chevalley_constants(system))


def _check_vars(f: Element, ctx: PoissonContext) -> None:
    if f.nvars != ctx.nvars:
        raise ValueError(
            f"element over {f.nvars} variables used in a {ctx.flavor} context with {ctx.nvars} variables"
        )


def _lift(value: Union[Element, Scalar], ctx: PoissonContext) -> Element:
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(ctx.nvars, value)
    return value


def poisson_bracket(f: Union[Element, Scalar], g: Union[Element, Scalar], ctx: PoissonContext) -> Element:
    """
    {f, g} = sum c * x_k * d_a f * d_b g over the table {x_a, x_b} = c x_k.

    Returns a Polynomial when both arguments are polynomials.

    Raises:
        ValueError: when f or g is over a different variable set than ctx
    """
    f, g = _lift(f, ctx), _lift(g, ctx)
    _check_vars(f, ctx)
    _check_vars(g, ctx)

    if isinstance(f, Polynomial) and isinstance(g, Polynomial):
        df = {k: f.derivative(k) for k in f.support()}
        dg = {k: g.derivative(k) for k in g.support()}
        total = Polynomial.zero(ctx.nvars)
        for a, b, k, c in ctx.table:
            if a in df and b in dg:
                total = total + (df[a] * dg[b] * ctx.variable(k)).scale(c)
        return total

    rf, rg = as_rational(f), as_rational(g)
    nf, shared_f = rf.gradient_numerators(rf.numerator.support() if not rf.factors else None)
    ng, shared_g = rg.gradient_numerators(rg.numerator.support() if not rg.factors else None)
    numerator = Polynomial.zero(ctx.nvars)
    for a, b, k, c in ctx.table:
        if a in nf and b in ng:
            numerator = numerator + (nf[a] * ng[b] * ctx.variable(k)).scale(c)
    if numerator.is_zero():
        return RationalFunction(numerator)
    return RationalFunction(numerator, shared_f) * RationalFunction(Polynomial.constant(ctx.nvars, 1), shared_g)
