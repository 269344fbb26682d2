"""
Root systems of the simple Lie algebras.

Everything is expressed in simple-root coordinates with Bourbaki numbering.
Roots are integer tuples; weights are ``Weight`` values with Fraction
coordinates. The epsilon-coordinates of the classical series are a
presentation layer only (``from_epsilon`` / ``to_epsilon``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from core.errors import InadmissibleTypeError, VerificationError
from core.logging_config import get_logger

from . import linalg

logger = get_logger(__name__)

Root = Tuple[int, ...]

ADMISSIBLE_RANKS = "A>=1, B>=2, C>=3, D>=4, E in {6,7,8}, F=4, G=2"

_E_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


@dataclass(frozen=True)
class Weight:
    """A rational vector over the simple-root basis."""

    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable[Fraction | int]) -> "Weight":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls(tuple(Fraction(0) for _ in range(rank)))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def scale(self, factor: Fraction | int) -> "Weight":
        return Weight(tuple(a * factor for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def as_root(self) -> Root:
        if not self.is_integral():
            raise ValueError(f"weight {self} is not integral")
        return tuple(int(a) for a in self.coords)

    def to_strings(self) -> List[str]:
        """Coordinates as "p/q" strings."""
        return [f"{a.numerator}/{a.denominator}" for a in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.coords) + ")"


@dataclass(frozen=True)
class RootSystem:
    """A reduced irreducible root system with its Bourbaki-numbered simple roots."""

    type_label: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[Root, ...]
    fundamental_weights: Tuple[Weight, ...]
    half_lengths: Tuple[Fraction, ...] = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def root_index(self) -> Dict[Root, int]:
        return {root: idx for idx, root in enumerate(self.positive_roots)}

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def is_positive_root(self, vector: Sequence[int]) -> bool:
        return tuple(vector) in self._root_set

    def is_root(self, vector: Sequence[int]) -> bool:
        vector = tuple(vector)
        return vector in self._root_set or tuple(-v for v in vector) in self._root_set

    @property
    def dim_n(self) -> int:
        return len(self.positive_roots)

    @property
    def dim_b(self) -> int:
        return len(self.positive_roots) + self.rank

    @staticmethod
    def height(root: Sequence[int]) -> int:
        return sum(root)

    def pairing(self, weight: Weight | Sequence, j: int) -> Fraction:
        """<weight, alpha_j^vee> for a 0-based simple index j."""
        coords = weight.coords if isinstance(weight, Weight) else weight
        return sum((Fraction(c) * self.cartan_matrix[j][k] for k, c in enumerate(coords)), Fraction(0))

    def simple_inner(self, i: int, j: int) -> Fraction:
        """(alpha_i, alpha_j), normalized so short roots have squared length 2."""
        return self.cartan_matrix[i][j] * self.half_lengths[i]

    def inner_product(self, left: Weight | Sequence, right: Weight | Sequence) -> Fraction:
        a = left.coords if isinstance(left, Weight) else left
        b = right.coords if isinstance(right, Weight) else right
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    total += Fraction(ai) * Fraction(bj) * self.simple_inner(i, j)
        return total

    def root_length_squared(self, root: Sequence[int]) -> Fraction:
        return self.inner_product(root, root)

    def reflect(self, weight: Weight, j: int) -> Weight:
        """Simple reflection s_j."""
        shift = self.pairing(weight, j)
        coords = list(weight.coords)
        coords[j] -= shift
        return Weight(tuple(coords))

    def is_dominant(self, weight: Weight) -> bool:
        return all(self.pairing(weight, j) >= 0 for j in range(self.rank))

    def is_antidominant(self, weight: Weight) -> bool:
        return all(self.pairing(weight, j) <= 0 for j in range(self.rank))

    @cached_property
    def _w0_on_fundamental(self) -> Tuple[Weight, ...]:
        return tuple(antidominant_representative(self, w) for w in self.fundamental_weights)

    def weight_from_fundamental(self, coefficients: Sequence[Fraction | int]) -> Weight:
        """sum_i c_i varpi_i in simple-root coordinates."""
        total = Weight.zero(self.rank)
        for c, w in zip(coefficients, self.fundamental_weights):
            if c:
                total = total + w.scale(Fraction(c))
        return total

    def fundamental_coordinates(self, weight: Weight) -> Tuple[Fraction, ...]:
        """Coefficients of ``weight`` in the basis of fundamental weights."""
        return tuple(self.pairing(weight, j) for j in range(self.rank))


def cartan_matrix(type_label: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix with entries a_ij = <alpha_j, alpha_i^vee>, Bourbaki numbering."""
    t = type_label.upper()
    admissible = (
        (t == "A" and rank >= 1)
        or (t == "B" and rank >= 2)
        or (t == "C" and rank >= 3)
        or (t == "D" and rank >= 4)
        or (t == "E" and rank in (6, 7, 8))
        or (t == "F" and rank == 4)
        or (t == "G" and rank == 2)
    )
    if not admissible:
        raise InadmissibleTypeError(
            f"inadmissible simple type {type_label}{rank}; admissible ranges: {ADMISSIBLE_RANKS}"
        )

    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        # 1-based node numbers
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if t in "ABC":
        for i in range(1, rank):
            bond(i, i + 1)
        if t == "B":
            bond(rank - 1, rank, -1, -2)
        elif t == "C":
            bond(rank - 1, rank, -2, -1)
    elif t == "D":
        for i in range(1, rank - 1):
            bond(i, i + 1)
        bond(rank - 2, rank)
    elif t == "E":
        for i, j in _E_EDGES:
            if i <= rank and j <= rank:
                bond(i, j)
    elif t == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif t == "G":
        bond(1, 2, -3, -1)

    return tuple(tuple(row) for row in a)


def _half_lengths(cartan: Sequence[Sequence[int]]) -> Tuple[Fraction, ...]:
    """Symmetrizer d_i = (alpha_i, alpha_i)/2 with min d_i = 1."""
    n = len(cartan)
    d: List[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] and d[j] is None:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                stack.append(j)
    smallest = min(d)
    return tuple(x / smallest for x in d)


def _positive_roots(cartan: Sequence[Sequence[int]]) -> Tuple[Root, ...]:
    """Closure of the simple roots under the root-string test, by height."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    while layer:
        following = set()
        for beta in layer:
            for i in range(n):
                p = 0
                lower = list(beta)
                lower[i] -= 1
                while tuple(lower) in known:
                    p += 1
                    lower[i] -= 1
                pairing = sum(beta[k] * cartan[i][k] for k in range(n))
                if p - pairing > 0:
                    raised = list(beta)
                    raised[i] += 1
                    following.add(tuple(raised))
        known |= following
        layer = sorted(following)
    return tuple(sorted(known, key=lambda r: (sum(r), r)))


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootSystem:
    """
    Construct the root system of a simple type.

    Raises:
        InadmissibleTypeError: for (type, rank) outside the admissible ranges
    """
    type_label = type_label.upper()
    cartan = cartan_matrix(type_label, rank)
    roots = _positive_roots(cartan)
    inverse = linalg.inverse(cartan)
    fundamental = tuple(Weight(tuple(inverse[k][i] for k in range(rank))) for i in range(rank))
    system = RootSystem(
        type_label=type_label,
        rank=rank,
        cartan_matrix=cartan,
        positive_roots=roots,
        fundamental_weights=fundamental,
        half_lengths=_half_lengths(cartan),
    )
    logger.debug(f"Built root system {system.label}: {len(roots)} positive roots")
    return system


def highest_root(roots: RootSystem | Iterable[Root]) -> Root:
    """
    The unique root of maximal height of an irreducible (sub)system.

    Raises:
        ValueError: for an empty system
    """
    candidates = list(roots.positive_roots if isinstance(roots, RootSystem) else roots)
    if not candidates:
        raise ValueError("highest_root of an empty system")
    top = max(candidates, key=lambda r: (sum(r), r))
    if any(any(c > t for c, t in zip(other, top)) for other in candidates):
        raise VerificationError(f"{top} does not dominate the system; is it reducible?")
    return top


def antidominant_representative(system: RootSystem, weight: Weight) -> Weight:
    """Apply simple reflections while some coroot pairing is positive."""
    current = weight
    while True:
        positive = [j for j in range(system.rank) if system.pairing(current, j) > 0]
        if not positive:
            return current
        current = system.reflect(current, positive[0])


def w0_image(system: RootSystem, weight: Weight) -> Weight:
    """
    Image under the longest Weyl element.

    w0 is linear; on each fundamental weight it is the antidominant
    representative of its orbit, so dominant weights land on the
    antidominant chamber and w0(w0(weight)) == weight.
    """
    images = system._w0_on_fundamental
    total = Weight.zero(system.rank)
    for j in range(system.rank):
        c = system.pairing(weight, j)
        if c:
            total = total + images[j].scale(c)
    return total


@lru_cache(maxsize=None)
def diagram_automorphism_phi(system: RootSystem) -> Tuple[int, ...]:
    """
    The permutation phi (0-based) with w0(varpi_i) = -varpi_phi(i).

    Raises:
        VerificationError: when some w0(varpi_i) is not a negated fundamental weight
    """
    negated = {(-w).coords: j for j, w in enumerate(system.fundamental_weights)}
    phi = []
    for i, w in enumerate(system.fundamental_weights):
        image = w0_image(system, w)
        j = negated.get(image.coords)
        if j is None:
            raise VerificationError(
                f"w0(varpi_{i + 1}) = {image} in {system.label} is not a negated fundamental weight"
            )
        phi.append(j)
    return tuple(phi)


def is_w0_minus_identity(system: RootSystem) -> bool:
    phi = diagram_automorphism_phi(system)
    return all(phi[i] == i for i in range(system.rank))


# --- epsilon presentation -------------------------------------------------

_EPS_TERM = re.compile(r"([+-]?)\s*(\d*)\s*e(\d+)")


def epsilon_dimension(system: RootSystem) -> int:
    if system.type_label == "A":
        return system.rank + 1
    if system.type_label in "BCD":
        return system.rank
    raise InadmissibleTypeError(f"no epsilon presentation for type {system.type_label}")


def from_epsilon(system: RootSystem, coeffs: Sequence[Fraction | int]) -> Weight:
    """Convert epsilon-coordinates to simple-root coordinates (Bourbaki dictionary)."""
    n = system.rank
    e = [Fraction(c) for c in coeffs]
    if len(e) != epsilon_dimension(system):
        raise ValueError(f"expected {epsilon_dimension(system)} epsilon-coordinates for {system.label}")
    partial = [sum(e[: k + 1], Fraction(0)) for k in range(len(e))]
    t = system.type_label
    if t in "AB":
        c = partial[:n]
    elif t == "C":
        c = partial[: n - 1] + [partial[n - 1] / 2]
    else:
        c = partial[: n - 2] + [(partial[n - 2] - e[n - 1]) / 2, partial[n - 1] / 2]
    return Weight(tuple(c))


def to_epsilon(system: RootSystem, weight: Weight | Sequence) -> Tuple[Fraction, ...]:
    """Convert simple-root coordinates to epsilon-coordinates."""
    c = [Fraction(v) for v in (weight.coords if isinstance(weight, Weight) else weight)]
    n = system.rank
    t = system.type_label
    epsilon_dimension(system)
    e = [c[0]] + [c[j] - c[j - 1] for j in range(1, n)]
    if t == "A":
        e.append(-c[n - 1])
    elif t == "C":
        e[n - 1] = 2 * c[n - 1] - c[n - 2]
    elif t == "D":
        e[n - 2] = c[n - 2] + c[n - 1] - c[n - 3]
        e[n - 1] = c[n - 1] - c[n - 2]
    return tuple(e)


def parse_epsilon(system: RootSystem, text: str) -> Weight:
    """Parse forms such as ``e1+e2``, ``2e3`` or ``e2-e5`` into a weight."""
    coeffs = [Fraction(0)] * epsilon_dimension(system)
    compact = text.replace(" ", "")
    consumed = 0
    for match in _EPS_TERM.finditer(compact):
        if match.start() != consumed:
            break
        sign = -1 if match.group(1) == "-" else 1
        scale = int(match.group(2)) if match.group(2) else 1
        index = int(match.group(3))
        if not 1 <= index <= len(coeffs):
            raise ValueError(f"epsilon index {index} out of range in {text!r}")
        coeffs[index - 1] += sign * scale
        consumed = match.end()
    if consumed != len(compact) or not compact:
        raise ValueError(f"cannot parse epsilon form {text!r}")
    return from_epsilon(system, coeffs)


def format_epsilon(system: RootSystem, weight: Weight | Sequence) -> str:
    """Render a weight as an epsilon-form string, e.g. ``e1-e4``."""
    parts = []
    for idx, c in enumerate(to_epsilon(system, weight), start=1):
        if not c:
            continue
        magnitude = abs(c)
        coefficient = "" if magnitude == 1 else f"{magnitude}"
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign}{coefficient}e{idx}")
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def format_alpha(root: Sequence) -> str:
    """Render simple-root coordinates, e.g. ``3a1+2a2``."""
    parts = []
    for idx, c in enumerate(root, start=1):
        c = Fraction(c)
        if not c:
            continue
        magnitude = abs(c)
        coefficient = "" if magnitude == 1 else f"{magnitude}"
        parts.append(f"{'-' if c < 0 else '+'}{coefficient}a{idx}")
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text
