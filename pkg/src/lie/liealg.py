"""
Chevalley structure constants of the Borel subalgebra.

Signs follow the extraspecial-pair convention: for every non-simple positive
root xi, the pair (r1, s1) with r1 minimal in the (height, lex) order and
xi = r1 + s1 gets N_{r1,s1} = +(p + 1). All other constants are forced by the
four-term and three-term identities of a Chevalley basis.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import VerificationError
from core.logging_config import get_logger

from .rootsys import Root, RootSystem

logger = get_logger(__name__)

CONVENTION = "chevalley-extraspecial-positive"

# Basis labels of the Borel subalgebra: ("e", root index) or ("h", coweight index).
BasisElement = Tuple[str, int]


def _add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Sequence[int]) -> Root:
    return tuple(-x for x in a)


def _is_positive(a: Sequence[int]) -> bool:
    return any(a) and all(x >= 0 for x in a)


def string_p(system: RootSystem, r: Root, s: Root) -> int:
    """Largest p with s - p*r a root."""
    p = 0
    current = _sub(s, r)
    while system.is_root(current):
        p += 1
        current = _sub(current, r)
    return p


@dataclass(frozen=True)
class StructureConstants:
    """N_{a,b} for positive a, b with a + b a positive root, plus the Cartan action."""

    system: RootSystem
    nilpotent_table: Dict[Tuple[int, int], int] = field(repr=False, compare=False)

    def N(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """N_{a,b} for arbitrary (positive or negative) roots a, b; 0 if a + b is not a root."""
        a, b = tuple(a), tuple(b)
        c = _add(a, b)
        system = self.system
        if not any(c) or not system.is_root(c):
            return Fraction(0)
        pa, pb = _is_positive(a), _is_positive(b)
        if pa and pb:
            idx = system.root_index
            return Fraction(self.nilpotent_table[(idx[a], idx[b])])
        if not pa and not pb:
            return -self.N(_neg(a), _neg(b))
        if not pa:
            return -self.N(b, a)
        # a positive, b negative
        if _is_positive(c):
            return -system.root_length_squared(c) / system.root_length_squared(a) * self.N(_neg(b), c)
        return system.root_length_squared(c) / system.root_length_squared(b) * self.N(_neg(c), a)

    def bracket_roots(self, i: int, j: int) -> Optional[Tuple[int, int]]:
        """[e_i, e_j] = N e_k as (k, N), or None."""
        value = self.nilpotent_table.get((i, j))
        if value is None:
            return None
        k = self.system.root_index[_add(self.system.positive_roots[i], self.system.positive_roots[j])]
        return k, value

    def cartan_pairing(self, h_index: int, alpha: Sequence[int]) -> Fraction:
        """alpha(h_j): fundamental coweights, so the j-th simple-root coordinate."""
        return Fraction(alpha[h_index])

    def bracket(self, x: BasisElement, y: BasisElement) -> Dict[BasisElement, Fraction]:
        """Lie bracket of two basis vectors of the Borel subalgebra."""
        (kx, ix), (ky, iy) = x, y
        roots = self.system.positive_roots
        if kx == "h" and ky == "h":
            return {}
        if kx == "h":
            c = self.cartan_pairing(ix, roots[iy])
            return {y: c} if c else {}
        if ky == "h":
            c = self.cartan_pairing(iy, roots[ix])
            return {x: -c} if c else {}
        hit = self.bracket_roots(ix, iy)
        if hit is None:
            return {}
        k, value = hit
        return {("e", k): Fraction(value)}

    def canonical_lines(self) -> List[str]:
        lines = []
        roots = self.system.positive_roots
        for (i, j), value in sorted(self.nilpotent_table.items()):
            lines.append(f"{','.join(map(str, roots[i]))}|{','.join(map(str, roots[j]))}|{value}")
        return lines

    def sha256(self) -> str:
        payload = f"{CONVENTION}\n{self.system.label}\n" + "\n".join(self.canonical_lines())
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@lru_cache(maxsize=None)
def chevalley_constants(system: RootSystem) -> StructureConstants:
    """
    Structure constants of the positive nilpotent subalgebra.

    Raises:
        VerificationError: if a constant is not +-(p + 1)
    """
    roots = system.positive_roots
    index = system.root_index
    table: Dict[Tuple[int, int], int] = {}
    constants = StructureConstants(system=system, nilpotent_table=table)

    for xi in roots:
        special = [
            (r, _sub(xi, r)) for r in roots
            if system.is_positive_root(_sub(xi, r)) and index[r] < index[_sub(xi, r)]
        ]
        if not special:
            continue
        r1, s1 = special[0]
        n11 = string_p(system, r1, s1) + 1
        table[(index[r1], index[s1])] = n11
        table[(index[s1], index[r1])] = -n11
        xi_len = system.root_length_squared(xi)

        for r, s in special[1:]:
            value = Fraction(0)
            first = _sub(s, r1)
            if system.is_root(first):
                value += constants.N(s, _neg(r1)) * constants.N(r, _neg(s1)) / system.root_length_squared(first)
            second = _sub(r, r1)
            if system.is_root(second):
                value += constants.N(_neg(r1), r) * constants.N(s, _neg(s1)) / system.root_length_squared(second)
            value = value * xi_len / n11
            expected = string_p(system, r, s) + 1
            if value.denominator != 1 or abs(value) != expected:
                raise VerificationError(
                    f"{system.label}: N[{r},{s}] = {value}, expected magnitude {expected}"
                )
            table[(index[r], index[s])] = int(value)
            table[(index[s], index[r])] = -int(value)

    logger.debug(f"{system.label}: {len(table) // 2} structure constants, convention {CONVENTION}")
    return constants


def borel_basis(system: RootSystem) -> List[BasisElement]:
    """e-variables in root order, then the Cartan coweights."""
    return [("e", i) for i in range(system.dim_n)] + [("h", j) for j in range(system.rank)]


def _bracket_linear(
    constants: StructureConstants,
    left: Dict[BasisElement, Fraction],
    right: BasisElement,
) -> Dict[BasisElement, Fraction]:
    result: Dict[BasisElement, Fraction] = {}
    for element, c in left.items():
        for target, value in constants.bracket(element, right).items():
            result[target] = result.get(target, Fraction(0)) + c * value
    return {k: v for k, v in result.items() if v}


def jacobi_defects(constants: StructureConstants, include_cartan: bool = True) -> List[Tuple[BasisElement, ...]]:
    """Basis triples violating [[x,y],z] + [[y,z],x] + [[z,x],y] = 0."""
    basis = borel_basis(constants.system)
    if not include_cartan:
        basis = [b for b in basis if b[0] == "e"]
    defects = []
    for x, y, z in product(basis, repeat=3):
        total: Dict[BasisElement, Fraction] = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for target, value in _bracket_linear(constants, constants.bracket(a, b), c).items():
                total[target] = total.get(target, Fraction(0)) + value
        if any(total.values()):
            defects.append((x, y, z))
    return defects
