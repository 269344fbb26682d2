"""
Kostant cascade of strongly orthogonal roots.

At every recursion level the residual positive system splits into irreducible
components (connected components of the non-orthogonality graph). Each
component contributes its highest root; the roots of the component orthogonal
to it form the next residual. Components of one level are ordered by the
smallest simple-root index in their support.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

from core.errors import VerificationError
from core.logging_config import get_logger

from . import linalg
from .rootsys import Root, RootSystem, Weight, highest_root, w0_image

logger = get_logger(__name__)


@dataclass(frozen=True)
class CascadeStep:
    xi: Root
    level: int
    singular: Tuple[Root, ...]
    residual: Tuple[Root, ...]


@dataclass(frozen=True)
class Cascade:
    system: RootSystem
    steps: Tuple[CascadeStep, ...]

    @property
    def xis(self) -> Tuple[Root, ...]:
        return tuple(step.xi for step in self.steps)

    @property
    def m(self) -> int:
        return len(self.steps)

    def levels(self) -> List[Set[Root]]:
        """The cascade roots grouped by recursion level."""
        grouped: Dict[int, Set[Root]] = {}
        for step in self.steps:
            grouped.setdefault(step.level, set()).add(step.xi)
        return [grouped[level] for level in sorted(grouped)]

    def step_for(self, xi: Root) -> CascadeStep:
        for step in self.steps:
            if step.xi == xi:
                return step
        raise KeyError(xi)


def _sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _order(roots) -> Tuple[Root, ...]:
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def singular_roots(system: RootSystem, xi: Root) -> Tuple[Root, ...]:
    """
    Roots alpha in the positive system with xi - alpha again a positive root.

    Raises:
        ValueError: if xi is not a positive root
    """
    xi = tuple(xi)
    if not system.is_positive_root(xi):
        raise ValueError(f"{xi} is not a positive root of {system.label}")
    return _order(a for a in system.positive_roots if system.is_positive_root(_sub(xi, a)))


def irreducible_components(system: RootSystem, roots: Sequence[Root]) -> List[Tuple[Root, ...]]:
    """Split a closed set of positive roots into irreducible components."""
    remaining = list(_order(roots))
    components = []
    while remaining:
        seed = remaining.pop(0)
        component = [seed]
        frontier = [seed]
        while frontier:
            current = frontier.pop()
            linked = [r for r in remaining if system.inner_product(current, r) != 0]
            for r in linked:
                remaining.remove(r)
            component.extend(linked)
            frontier.extend(linked)
        components.append(_order(component))

    def support_key(component: Tuple[Root, ...]) -> int:
        return min(i for root in component for i, c in enumerate(root) if c)

    return sorted(components, key=support_key)


def indecomposable_roots(roots: Sequence[Root]) -> Tuple[Root, ...]:
    """Simple system of a closed positive subsystem: roots that are not sums of two others."""
    pool = set(roots)
    return _order(r for r in pool if not any(_sub(r, a) in pool for a in pool if a != r))


def kostant_cascade(system: RootSystem) -> Cascade:
    """Run the highest-root recursion until the residual system is empty."""
    steps: List[CascadeStep] = []
    residual = list(system.positive_roots)
    level = 0
    while residual:
        following: List[Root] = []
        for component in irreducible_components(system, residual):
            xi = highest_root(component)
            members = set(component)
            singular = _order(a for a in component if _sub(xi, a) in members)
            rest = _order(a for a in component if system.inner_product(a, xi) == 0)
            if len(singular) + len(rest) + 1 != len(component):
                raise VerificationError(
                    f"{system.label}: component of {xi} is not {{xi}} + singular + orthogonal"
                )
            steps.append(CascadeStep(xi=xi, level=level, singular=singular, residual=rest))
            logger.debug(f"{system.label} level {level}: xi={xi}, |sing|={len(singular)}, |rest|={len(rest)}")
            following.extend(rest)
        residual = following
        level += 1

    cascade = Cascade(system=system, steps=tuple(steps))
    logger.debug(f"{system.label}: cascade of length {cascade.m}")
    return cascade


def residual_components(cascade: Cascade, step: CascadeStep) -> List[Tuple[Root, ...]]:
    """Simple systems of the residual components left by one cascade step."""
    return [
        indecomposable_roots(component)
        for component in irreducible_components(cascade.system, step.residual)
    ]


# --- property checks ------------------------------------------------------

def strongly_orthogonal(system: RootSystem, xis: Sequence[Root]) -> bool:
    for i, a in enumerate(xis):
        for b in xis[i + 1:]:
            if system.is_root(_add(a, b)) or system.is_root(_sub(a, b)):
                return False
    return True


def linearly_independent(xis: Sequence[Root]) -> bool:
    return linalg.rank(xis) == len(xis)


def negated_by_w0(system: RootSystem, xis: Sequence[Root]) -> bool:
    return all(w0_image(system, Weight.of(xi)) == -Weight.of(xi) for xi in xis)


def covers_positive_roots(cascade: Cascade) -> bool:
    """Every positive root is some xi or singular for exactly one xi."""
    seen: List[Root] = []
    for step in cascade.steps:
        seen.append(step.xi)
        seen.extend(step.singular)
    return len(seen) == len(set(seen)) and set(seen) == set(cascade.system.positive_roots)


def highest_root_neighbours(system: RootSystem) -> Tuple[int, ...]:
    """0-based simple indices not orthogonal to the highest root (extended Dynkin diagram)."""
    theta = highest_root(system)
    return tuple(j for j, a in enumerate(system.simple_roots) if system.inner_product(a, theta) != 0)
