"""Seeded generic points for rank and independence checks."""

from fractions import Fraction
from typing import List, Sequence, Tuple

from mimesis import Numeric

from core.errors import DegenerateSampleError, PoleError
from core.logging_config import get_logger

from .polyalg import Element

logger = get_logger(__name__)

Point = Tuple[Fraction, ...]


class PointSampler:
    """Integer points with coordinates uniform in [-bound, bound]."""

    def __init__(self, seed: int = 0, bound: int = 99):
        self.seed = seed
        self.bound = bound
        self.numeric = Numeric(seed=seed)

    def point(self, nvars: int) -> Point:
        return tuple(
            Fraction(self.numeric.integer_number(start=-self.bound, end=self.bound))
            for _ in range(nvars)
        )

    def generic_point(self, nvars: int, avoid: Sequence[Element] = (), max_retries: int = 50) -> Point:
        """
        A point where every element of ``avoid`` is defined and nonzero.

        Raises:
            DegenerateSampleError: when ``max_retries`` draws are all degenerate
        """
        for attempt in range(max_retries):
            candidate = self.point(nvars)
            if is_generic(candidate, avoid):
                if attempt:
                    logger.debug(f"Generic point found after {attempt + 1} draws")
                return candidate
            logger.warning(f"Degenerate sample (draw {attempt + 1}/{max_retries}), resampling")
        raise DegenerateSampleError(
            f"no generic point in {max_retries} draws (seed {self.seed}, bound {self.bound})"
        )

    def generic_points(
        self,
        nvars: int,
        count: int,
        avoid: Sequence[Element] = (),
        max_retries: int = 50,
    ) -> List[Point]:
        return [self.generic_point(nvars, avoid, max_retries) for _ in range(count)]


def is_generic(point: Sequence[Fraction], avoid: Sequence[Element]) -> bool:
    for f in avoid:
        try:
            if not f.evaluate(point):
                return False
        except PoleError:
            return False
    return True
