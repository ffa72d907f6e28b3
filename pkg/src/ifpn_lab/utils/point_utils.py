import math
import re
from typing import Iterable, Tuple

from ..errors import DimensionError, ParameterError

Point = Tuple[float, ...]


class PointUtils:
    @staticmethod
    def make(coords: Iterable[float]) -> Point:
        # 1. scalars are promoted to 1-d points
        if isinstance(coords, (int, float)):
            coords = (coords,)
        point = tuple(float(c) for c in coords)
        # 2. dimension >= 1, finite coordinates only
        if not point:
            raise DimensionError("a point needs at least one coordinate")
        if not all(math.isfinite(c) for c in point):
            raise ParameterError(f"non-finite coordinate in {list(point)}")
        return point

    @staticmethod
    def parse(text: str) -> Point:
        """'2' or '1, -0.5' -> point"""
        parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
        try:
            return PointUtils.make(float(p) for p in parts)
        except ValueError as e:
            raise ParameterError(f"cannot parse point {text!r}: {e}") from e

    @staticmethod
    def zero(dimension: int) -> Point:
        if dimension < 1:
            raise DimensionError(f"dimension must be positive, got {dimension}")
        return (0.0,) * dimension

    @staticmethod
    def basis(dimension: int, k: int) -> Point:
        coords = [0.0] * dimension
        coords[k] = 1.0
        return tuple(coords)

    @staticmethod
    def check_dimension(x: Point, dimension: int, what: str = "point"):
        if len(x) != dimension:
            raise DimensionError(f"{what} has dimension {len(x)}, expected {dimension}")

    @staticmethod
    def add(x: Point, y: Point) -> Point:
        PointUtils.check_dimension(y, len(x))
        return tuple(a + b for a, b in zip(x, y))

    @staticmethod
    def sub(x: Point, y: Point) -> Point:
        PointUtils.check_dimension(y, len(x))
        return tuple(a - b for a, b in zip(x, y))

    @staticmethod
    def scale(c: float, x: Point) -> Point:
        return tuple(c * a for a in x)

    @staticmethod
    def neg(x: Point) -> Point:
        # -0.0 would make θ and -θ distinct tuples
        return tuple(-a if a != 0.0 else 0.0 for a in x)

    @staticmethod
    def magnitude(x: Point) -> float:
        """Sup of absolute coordinates; used for witness bounds, not as a pseudo norm."""
        return max(abs(a) for a in x)

    @staticmethod
    def is_zero(x: Point, tol: float = 0.0) -> bool:
        return PointUtils.magnitude(x) <= tol

    @staticmethod
    def as_list(x: Point) -> list:
        return [float(a) for a in x]
