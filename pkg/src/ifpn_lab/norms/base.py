from abc import ABC, abstractmethod
from typing import Callable

from ..errors import DimensionError
from ..utils.point_utils import Point, PointUtils


class PseudoNorm(ABC):
    """
    A named map X -> [0, inf) meant to satisfy P.1-P.4.
    Subclasses implement `evaluate`; `__call__` adds the dimension guard.
    """

    def __init__(self, name: str, dimension: int):
        if dimension < 1:
            raise DimensionError(f"dimension must be positive, got {dimension}")
        self.name = name
        self.dimension = dimension

    @abstractmethod
    def evaluate(self, x: Point) -> float:
        pass

    def __call__(self, x: Point) -> float:
        PointUtils.check_dimension(x, self.dimension, f"argument of {self.name}")
        return float(self.evaluate(x))

    def __repr__(self):
        return f"<PseudoNorm {self.name} on R^{self.dimension}>"


class FunctionPseudoNorm(PseudoNorm):
    """Wraps an arbitrary callable: hand-built maps in tests, α-slices of a family."""

    def __init__(self, name: str, dimension: int, fn: Callable[[Point], float]):
        super().__init__(name, dimension)
        self._fn = fn

    def evaluate(self, x: Point) -> float:
        return self._fn(x)
