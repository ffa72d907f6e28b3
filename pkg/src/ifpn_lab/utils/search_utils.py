from typing import Callable, Tuple

from .logger import get_logger

logger = get_logger(__name__)

Predicate = Callable[[float], bool]


class SearchUtils:
    MAX_ITER = 400

    @staticmethod
    def expand_bracket(pred: Predicate, start: float, growth: float, cap: float) -> Tuple[float, float]:
        """
        Grow hi geometrically from `start` until pred(hi) holds.
        Returns (lo, hi) with pred(hi) True and lo the last failing value (0.0 if
        pred(start) already holds). Raises OverflowError past `cap`.
        """
        if growth <= 1.0:
            raise ValueError(f"growth factor must exceed 1, got {growth}")
        hi = min(start, cap)
        if pred(hi):
            return 0.0, hi
        lo = hi
        while True:
            if hi >= cap:
                raise OverflowError(cap)
            lo, hi = hi, min(hi * growth, cap)
            if pred(hi):
                return lo, hi

    @staticmethod
    def bisect(pred: Predicate, lo: float, hi: float, tol: float) -> Tuple[float, float]:
        """
        Shrink [lo, hi] around the switch point of a monotone predicate with
        pred(lo) False (or lo a boundary) and pred(hi) True.
        """
        steps = 0
        while hi - lo > tol and steps < SearchUtils.MAX_ITER:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if pred(mid):
                hi = mid
            else:
                lo = mid
            steps += 1
        if steps >= SearchUtils.MAX_ITER:
            logger.debug("bisection hit the iteration limit at [%r, %r]", lo, hi)
        return lo, hi

    @staticmethod
    def bisect_down(pred: Predicate, lo: float, hi: float, tol: float) -> Tuple[float, float]:
        """Mirror of bisect for predicates that hold below the switch (pred(lo) True, pred(hi) False)."""
        lo2, hi2 = SearchUtils.bisect(lambda v: not pred(v), lo, hi, tol)
        return lo2, hi2
