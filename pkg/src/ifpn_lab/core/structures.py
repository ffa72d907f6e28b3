from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import GridError, ParameterError
from ..utils.point_utils import Point, PointUtils


class Verdict(str, Enum):
    HOLDS = "Holds"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DecisionOutcome:
    """
    Three-valued verdict at stated resolution.
    A Refuted outcome always carries a witness; Holds may carry a certificate.
    """
    verdict: Verdict
    witness: Optional[Dict[str, Any]] = None
    certificate: Optional[Any] = None
    resolution: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Tuple[str, ...] = ()

    def __post_init__(self):
        if (self.verdict is Verdict.REFUTED) != (self.witness is not None):
            raise ValueError("witness must be present exactly when the verdict is Refuted")

    @classmethod
    def holds(cls, resolution=None, certificate=None, diagnostics=()):
        return cls(Verdict.HOLDS, None, certificate, dict(resolution or {}), tuple(diagnostics))

    @classmethod
    def refuted(cls, witness, resolution=None, diagnostics=()):
        return cls(Verdict.REFUTED, dict(witness), None, dict(resolution or {}), tuple(diagnostics))

    @classmethod
    def inconclusive(cls, resolution=None, diagnostics=()):
        return cls(Verdict.INCONCLUSIVE, None, None, dict(resolution or {}), tuple(diagnostics))

    @property
    def is_holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def is_refuted(self) -> bool:
        return self.verdict is Verdict.REFUTED

    @staticmethod
    def combine(outcomes: Iterable["DecisionOutcome"], resolution=None, certificate=None) -> "DecisionOutcome":
        """First Refuted wins; otherwise any Inconclusive makes the whole Inconclusive."""
        diagnostics: List[str] = []
        inconclusive = False
        for outcome in outcomes:
            if outcome.is_refuted:
                return DecisionOutcome.refuted(outcome.witness, resolution or outcome.resolution,
                                               diagnostics + list(outcome.diagnostics))
            diagnostics.extend(outcome.diagnostics)
            if outcome.verdict is Verdict.INCONCLUSIVE:
                inconclusive = True
        if inconclusive:
            return DecisionOutcome.inconclusive(resolution, diagnostics)
        return DecisionOutcome.holds(resolution, certificate, diagnostics)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness,
            "certificate": self.certificate,
            "resolution": self.resolution,
            "diagnostics": list(self.diagnostics),
        }


RESOLUTION_FACTORS = {"coarse": 0.5, "default": 1.0, "fine": 2.0}

DEFAULT_LATTICE_VALUES = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 10.0, -10.0)
DEFAULT_SCALARS = (-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0)
NONNEGATIVE_LATTICE_VALUES = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)


def scaled_steps(base: int, resolution: float) -> int:
    return max(2, int(round((base - 1) * resolution)) + 1)


def log_ladder(lo: float, hi: float, steps: int) -> Tuple[float, ...]:
    return tuple(float(v) for v in np.logspace(np.log10(lo), np.log10(hi), steps))


def default_alpha_grid() -> Tuple[float, ...]:
    """{0.05, 0.10, ..., 0.95}"""
    return tuple(round(0.05 * k, 10) for k in range(1, 20))


def validate_alpha_grid(alphas: Sequence[float]) -> Tuple[float, ...]:
    alphas = tuple(float(a) for a in alphas)
    if not alphas:
        raise GridError("alpha grid is empty")
    if any(not 0.0 < a < 1.0 for a in alphas):
        raise GridError(f"alpha grid values must lie in (0, 1): {list(alphas)}")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise GridError("alpha grid must be strictly ascending")
    return alphas


@dataclass(frozen=True)
class SampleGrid:
    """
    Finite surrogate for the quantifiers over X, R+ and |c| <= 1.
    The first `lattice_count` points are the deterministic lattice; pair sweeps
    run over lattice x all points.
    """
    dimension: int
    points: Tuple[Point, ...]
    scalars: Tuple[float, ...] = DEFAULT_SCALARS
    t_ladder: Tuple[float, ...] = field(default_factory=lambda: log_ladder(1e-4, 1e4, 33))
    seed: int = 42
    lattice_count: int = 0
    symmetric: bool = True
    label: str = "custom"

    def __post_init__(self):
        if not self.points:
            raise GridError("sample grid has no points")
        if not self.t_ladder:
            raise GridError("sample grid has an empty t ladder")
        for x in self.points:
            PointUtils.check_dimension(x, self.dimension, "grid point")
        theta = PointUtils.zero(self.dimension)
        if theta not in self.points:
            raise GridError("sample grid must contain θ")
        if any(b <= a for a, b in zip(self.t_ladder, self.t_ladder[1:])):
            raise GridError("t ladder must be strictly ascending")
        if any(t <= 0 for t in self.t_ladder):
            raise GridError("t ladder must be positive")
        if any(abs(c) > 1.0 for c in self.scalars):
            raise GridError("grid scalars must satisfy |c| <= 1")
        if self.symmetric:
            present = set(self.points)
            missing = [x for x in self.points if PointUtils.neg(x) not in present]
            if missing:
                raise GridError(f"grid not closed under negation, e.g. {list(missing[0])}")
        if not 0 <= self.lattice_count <= len(self.points):
            raise GridError("lattice_count out of range")
        if self.lattice_count == 0:
            object.__setattr__(self, "lattice_count", len(self.points))

    # ----- factories -----
    @classmethod
    def default(cls, dimension: int, seed: int = 42, resolution: float = 1.0) -> "SampleGrid":
        # 1. lattice: full product for d <= 2, axes and diagonals beyond
        if dimension <= 2:
            lattice = [tuple(c) for c in product(DEFAULT_LATTICE_VALUES, repeat=dimension)]
        else:
            lattice = [PointUtils.zero(dimension)]
            for v in DEFAULT_LATTICE_VALUES[1:]:
                lattice.extend(PointUtils.scale(v, PointUtils.basis(dimension, k)) for k in range(dimension))
                lattice.append((v,) * dimension)
        # 2. seeded random points in the ball of radius 10, each with its negation
        rng = np.random.default_rng(seed)
        half = max(1, int(round(32 * resolution)))
        directions = rng.normal(size=(half, dimension))
        norms = np.linalg.norm(directions, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        radii = 10.0 * rng.random(half) ** (1.0 / dimension)
        randoms = []
        for row in directions / norms * radii[:, None]:
            x = PointUtils.make(row)
            randoms.extend([x, PointUtils.neg(x)])
        points = _dedupe(lattice + randoms)
        return cls(
            dimension=dimension,
            points=tuple(points),
            t_ladder=log_ladder(1e-4, 1e4, scaled_steps(33, resolution)),
            seed=seed,
            lattice_count=len(_dedupe(lattice)),
            label=f"default(d={dimension}, seed={seed}, resolution={resolution})",
        )

    @classmethod
    def nonnegative(cls, bound: float = 100.0, seed: int = 42, resolution: float = 1.0) -> "SampleGrid":
        """One-dimensional x >= 0 grid for maps whose domain excludes negatives."""
        if bound <= 0:
            raise ParameterError(f"bound must be positive, got {bound}")
        lattice = [(v,) for v in NONNEGATIVE_LATTICE_VALUES if v <= bound]
        if bound not in NONNEGATIVE_LATTICE_VALUES:
            lattice.append((float(bound),))
        rng = np.random.default_rng(seed)
        count = max(2, int(round(64 * resolution)))
        randoms = [(float(v),) for v in bound * rng.random(count)]
        return cls(
            dimension=1,
            points=tuple(_dedupe(lattice + randoms)),
            t_ladder=log_ladder(1e-4, 1e4, scaled_steps(33, resolution)),
            seed=seed,
            lattice_count=len(lattice),
            symmetric=False,
            label=f"nonnegative(bound={bound}, seed={seed}, resolution={resolution})",
        )

    # ----- views -----
    @property
    def theta(self) -> Point:
        return PointUtils.zero(self.dimension)

    @property
    def lattice(self) -> Tuple[Point, ...]:
        return self.points[: self.lattice_count]

    def pairs(self) -> Iterator[Tuple[Point, Point]]:
        for x in self.lattice:
            for y in self.points:
                yield x, y

    def describe(self) -> Dict[str, Any]:
        return {
            "grid": self.label,
            "points": len(self.points),
            "lattice_points": self.lattice_count,
            "t_ladder": [self.t_ladder[0], self.t_ladder[-1], len(self.t_ladder)],
            "scalars": list(self.scalars),
            "seed": self.seed,
        }


def _dedupe(points: List[Point]) -> List[Point]:
    seen = set()
    out = []
    for x in points:
        x = tuple(0.0 if c == 0.0 else float(c) for c in x)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


@dataclass(frozen=True)
class SequenceSpec:
    name: str
    terms: Callable[[int], Point]
    declared_limit: Point

    def __call__(self, n: int) -> Point:
        return PointUtils.make(self.terms(n))

    @classmethod
    def harmonic(cls, x0: Point, k: int = 0) -> "SequenceSpec":
        """x0 + (1/n) e_k"""
        e = PointUtils.basis(len(x0), k)
        return cls(f"harmonic(e{k + 1})", lambda n: PointUtils.add(x0, PointUtils.scale(1.0 / n, e)), tuple(x0))

    @classmethod
    def relative(cls, x0: Point) -> "SequenceSpec":
        """x0 * (1 + 1/n^2)"""
        return cls("relative", lambda n: PointUtils.scale(1.0 + 1.0 / (n * n), x0), tuple(x0))

    @classmethod
    def constant(cls, a: Point, limit: Optional[Point] = None) -> "SequenceSpec":
        return cls("constant", lambda n: tuple(a), tuple(a if limit is None else limit))
