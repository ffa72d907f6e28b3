from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

from ..core.structures import DecisionOutcome, SampleGrid
from ..errors import DimensionError, DomainError
from ..utils.logger import get_logger
from ..utils.point_utils import Point, PointUtils

logger = get_logger(__name__)


@dataclass(frozen=True)
class OperatorSpec:
    """
    A map T: R^domain_dim -> R^codomain_dim. `declared_linear` is a claim;
    check_linearity tests it. `domain` (if set) guards apply().
    """
    name: str
    domain_dim: int
    codomain_dim: int
    apply_fn: Callable[[Point], Point]
    declared_linear: bool
    domain: Optional[Callable[[Point], bool]] = None
    domain_label: str = "R^d"

    def in_domain(self, x: Point) -> bool:
        return len(x) == self.domain_dim and (self.domain is None or self.domain(x))

    def apply(self, x: Point) -> Point:
        if len(x) != self.domain_dim:
            raise DimensionError(f"{self.name} expects dimension {self.domain_dim}, got {len(x)}")
        if self.domain is not None and not self.domain(x):
            raise DomainError(f"{self.name} is defined on {self.domain_label}, got x={list(x)}")
        y = PointUtils.make(self.apply_fn(x))
        PointUtils.check_dimension(y, self.codomain_dim, f"image under {self.name}")
        return y

    __call__ = apply

    def describe(self) -> Dict[str, Any]:
        return {"name": self.name, "domain": self.domain_label, "domain_dim": self.domain_dim,
                "codomain_dim": self.codomain_dim, "declared_linear": self.declared_linear}


def check_linearity(T: OperatorSpec, grid: SampleGrid, tol: float = 1e-9) -> DecisionOutcome:
    """Additivity over grid pairs, then homogeneity over grid scalars."""
    PointUtils.check_dimension(grid.theta, T.domain_dim, "grid")
    resolution = {**grid.describe(), "tol": tol}

    witness = _first_violation(T, grid, tol)
    if witness is not None:
        verdict_note = "declared linear" if T.declared_linear else "declared nonlinear"
        logger.info("%s (%s) is not linear: %s", T.name, verdict_note, witness["check"])
        return DecisionOutcome.refuted({"operator": T.name, **witness}, resolution)
    return DecisionOutcome.holds(resolution)


def _close(a: Point, b: Point, tol: float) -> bool:
    return PointUtils.magnitude(PointUtils.sub(a, b)) <= tol


def _first_violation(T, grid, tol):
    theta = grid.theta
    if not _close(T(theta), PointUtils.zero(T.codomain_dim), tol):
        return {"check": "theta", "x": PointUtils.as_list(theta), "image": PointUtils.as_list(T(theta))}
    images = {x: T(x) for x in grid.points}
    for x, y in grid.pairs():
        lhs = T(PointUtils.add(x, y))
        rhs = PointUtils.add(images[x], images[y])
        if not _close(lhs, rhs, tol):
            return {"check": "additivity", "x": PointUtils.as_list(x), "y": PointUtils.as_list(y),
                    "lhs": PointUtils.as_list(lhs), "rhs": PointUtils.as_list(rhs)}
    for x in grid.points:
        for c in grid.scalars:
            lhs = T(PointUtils.scale(c, x))
            rhs = PointUtils.scale(c, images[x])
            if not _close(lhs, rhs, tol):
                return {"check": "homogeneity", "x": PointUtils.as_list(x), "c": c,
                        "lhs": PointUtils.as_list(lhs), "rhs": PointUtils.as_list(rhs)}
    return None


def replay_linearity_witness(T: OperatorSpec, witness: Dict[str, Any], tol: float = 1e-9) -> bool:
    x = PointUtils.make(witness["x"])
    check = witness["check"]
    if check == "theta":
        return not _close(T(x), PointUtils.zero(T.codomain_dim), tol)
    if check == "additivity":
        y = PointUtils.make(witness["y"])
        return not _close(T(PointUtils.add(x, y)), PointUtils.add(T(x), T(y)), tol)
    if check == "homogeneity":
        c = witness["c"]
        return not _close(T(PointUtils.scale(c, x)), PointUtils.scale(c, T(x)), tol)
    raise ValueError(f"unknown linearity check {check!r}")
