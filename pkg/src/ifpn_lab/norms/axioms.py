from typing import Any, Dict, Optional

from ..core.structures import DecisionOutcome, SampleGrid
from ..errors import GridError
from ..utils.logger import get_logger
from ..utils.point_utils import PointUtils
from .base import PseudoNorm

logger = get_logger(__name__)


def check_pseudo_norm_axioms(p: PseudoNorm, grid: SampleGrid, tol: float = 1e-9) -> DecisionOutcome:
    """
    P.1 -> P.2 -> P.3 -> P.4 over the grid; the first violation in grid order
    becomes the witness.
    """
    if not grid.points:
        raise GridError("empty grid")
    PointUtils.check_dimension(grid.theta, p.dimension, "grid")
    resolution = {**grid.describe(), "tol": tol}

    witness = _first_violation(p, grid, tol)
    if witness is not None:
        logger.info("%s refuted on %s at %s", p.name, witness["axiom"], witness["x"])
        return DecisionOutcome.refuted({"norm": p.name, **witness}, resolution)
    return DecisionOutcome.holds(resolution)


def _first_violation(p: PseudoNorm, grid: SampleGrid, tol: float) -> Optional[Dict[str, Any]]:
    values = {x: p(x) for x in grid.points}

    # 1. P.1 non-negativity
    for x in grid.points:
        if values[x] < -tol:
            return {"axiom": "P.1", "x": PointUtils.as_list(x), "value": values[x]}

    # 2. P.2 both directions: ‖x‖ ≈ 0 exactly when x ≈ θ
    for x in grid.points:
        if (abs(values[x]) <= tol) != PointUtils.is_zero(x, tol):
            return {"axiom": "P.2", "x": PointUtils.as_list(x), "value": values[x]}

    # 3. P.3 scalar monotonicity
    for x in grid.points:
        for c in grid.scalars:
            scaled = p(PointUtils.scale(c, x))
            if scaled > values[x] + tol:
                return {"axiom": "P.3", "x": PointUtils.as_list(x), "c": c,
                        "lhs": scaled, "rhs": values[x]}

    # 4. P.4 triangle inequality
    for x, y in grid.pairs():
        total = p(PointUtils.add(x, y))
        if total > values[x] + values[y] + tol:
            return {"axiom": "P.4", "x": PointUtils.as_list(x), "y": PointUtils.as_list(y),
                    "lhs": total, "rhs": values[x] + values[y]}
    return None


def replay_norm_witness(p: PseudoNorm, witness: Dict[str, Any], tol: float = 1e-9) -> bool:
    """True when the stored witness still violates its axiom."""
    x = PointUtils.make(witness["x"])
    axiom = witness["axiom"]
    if axiom == "P.1":
        return p(x) < -tol
    if axiom == "P.2":
        return (abs(p(x)) <= tol) != PointUtils.is_zero(x, tol)
    if axiom == "P.3":
        return p(PointUtils.scale(witness["c"], x)) > p(x) + tol
    if axiom == "P.4":
        y = PointUtils.make(witness["y"])
        return p(PointUtils.add(x, y)) > p(x) + p(y) + tol
    raise ValueError(f"unknown axiom tag {axiom!r}")
