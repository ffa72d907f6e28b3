from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionError, ParameterError
from ..norms.base import PseudoNorm
from ..utils.logger import get_logger
from ..utils.point_utils import Point, PointUtils
from .structures import DecisionOutcome, SampleGrid, SequenceSpec, default_alpha_grid, log_ladder, validate_alpha_grid

logger = get_logger(__name__)

Membership = Callable[[Point, float], float]

NONPOSITIVE_TS = (-1.0, 0.0)
SMALL_T_FLOOR = 1e-8
LEFT_STEPS = (1e-3, 1e-6)
LEFT_LIMIT_TOL = 1e-4
PAIR_LADDER_STRIDE = 8


@dataclass(frozen=True)
class IfpnPair:
    """
    (μ, ν) on R^dimension. `norm` is kept when the pair was built from a pseudo
    norm; `jumps(x)` lists the t abscissae where μ(x, ·) jumps.
    """
    name: str
    dimension: int
    mu_fn: Membership
    nu_fn: Membership
    norm: Optional[PseudoNorm] = None
    jumps_fn: Optional[Callable[[Point], Tuple[float, ...]]] = None

    def mu(self, x: Point, t: float) -> float:
        if len(x) != self.dimension:
            raise DimensionError(f"{self.name}: point dimension {len(x)} != {self.dimension}")
        return float(self.mu_fn(x, t))

    def nu(self, x: Point, t: float) -> float:
        if len(x) != self.dimension:
            raise DimensionError(f"{self.name}: point dimension {len(x)} != {self.dimension}")
        return float(self.nu_fn(x, t))

    def jumps(self, x: Point) -> Tuple[float, ...]:
        return tuple(self.jumps_fn(x)) if self.jumps_fn is not None else ()


def standard_ifpn(p: PseudoNorm) -> IfpnPair:
    def mu(x, t):
        if t <= 0:
            return 0.0
        n = p(x)
        return 1.0 if n < t else t / (t + n)

    def nu(x, t):
        if t <= 0:
            return 1.0
        n = p(x)
        return 0.0 if n < t else n / (t + n)

    return IfpnPair(f"standard({p.name})", p.dimension, mu, nu, norm=p, jumps_fn=lambda x: (p(x),))


# ----- mutations -----

MUTATION_KINDS = ("mu_shift", "branch_swap", "nu_scale")


def mutate_pair(f: IfpnPair, kind: str, amount: float = 0.0, at: Optional[Point] = None) -> IfpnPair:
    """
    Deliberately broken variants of a pair:
      mu_shift    μ + amount for t > 0 (not capped)
      branch_swap the ‖x‖ < t branch test reversed (needs a pair built from a norm)
      nu_scale    min(1, amount · ν)
    With `at`, only that point is changed.
    """
    target = PointUtils.make(at) if at is not None else None

    def touched(x):
        return target is None or tuple(x) == target

    if kind == "mu_shift":
        mu = lambda x, t: f.mu_fn(x, t) + amount if t > 0 and touched(x) else f.mu_fn(x, t)
        return replace(f, name=f"{f.name}+mu_shift({amount:g})", mu_fn=mu)

    if kind == "nu_scale":
        nu = lambda x, t: min(1.0, amount * f.nu_fn(x, t)) if touched(x) else f.nu_fn(x, t)
        return replace(f, name=f"{f.name}*nu_scale({amount:g})", nu_fn=nu)

    if kind == "branch_swap":
        if f.norm is None:
            raise ParameterError("branch_swap needs a pair built from a pseudo norm")
        p = f.norm

        def mu(x, t):
            if t <= 0 or not touched(x):
                return f.mu_fn(x, t)
            n = p(x)
            return 1.0 if n > t else t / (t + n)

        def nu(x, t):
            if t <= 0 or not touched(x):
                return f.nu_fn(x, t)
            n = p(x)
            return 0.0 if n > t else n / (t + n)

        return replace(f, name=f"{f.name}~branch_swap", mu_fn=mu, nu_fn=nu)

    raise ParameterError(f"unknown mutation kind {kind!r}; known: {', '.join(MUTATION_KINDS)}")


# ----- axioms -----

def check_ifpn_axioms(f: IfpnPair, grid: SampleGrid, alpha_grid: Sequence[float] = None,
                      tol: float = 1e-9) -> DecisionOutcome:
    """
    IFP.1-IFP.15 on samples. Refutable sub-checks stop at the first witness;
    IFP.6/13 and IFP.8/15 can only end Inconclusive.
    """
    alphas = validate_alpha_grid(alpha_grid if alpha_grid is not None else default_alpha_grid())
    PointUtils.check_dimension(grid.theta, f.dimension, "grid")
    resolution = {**grid.describe(), "alpha_grid": list(alphas), "tol": tol,
                  "small_t_floor": SMALL_T_FLOOR, "pair_ladder_stride": PAIR_LADDER_STRIDE}

    for check in (_check_bounds, _check_nonpositive_t, _check_theta, _check_scalars,
                  _check_aggregation, _check_vanishing):
        witness = check(f, grid, alphas, tol)
        if witness is not None:
            logger.info("%s refuted on %s", f.name, witness["axiom"])
            return DecisionOutcome.refuted({"pair": f.name, **witness}, resolution)

    diagnostics = _check_limits(f, grid, tol) + _check_left_continuity(f, grid)
    if diagnostics:
        return DecisionOutcome.inconclusive(resolution, diagnostics)
    return DecisionOutcome.holds(resolution)


def extended_ladder(grid: SampleGrid) -> Tuple[float, ...]:
    """Grid ladder extended down to SMALL_T_FLOOR."""
    lo = grid.t_ladder[0]
    if lo <= SMALL_T_FLOOR:
        return grid.t_ladder
    steps = max(2, int(round(4 * np.log10(lo / SMALL_T_FLOOR))) + 1)
    return log_ladder(SMALL_T_FLOOR, lo, steps)[:-1] + grid.t_ladder


def _x(x):
    return PointUtils.as_list(x)


def _check_bounds(f, grid, alphas, tol):
    # IFP.1
    for x in grid.points:
        for t in grid.t_ladder:
            m, n = f.mu(x, t), f.nu(x, t)
            if m + n > 1.0 + tol or m < -tol or n < -tol or m > 1.0 + tol or n > 1.0 + tol:
                return {"axiom": "IFP.1", "x": _x(x), "t": t, "mu": m, "nu": n}
    return None


def _check_nonpositive_t(f, grid, alphas, tol):
    # IFP.2 / IFP.9
    for x in grid.points:
        for t in NONPOSITIVE_TS:
            if f.mu(x, t) > tol:
                return {"axiom": "IFP.2", "x": _x(x), "t": t, "mu": f.mu(x, t)}
            if f.nu(x, t) < 1.0 - tol:
                return {"axiom": "IFP.9", "x": _x(x), "t": t, "nu": f.nu(x, t)}
    return None


def _check_theta(f, grid, alphas, tol):
    # IFP.3 / IFP.10: identically 1 (resp. 0) over t > 0 only at θ
    ladder = extended_ladder(grid)
    for x in grid.points:
        at_theta = PointUtils.is_zero(x, tol)
        mu_one = all(f.mu(x, t) >= 1.0 - tol for t in ladder)
        nu_zero = all(f.nu(x, t) <= tol for t in ladder)
        if mu_one != at_theta:
            return {"axiom": "IFP.3", "x": _x(x), "mu_identically_one": mu_one}
        if nu_zero != at_theta:
            return {"axiom": "IFP.10", "x": _x(x), "nu_identically_zero": nu_zero}
    return None


def _check_scalars(f, grid, alphas, tol):
    # IFP.4 / IFP.11
    for x in grid.points:
        for c in grid.scalars:
            cx = PointUtils.scale(c, x)
            for t in grid.t_ladder:
                if f.mu(cx, t) < f.mu(x, t) - tol:
                    return {"axiom": "IFP.4", "x": _x(x), "c": c, "t": t,
                            "lhs": f.mu(cx, t), "rhs": f.mu(x, t)}
                if f.nu(cx, t) > f.nu(x, t) + tol:
                    return {"axiom": "IFP.11", "x": _x(x), "c": c, "t": t,
                            "lhs": f.nu(cx, t), "rhs": f.nu(x, t)}
    return None


def _check_aggregation(f, grid, alphas, tol):
    # IFP.5 / IFP.12 with min/max
    ladder = grid.t_ladder[::PAIR_LADDER_STRIDE]
    mu_at = {(x, t): f.mu(x, t) for x in grid.points for t in ladder}
    nu_at = {(x, t): f.nu(x, t) for x in grid.points for t in ladder}
    for x, y in grid.pairs():
        xy = PointUtils.add(x, y)
        for s in ladder:
            for t in ladder:
                lhs = f.mu(xy, s + t)
                rhs = min(mu_at[x, s], mu_at[y, t])
                if lhs < rhs - tol:
                    return {"axiom": "IFP.5", "x": _x(x), "y": _x(y), "s": s, "t": t, "lhs": lhs, "rhs": rhs}
                lhs = f.nu(xy, s + t)
                rhs = max(nu_at[x, s], nu_at[y, t])
                if lhs > rhs + tol:
                    return {"axiom": "IFP.12", "x": _x(x), "y": _x(y), "s": s, "t": t, "lhs": lhs, "rhs": rhs}
    return None


def _check_vanishing(f, grid, alphas, tol):
    # IFP.7 / IFP.14 contrapositive: x ≠ θ must dip to α somewhere on the small-t ladder
    ladder = extended_ladder(grid)
    for x in grid.points:
        if PointUtils.is_zero(x, tol):
            continue
        mu_min = min(f.mu(x, t) for t in ladder)
        nu_max = max(f.nu(x, t) for t in ladder)
        for a in alphas:
            if mu_min > a + tol:
                return {"axiom": "IFP.7", "x": _x(x), "alpha": a, "mu_min": mu_min}
            if nu_max < a - tol:
                return {"axiom": "IFP.14", "x": _x(x), "alpha": a, "nu_max": nu_max}
    return None


def _check_limits(f, grid, tol) -> List[str]:
    # IFP.6 / IFP.13 at the ladder top
    top = grid.t_ladder[-1]
    diagnostics = []
    for x in grid.points:
        if f.mu(x, top) < 1.0 - tol or f.nu(x, top) > tol:
            diagnostics.append(f"IFP.6/IFP.13: limit not reached at t={top:g} for x={_x(x)}")
            break
    return diagnostics


def _check_left_continuity(f, grid) -> List[str]:
    # IFP.8 / IFP.15: one-sided differences must shrink with h
    fine = LEFT_STEPS[-1]
    for x in grid.lattice:
        for t in grid.t_ladder:
            if t - LEFT_STEPS[0] <= 0:
                continue
            d_mu = abs(f.mu(x, t) - f.mu(x, t - fine))
            d_nu = abs(f.nu(x, t) - f.nu(x, t - fine))
            if max(d_mu, d_nu) > LEFT_LIMIT_TOL:
                return [f"IFP.8/IFP.15: left difference {max(d_mu, d_nu):.3g} at h={fine:g}, "
                        f"x={_x(x)}, t={t:g}"]
    return []


def replay_ifpn_witness(f: IfpnPair, witness: Dict[str, Any], grid: SampleGrid, tol: float = 1e-9) -> bool:
    """Re-evaluate a check_ifpn_axioms witness; True if it still violates."""
    axiom = witness["axiom"]
    x = PointUtils.make(witness["x"])
    if axiom == "IFP.1":
        m, n = f.mu(x, witness["t"]), f.nu(x, witness["t"])
        return m + n > 1.0 + tol or min(m, n) < -tol or max(m, n) > 1.0 + tol
    if axiom == "IFP.2":
        return f.mu(x, witness["t"]) > tol
    if axiom == "IFP.9":
        return f.nu(x, witness["t"]) < 1.0 - tol
    if axiom in ("IFP.3", "IFP.10"):
        ladder = extended_ladder(grid)
        at_theta = PointUtils.is_zero(x, tol)
        if axiom == "IFP.3":
            return all(f.mu(x, t) >= 1.0 - tol for t in ladder) != at_theta
        return all(f.nu(x, t) <= tol for t in ladder) != at_theta
    if axiom in ("IFP.4", "IFP.11"):
        cx = PointUtils.scale(witness["c"], x)
        t = witness["t"]
        if axiom == "IFP.4":
            return f.mu(cx, t) < f.mu(x, t) - tol
        return f.nu(cx, t) > f.nu(x, t) + tol
    if axiom in ("IFP.5", "IFP.12"):
        y = PointUtils.make(witness["y"])
        s, t = witness["s"], witness["t"]
        xy = PointUtils.add(x, y)
        if axiom == "IFP.5":
            return f.mu(xy, s + t) < min(f.mu(x, s), f.mu(y, t)) - tol
        return f.nu(xy, s + t) > max(f.nu(x, s), f.nu(y, t)) + tol
    if axiom in ("IFP.7", "IFP.14"):
        ladder = extended_ladder(grid)
        if axiom == "IFP.7":
            return min(f.mu(x, t) for t in ladder) > witness["alpha"] + tol
        return max(f.nu(x, t) for t in ladder) < witness["alpha"] - tol
    raise ValueError(f"unknown axiom tag {axiom!r}")


# ----- convergence -----

def tail_indices(tail: int, samples: int = 16) -> Tuple[int, ...]:
    """Indices sampled from the final quarter [3·tail/4, tail]."""
    start = max(1, (3 * tail) // 4)
    return tuple(sorted({int(n) for n in np.linspace(start, tail, samples)}))


def check_convergence(f: IfpnPair, s: SequenceSpec, tail: int = 100000, tol: float = 1e-9,
                      t_ladder: Optional[Iterable[float]] = None) -> DecisionOutcome:
    """
    μ(aₙ − a, t) → 1 and ν(aₙ − a, t) → 0 for every ladder t, judged on the
    final quarter of indices up to `tail`. A failure whose deficit is still
    shrinking at the tail is Inconclusive, not Refuted.
    """
    if tail < 10:
        raise ParameterError(f"tail must be at least 10, got {tail}")
    ladder = tuple(t_ladder) if t_ladder is not None else log_ladder(1e-4, 1e4, 33)
    indices = tail_indices(tail)
    limit = PointUtils.make(s.declared_limit)
    resolution = {"sequence": s.name, "tail": tail, "indices": [indices[0], indices[-1], len(indices)],
                  "t_ladder": [ladder[0], ladder[-1], len(ladder)], "tol": tol}

    def deficit(n, t):
        d = PointUtils.sub(s(n), limit)
        return max(1.0 - tol - f.mu(d, t), f.nu(d, t) - tol, 0.0)

    improving = []
    for t in ladder:
        failing = [n for n in indices if deficit(n, t) > 0.0]
        if not failing:
            continue
        first, last = deficit(indices[0], t), deficit(indices[-1], t)
        if last < first * (1.0 - 1e-6):
            improving.append(f"t={t:g}: deficit {last:.3g} at n={indices[-1]} still shrinking")
            continue
        n = failing[0]
        d = PointUtils.sub(s(n), limit)
        return DecisionOutcome.refuted(
            {"sequence": s.name, "n": n, "t": t, "mu": f.mu(d, t), "nu": f.nu(d, t)}, resolution)
    if improving:
        return DecisionOutcome.inconclusive(resolution, improving[:3])
    return DecisionOutcome.holds(resolution)
