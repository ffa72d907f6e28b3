from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from ..errors import BracketExceeded, ParameterError
from ..norms.axioms import check_pseudo_norm_axioms, replay_norm_witness
from ..norms.base import FunctionPseudoNorm
from ..utils.logger import get_logger
from ..utils.point_utils import Point, PointUtils
from ..utils.search_utils import SearchUtils
from .ifpn import IfpnPair
from .structures import DecisionOutcome, SampleGrid, default_alpha_grid, validate_alpha_grid

logger = get_logger(__name__)

BRACKET_START = 1.0
ROUNDTRIP_LADDER_STRIDE = 4


def _check_alpha(alpha: float):
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"α must lie in (0, 1), got {alpha}")


def _infimum(pred, x, alpha, which, bracket_cap, bisect_tol, growth) -> float:
    try:
        lo, hi = SearchUtils.expand_bracket(pred, BRACKET_START, growth, bracket_cap)
    except OverflowError:
        raise BracketExceeded(x, alpha, bracket_cap, which) from None
    lo, hi = SearchUtils.bisect(pred, lo, hi, bisect_tol)
    # predicate held at every probed t: the infimum is 0 at resolution
    return 0.0 if lo == 0.0 else hi


def alpha_norm(f: IfpnPair, x: Point, alpha: float, bracket_cap: float = 1e6,
               bisect_tol: float = 1e-9, growth: float = 2.0) -> float:
    """‖x‖_α = inf{t > 0 : μ(x, t) ≥ α}"""
    _check_alpha(alpha)
    return _infimum(lambda t: f.mu(x, t) >= alpha, x, alpha, "ascending", bracket_cap, bisect_tol, growth)


def alpha_conorm(f: IfpnPair, x: Point, alpha: float, bracket_cap: float = 1e6,
                 bisect_tol: float = 1e-9, growth: float = 2.0) -> float:
    """‖x‖*_α = inf{t > 0 : ν(x, t) ≤ α}"""
    _check_alpha(alpha)
    return _infimum(lambda t: f.nu(x, t) <= alpha, x, alpha, "descending", bracket_cap, bisect_tol, growth)


@dataclass(frozen=True)
class AlphaFamily:
    source: IfpnPair
    bracket_cap: float = 1e6
    bisect_tol: float = 1e-9
    growth: float = 2.0

    def __post_init__(self):
        if not self.bracket_cap > 0 or not self.bisect_tol > 0:
            raise ParameterError("bracket_cap and bisect_tol must be positive")
        if not self.growth > 1.0:
            raise ParameterError(f"growth factor must exceed 1, got {self.growth}")

    def ascending(self, x: Point, alpha: float) -> float:
        return alpha_norm(self.source, x, alpha, self.bracket_cap, self.bisect_tol, self.growth)

    def descending(self, x: Point, alpha: float) -> float:
        return alpha_conorm(self.source, x, alpha, self.bracket_cap, self.bisect_tol, self.growth)

    def slice(self, alpha: float, conorm: bool = False) -> FunctionPseudoNorm:
        """The fixed-α map x -> ‖x‖_α (or ‖x‖*_α) as a pseudo norm."""
        _check_alpha(alpha)
        fn = self.descending if conorm else self.ascending
        kind = "conorm" if conorm else "norm"
        return FunctionPseudoNorm(f"{self.source.name}.{kind}[{alpha:g}]", self.source.dimension,
                                  lambda x: fn(x, alpha))

    def describe(self) -> Dict[str, Any]:
        return {"source": self.source.name, "bracket_cap": self.bracket_cap,
                "bisect_tol": self.bisect_tol, "growth": self.growth}


# ----- family structure -----

def slice_alphas(alphas: Sequence[float]) -> Tuple[float, ...]:
    """First, middle and last α: the levels whose slices get the full axiom sweep."""
    picked = {alphas[0], alphas[len(alphas) // 2], alphas[-1]}
    return tuple(sorted(picked))


def check_family(fam: AlphaFamily, grid: SampleGrid, alpha_grid: Sequence[float] = None,
                 tol: float = 1e-9) -> DecisionOutcome:
    """
    (a) fixed-α slices are pseudo norms, swept on the grid lattice;
    (b) ascending / descending ordering across the whole α grid on every point.
    """
    alphas = validate_alpha_grid(alpha_grid if alpha_grid is not None else default_alpha_grid())
    slack = tol + 4 * fam.bisect_tol
    lattice = SampleGrid(dimension=grid.dimension, points=grid.lattice, scalars=grid.scalars,
                         t_ladder=grid.t_ladder, seed=grid.seed, symmetric=False,
                         label=f"lattice of {grid.label}")
    resolution = {**grid.describe(), **fam.describe(), "alpha_grid": list(alphas),
                  "slice_alphas": list(slice_alphas(alphas)), "tol": slack}

    # 1. slices
    for a in slice_alphas(alphas):
        for conorm in (False, True):
            outcome = check_pseudo_norm_axioms(fam.slice(a, conorm), lattice, slack)
            if outcome.is_refuted:
                witness = {"check": "slice", "alpha": a, "conorm": conorm, **outcome.witness}
                logger.info("%s: slice α=%g refuted on %s", fam.source.name, a, witness["axiom"])
                return DecisionOutcome.refuted(witness, resolution)

    # 2. ordering in α
    for x in grid.points:
        asc = [fam.ascending(x, a) for a in alphas]
        desc = [fam.descending(x, a) for a in alphas]
        for i in range(len(alphas) - 1):
            if asc[i] > asc[i + 1] + slack:
                return DecisionOutcome.refuted(
                    {"check": "ascending_order", "x": PointUtils.as_list(x), "alpha1": alphas[i],
                     "alpha2": alphas[i + 1], "lhs": asc[i], "rhs": asc[i + 1]}, resolution)
            if desc[i] < desc[i + 1] - slack:
                return DecisionOutcome.refuted(
                    {"check": "descending_order", "x": PointUtils.as_list(x), "alpha1": alphas[i],
                     "alpha2": alphas[i + 1], "lhs": desc[i], "rhs": desc[i + 1]}, resolution)
    return DecisionOutcome.holds(resolution)


# ----- reconstruction -----

def reconstruct(fam: AlphaFamily) -> IfpnPair:
    """
    μ′(x, t) = sup{α : ‖x‖_α ≤ t}, ν′(x, t) = inf{α : ‖x‖*_α ≤ t} for t > 0,
    both by bisection over α ∈ (0, 1).
    """
    tol = fam.bisect_tol

    def mu(x, t):
        if t <= 0:
            return 0.0
        lo, _ = SearchUtils.bisect_down(lambda a: fam.ascending(x, a) <= t, 0.0, 1.0, tol)
        return lo

    def nu(x, t):
        if t <= 0:
            return 1.0
        _, hi = SearchUtils.bisect(lambda a: fam.descending(x, a) <= t, 0.0, 1.0, tol)
        return hi

    src = fam.source
    return IfpnPair(f"reconstructed({src.name})", src.dimension, mu, nu, jumps_fn=src.jumps_fn)


def roundtrip_check(f: IfpnPair, grid: SampleGrid, tol: float = 1e-6,
                    fam: Optional[AlphaFamily] = None) -> DecisionOutcome:
    """
    |μ′ − μ| and |ν′ − ν| within tol on lattice points, skipping t within tol
    of a jump of μ(x, ·).
    """
    fam = fam or AlphaFamily(f)
    rebuilt = reconstruct(fam)
    ladder = grid.t_ladder[::ROUNDTRIP_LADDER_STRIDE]
    excluded = 0
    for x in grid.lattice:
        jumps = f.jumps(x)
        for t in ladder:
            if any(abs(t - j) <= tol for j in jumps):
                excluded += 1
                continue
            witness = _roundtrip_violation(f, rebuilt, x, t, tol)
            if witness is not None:
                resolution = {**grid.describe(), **fam.describe(), "tol": tol,
                              "ladder_stride": ROUNDTRIP_LADDER_STRIDE, "jump_band": tol}
                return DecisionOutcome.refuted(witness, resolution)
    resolution = {**grid.describe(), **fam.describe(), "tol": tol,
                  "ladder_stride": ROUNDTRIP_LADDER_STRIDE, "jump_band": tol, "excluded_samples": excluded}
    diagnostics = [f"{excluded} samples inside the jump band were skipped"] if excluded else []
    return DecisionOutcome.holds(resolution, diagnostics=diagnostics)


def _roundtrip_violation(f, rebuilt, x, t, tol) -> Optional[Dict[str, Any]]:
    m, m2 = f.mu(x, t), rebuilt.mu(x, t)
    n, n2 = f.nu(x, t), rebuilt.nu(x, t)
    if abs(m - m2) > tol or abs(n - n2) > tol:
        return {"check": "roundtrip", "x": PointUtils.as_list(x), "t": t,
                "mu": m, "mu_prime": m2, "nu": n, "nu_prime": n2}
    return None


def replay_family_witness(fam: AlphaFamily, witness: Dict[str, Any], tol: float = 1e-9) -> bool:
    """Re-evaluate a check_family or roundtrip_check witness."""
    check = witness["check"]
    x = PointUtils.make(witness["x"])
    if check == "slice":
        return replay_norm_witness(fam.slice(witness["alpha"], witness["conorm"]), witness,
                                   tol + 4 * fam.bisect_tol)
    slack = tol + 4 * fam.bisect_tol
    if check == "ascending_order":
        return fam.ascending(x, witness["alpha1"]) > fam.ascending(x, witness["alpha2"]) + slack
    if check == "descending_order":
        return fam.descending(x, witness["alpha1"]) < fam.descending(x, witness["alpha2"]) - slack
    if check == "roundtrip":
        return _roundtrip_violation(fam.source, reconstruct(fam), x, witness["t"], tol) is not None
    raise ValueError(f"unknown family check {check!r}")


# ----- Galois consistency -----

def galois_check(f: IfpnPair, grid: SampleGrid, alpha_grid: Sequence[float] = None,
                 tol: float = 1e-6, fam: Optional[AlphaFamily] = None) -> DecisionOutcome:
    """
    ‖x‖_α ≤ t ⟹ μ(x, t + tol) ≥ α − tol and μ(x, t) ≥ α ⟹ ‖x‖_α ≤ t + tol,
    with the mirror statements for ν and ‖x‖*_α.
    """
    alphas = validate_alpha_grid(alpha_grid if alpha_grid is not None else default_alpha_grid())
    fam = fam or AlphaFamily(f)
    ladder = grid.t_ladder[::ROUNDTRIP_LADDER_STRIDE]
    resolution = {**grid.describe(), **fam.describe(), "alpha_grid": list(alphas), "tol": tol}
    for x in grid.lattice:
        for a in alphas:
            asc, desc = fam.ascending(x, a), fam.descending(x, a)
            for t in ladder:
                failed = None
                if asc <= t and f.mu(x, t + tol) < a - tol:
                    failed = "norm_to_mu"
                elif f.mu(x, t) >= a and asc > t + tol:
                    failed = "mu_to_norm"
                elif desc <= t and f.nu(x, t + tol) > a + tol:
                    failed = "conorm_to_nu"
                elif f.nu(x, t) <= a and desc > t + tol:
                    failed = "nu_to_conorm"
                if failed:
                    return DecisionOutcome.refuted(
                        {"check": failed, "x": PointUtils.as_list(x), "alpha": a, "t": t,
                         "norm": asc, "conorm": desc}, resolution)
    return DecisionOutcome.holds(resolution)
