from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionError, DomainError, ParameterError, UnknownNameError
from ..operators.base import OperatorSpec
from ..utils.logger import get_logger
from ..utils.point_utils import Point, PointUtils
from ..utils.search_utils import SearchUtils
from .alpha import AlphaFamily
from .ifpn import IfpnPair, check_convergence
from .structures import DecisionOutcome, SampleGrid, SequenceSpec, scaled_steps, validate_alpha_grid

logger = get_logger(__name__)

DEFAULT_EPS = (0.1, 0.5, 1.0, 2.0, 10.0)
DEFAULT_ALPHAS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
REFINE_REL_TOL = 1e-6


class Property(str, Enum):
    IFC = "ifc"
    SEQ_IFC = "seq_ifc"
    STRONG_IFC = "strong_ifc"
    WEAK_IFC = "weak_ifc"
    STRONG_IFB = "strong_ifb"
    WEAK_IFB = "weak_ifb"
    UNIFORM_IFB = "uniform_ifb"

    @property
    def at_point(self) -> bool:
        return self in (Property.IFC, Property.SEQ_IFC, Property.STRONG_IFC, Property.WEAK_IFC)

    @classmethod
    def parse(cls, name: str) -> "Property":
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            raise UnknownNameError(f"unknown property {name!r}; known: {', '.join(p.value for p in cls)}") from None


ALL_PROPERTIES = tuple(Property)


def delta_candidates(delta_max: float = 10.0, delta_min: float = 1e-6, steps: int = 25) -> Tuple[float, ...]:
    """Descending log grid of δ candidates."""
    if not 0 < delta_min < delta_max:
        raise ParameterError(f"need 0 < delta_min < delta_max, got {delta_min}, {delta_max}")
    return tuple(float(d) for d in np.logspace(np.log10(delta_max), np.log10(delta_min), steps))


def default_seq_suite(x0: Point) -> Tuple[SequenceSpec, ...]:
    suite = [SequenceSpec.harmonic(x0, k) for k in range(len(x0))]
    if not PointUtils.is_zero(x0):
        suite.append(SequenceSpec.relative(x0))
    return tuple(suite)


@dataclass(frozen=True)
class ClassifierConfig:
    x_grid: SampleGrid
    point_of_interest: Optional[Point] = None
    eps_grid: Tuple[float, ...] = DEFAULT_EPS
    alpha_grid: Tuple[float, ...] = DEFAULT_ALPHAS
    delta_candidates: Tuple[float, ...] = field(default_factory=delta_candidates)
    seq_suite: Tuple[SequenceSpec, ...] = ()
    tol: float = 1e-9
    tail: int = 100000
    shell_ratio: float = 10.0
    shell_count: int = 3
    shrink_factor: float = 0.5
    bisect_tol: float = 1e-9
    bracket_cap: float = 1e6

    def __post_init__(self):
        x0 = self.x_grid.theta if self.point_of_interest is None else PointUtils.make(self.point_of_interest)
        PointUtils.check_dimension(x0, self.x_grid.dimension, "point of interest")
        object.__setattr__(self, "point_of_interest", x0)
        object.__setattr__(self, "alpha_grid", validate_alpha_grid(self.alpha_grid))
        if not self.eps_grid or any(e <= 0 for e in self.eps_grid):
            raise ParameterError("eps grid must be non-empty and positive")
        cands = tuple(float(d) for d in self.delta_candidates)
        if not cands or any(d <= 0 for d in cands) or any(b >= a for a, b in zip(cands, cands[1:])):
            raise ParameterError("delta candidates must be positive and strictly descending")
        object.__setattr__(self, "delta_candidates", cands)
        if not self.seq_suite:
            object.__setattr__(self, "seq_suite", default_seq_suite(x0))
        if self.tail < 10:
            raise ParameterError(f"tail must be at least 10, got {self.tail}")
        if not self.shell_ratio > 1 or self.shell_count < 2 or not 0 < self.shrink_factor < 1:
            raise ParameterError("need shell_ratio > 1, shell_count >= 2 and shrink_factor in (0, 1)")

    @classmethod
    def default(cls, grid: SampleGrid, point_of_interest: Optional[Point] = None,
                resolution: float = 1.0, **overrides) -> "ClassifierConfig":
        delta_max = overrides.pop("delta_max", 10.0)
        delta_min = overrides.pop("delta_min", 1e-6)
        steps = overrides.pop("delta_steps", scaled_steps(25, resolution))
        return cls(x_grid=grid, point_of_interest=point_of_interest,
                   delta_candidates=delta_candidates(delta_max, delta_min, steps), **overrides)

    def at(self, x0: Point) -> "ClassifierConfig":
        return replace(self, point_of_interest=PointUtils.make(x0), seq_suite=())

    def describe(self) -> Dict[str, Any]:
        c = self.delta_candidates
        return {
            **self.x_grid.describe(),
            "point_of_interest": PointUtils.as_list(self.point_of_interest),
            "eps_grid": list(self.eps_grid),
            "alpha_grid": list(self.alpha_grid),
            "delta_candidates": [c[0], c[-1], len(c)],
            "seq_suite": [s.name for s in self.seq_suite],
            "tol": self.tol,
            "tail": self.tail,
            "shell_ratio": self.shell_ratio,
            "shell_count": self.shell_count,
            "shrink_factor": self.shrink_factor,
        }


@dataclass(frozen=True)
class PropertyReport:
    property: Property
    outcome: DecisionOutcome

    @property
    def certificate(self):
        return self.outcome.certificate

    @property
    def verdict(self):
        return self.outcome.verdict

    def to_dict(self) -> Dict[str, Any]:
        return {"property": self.property.value, **self.outcome.to_dict()}


class OperatorClassifier:
    """
    Runs the seven property checks for one (T, f_dom, f_cod, config).
    Point-based checks sample the grid plus probe points x0 ± s·e_k.
    """

    def __init__(self, T: OperatorSpec, f_dom: IfpnPair, f_cod: IfpnPair, cfg: ClassifierConfig):
        if T.domain_dim != f_dom.dimension or T.codomain_dim != f_cod.dimension:
            raise DimensionError(
                f"{T.name} maps R^{T.domain_dim} -> R^{T.codomain_dim}, pairs live on "
                f"R^{f_dom.dimension} and R^{f_cod.dimension}")
        if cfg.x_grid.dimension != T.domain_dim:
            raise DimensionError(f"grid dimension {cfg.x_grid.dimension} != domain dimension {T.domain_dim}")
        self.T = T
        self.f_dom = f_dom
        self.f_cod = f_cod
        self.cfg = cfg
        self.x0 = cfg.point_of_interest
        if not T.in_domain(self.x0):
            raise DomainError(f"point of interest {list(self.x0)} is outside the domain of {T.name}")
        self.tx0 = T(self.x0)
        self._samples = None
        self._conclusions: Dict[float, Tuple[List[float], List[float]]] = {}
        self._families = None

    # ----- sampling -----
    def probe_points(self) -> List[Point]:
        cands = self.cfg.delta_candidates
        steps = list(cands) + [cands[-1] / 2, cands[-1] / 10]
        probes = []
        for s in steps:
            for k in range(len(self.x0)):
                e = PointUtils.basis(len(self.x0), k)
                for sign in (1.0, -1.0):
                    x = PointUtils.add(self.x0, PointUtils.scale(sign * s, e))
                    if self.T.in_domain(x):
                        probes.append(x)
        return probes

    @property
    def samples(self):
        """[(x, x - x0, T(x) - T(x0))] over grid points, x0 and probes."""
        if self._samples is None:
            seen, out = set(), []
            for x in list(self.cfg.x_grid.points) + [self.x0] + self.probe_points():
                if x in seen:
                    continue
                seen.add(x)
                out.append((x, PointUtils.sub(x, self.x0), PointUtils.sub(self.T(x), self.tx0)))
            self._samples = out
            logger.debug("%s at %s: %d samples", self.T.name, list(self.x0), len(out))
        return self._samples

    def _conclusion(self, eps: float):
        if eps not in self._conclusions:
            self._conclusions[eps] = ([self.f_cod.mu(v, eps) for _, _, v in self.samples],
                                      [self.f_cod.nu(v, eps) for _, _, v in self.samples])
        return self._conclusions[eps]

    def _resolution(self, **extra) -> Dict[str, Any]:
        return {**self.cfg.describe(), "operator": self.T.name, "domain_pair": self.f_dom.name,
                "codomain_pair": self.f_cod.name, **extra}

    def _sup_delta(self, admissible: Callable[[float], bool]) -> Tuple[Optional[float], Optional[float]]:
        """
        Largest admissible δ at resolution and the failing δ just above it.
        (None, None) when no candidate is admissible; (δ_max, None) when the
        largest candidate already is. If the smallest candidate fails, the
        ladder is scanned for an admissible interior one.
        """
        cands = self.cfg.delta_candidates
        if admissible(cands[0]):
            return cands[0], None
        lo, hi = 0, len(cands) - 1
        if not admissible(cands[hi]):
            hi = next((i for i in range(1, hi) if admissible(cands[i])), None)
            if hi is None:
                return None, None
            lo = hi - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if admissible(cands[mid]):
                hi = mid
            else:
                lo = mid
        ok, fail = SearchUtils.bisect(lambda d: not admissible(d), cands[hi], cands[lo],
                                      cands[hi] * REFINE_REL_TOL)
        return ok, fail

    # ----- IFC -----
    def _ifc_violator(self, eps, alpha, delta, beta, indices=None) -> Optional[int]:
        mu2, nu2 = self._conclusion(eps)
        tol = self.cfg.tol
        for i in (indices if indices is not None else range(len(self.samples))):
            if mu2[i] > 1.0 - alpha - tol and nu2[i] < alpha + tol:
                continue
            u = self.samples[i][1]
            if self.f_dom.mu(u, delta) > 1.0 - beta and self.f_dom.nu(u, delta) < beta:
                return i
        return None

    def _has_premise_points(self, premise) -> bool:
        return any(premise(u) for x, u, _ in self.samples if x != self.x0)

    def _ifc_premise_betas(self) -> List[float]:
        top = self.cfg.delta_candidates[0]
        return [b for b in self.cfg.alpha_grid
                if self._has_premise_points(lambda u: self.f_dom.mu(u, top) > 1.0 - b
                                            and self.f_dom.nu(u, top) < b)]

    def _violating_candidates(self, violator, keys) -> List[Dict[str, Any]]:
        out = []
        for key in keys:
            i = violator(**key)
            if i is not None:
                out.append({**key, "x": PointUtils.as_list(self.samples[i][0])})
        return out

    def check_ifc(self) -> PropertyReport:
        cfg = self.cfg
        betas = self._ifc_premise_betas()
        certificate = []
        for eps in cfg.eps_grid:
            for alpha in cfg.alpha_grid:
                if not betas:
                    return self._report(Property.IFC, DecisionOutcome.inconclusive(
                        self._resolution(),
                        [f"no sample other than x0 satisfies the premise for any β (ε={eps:g}, α={alpha:g})"]))
                mu2, nu2 = self._conclusion(eps)
                bad = [i for i in range(len(self.samples))
                       if not (mu2[i] > 1.0 - alpha - cfg.tol and nu2[i] < alpha + cfg.tol)]
                found = None
                for beta in sorted(betas, key=lambda b: (abs(b - alpha), b)):
                    delta, _ = self._sup_delta(lambda d: self._ifc_violator(eps, alpha, d, beta, bad) is None)
                    if delta is not None:
                        found = (delta, beta)
                        break
                if found is None:
                    witness = {"eps": eps, "alpha": alpha, "candidates": self._violating_candidates(
                        lambda delta, beta: self._ifc_violator(eps, alpha, delta, beta, bad),
                        [{"delta": d, "beta": b} for b in cfg.alpha_grid for d in cfg.delta_candidates])}
                    return self._report(Property.IFC, DecisionOutcome.refuted(witness, self._resolution()))
                certificate.append({"eps": eps, "alpha": alpha, "delta": found[0], "beta": found[1]})
        return self._report(Property.IFC, DecisionOutcome.holds(self._resolution(), certificate))

    # ----- sequential IFC -----
    def check_seq_ifc(self) -> PropertyReport:
        cfg = self.cfg
        ladder = cfg.x_grid.t_ladder
        outcomes, diagnostics = [], []
        for s in cfg.seq_suite:
            pre = check_convergence(self.f_dom, s, cfg.tail, cfg.tol, ladder)
            if not pre.is_holds:
                diagnostics.append(f"{s.name} does not converge to x0 at resolution ({pre.verdict.value})")
                outcomes.append(DecisionOutcome.inconclusive(pre.resolution, pre.diagnostics))
                continue
            image = SequenceSpec(f"T∘{s.name}", lambda n, s=s: self.T(s(n)), self.tx0)
            outcomes.append(check_convergence(self.f_cod, image, cfg.tail, cfg.tol, ladder))
        combined = DecisionOutcome.combine(outcomes, self._resolution())
        if diagnostics:
            combined = replace(combined, diagnostics=tuple(diagnostics) + combined.diagnostics)
        return self._report(Property.SEQ_IFC, combined)

    # ----- strong IFC -----
    def _strong_violator(self, eps, delta, indices=None) -> Optional[int]:
        mu2, nu2 = self._conclusion(eps)
        tol = self.cfg.tol
        for i in (indices if indices is not None else range(len(self.samples))):
            u = self.samples[i][1]
            if mu2[i] < self.f_dom.mu(u, delta) - tol or nu2[i] > self.f_dom.nu(u, delta) + tol:
                return i
        return None

    def shell_radii(self) -> Tuple[float, ...]:
        top = max(PointUtils.magnitude(x) for x in self.cfg.x_grid.points)
        return tuple(top / self.cfg.shell_ratio ** j for j in range(self.cfg.shell_count))

    def delta_profile(self, eps: float) -> List[Dict[str, Any]]:
        """Sup admissible δ when x is restricted to nested magnitude shells, outermost first."""
        profile = []
        for radius in self.shell_radii():
            shell = [i for i, (x, _, _) in enumerate(self.samples) if PointUtils.magnitude(x) <= radius]
            delta, fail = self._sup_delta(lambda d: self._strong_violator(eps, d, shell) is None)
            entry = {"radius": radius, "delta": delta, "delta_fail": fail, "binding": fail is not None}
            if fail is not None:
                entry["x"] = PointUtils.as_list(self.samples[self._strong_violator(eps, fail, shell)][0])
            profile.append(entry)
        return profile

    def _shrinks(self, profile) -> bool:
        inner = profile[-1]
        if not inner["binding"]:
            return False
        deltas = [p["delta"] for p in profile]
        if any(d is None for d in deltas):
            return False
        return all(outer <= self.cfg.shrink_factor * inner_d
                   for outer, inner_d in zip(deltas, deltas[1:]))

    def check_strong_ifc(self) -> PropertyReport:
        cfg = self.cfg
        certificate, profiles, refutation = [], [], None
        for eps in cfg.eps_grid:
            delta, fail = self._sup_delta(lambda d: self._strong_violator(eps, d) is None)
            profile = self.delta_profile(eps)
            profiles.append({"eps": eps, "shells": profile})
            if refutation is not None:
                continue
            if delta is None:
                refutation = {"eps": eps, "case": "no_delta", "candidates": self._violating_candidates(
                    lambda delta: self._strong_violator(eps, delta), [{"delta": d} for d in cfg.delta_candidates])}
            elif self._shrinks(profile):
                refutation = {"eps": eps, "case": "shrinking_delta", "shells": profile}
            else:
                certificate.append({"eps": eps, "delta": delta, "binding": fail is not None})

        resolution = self._resolution(shell_radii=list(self.shell_radii()))
        if refutation is not None:
            refutation["profile"] = profiles
            logger.info("%s: strong IFC refuted at ε=%g (%s)", self.T.name, refutation["eps"], refutation["case"])
            return self._report(Property.STRONG_IFC, DecisionOutcome.refuted(refutation, resolution))
        return self._report(Property.STRONG_IFC, DecisionOutcome.holds(
            resolution, {"deltas": certificate, "profile": profiles}))

    # ----- weak IFC -----
    def _weak_violator(self, eps, alpha, delta, bad_mu, bad_nu) -> Optional[int]:
        for i in bad_mu:
            if self.f_dom.mu(self.samples[i][1], delta) >= alpha:
                return i
        for i in bad_nu:
            if self.f_dom.nu(self.samples[i][1], delta) <= alpha:
                return i
        return None

    def _weak_bad(self, eps, alpha):
        mu2, nu2 = self._conclusion(eps)
        tol = self.cfg.tol
        n = len(self.samples)
        return ([i for i in range(n) if mu2[i] < alpha - tol],
                [i for i in range(n) if nu2[i] > alpha + tol])

    def check_weak_ifc(self) -> PropertyReport:
        cfg = self.cfg
        top = cfg.delta_candidates[0]
        if not self._has_premise_points(lambda u: any(self.f_dom.mu(u, top) >= a for a in cfg.alpha_grid)):
            return self._report(Property.WEAK_IFC, DecisionOutcome.inconclusive(
                self._resolution(), ["no sample other than x0 satisfies the premise"]))

        certificate = []
        for eps in cfg.eps_grid:
            for alpha in cfg.alpha_grid:
                bad_mu, bad_nu = self._weak_bad(eps, alpha)
                delta, _ = self._sup_delta(lambda d: self._weak_violator(eps, alpha, d, bad_mu, bad_nu) is None)
                if delta is None:
                    witness = {"eps": eps, "alpha": alpha, "candidates": self._violating_candidates(
                        lambda delta: self._weak_violator(eps, alpha, delta, bad_mu, bad_nu),
                        [{"delta": d} for d in cfg.delta_candidates])}
                    return self._report(Property.WEAK_IFC, DecisionOutcome.refuted(witness, self._resolution()))
                certificate.append({"eps": eps, "alpha": alpha, "delta": delta})
        return self._report(Property.WEAK_IFC, DecisionOutcome.holds(self._resolution(), certificate))

    # ----- boundedness -----
    def check_strong_ifb(self) -> PropertyReport:
        tol = self.cfg.tol
        grid = self.cfg.x_grid
        for x in grid.points:
            tx = self.T(x)
            for t in grid.t_ladder:
                m1, m2 = self.f_dom.mu(x, t), self.f_cod.mu(tx, t)
                n1, n2 = self.f_dom.nu(x, t), self.f_cod.nu(tx, t)
                if m2 < m1 - tol or n2 > n1 + tol:
                    witness = {"x": PointUtils.as_list(x), "t": t, "mu_dom": m1, "mu_cod": m2,
                               "nu_dom": n1, "nu_cod": n2}
                    return self._report(Property.STRONG_IFB, DecisionOutcome.refuted(witness, self._resolution()))
        return self._report(Property.STRONG_IFB, DecisionOutcome.holds(self._resolution()))

    def check_weak_ifb(self) -> PropertyReport:
        tol = self.cfg.tol
        grid = self.cfg.x_grid
        images = {x: self.T(x) for x in grid.points}
        for alpha in self.cfg.alpha_grid:
            for x in grid.points:
                for t in grid.t_ladder:
                    m1, m2 = self.f_dom.mu(x, t), self.f_cod.mu(images[x], t)
                    if m1 >= alpha and m2 < alpha - tol:
                        return self._weak_ifb_refuted("mu", alpha, x, t, m1, m2)
                    n1, n2 = self.f_dom.nu(x, t), self.f_cod.nu(images[x], t)
                    if n1 <= 1.0 - alpha and n2 > 1.0 - alpha + tol:
                        return self._weak_ifb_refuted("nu", alpha, x, t, n1, n2)
        return self._report(Property.WEAK_IFB, DecisionOutcome.holds(self._resolution()))

    def _weak_ifb_refuted(self, side, alpha, x, t, dom, cod):
        witness = {"side": side, "alpha": alpha, "x": PointUtils.as_list(x), "t": t, "dom": dom, "cod": cod}
        return self._report(Property.WEAK_IFB, DecisionOutcome.refuted(witness, self._resolution()))

    @property
    def families(self) -> Tuple[AlphaFamily, AlphaFamily]:
        if self._families is None:
            self._families = (AlphaFamily(self.f_dom, self.cfg.bracket_cap, self.cfg.bisect_tol),
                              AlphaFamily(self.f_cod, self.cfg.bracket_cap, self.cfg.bisect_tol))
        return self._families

    def check_uniform_ifb(self) -> PropertyReport:
        fam_dom, fam_cod = self.families
        slack = self.cfg.tol + 2 * self.cfg.bisect_tol
        resolution = self._resolution(bisect_tol=self.cfg.bisect_tol, bracket_cap=self.cfg.bracket_cap)
        for alpha in self.cfg.alpha_grid:
            for x in self.cfg.x_grid.points:
                tx = self.T(x)
                for side, dom, cod in (("norm", fam_dom.ascending(x, alpha), fam_cod.ascending(tx, alpha)),
                                       ("conorm", fam_dom.descending(x, alpha), fam_cod.descending(tx, alpha))):
                    if cod > dom + slack:
                        witness = {"side": side, "alpha": alpha, "x": PointUtils.as_list(x), "dom": dom, "cod": cod}
                        return self._report(Property.UNIFORM_IFB, DecisionOutcome.refuted(witness, resolution))
        return self._report(Property.UNIFORM_IFB, DecisionOutcome.holds(resolution))

    # ----- dispatch -----
    def check(self, prop: Property) -> PropertyReport:
        prop = Property(prop)
        return {
            Property.IFC: self.check_ifc,
            Property.SEQ_IFC: self.check_seq_ifc,
            Property.STRONG_IFC: self.check_strong_ifc,
            Property.WEAK_IFC: self.check_weak_ifc,
            Property.STRONG_IFB: self.check_strong_ifb,
            Property.WEAK_IFB: self.check_weak_ifb,
            Property.UNIFORM_IFB: self.check_uniform_ifb,
        }[prop]()

    def classify(self, properties: Iterable[Property] = ALL_PROPERTIES) -> List[PropertyReport]:
        return [self.check(p) for p in properties]

    def _report(self, prop: Property, outcome: DecisionOutcome) -> PropertyReport:
        logger.info("%s [%s -> %s] %s: %s", self.T.name, self.f_dom.name, self.f_cod.name,
                    prop.value, outcome.verdict.value)
        return PropertyReport(prop, outcome)

    # ----- replay -----
    def replay_witness(self, prop: Property, witness: Dict[str, Any]) -> bool:
        """True when every violation recorded in the witness re-evaluates as a violation."""
        prop = Property(prop)
        tol = self.cfg.tol
        if prop is Property.IFC:
            return all(self._ifc_fails_at(witness["eps"], witness["alpha"], c["delta"], c["beta"], c["x"])
                       for c in witness["candidates"])
        if prop is Property.WEAK_IFC:
            return all(self._weak_fails_at(witness["eps"], witness["alpha"], c["delta"], c["x"])
                       for c in witness["candidates"])
        if prop is Property.STRONG_IFC:
            eps = witness["eps"]
            if witness["case"] == "no_delta":
                return all(self._strong_fails_at(eps, c["delta"], c["x"]) for c in witness["candidates"])
            shells = witness["shells"]
            return (self._shrinks(shells)
                    and all(self._strong_fails_at(eps, s["delta_fail"], s["x"])
                            and PointUtils.magnitude(PointUtils.make(s["x"])) <= s["radius"]
                            for s in shells if s["binding"]))
        if prop is Property.SEQ_IFC:
            base = witness["sequence"].split("∘", 1)[-1]
            seq = next(s for s in self.cfg.seq_suite if s.name == base)
            d = PointUtils.sub(self.T(seq(witness["n"])), self.tx0)
            t = witness["t"]
            return self.f_cod.mu(d, t) < 1.0 - tol or self.f_cod.nu(d, t) > tol
        x = PointUtils.make(witness["x"])
        tx = self.T(x)
        if prop is Property.STRONG_IFB:
            t = witness["t"]
            return (self.f_cod.mu(tx, t) < self.f_dom.mu(x, t) - tol
                    or self.f_cod.nu(tx, t) > self.f_dom.nu(x, t) + tol)
        if prop is Property.WEAK_IFB:
            a, t = witness["alpha"], witness["t"]
            if witness["side"] == "mu":
                return self.f_dom.mu(x, t) >= a and self.f_cod.mu(tx, t) < a - tol
            return self.f_dom.nu(x, t) <= 1.0 - a and self.f_cod.nu(tx, t) > 1.0 - a + tol
        fam_dom, fam_cod = self.families
        a = witness["alpha"]
        slack = tol + 2 * self.cfg.bisect_tol
        if witness["side"] == "norm":
            return fam_cod.ascending(tx, a) > fam_dom.ascending(x, a) + slack
        return fam_cod.descending(tx, a) > fam_dom.descending(x, a) + slack

    def _split(self, x) -> Tuple[Point, Point]:
        x = PointUtils.make(x)
        return PointUtils.sub(x, self.x0), PointUtils.sub(self.T(x), self.tx0)

    def _ifc_fails_at(self, eps, alpha, delta, beta, x) -> bool:
        u, v = self._split(x)
        premise = self.f_dom.mu(u, delta) > 1.0 - beta and self.f_dom.nu(u, delta) < beta
        holds = self.f_cod.mu(v, eps) > 1.0 - alpha - self.cfg.tol and self.f_cod.nu(v, eps) < alpha + self.cfg.tol
        return premise and not holds

    def _weak_fails_at(self, eps, alpha, delta, x) -> bool:
        u, v = self._split(x)
        tol = self.cfg.tol
        return ((self.f_dom.mu(u, delta) >= alpha and self.f_cod.mu(v, eps) < alpha - tol)
                or (self.f_dom.nu(u, delta) <= alpha and self.f_cod.nu(v, eps) > alpha + tol))

    def _strong_fails_at(self, eps, delta, x) -> bool:
        u, v = self._split(x)
        tol = self.cfg.tol
        return (self.f_cod.mu(v, eps) < self.f_dom.mu(u, delta) - tol
                or self.f_cod.nu(v, eps) > self.f_dom.nu(u, delta) + tol)

    def replay_certificate(self, prop: Property, certificate) -> bool:
        """Re-check every existential choice of a Holds certificate against all samples."""
        prop = Property(prop)
        if prop is Property.IFC:
            return all(self._ifc_violator(c["eps"], c["alpha"], c["delta"], c["beta"]) is None for c in certificate)
        if prop is Property.WEAK_IFC:
            return all(self._weak_violator(c["eps"], c["alpha"], c["delta"], *self._weak_bad(c["eps"], c["alpha"]))
                       is None for c in certificate)
        if prop is Property.STRONG_IFC:
            return all(self._strong_violator(c["eps"], c["delta"]) is None for c in certificate["deltas"])
        return certificate is None


# ----- function-style entry points -----

def check_ifc_at(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_ifc()


def check_seq_ifc_at(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_seq_ifc()


def check_strong_ifc_at(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_strong_ifc()


def check_weak_ifc_at(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_weak_ifc()


def check_strong_ifb(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_strong_ifb()


def check_weak_ifb(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_weak_ifb()


def check_uniform_ifb(T, f_dom, f_cod, cfg) -> PropertyReport:
    return OperatorClassifier(T, f_dom, f_cod, cfg).check_uniform_ifb()


def classify_at_points(prop: Property, T: OperatorSpec, f_dom: IfpnPair, f_cod: IfpnPair,
                       cfg: ClassifierConfig, points: Sequence[Point]) -> Dict[str, Any]:
    """Run a point-based check at several x0 and report whether the verdicts agree."""
    prop = Property(prop)
    if not prop.at_point:
        raise ParameterError(f"{prop.value} is not a point-based property")
    rows = []
    for x0 in points:
        report = OperatorClassifier(T, f_dom, f_cod, cfg.at(x0)).check(prop)
        rows.append({"point": PointUtils.as_list(PointUtils.make(x0)), "verdict": report.verdict.value})
    return {"property": prop.value, "points": rows, "agree": len({r["verdict"] for r in rows}) <= 1}
