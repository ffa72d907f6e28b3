from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..errors import ScenarioError
from ..norms.builtin import builtin_pseudo_norm
from ..operators.base import OperatorSpec, check_linearity
from ..operators.builtin import builtin_operator
from ..utils.logger import get_logger
from .classify import ALL_PROPERTIES, ClassifierConfig, OperatorClassifier, Property, PropertyReport
from .ifpn import IfpnPair, check_ifpn_axioms, standard_ifpn
from .structures import SampleGrid, Verdict

logger = get_logger(__name__)


class Direction(str, Enum):
    FORWARD = "forward"
    CONVERSE = "converse"


class EdgeStatus(str, Enum):
    CONSISTENT = "Consistent"
    DISCREPANT = "Discrepant"
    VACUOUS = "Vacuous"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class LatticeEdge:
    """
    One implication direction between two properties. `converse` marks the
    directions whose proofs only go through with δ = ε.
    """
    id: str
    hypothesis: Property
    conclusion: Property
    direction: Direction
    anchor: str

    def __post_init__(self):
        if self.hypothesis == self.conclusion:
            raise ScenarioError(f"edge {self.id}: hypothesis and conclusion coincide")

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "hypothesis": self.hypothesis.value, "conclusion": self.conclusion.value,
                "direction": self.direction.value, "anchor": self.anchor}


SEQ_EQUIV = "sequentially IFC if and only if IFC"
STRONG_WEAK_IFC = "strongly IFC then weakly IFC"
STRONG_SEQ = "strongly IFC then sequentially IFC"
STRONG_IFC = "strongly IFC then IFC"
STRONG_WEAK_IFB = "strongly IFB then weakly IFB"
UNIFORM_EQUIV = "strongly IFB if and only if uniformly IFB"
STRONG_EQUIV = "strongly IFC if and only if strongly IFB"
WEAK_EQUIV = "weakly IFC if and only if weakly IFB"
IFB_SEQ = "strongly IFB then sequentially IFC"
IFB_IFC = "strongly IFB then IFC"


def default_edges() -> List[LatticeEdge]:
    P, F, C = Property, Direction.FORWARD, Direction.CONVERSE
    return [
        LatticeEdge("seq_ifc->ifc", P.SEQ_IFC, P.IFC, F, SEQ_EQUIV),
        LatticeEdge("ifc->seq_ifc", P.IFC, P.SEQ_IFC, F, SEQ_EQUIV),
        LatticeEdge("strong_ifc->weak_ifc", P.STRONG_IFC, P.WEAK_IFC, F, STRONG_WEAK_IFC),
        LatticeEdge("strong_ifc->seq_ifc", P.STRONG_IFC, P.SEQ_IFC, F, STRONG_SEQ),
        LatticeEdge("strong_ifc->ifc", P.STRONG_IFC, P.IFC, F, STRONG_IFC),
        LatticeEdge("strong_ifb->weak_ifb", P.STRONG_IFB, P.WEAK_IFB, F, STRONG_WEAK_IFB),
        LatticeEdge("strong_ifb->uniform_ifb", P.STRONG_IFB, P.UNIFORM_IFB, F, UNIFORM_EQUIV),
        LatticeEdge("uniform_ifb->strong_ifb", P.UNIFORM_IFB, P.STRONG_IFB, F, UNIFORM_EQUIV),
        LatticeEdge("strong_ifc->strong_ifb", P.STRONG_IFC, P.STRONG_IFB, C, STRONG_EQUIV),
        LatticeEdge("strong_ifb->strong_ifc", P.STRONG_IFB, P.STRONG_IFC, F, STRONG_EQUIV),
        LatticeEdge("weak_ifc->weak_ifb", P.WEAK_IFC, P.WEAK_IFB, C, WEAK_EQUIV),
        LatticeEdge("weak_ifb->weak_ifc", P.WEAK_IFB, P.WEAK_IFC, F, WEAK_EQUIV),
        LatticeEdge("strong_ifb->seq_ifc", P.STRONG_IFB, P.SEQ_IFC, F, IFB_SEQ),
        LatticeEdge("strong_ifb->ifc", P.STRONG_IFB, P.IFC, F, IFB_IFC),
    ]


@dataclass(frozen=True)
class Scenario:
    name: str
    f_dom: IfpnPair
    f_cod: IfpnPair
    operator: OperatorSpec
    config: ClassifierConfig


@dataclass
class EdgeResult:
    edge: LatticeEdge
    status: EdgeStatus
    hypothesis: Verdict
    conclusion: Verdict
    certificate: Any = None
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        out = {"edge": self.edge.id, "direction": self.edge.direction.value, "status": self.status.value,
               "hypothesis": self.hypothesis.value, "conclusion": self.conclusion.value}
        if self.status is EdgeStatus.DISCREPANT:
            out["certificate"] = self.certificate
            out["witness"] = self.witness
        return out


@dataclass
class LatticeReport:
    scenario: str
    reports: List[PropertyReport]
    edge_results: Dict[str, EdgeResult] = field(default_factory=dict)
    expectations: List[Dict[str, Any]] = field(default_factory=list)

    def report_for(self, prop: Property) -> PropertyReport:
        prop = Property(prop)
        return next(r for r in self.reports if r.property is prop)

    def verdict(self, prop: Property) -> Verdict:
        return self.report_for(prop).verdict

    def discrepant(self, direction: Optional[Direction] = None) -> List[EdgeResult]:
        return [r for r in self.edge_results.values()
                if r.status is EdgeStatus.DISCREPANT and (direction is None or r.edge.direction is direction)]

    def to_dict(self) -> Dict[str, Any]:
        out = {"scenario": self.scenario,
               "properties": [r.to_dict() for r in self.reports],
               "edges": [r.to_dict() for r in self.edge_results.values()]}
        if self.expectations:
            out["expectations"] = self.expectations
        return out


class LatticeEngine:
    """Runs every classifier per scenario and scores each edge of the implication lattice."""

    def __init__(self, edges: Optional[Sequence[LatticeEdge]] = None, log: Callable[[str], None] = None):
        self.edges = list(edges) if edges is not None else default_edges()
        self.log = log or logger.info
        self.total = 0
        self.done = 0
        self._validated: Dict[Tuple[str, str], bool] = {}

    def validate(self, scenario: Scenario):
        """Pairs must not be refuted on their axioms; declared-linear operators must test linear."""
        grid = scenario.config.x_grid
        checks = [(scenario.f_dom, grid)]
        if scenario.f_cod is not scenario.f_dom:
            checks.append((scenario.f_cod, SampleGrid.default(scenario.f_cod.dimension, grid.seed)))
        for f, check_grid in checks:
            key = (f.name, check_grid.label)
            if key in self._validated:
                continue
            outcome = check_ifpn_axioms(f, check_grid)
            if outcome.is_refuted:
                raise ScenarioError(f"{scenario.name}: {f.name} fails {outcome.witness['axiom']}")
            self._validated[key] = True
        if scenario.operator.declared_linear:
            outcome = check_linearity(scenario.operator, grid)
            if outcome.is_refuted:
                raise ScenarioError(f"{scenario.name}: {scenario.operator.name} is declared linear "
                                    f"but fails {outcome.witness['check']}")

    def run(self, scenarios: Sequence[Scenario], validate: bool = True,
            progress_callback: Callable[[int, int], None] = None) -> List[LatticeReport]:
        # 1. classify every scenario
        self.total = len(scenarios)
        self.done = 0
        results = []
        for scenario in scenarios:
            if validate:
                self.validate(scenario)
            self.log(f"classifying {scenario.name}")
            classifier = OperatorClassifier(scenario.operator, scenario.f_dom, scenario.f_cod, scenario.config)
            reports = classifier.classify(ALL_PROPERTIES)
            results.append(LatticeReport(scenario.name, reports, self._score(reports)))
            self.done += 1
            if progress_callback:
                progress_callback(self.done, self.total)

        # 2. edges whose hypothesis never holds anywhere are vacuous
        for edge in self.edges:
            if not any(r.edge_results[edge.id].hypothesis is Verdict.HOLDS for r in results):
                for r in results:
                    r.edge_results[edge.id].status = EdgeStatus.VACUOUS

        for r in results:
            for er in r.discrepant():
                self.log(f"{r.scenario}: {er.edge.direction.value} edge {er.edge.id} is Discrepant")
        return results

    def _score(self, reports: List[PropertyReport]) -> Dict[str, EdgeResult]:
        by_prop = {r.property: r for r in reports}
        scored = {}
        for edge in self.edges:
            hyp, conc = by_prop[edge.hypothesis], by_prop[edge.conclusion]
            if hyp.verdict is Verdict.REFUTED:
                status = EdgeStatus.CONSISTENT
            elif hyp.verdict is Verdict.HOLDS and conc.verdict is Verdict.HOLDS:
                status = EdgeStatus.CONSISTENT
            elif hyp.verdict is Verdict.HOLDS and conc.verdict is Verdict.REFUTED:
                status = EdgeStatus.DISCREPANT
            else:
                status = EdgeStatus.INCONCLUSIVE
            result = EdgeResult(edge, status, hyp.verdict, conc.verdict)
            if status is EdgeStatus.DISCREPANT:
                result.certificate = hyp.certificate
                result.witness = conc.outcome.witness
            scored[edge.id] = result
        return scored


def run_lattice(scenarios: Sequence[Scenario], validate: bool = True, log=None,
                progress_callback=None) -> List[LatticeReport]:
    return LatticeEngine(log=log).run(scenarios, validate, progress_callback)


def forward_discrepancies(reports: Sequence[LatticeReport]) -> List[Tuple[str, str]]:
    return [(r.scenario, er.edge.id) for r in reports for er in r.discrepant(Direction.FORWARD)]


# ----- corpus -----

CORPUS_NORMS = ("abs", "euclidean", "truncated(euclidean,1)", "root(abs)")
CORPUS_DIMENSIONS = {"abs": 1, "euclidean": 2, "truncated(euclidean,1)": 2, "root(abs)": 1}
CUBIC_POINTS = {"abs": (0.0, 1.0, 2.0), "root(abs)": (0.0,)}
CUBIC_BOUND = 100.0


def make_scenario(operator: OperatorSpec, pair: IfpnPair, grid: SampleGrid, x0=None,
                  resolution: float = 1.0, name: str = None, f_cod: IfpnPair = None, **overrides) -> Scenario:
    cfg = ClassifierConfig.default(grid, x0, resolution, **overrides)
    if name is None:
        name = f"{operator.name} on {pair.name}"
        if x0 is not None:
            name += f" at x0={list(cfg.point_of_interest)}"
    return Scenario(name, pair, f_cod or pair, operator, cfg)


def default_corpus(seed: int = 42, resolution: float = 1.0) -> List[Scenario]:
    """Linear builtins over four standard pairs, plus the cubic map on the x >= 0 grid."""
    scenarios = []
    for norm_name in CORPUS_NORMS:
        d = CORPUS_DIMENSIONS[norm_name]
        pair = standard_ifpn(builtin_pseudo_norm(norm_name, d))
        grid = SampleGrid.default(d, seed, resolution)
        for op_name in (f"identity({d})", f"zero({d})", f"scaling({d},0.5)", f"scaling({d},1)",
                        f"scaling({d},2)", f"coordinate_projection({d},1)"):
            scenarios.append(make_scenario(builtin_operator(op_name), pair, grid, resolution=resolution))

    cubic = builtin_operator("cubic_ratio")
    grid = SampleGrid.nonnegative(CUBIC_BOUND, seed, resolution)
    for norm_name, points in CUBIC_POINTS.items():
        pair = standard_ifpn(builtin_pseudo_norm(norm_name, 1))
        for x0 in points:
            scenarios.append(make_scenario(cubic, pair, grid, (x0,), resolution))
    return scenarios


def _expect(report: LatticeReport, expected: Dict[Property, Verdict]):
    for prop, verdict in expected.items():
        observed = report.verdict(prop)
        report.expectations.append({"property": prop.value, "expected": verdict.value,
                                    "observed": observed.value, "met": observed is verdict})


def reproduce_counterexamples(cfg: Optional[ClassifierConfig] = None,
                              log=None) -> Tuple[LatticeReport, LatticeReport]:
    """
    The cubic map x³/(1+x) over the standard abs pair on 0 <= x <= 100:
    first report weak IFC vs strong IFC at cfg's x0 (default 0), second the
    sequential check at x0 = 1.
    """
    pair = standard_ifpn(builtin_pseudo_norm("abs", 1))
    if cfg is None:
        cfg = ClassifierConfig.default(SampleGrid.nonnegative(CUBIC_BOUND), (0.0,))
    cubic = builtin_operator("cubic_ratio")
    first = Scenario(f"cubic_ratio at x0={list(cfg.point_of_interest)}", pair, pair, cubic, cfg)
    second = Scenario("cubic_ratio at x0=[1.0]", pair, pair, cubic, cfg.at((1.0,)))
    engine = LatticeEngine(log=log)
    weak_strong, sequential = engine.run([first, second], validate=False)
    _expect(weak_strong, {Property.WEAK_IFC: Verdict.HOLDS, Property.STRONG_IFC: Verdict.REFUTED})
    _expect(sequential, {Property.SEQ_IFC: Verdict.HOLDS})
    for report in (weak_strong, sequential):
        missed = [e for e in report.expectations if not e["met"]]
        if missed:
            logger.warning("%s: %d expectation(s) not met", report.scenario, len(missed))
    return weak_strong, sequential
