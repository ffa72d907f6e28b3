"""End-to-end checks over the builtin corpus."""
import pytest

from ifpn_lab.core.alpha import alpha_conorm, alpha_norm, galois_check
from ifpn_lab.core.classify import OperatorClassifier, Property
from ifpn_lab.core.engine import EdgeStatus, default_corpus, forward_discrepancies, run_lattice
from ifpn_lab.core.structures import SampleGrid, Verdict, default_alpha_grid
from ifpn_lab.operators import builtin_operator

from conftest import ACCEPTANCE_NORMS, pair_for

FORWARD_EDGES = (
    "strong_ifc->weak_ifc", "strong_ifc->seq_ifc", "strong_ifc->ifc", "strong_ifb->weak_ifb",
    "strong_ifb->seq_ifc", "strong_ifb->ifc", "seq_ifc->ifc", "ifc->seq_ifc",
)


@pytest.fixture(scope="module")
def corpus():
    return default_corpus()


@pytest.fixture(scope="module")
def lattice(corpus):
    return run_lattice(corpus)


@pytest.mark.parametrize("name, dimension", ACCEPTANCE_NORMS)
def test_alpha_norms_match_closed_forms(name, dimension):
    f = pair_for(name, dimension)
    p = f.norm
    for x in SampleGrid.default(dimension).points:
        for a in default_alpha_grid():
            assert abs(alpha_norm(f, x, a) - p(x) * min(a / (1 - a), 1.0)) <= 1e-6
            assert abs(alpha_conorm(f, x, a) - p(x) * min((1 - a) / a, 1.0)) <= 1e-6


def test_corpus_has_no_forward_discrepancy(lattice):
    assert forward_discrepancies(lattice) == []
    for report in lattice:
        for edge_id in FORWARD_EDGES:
            assert report.edge_results[edge_id].status is not EdgeStatus.DISCREPANT


def test_strong_and_uniform_boundedness_agree(lattice):
    for report in lattice:
        assert report.verdict(Property.STRONG_IFB) is report.verdict(Property.UNIFORM_IFB), report.scenario


def test_galois_spot_checks(corpus):
    seen = set()
    for s in corpus:
        key = (s.f_dom.name, s.config.x_grid.label)
        if key in seen:
            continue
        seen.add(key)
        assert galois_check(s.f_dom, s.config.x_grid, alpha_grid=(0.1, 0.5, 0.9)).is_holds, key


def test_doubling_reports_converse_gap(lattice):
    doubling = [r for r in lattice if r.scenario.startswith("scaling(") and ",2) on " in r.scenario]
    assert len(doubling) == 4
    for report in doubling:
        assert report.edge_results["weak_ifc->weak_ifb"].status is EdgeStatus.DISCREPANT
        assert report.edge_results["strong_ifc->strong_ifb"].status is EdgeStatus.DISCREPANT


def test_doubling_at_theta():
    f = pair_for("abs")
    from ifpn_lab.core.classify import ClassifierConfig
    cfg = ClassifierConfig.default(SampleGrid.default(1))
    c = OperatorClassifier(builtin_operator("scaling(1,2)"), f, f, cfg)
    strong = c.check_strong_ifb()
    assert strong.verdict is Verdict.REFUTED
    assert c.replay_witness(Property.STRONG_IFB, {"x": [1.0], "t": 1.0})
    assert c.check_weak_ifb().verdict is Verdict.REFUTED
    weak = c.check_weak_ifc()
    assert weak.verdict is Verdict.HOLDS
    half = [{"eps": e, "alpha": a, "delta": e / 2} for e in cfg.eps_grid for a in cfg.alpha_grid]
    assert c.replay_certificate(Property.WEAK_IFC, half)


def test_witnesses_and_certificates_replay(corpus, lattice):
    for scenario, report in zip(corpus, lattice):
        c = OperatorClassifier(scenario.operator, scenario.f_dom, scenario.f_cod, scenario.config)
        for r in report.reports:
            if r.verdict is Verdict.REFUTED:
                assert c.replay_witness(r.property, r.outcome.witness), (scenario.name, r.property)
            elif r.verdict is Verdict.HOLDS:
                assert c.replay_certificate(r.property, r.certificate), (scenario.name, r.property)


def test_cubic_scenarios(lattice):
    by_name = {r.scenario: r for r in lattice}
    at_zero = by_name["cubic_ratio on standard(abs) at x0=[0.0]"]
    assert at_zero.verdict(Property.WEAK_IFC) is Verdict.HOLDS
    assert at_zero.verdict(Property.STRONG_IFC) is Verdict.REFUTED
    for x0 in ("1.0", "2.0"):
        assert by_name[f"cubic_ratio on standard(abs) at x0=[{x0}]"].verdict(Property.SEQ_IFC) is Verdict.HOLDS
