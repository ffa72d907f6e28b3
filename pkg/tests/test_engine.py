import pytest

from ifpn_lab.core.classify import ClassifierConfig, Property
from ifpn_lab.core.engine import (
    Direction, EdgeStatus, LatticeEdge, LatticeEngine, Scenario, default_corpus, default_edges,
    forward_discrepancies, make_scenario, reproduce_counterexamples, run_lattice,
)
from ifpn_lab.core.ifpn import mutate_pair
from ifpn_lab.core.structures import SampleGrid, Verdict
from ifpn_lab.errors import ScenarioError
from ifpn_lab.operators import OperatorSpec, builtin_operator, cubic_ratio

from conftest import pair_for


def test_default_edges():
    edges = default_edges()
    assert len(edges) == 14
    assert len({e.id for e in edges}) == 14
    converse = [e.id for e in edges if e.direction is Direction.CONVERSE]
    assert converse == ["strong_ifc->strong_ifb", "weak_ifc->weak_ifb"]
    assert edges[0].to_dict()["hypothesis"] == "seq_ifc"


def test_edge_needs_two_properties():
    with pytest.raises(ScenarioError):
        LatticeEdge("ifc->ifc", Property.IFC, Property.IFC, Direction.FORWARD, "")


def test_make_scenario_names(abs_pair, grid1):
    s = make_scenario(builtin_operator("identity(1)"), abs_pair, grid1)
    assert s.name == "identity(1) on standard(abs)"
    assert s.f_cod is abs_pair
    s = make_scenario(builtin_operator("identity(1)"), abs_pair, grid1, x0=(1.0,))
    assert s.name == "identity(1) on standard(abs) at x0=[1.0]"


def test_default_corpus_shape():
    corpus = default_corpus()
    assert len(corpus) == 28
    assert sum(1 for s in corpus if s.operator.name == "cubic_ratio") == 4
    assert len({s.name for s in corpus}) == 28


def test_identity_is_consistent_everywhere(abs_pair, grid1):
    progress = []
    engine = LatticeEngine(log=lambda msg: None)
    [report] = engine.run([make_scenario(builtin_operator("identity(1)"), abs_pair, grid1)],
                          progress_callback=lambda done, total: progress.append((done, total)))
    assert progress == [(1, 1)]
    assert len(report.edge_results) == 14
    assert all(r.status is EdgeStatus.CONSISTENT for r in report.edge_results.values())
    assert report.verdict(Property.UNIFORM_IFB) is Verdict.HOLDS


def test_doubling_surfaces_converse_gap(abs_pair, grid1):
    [report] = run_lattice([make_scenario(builtin_operator("scaling(1,2)"), abs_pair, grid1)])
    assert [e.edge.id for e in report.discrepant(Direction.CONVERSE)] == [
        "strong_ifc->strong_ifb", "weak_ifc->weak_ifb"]
    assert report.discrepant(Direction.FORWARD) == []
    assert forward_discrepancies([report]) == []
    gap = report.edge_results["weak_ifc->weak_ifb"]
    assert gap.certificate and gap.witness
    assert gap.to_dict()["status"] == "Discrepant"


def test_edges_without_holding_hypothesis_are_vacuous(abs_pair, cubic_grid):
    s = make_scenario(cubic_ratio(), abs_pair, cubic_grid, x0=(0.0,))
    [report] = run_lattice([s])
    for edge_id in ("strong_ifc->weak_ifc", "strong_ifb->uniform_ifb", "uniform_ifb->strong_ifb"):
        assert report.edge_results[edge_id].status is EdgeStatus.VACUOUS
    assert report.edge_results["weak_ifc->weak_ifb"].status is EdgeStatus.DISCREPANT


def test_validation_rejects_broken_pair(abs_pair, grid1):
    broken = mutate_pair(abs_pair, "nu_scale", 1.2)
    with pytest.raises(ScenarioError):
        run_lattice([make_scenario(builtin_operator("identity(1)"), broken, grid1)])


def test_validation_rejects_false_linearity_claim(abs_pair, grid1):
    square = OperatorSpec("square", 1, 1, lambda x: (x[0] ** 2,), True)
    with pytest.raises(ScenarioError):
        LatticeEngine().validate(make_scenario(square, abs_pair, grid1))


def test_reproduce_counterexamples():
    weak_strong, sequential = reproduce_counterexamples()
    assert weak_strong.scenario == "cubic_ratio at x0=[0.0]"
    assert all(e["met"] for e in weak_strong.expectations)
    assert all(e["met"] for e in sequential.expectations)
    assert weak_strong.verdict(Property.STRONG_IFC) is Verdict.REFUTED
    assert weak_strong.report_for(Property.STRONG_IFC).outcome.witness["case"] == "shrinking_delta"
    assert weak_strong.to_dict()["expectations"]


def test_weak_to_strong_is_not_an_edge():
    ids = {e.id for e in default_edges()}
    assert "weak_ifc->strong_ifc" not in ids
    assert "weak_ifb->strong_ifb" not in ids
