import pytest

from ifpn_lab.core.classify import (
    ALL_PROPERTIES, ClassifierConfig, OperatorClassifier, Property, check_ifc_at, check_seq_ifc_at,
    check_strong_ifb, check_strong_ifc_at, check_uniform_ifb, check_weak_ifb, check_weak_ifc_at,
    classify_at_points, default_seq_suite, delta_candidates,
)
from ifpn_lab.core.ifpn import IfpnPair
from ifpn_lab.core.structures import SampleGrid, SequenceSpec, Verdict
from ifpn_lab.errors import DimensionError, DomainError, ParameterError, UnknownNameError
from ifpn_lab.operators import builtin_operator, cubic_ratio, step

from conftest import pair_for


@pytest.fixture(scope="module")
def cubic_cfg(cubic_grid):
    return ClassifierConfig.default(cubic_grid)


def classifier(name, cfg, pair="abs", dimension=1):
    f = pair_for(pair, dimension)
    return OperatorClassifier(builtin_operator(name), f, f, cfg)


# ----- configuration -----

def test_delta_candidates_descend():
    cands = delta_candidates()
    assert len(cands) == 25
    assert cands[0] == pytest.approx(10.0)
    assert cands[-1] == pytest.approx(1e-6)
    assert all(b < a for a, b in zip(cands, cands[1:]))
    with pytest.raises(ParameterError):
        delta_candidates(1.0, 2.0)


def test_default_seq_suite():
    assert [s.name for s in default_seq_suite((0.0, 0.0))] == ["harmonic(e1)", "harmonic(e2)"]
    assert [s.name for s in default_seq_suite((1.0,))] == ["harmonic(e1)", "relative"]


def test_config_defaults(grid1):
    cfg = ClassifierConfig.default(grid1)
    assert cfg.point_of_interest == (0.0,)
    assert cfg.eps_grid == (0.1, 0.5, 1.0, 2.0, 10.0)
    assert len(cfg.alpha_grid) == 9
    assert cfg.describe()["delta_candidates"][2] == 25
    moved = cfg.at((1.0,))
    assert moved.point_of_interest == (1.0,)
    assert [s.name for s in moved.seq_suite] == ["harmonic(e1)", "relative"]


@pytest.mark.parametrize("overrides", [
    dict(eps_grid=()), dict(eps_grid=(0.0,)), dict(tail=5), dict(shell_ratio=1.0),
    dict(shrink_factor=1.5), dict(delta_max=1e-7),
])
def test_config_validation(grid1, overrides):
    with pytest.raises(ParameterError):
        ClassifierConfig.default(grid1, **overrides)


def test_config_rejects_wrong_dimension(grid1):
    with pytest.raises(DimensionError):
        ClassifierConfig.default(grid1, point_of_interest=(0.0, 0.0))


def test_property_parse():
    assert Property.parse("Strong-IFC") is Property.STRONG_IFC
    assert Property.WEAK_IFC.at_point and not Property.UNIFORM_IFB.at_point
    with pytest.raises(UnknownNameError):
        Property.parse("continuity")


def test_classifier_dimension_checks(grid1):
    cfg = ClassifierConfig.default(grid1)
    with pytest.raises(DimensionError):
        OperatorClassifier(builtin_operator("identity(2)"), pair_for("abs"), pair_for("abs"), cfg)


def test_point_outside_domain(cubic_grid):
    cfg = ClassifierConfig.default(cubic_grid)
    with pytest.raises(DomainError):
        OperatorClassifier(cubic_ratio(), pair_for("abs"), pair_for("abs"), cfg.at((-1.0,)))


def test_grid_outside_domain(cfg1):
    c = OperatorClassifier(cubic_ratio(), pair_for("abs"), pair_for("abs"), cfg1)
    with pytest.raises(DomainError):
        c.check(Property.IFC)


# ----- intuitionistic fuzzy continuity -----

def test_identity_ifc_certificate(cfg1):
    c = classifier("identity(1)", cfg1)
    report = c.check_ifc()
    assert report.verdict is Verdict.HOLDS
    assert len(report.certificate) == 5 * 9
    for cell in report.certificate:
        assert cell["beta"] == cell["alpha"]
        assert cell["delta"] >= cell["eps"] * (1 - 1e-5)
    assert c.replay_certificate(Property.IFC, report.certificate)
    same = [{"eps": e, "alpha": a, "delta": e, "beta": a} for e in cfg1.eps_grid for a in cfg1.alpha_grid]
    assert c.replay_certificate(Property.IFC, same)


def test_doubling_ifc_admits_half_eps(cfg1):
    c = classifier("scaling(1,2)", cfg1)
    assert c.check_ifc().verdict is Verdict.HOLDS
    half = [{"eps": e, "alpha": a, "delta": e / 2, "beta": a} for e in cfg1.eps_grid for a in cfg1.alpha_grid]
    assert c.replay_certificate(Property.IFC, half)


def test_zero_map_ifc(cfg1):
    assert check_ifc_at(builtin_operator("zero(1)"), pair_for("abs"), pair_for("abs"), cfg1).verdict is Verdict.HOLDS


def test_step_ifc_refuted_at_jump(grid1):
    cfg = ClassifierConfig.default(grid1, point_of_interest=(1.0,))
    c = OperatorClassifier(step(), pair_for("abs"), pair_for("abs"), cfg)
    report = c.check_ifc()
    assert report.verdict is Verdict.REFUTED
    assert len(report.outcome.witness["candidates"]) == 9 * 25
    assert c.replay_witness(Property.IFC, report.outcome.witness)


def flat_domain_pair(level=0.3):
    return IfpnPair(f"flat({level:g})", 1, lambda x, t: level, lambda x, t: level)


def test_ifc_ignores_betas_with_empty_premise(grid1):
    cfg = ClassifierConfig.default(grid1, eps_grid=(0.1,), alpha_grid=(0.25, 0.5, 0.75))
    c = OperatorClassifier(builtin_operator("identity(1)"), flat_domain_pair(), pair_for("abs"), cfg)
    report = c.check_ifc()
    assert report.verdict is Verdict.REFUTED
    candidates = report.outcome.witness["candidates"]
    assert len(candidates) == 25
    assert {cand["beta"] for cand in candidates} == {0.75}
    assert c.replay_witness(Property.IFC, report.outcome.witness)


def test_ifc_inconclusive_when_no_beta_has_premise_points(grid1):
    cfg = ClassifierConfig.default(grid1, eps_grid=(0.1,), alpha_grid=(0.25, 0.5))
    c = OperatorClassifier(builtin_operator("identity(1)"), flat_domain_pair(), pair_for("abs"), cfg)
    report = c.check_ifc()
    assert report.verdict is Verdict.INCONCLUSIVE
    assert "premise" in report.outcome.diagnostics[0]


def test_delta_search_finds_interior_candidate(cfg1):
    c = classifier("identity(1)", cfg1)
    cands = cfg1.delta_candidates
    delta, fail = c._sup_delta(lambda d: d == cands[5])
    assert delta == cands[5]
    assert fail is not None and cands[5] < fail <= cands[4]
    assert c._sup_delta(lambda d: False) == (None, None)


# ----- sequential -----

def test_cubic_seq_ifc(cubic_cfg):
    f = pair_for("abs")
    report = check_seq_ifc_at(cubic_ratio(), f, f, cubic_cfg.at((1.0,)))
    assert report.verdict is Verdict.HOLDS


def test_identity_seq_ifc_in_plane(grid2):
    cfg = ClassifierConfig.default(grid2, point_of_interest=(1.0, -1.0))
    assert classifier("identity(2)", cfg, "euclidean", 2).check_seq_ifc().verdict is Verdict.HOLDS


def test_step_seq_ifc_refuted(grid1):
    left = SequenceSpec("left", lambda n: (1.0 - 1.0 / n,), (1.0,))
    cfg = ClassifierConfig.default(grid1, point_of_interest=(1.0,), seq_suite=(left,))
    c = OperatorClassifier(step(), pair_for("abs"), pair_for("abs"), cfg)
    report = c.check_seq_ifc()
    assert report.verdict is Verdict.REFUTED
    assert report.outcome.witness["sequence"] == "T∘left"
    assert c.replay_witness(Property.SEQ_IFC, report.outcome.witness)


def test_seq_ifc_inconclusive_when_domain_sequence_is_slow(grid1):
    cfg = ClassifierConfig.default(grid1)
    f = pair_for("root(abs)")
    report = check_seq_ifc_at(builtin_operator("identity(1)"), f, f, cfg)
    assert report.verdict is Verdict.INCONCLUSIVE
    assert any("does not converge" in d for d in report.outcome.diagnostics)


# ----- strong / weak IFC -----

def test_half_scaling_strong_ifc(cfg1):
    c = classifier("scaling(1,0.5)", cfg1)
    report = c.check_strong_ifc()
    assert report.verdict is Verdict.HOLDS
    assert [d["eps"] for d in report.certificate["deltas"]] == list(cfg1.eps_grid)
    assert c.replay_certificate(Property.STRONG_IFC, report.certificate)
    same = {"deltas": [{"eps": e, "delta": e} for e in cfg1.eps_grid]}
    assert c.replay_certificate(Property.STRONG_IFC, same)


def test_identity_strong_ifc(cfg1):
    assert check_strong_ifc_at(builtin_operator("identity(1)"), pair_for("abs"), pair_for("abs"),
                               cfg1).verdict is Verdict.HOLDS


def test_cubic_strong_ifc_refuted_by_shrinking_delta(cubic_cfg):
    c = OperatorClassifier(cubic_ratio(), pair_for("abs"), pair_for("abs"), cubic_cfg)
    report = c.check_strong_ifc()
    assert report.verdict is Verdict.REFUTED
    witness = report.outcome.witness
    assert witness["case"] == "shrinking_delta"
    assert witness["eps"] == 0.1
    assert c.replay_witness(Property.STRONG_IFC, witness)
    assert c.shell_radii() == pytest.approx((100.0, 10.0, 1.0))


def test_cubic_delta_profile_at_unit_eps(cubic_cfg):
    c = OperatorClassifier(cubic_ratio(), pair_for("abs"), pair_for("abs"), cubic_cfg)
    outer, middle, _ = c.delta_profile(1.0)
    # δ(R) = (1 + R) / R² on the shell of radius R
    assert outer["delta"] == pytest.approx(101 / 100 ** 2, rel=1e-4)
    assert middle["delta"] == pytest.approx(11 / 10 ** 2, rel=1e-4)
    assert middle["delta"] / outer["delta"] >= 10.0
    assert outer["x"] == [100.0]


def test_cubic_weak_ifc(cubic_cfg):
    c = OperatorClassifier(cubic_ratio(), pair_for("abs"), pair_for("abs"), cubic_cfg)
    report = c.check_weak_ifc()
    assert report.verdict is Verdict.HOLDS
    assert len(report.certificate) == 5 * 9
    assert c.replay_certificate(Property.WEAK_IFC, report.certificate)
    small = [{"eps": 0.1, "alpha": a, "delta": 0.1} for a in cubic_cfg.alpha_grid]
    assert c.replay_certificate(Property.WEAK_IFC, small)


# at α = 0.5, δ = ε is admissible iff T(ε) <= ε, i.e. ε <= golden ratio
@pytest.mark.parametrize("eps, delta_eq_eps", [(0.1, True), (10.0, False)])
def test_cubic_weak_ifc_certificate_is_sup_delta(cubic_cfg, eps, delta_eq_eps):
    c = OperatorClassifier(cubic_ratio(), pair_for("abs"), pair_for("abs"), cubic_cfg)
    report = c.check_weak_ifc()
    cell = next(cell for cell in report.certificate if cell["eps"] == eps and cell["alpha"] == 0.5)
    assert c.replay_certificate(Property.WEAK_IFC, [cell])
    assert c.replay_certificate(Property.WEAK_IFC, [{**cell, "delta": eps}]) is delta_eq_eps
    if delta_eq_eps:
        assert cell["delta"] >= eps
    else:
        # x³ = 10(1 + x) at x ≈ 3.69
        assert 3.6 <= cell["delta"] < eps


def test_step_weak_ifc_refuted(grid1):
    cfg = ClassifierConfig.default(grid1, point_of_interest=(1.0,))
    c = OperatorClassifier(step(), pair_for("abs"), pair_for("abs"), cfg)
    report = check_weak_ifc_at(step(), pair_for("abs"), pair_for("abs"), cfg)
    assert report.verdict is Verdict.REFUTED
    assert len(report.outcome.witness["candidates"]) == 25
    assert c.replay_witness(Property.WEAK_IFC, report.outcome.witness)


def test_classify_at_points(cubic_cfg):
    f = pair_for("abs")
    result = classify_at_points(Property.WEAK_IFC, cubic_ratio(), f, f, cubic_cfg, [(0.0,), (1.0,), (2.0,)])
    assert result["agree"]
    assert [row["verdict"] for row in result["points"]] == ["Holds"] * 3
    with pytest.raises(ParameterError):
        classify_at_points(Property.UNIFORM_IFB, cubic_ratio(), f, f, cubic_cfg, [(0.0,)])


# ----- boundedness -----

def test_strong_ifb(cfg1):
    f = pair_for("abs")
    assert check_strong_ifb(builtin_operator("scaling(1,0.5)"), f, f, cfg1).verdict is Verdict.HOLDS
    c = classifier("scaling(1,2)", cfg1)
    report = c.check_strong_ifb()
    assert report.verdict is Verdict.REFUTED
    assert c.replay_witness(Property.STRONG_IFB, report.outcome.witness)
    assert c.replay_witness(Property.STRONG_IFB, {"x": [1.0], "t": 1.0})
    assert not c.replay_witness(Property.STRONG_IFB, {"x": [0.0], "t": 1.0})


def test_projection_strong_ifb(grid2):
    cfg = ClassifierConfig.default(grid2)
    assert classifier("coordinate_projection(2,1)", cfg, "euclidean", 2).check_strong_ifb().verdict is Verdict.HOLDS


def test_weak_ifb(cfg1):
    f = pair_for("abs")
    assert check_weak_ifb(builtin_operator("identity(1)"), f, f, cfg1).verdict is Verdict.HOLDS
    c = classifier("scaling(1,2)", cfg1)
    report = c.check_weak_ifb()
    assert report.verdict is Verdict.REFUTED
    assert c.replay_witness(Property.WEAK_IFB, report.outcome.witness)
    assert c.replay_witness(Property.WEAK_IFB, {"side": "mu", "alpha": 0.5, "x": [1.0], "t": 1.0})


def test_uniform_ifb(cfg1):
    f = pair_for("abs")
    assert check_uniform_ifb(builtin_operator("scaling(1,0.5)"), f, f, cfg1).verdict is Verdict.HOLDS
    assert check_uniform_ifb(builtin_operator("zero(1)"), f, f, cfg1).verdict is Verdict.HOLDS
    c = classifier("scaling(1,2)", cfg1)
    report = c.check_uniform_ifb()
    assert report.verdict is Verdict.REFUTED
    assert c.replay_witness(Property.UNIFORM_IFB, report.outcome.witness)


def test_classify_all_properties_for_identity(cfg1):
    reports = classifier("identity(1)", cfg1).classify()
    assert [r.property for r in reports] == list(ALL_PROPERTIES)
    assert all(r.verdict is Verdict.HOLDS for r in reports)
    assert reports[0].to_dict()["property"] == "ifc"


def test_refutations_replay_for_doubling(cfg1):
    c = classifier("scaling(1,2)", cfg1)
    for report in c.classify():
        if report.verdict is Verdict.REFUTED:
            assert c.replay_witness(report.property, report.outcome.witness)
        elif report.verdict is Verdict.HOLDS and report.property.at_point and report.property is not Property.SEQ_IFC:
            assert c.replay_certificate(report.property, report.certificate)
