import pytest

from ifpn_lab.config import load_scenario_file, parse_scenario_document
from ifpn_lab.errors import ConfigError, IfpnError

BASE = {
    "version": 1,
    "spaces": [
        {"name": "R", "pseudo_norm": "abs", "dimension": 1},
        {"name": "R2", "pseudo_norm": "euclidean", "dimension": 2},
    ],
    "operators": [
        {"name": "double", "kind": "scaling", "parameters": {"dimension": 1, "factor": 2}},
        {"name": "cubic", "kind": "cubic_ratio"},
    ],
    "classifier": {"eps_grid": [0.5, 1], "alpha_grid": [0.25, 0.75], "delta_steps": 13},
    "scenarios": [
        {"domain_space": "R", "codomain_space": "R", "operator": "double"},
        {"name": "cubic at 1", "domain_space": "R", "codomain_space": "R", "operator": "cubic",
         "point_of_interest": [1.0], "grid": {"kind": "nonnegative", "bound": 50}},
    ],
}


def with_changes(**changes):
    doc = {k: (list(v) if isinstance(v, list) else v) for k, v in BASE.items()}
    doc.update(changes)
    return doc


def test_parse_document():
    parsed = parse_scenario_document(BASE)
    assert sorted(parsed.spaces) == ["R", "R2"]
    assert parsed.space("R2").dimension == 2
    assert parsed.operators["double"].name == "scaling(1,2)"
    first, second = parsed.scenarios
    assert first.name == "double on R"
    assert first.config.eps_grid == (0.5, 1.0)
    assert len(first.config.delta_candidates) == 13
    assert second.config.point_of_interest == (1.0,)
    assert max(x[0] for x in second.config.x_grid.points) == 50.0
    assert parsed.scenario("cubic at 1") is second


def test_load_from_file(write_config):
    parsed = load_scenario_file(write_config(BASE), seed=7)
    assert parsed.seed == 7
    assert parsed.scenarios[0].config.x_grid.seed == 7


def test_mutated_space():
    spaces = [{"name": "bad", "pseudo_norm": "abs", "dimension": 1,
               "mutation": {"kind": "mu_shift", "amount": 0.05, "at": [2.0]}}]
    parsed = parse_scenario_document(with_changes(spaces=spaces, operators=[], scenarios=[]))
    assert parsed.space("bad").pair.name == "standard(abs)+mu_shift(0.05)"


@pytest.mark.parametrize("changes, path", [
    (dict(version=2), "$.version"),
    (dict(extra=1), "$"),
    (dict(spaces=[{"name": "R", "pseudo_norm": "abs"}]), "$.spaces[0]"),
    (dict(spaces=[{"name": "R", "pseudo_norm": "manhattan", "dimension": 1}]), "$.spaces[0].pseudo_norm"),
    (dict(spaces=[{"name": "R", "pseudo_norm": "abs", "dimension": 1, "mutation": {"kind": "flip"}}]),
     "$.spaces[0].mutation.kind"),
    (dict(spaces=[{"name": "R", "pseudo_norm": "abs", "dimension": 1,
                   "mutation": {"kind": "mu_shift", "amount": 0.05, "at": "x"}}]), "$.spaces[0].mutation.at"),
    (dict(operators=[{"name": "x", "kind": "rotation"}]), "$.operators[0]"),
    (dict(operators=[{"name": "double", "kind": "scaling", "parameters": {"dimension": 1, "factor": "two"}}]),
     "$.operators[0]"),
    (dict(operators=[{"name": "double", "kind": "scaling", "parameters": {"dimension": None}}]),
     "$.operators[0]"),
    (dict(operators=[{"name": "double", "kind": "identity"}, {"name": "double", "kind": "zero"}]),
     "$.operators[1].name"),
    (dict(classifier={"tol": -1}), "$.classifier.tol"),
    (dict(classifier={"speed": 1}), "$.classifier"),
    (dict(scenarios=[{"domain_space": "Q", "codomain_space": "R", "operator": "double"}]),
     "$.scenarios[0].domain_space"),
    (dict(scenarios=[{"domain_space": "R2", "codomain_space": "R2", "operator": "double",
                      "grid": {"kind": "nonnegative"}}]), "$.scenarios[0].grid"),
    (dict(scenarios=[{"domain_space": "R", "codomain_space": "R", "operator": "double",
                      "grid": {"kind": "sparse"}}]), "$.scenarios[0].grid.kind"),
])
def test_errors_carry_json_path(changes, path):
    with pytest.raises(ConfigError) as info:
        parse_scenario_document(with_changes(**changes))
    assert info.value.path == path
    assert str(info.value).startswith(path + ": ")


def test_unreadable_file(tmp_path, write_config):
    with pytest.raises(ConfigError):
        load_scenario_file(str(tmp_path / "missing.json"))
    with pytest.raises(ConfigError) as info:
        load_scenario_file(write_config("{ not json"))
    assert "invalid JSON" in str(info.value)
    assert isinstance(info.value, IfpnError)


def test_unknown_names():
    parsed = parse_scenario_document(BASE)
    with pytest.raises(ConfigError):
        parsed.space("R3")
    with pytest.raises(ConfigError):
        parsed.scenario("nothing")
