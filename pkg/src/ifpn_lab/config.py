"""Scenario files: JSON, schema version 1, unknown fields rejected at every level."""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping

from .core.engine import Scenario, make_scenario
from .core.ifpn import MUTATION_KINDS, IfpnPair, mutate_pair, standard_ifpn
from .core.structures import SampleGrid
from .errors import ConfigError, IfpnError
from .norms.base import PseudoNorm
from .norms.builtin import builtin_pseudo_norm
from .operators.base import OperatorSpec
from .operators.builtin import make_operator
from .utils.logger import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = 1

TOP_KEYS = {"version", "spaces", "operators", "classifier", "scenarios"}
SPACE_KEYS = {"name", "pseudo_norm", "dimension", "mutation"}
MUTATION_KEYS = {"kind", "amount", "at"}
OPERATOR_KEYS = {"name", "kind", "parameters"}
CLASSIFIER_KEYS = {"eps_grid", "alpha_grid", "tol", "delta_steps", "delta_max", "delta_min",
                   "tail", "shell_ratio", "shrink_factor"}
SCENARIO_KEYS = {"name", "domain_space", "codomain_space", "operator", "point_of_interest", "grid"}
GRID_KEYS = {"kind", "bound"}


@dataclass(frozen=True)
class Space:
    name: str
    norm: PseudoNorm
    pair: IfpnPair

    @property
    def dimension(self) -> int:
        return self.pair.dimension


@dataclass
class ScenarioFile:
    version: int
    spaces: Dict[str, Space] = field(default_factory=dict)
    operators: Dict[str, OperatorSpec] = field(default_factory=dict)
    classifier: Dict[str, Any] = field(default_factory=dict)
    scenarios: List[Scenario] = field(default_factory=list)
    seed: int = 42
    resolution: float = 1.0

    def space(self, name: str) -> Space:
        if name not in self.spaces:
            raise ConfigError(f"unknown space {name!r}; declared: {sorted(self.spaces)}", "$.spaces")
        return self.spaces[name]

    def scenario(self, name: str) -> Scenario:
        for s in self.scenarios:
            if s.name == name:
                return s
        raise ConfigError(f"unknown scenario {name!r}; declared: {[s.name for s in self.scenarios]}",
                          "$.scenarios")


def load_scenario_file(path: str, seed: int = 42, resolution: float = 1.0) -> ScenarioFile:
    try:
        with open(path, "r", encoding="utf-8") as f:
            document = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    logger.info("loaded scenario file %s", path)
    return parse_scenario_document(document, seed, resolution)


def parse_scenario_document(document: Any, seed: int = 42, resolution: float = 1.0) -> ScenarioFile:
    _expect_object(document, "$", TOP_KEYS, required={"version"})
    if document["version"] != SCHEMA_VERSION:
        raise ConfigError(f"unsupported version {document['version']!r}, expected {SCHEMA_VERSION}", "$.version")

    out = ScenarioFile(SCHEMA_VERSION, seed=seed, resolution=resolution)

    # 1. spaces
    for i, entry in enumerate(_expect_list(document.get("spaces", []), "$.spaces")):
        path = f"$.spaces[{i}]"
        _expect_object(entry, path, SPACE_KEYS, required={"name", "pseudo_norm", "dimension"})
        name = _expect_name(entry["name"], f"{path}.name", out.spaces)
        norm = _guarded(lambda: builtin_pseudo_norm(_expect_str(entry["pseudo_norm"], f"{path}.pseudo_norm"),
                                                    _expect_int(entry["dimension"], f"{path}.dimension")),
                        f"{path}.pseudo_norm")
        pair = standard_ifpn(norm)
        if "mutation" in entry:
            pair = _mutation(pair, entry["mutation"], f"{path}.mutation")
        out.spaces[name] = Space(name, norm, pair)

    # 2. operators
    for i, entry in enumerate(_expect_list(document.get("operators", []), "$.operators")):
        path = f"$.operators[{i}]"
        _expect_object(entry, path, OPERATOR_KEYS, required={"name", "kind"})
        name = _expect_name(entry["name"], f"{path}.name", out.operators)
        params = entry.get("parameters", {})
        if not isinstance(params, dict):
            raise ConfigError("expected an object", f"{path}.parameters")
        out.operators[name] = _guarded(lambda: make_operator(_expect_str(entry["kind"], f"{path}.kind"), params),
                                       path)

    # 3. classifier overrides
    classifier = document.get("classifier", {})
    _expect_object(classifier, "$.classifier", CLASSIFIER_KEYS)
    out.classifier = _classifier_overrides(classifier)

    # 4. scenarios
    for i, entry in enumerate(_expect_list(document.get("scenarios", []), "$.scenarios")):
        out.scenarios.append(_scenario(out, entry, f"$.scenarios[{i}]"))
    return out


def _scenario(out: ScenarioFile, entry, path) -> Scenario:
    _expect_object(entry, path, SCENARIO_KEYS, required={"domain_space", "codomain_space", "operator"})
    dom = _lookup(out.spaces, entry["domain_space"], f"{path}.domain_space")
    cod = _lookup(out.spaces, entry["codomain_space"], f"{path}.codomain_space")
    op = _lookup(out.operators, entry["operator"], f"{path}.operator")
    x0 = entry.get("point_of_interest")
    if x0 is not None:
        if not isinstance(x0, list) or not all(_is_number(c) for c in x0):
            raise ConfigError("expected a list of numbers", f"{path}.point_of_interest")
    grid = _grid(entry.get("grid", {"kind": "default"}), dom.dimension, out, f"{path}.grid")
    name = entry.get("name")
    if name is not None:
        _expect_str(name, f"{path}.name")
    elif x0 is None:
        name = f"{entry['operator']} on {entry['domain_space']}"
    else:
        name = f"{entry['operator']} on {entry['domain_space']} at x0={x0}"
    return _guarded(lambda: make_scenario(op, dom.pair, grid, tuple(x0) if x0 is not None else None,
                                          out.resolution, name=name, f_cod=cod.pair, **out.classifier), path)


def _grid(entry, dimension, out, path) -> SampleGrid:
    _expect_object(entry, path, GRID_KEYS, required={"kind"})
    kind = entry["kind"]
    if kind == "default":
        return SampleGrid.default(dimension, out.seed, out.resolution)
    if kind == "nonnegative":
        if dimension != 1:
            raise ConfigError("the nonnegative grid is one-dimensional", path)
        bound = entry.get("bound", 100.0)
        if not _is_number(bound):
            raise ConfigError("expected a number", f"{path}.bound")
        return _guarded(lambda: SampleGrid.nonnegative(float(bound), out.seed, out.resolution), path)
    raise ConfigError(f"unknown grid kind {kind!r}", f"{path}.kind")


def _mutation(pair, entry, path) -> IfpnPair:
    _expect_object(entry, path, MUTATION_KEYS, required={"kind"})
    kind = entry["kind"]
    if kind not in MUTATION_KINDS:
        raise ConfigError(f"unknown mutation {kind!r}; known: {', '.join(MUTATION_KINDS)}", f"{path}.kind")
    amount = entry.get("amount", 0.0)
    if not _is_number(amount):
        raise ConfigError("expected a number", f"{path}.amount")
    at = entry.get("at")
    if at is not None and (not isinstance(at, list) or not all(_is_number(c) for c in at)):
        raise ConfigError("expected a list of numbers", f"{path}.at")
    return _guarded(lambda: mutate_pair(pair, kind, float(amount), at), path)


def _classifier_overrides(entry: Mapping[str, Any]) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    for key, value in entry.items():
        path = f"$.classifier.{key}"
        if key in ("eps_grid", "alpha_grid"):
            if not isinstance(value, list) or not value or not all(_is_number(v) for v in value):
                raise ConfigError("expected a non-empty list of numbers", path)
            overrides[key] = tuple(float(v) for v in value)
        elif key in ("delta_steps", "tail"):
            overrides[key] = _expect_int(value, path)
        else:
            if not _is_number(value) or value <= 0:
                raise ConfigError("expected a positive number", path)
            overrides[key] = float(value)
    return overrides


# ----- primitives -----

def _guarded(build, path):
    try:
        return build()
    except ConfigError:
        raise
    except IfpnError as e:
        raise ConfigError(str(e), path) from e
    except (ValueError, TypeError) as e:
        raise ConfigError(str(e), path) from e


def _expect_object(value, path, allowed, required=frozenset()):
    if not isinstance(value, dict):
        raise ConfigError("expected an object", path)
    unknown = sorted(set(value) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown field(s) {unknown}", path)
    missing = sorted(set(required) - set(value))
    if missing:
        raise ConfigError(f"missing field(s) {missing}", path)


def _expect_list(value, path) -> list:
    if not isinstance(value, list):
        raise ConfigError("expected a list", path)
    return value


def _expect_str(value, path) -> str:
    if not isinstance(value, str) or not value:
        raise ConfigError("expected a non-empty string", path)
    return value


def _expect_int(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("expected an integer", path)
    return value


def _expect_name(value, path, taken) -> str:
    name = _expect_str(value, path)
    if name in taken:
        raise ConfigError(f"duplicate name {name!r}", path)
    return name


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _lookup(table, name, path):
    if not isinstance(name, str) or name not in table:
        raise ConfigError(f"unresolved reference {name!r}", path)
    return table[name]
