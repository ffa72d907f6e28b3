from typing import Any, Dict, Mapping, Union

from ..errors import ParameterError, UnknownNameError
from ..norms.builtin import parse_name
from ..utils.point_utils import PointUtils
from .base import OperatorSpec


def _dimension(value) -> int:
    d = int(value)
    if d != value or d < 1:
        raise ParameterError(f"dimension must be a positive integer, got {value}")
    return d


def identity(dimension: int = 1) -> OperatorSpec:
    d = _dimension(dimension)
    return OperatorSpec(f"identity({d})", d, d, lambda x: x, True)


def zero(dimension: int = 1) -> OperatorSpec:
    d = _dimension(dimension)
    return OperatorSpec(f"zero({d})", d, d, lambda x: PointUtils.zero(d), True)


def scaling(dimension: int = 1, factor: float = 1.0) -> OperatorSpec:
    d = _dimension(dimension)
    k = float(factor)
    return OperatorSpec(f"scaling({d},{k:g})", d, d, lambda x: PointUtils.scale(k, x), True)


def coordinate_projection(dimension: int = 2, index: int = 1) -> OperatorSpec:
    """x -> x_k e_k, with k counted from 1."""
    d = _dimension(dimension)
    k = int(index)
    if k != index or not 1 <= k <= d:
        raise ParameterError(f"projection index must lie in 1..{d}, got {index}")

    def project(x):
        out = [0.0] * d
        out[k - 1] = x[k - 1]
        return out

    return OperatorSpec(f"coordinate_projection({d},{k})", d, d, project, True)


def cubic_ratio() -> OperatorSpec:
    """x -> x³/(1+x) on x >= 0."""
    return OperatorSpec("cubic_ratio", 1, 1, lambda x: (x[0] ** 3 / (1.0 + x[0]),), False,
                        domain=lambda x: x[0] >= 0.0, domain_label="x >= 0")


def step(threshold: float = 1.0) -> OperatorSpec:
    """x -> 0 below the threshold, 1 from it on."""
    c = float(threshold)
    return OperatorSpec(f"step({c:g})", 1, 1, lambda x: (0.0 if x[0] < c else 1.0,), False)


BUILTIN_OPERATORS = {
    "identity": (identity, ("dimension",)),
    "zero": (zero, ("dimension",)),
    "scaling": (scaling, ("dimension", "factor")),
    "coordinate_projection": (coordinate_projection, ("dimension", "index")),
    "cubic_ratio": (cubic_ratio, ()),
    "paper_cubic": (cubic_ratio, ()),
    "step": (step, ("threshold",)),
}


def make_operator(kind: str, parameters: Mapping[str, Any] = None) -> OperatorSpec:
    """Build a builtin operator from its kind and keyword parameters."""
    if kind not in BUILTIN_OPERATORS:
        raise UnknownNameError(f"unknown operator {kind!r}; known: {', '.join(BUILTIN_OPERATORS)}")
    factory, names = BUILTIN_OPERATORS[kind]
    parameters = dict(parameters or {})
    unknown = set(parameters) - set(names)
    if unknown:
        raise ParameterError(f"{kind} takes parameters {list(names)}, got unknown {sorted(unknown)}")
    return factory(**parameters)


def builtin_operator(name: Union[str, tuple]) -> OperatorSpec:
    """'identity(2)', 'scaling(1, 2)', 'coordinate_projection(2, 1)', 'cubic_ratio', 'step(1)'"""
    expr = parse_name(name) if isinstance(name, str) else name
    if isinstance(expr, float):
        raise UnknownNameError(f"expected an operator name, got number {expr}")
    head, args = (expr, []) if isinstance(expr, str) else expr
    if head not in BUILTIN_OPERATORS:
        raise UnknownNameError(f"unknown operator {head!r}; known: {', '.join(BUILTIN_OPERATORS)}")
    names = BUILTIN_OPERATORS[head][1]
    if len(args) > len(names) or not all(isinstance(a, float) for a in args):
        raise UnknownNameError(f"{head} takes up to {len(names)} numeric arguments {list(names)}")
    parameters: Dict[str, Any] = dict(zip(names, args))
    return make_operator(head, parameters)
