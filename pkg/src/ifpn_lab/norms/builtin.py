import math
import re
from typing import List, Tuple, Union

from ..errors import DimensionError, ParameterError, UnknownNameError
from ..utils.point_utils import Point
from .base import PseudoNorm


class AbsNorm(PseudoNorm):
    def __init__(self, dimension: int = 1):
        if dimension != 1:
            raise DimensionError(f"abs is one-dimensional, got dimension {dimension}")
        super().__init__("abs", 1)

    def evaluate(self, x: Point) -> float:
        return abs(x[0])


class EuclideanNorm(PseudoNorm):
    def __init__(self, dimension: int):
        super().__init__("euclidean", dimension)

    def evaluate(self, x: Point) -> float:
        return math.hypot(*x)


class SupNorm(PseudoNorm):
    def __init__(self, dimension: int):
        super().__init__("sup", dimension)

    def evaluate(self, x: Point) -> float:
        return max(abs(c) for c in x)


class TruncatedNorm(PseudoNorm):
    """min(base(x), cap): bounded, still subadditive and scalar monotone."""

    def __init__(self, base: PseudoNorm, cap: float):
        if not cap > 0:
            raise ParameterError(f"truncation cap must be positive, got {cap}")
        super().__init__(f"truncated({base.name},{_fmt(cap)})", base.dimension)
        self.base = base
        self.cap = float(cap)

    def evaluate(self, x: Point) -> float:
        return min(self.base.evaluate(x), self.cap)


class RootNorm(PseudoNorm):
    def __init__(self, base: PseudoNorm):
        super().__init__(f"root({base.name})", base.dimension)
        self.base = base

    def evaluate(self, x: Point) -> float:
        return math.sqrt(self.base.evaluate(x))


class ScaledNorm(PseudoNorm):
    def __init__(self, base: PseudoNorm, factor: float):
        if not factor > 0:
            raise ParameterError(f"scale factor must be positive, got {factor}")
        super().__init__(f"scaled({base.name},{_fmt(factor)})", base.dimension)
        self.base = base
        self.factor = float(factor)

    def evaluate(self, x: Point) -> float:
        return self.factor * self.base.evaluate(x)


def _fmt(v: float) -> str:
    return f"{v:g}"


# ----- name expressions: ident | ident '(' arg {',' arg} ')' -----

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|(.))")

Expr = Union[str, float, Tuple[str, list]]


def parse_name(text: str) -> Expr:
    tokens = _tokenize(text)
    expr, pos = _parse(tokens, 0, text)
    if pos != len(tokens):
        raise UnknownNameError(f"trailing input in {text!r}")
    return expr


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    for ident, number, other in _TOKEN.findall(text):
        if ident:
            tokens.append(("ident", ident))
        elif number:
            tokens.append(("number", number))
        elif other.strip():
            tokens.append(("op", other))
    return tokens


def _parse(tokens, pos, text):
    if pos >= len(tokens):
        raise UnknownNameError(f"unexpected end of {text!r}")
    kind, value = tokens[pos]
    if kind == "number":
        return float(value), pos + 1
    if kind != "ident":
        raise UnknownNameError(f"unexpected {value!r} in {text!r}")
    pos += 1
    if pos < len(tokens) and tokens[pos] == ("op", "("):
        args = []
        pos += 1
        while True:
            arg, pos = _parse(tokens, pos, text)
            args.append(arg)
            if pos < len(tokens) and tokens[pos] == ("op", ","):
                pos += 1
                continue
            if pos < len(tokens) and tokens[pos] == ("op", ")"):
                return (value, args), pos + 1
            raise UnknownNameError(f"unbalanced parentheses in {text!r}")
    return value, pos


BUILTIN_NAMES = ("abs", "euclidean", "sup", "truncated", "root", "scaled")


def builtin_pseudo_norm(name: Union[str, Expr], dimension: int) -> PseudoNorm:
    """
    Build a builtin pseudo norm from a name expression, e.g.
    'abs', 'euclidean', 'truncated(euclidean, 1)', 'scaled(root(abs), 2)'.
    """
    expr = parse_name(name) if isinstance(name, str) else name
    return _build(expr, dimension)


def _build(expr: Expr, dimension: int) -> PseudoNorm:
    if isinstance(expr, float):
        raise UnknownNameError(f"expected a norm name, got number {expr}")
    if isinstance(expr, str):
        head, args = expr, []
    else:
        head, args = expr

    if head in ("abs", "euclidean", "sup"):
        if args:
            raise UnknownNameError(f"{head} takes no arguments")
        return {"abs": AbsNorm, "euclidean": EuclideanNorm, "sup": SupNorm}[head](dimension)

    if head == "root":
        if len(args) != 1:
            raise UnknownNameError("root(base) takes exactly one argument")
        return RootNorm(_build(args[0], dimension))

    if head in ("truncated", "scaled"):
        if len(args) != 2 or not isinstance(args[1], float):
            raise UnknownNameError(f"{head}(base, number) expected")
        base = _build(args[0], dimension)
        return TruncatedNorm(base, args[1]) if head == "truncated" else ScaledNorm(base, args[1])

    raise UnknownNameError(f"unknown pseudo norm {head!r}; known: {', '.join(BUILTIN_NAMES)}")
