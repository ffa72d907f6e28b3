from .base import PseudoNorm, FunctionPseudoNorm
from .builtin import (
    AbsNorm, EuclideanNorm, SupNorm, TruncatedNorm, RootNorm, ScaledNorm,
    builtin_pseudo_norm, parse_name, BUILTIN_NAMES,
)
from .axioms import check_pseudo_norm_axioms, replay_norm_witness
