from .base import OperatorSpec, check_linearity, replay_linearity_witness
from .builtin import (
    identity, zero, scaling, coordinate_projection, cubic_ratio, step,
    builtin_operator, make_operator, BUILTIN_OPERATORS,
)
