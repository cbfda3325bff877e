"""The redundancy measures and the decomposition driver."""

from .base import (
    MeasureDescriptor,
    OptimizerReport,
    SolverFailure,
    UnsupportedArity,
    canonical_system,
    decompose,
    descriptor,
    evaluate,
    measure_ids,
    node_var_groups,
    value,
)
from . import broja, common, pointwise, rav, simple  # noqa: F401  (registry population)
from .broja import i_broja, min_joint_target_mi
from .common import i_alpha, i_prec, i_wedge
from .pointwise import i_ccs, i_min, i_pm, i_sx
from .rav import i_rav
from .simple import dep_unique, do_joint, i_ct, i_dep, i_do, i_mes, i_mmi, i_rr

__all__ = [
    "MeasureDescriptor",
    "OptimizerReport",
    "SolverFailure",
    "UnsupportedArity",
    "canonical_system",
    "decompose",
    "descriptor",
    "evaluate",
    "measure_ids",
    "node_var_groups",
    "value",
    "i_broja",
    "i_alpha",
    "i_prec",
    "i_wedge",
    "i_ccs",
    "i_min",
    "i_pm",
    "i_sx",
    "i_rav",
    "i_ct",
    "i_dep",
    "i_do",
    "i_mes",
    "i_mmi",
    "i_rr",
    "dep_unique",
    "do_joint",
    "min_joint_target_mi",
]
