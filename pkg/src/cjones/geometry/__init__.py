from cjones.geometry.holonomy import (
    BranchTracker,
    HolonomyPoint,
    a_poly_fig8,
    holonomy_branch,
    v_of_u,
)
from cjones.geometry.action import (
    ActionValue,
    action_S,
    action_Sprime,
    chern_simons,
    clear_memo,
    memo_info,
    complete_volume,
    evaluate_action,
    growth_rate,
    schlafli_residual,
    volume,
)
from cjones.geometry.torsion import torsion_fig8, torsion_fig8_zero

__all__ = [
    "ActionValue",
    "BranchTracker",
    "HolonomyPoint",
    "a_poly_fig8",
    "action_S",
    "action_Sprime",
    "chern_simons",
    "clear_memo",
    "memo_info",
    "complete_volume",
    "evaluate_action",
    "growth_rate",
    "holonomy_branch",
    "schlafli_residual",
    "torsion_fig8",
    "torsion_fig8_zero",
    "v_of_u",
    "volume",
]
