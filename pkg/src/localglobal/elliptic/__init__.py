"""Elliptic curves over Q: group law, reduction, torsion and L-series."""

from .curve import (
    O,
    CoordinateChange,
    ECPoint,
    TateInvariants,
    WeierstrassCurve,
    ap,
    check_generator_877,
    conductor,
    count_points_mod_p,
    count_points_naive,
    recognize_normal_form,
    reduction_type,
    singular_cubic_parametrize,
)
from .lseries import LSeriesProfile, l_coefficients, l_value, rank_estimate, select_root_number, upper_gamma
from .torsion import MAZUR_GROUPS, TorsionGroup, torsion_subgroup

__all__ = [
    "O", "CoordinateChange", "ECPoint", "TateInvariants", "WeierstrassCurve", "ap",
    "check_generator_877", "conductor", "count_points_mod_p", "count_points_naive",
    "recognize_normal_form", "reduction_type", "singular_cubic_parametrize",
    "LSeriesProfile", "l_coefficients", "l_value", "rank_estimate", "select_root_number",
    "upper_gamma", "MAZUR_GROUPS", "TorsionGroup", "torsion_subgroup",
]
