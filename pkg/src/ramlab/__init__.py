"""Exact ramification invariants over rank-two valued fields.

Rationals are :class:`fractions.Fraction` throughout and serialize as
``"num/den"`` strings.
"""
from .valgroup import INF, DomainError, GammaVal, Rat, format_rat, parse_rat
from .laurent import (
    Impossible,
    LaurentVal,
    NotUnit,
    RadiusInterval,
    Side,
    gauss_val,
    pth_root_shrink,
    spectral_value,
    sup_val,
    unit_decompose,
)
from .plfun import PLFun, emit_plot_csv
from .ramify import (
    ClassFun,
    FiniteGroup,
    RamPoint,
    artin_flat,
    delta_value,
    different_val,
    jumps_lower,
    jumps_upper,
    phi_upper,
    ram_from_kummer,
    swan_nat,
)
from .breakdec import FilteredRep, FinRing, break_decompose, verify_break_props
from .conductor import (
    BreakProfile,
    Curve,
    NewtonBreak,
    beta_function,
    delta_from_profile,
    newton_breaks,
    profile_LQ,
    profile_kummer_char,
    swan_at,
)

__version__ = "0.1.0"
