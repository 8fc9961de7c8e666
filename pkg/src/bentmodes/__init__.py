"""Analytical eigenmodes of bent rectangular dielectric waveguides."""

from bentmodes.modes import FieldGrid, ModeRecord, assemble_catalog, field_grid
from bentmodes.radial import RadialSolution, l_max, m0_estimate, radial_profile, solve_m
from bentmodes.slab import Geometry, ZModeSolution, count_z_modes, solve_z_modes, z_profile
from bentmodes.specfun import BesselPair, bessel_jy, cross_product

__all__ = [
    "BesselPair",
    "FieldGrid",
    "Geometry",
    "ModeRecord",
    "RadialSolution",
    "ZModeSolution",
    "assemble_catalog",
    "bessel_jy",
    "count_z_modes",
    "cross_product",
    "field_grid",
    "l_max",
    "m0_estimate",
    "radial_profile",
    "solve_m",
    "solve_z_modes",
    "z_profile",
]
