"""Mode catalog: vertical x radial solutions, r_av, n_eff and field grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from bentmodes.radial import DEFAULT_SCAN_STEP, RadialSolution, radial_profile, solve_m
from bentmodes.slab import Geometry, ZModeSolution, solve_z_modes, z_profile

__all__ = [
    "ModeRecord",
    "FieldGrid",
    "assemble_catalog",
    "average_radial_position",
    "effective_index",
    "is_physical",
    "field_grid",
    "simpson",
    "DEFAULT_MARGIN",
    "DEFAULT_QUAD_TOL",
]

DEFAULT_MARGIN = 0.05
DEFAULT_QUAD_TOL = 1.0e-8
_START_POINTS = 257
_MAX_POINTS = 1 + 2**16
# Evanescent tail kept beyond each face, in units of 1/beta_s.
_TAIL_DECAY_LENGTHS = 12.0


@dataclass(frozen=True)
class ModeRecord:
    """One assembled mode (i, l) of the bent guide."""

    i: int
    l: int
    paper_parity: str
    m: float
    n_eff: float
    r_av: float
    physical: bool
    beta_w: float
    beta_s: float
    h: float
    p: float
    zmode: ZModeSolution = field(repr=False, compare=False)
    radial: RadialSolution = field(repr=False, compare=False)


@dataclass(frozen=True)
class FieldGrid:
    """E(r, phi=0, z) sampled on a uniform grid.

    ``values[iz, ir]`` is the field at ``(r_samples[ir], z_samples[iz])``,
    scaled so that ``sum(values**2) * dr * dz == 1``.
    """

    r_samples: np.ndarray
    z_samples: np.ndarray
    values: np.ndarray

    @property
    def dr(self) -> float:
        return float(self.r_samples[1] - self.r_samples[0])

    @property
    def dz(self) -> float:
        return float(self.z_samples[1] - self.z_samples[0])

    def norm2(self) -> float:
        return float(np.sum(self.values**2) * self.dr * self.dz)

    def normalized(self) -> FieldGrid:
        return FieldGrid(self.r_samples, self.z_samples, self.values / math.sqrt(self.norm2()))


def simpson(values: np.ndarray, spacing: float) -> float:
    """Composite Simpson rule on an odd number of equally spaced samples."""
    n = len(values)
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Simpson needs an odd number >= 3 of samples, got {n}")
    return spacing / 3.0 * float(values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum())


def _z_weight(zm: ZModeSolution, g: Geometry, n: int) -> float:
    tail = _TAIL_DECAY_LENGTHS / zm.beta_s
    z = np.linspace(-g.z0 - tail, g.z0 + tail, n)
    zz = np.array([z_profile(zm, g, float(t)) for t in z])
    return simpson(zz**2, float(z[1] - z[0]))


def average_radial_position(
    mode: ModeRecord | tuple[ZModeSolution, RadialSolution],
    g: Geometry,
    tol: float = DEFAULT_QUAD_TOL,
    jacobian: bool = False,
) -> float:
    """|E|^2-weighted mean radius at phi = 0.

    By default the numerator carries the weight ``r`` and the denominator
    carries none.  ``jacobian=True`` puts the cylindrical ``r dr`` measure in
    both, which gives the area-weighted mean instead.

    The double integral over ``[r1, r2] x [-z0 - L, z0 + L]`` (``L`` = 12
    decay lengths) factorizes into a radial and a vertical Simpson sum; the
    radial one is refined dyadically from 257 points until consecutive
    estimates agree to ``tol * r_mean``.
    """
    zm, rs = (mode.zmode, mode.radial) if isinstance(mode, ModeRecord) else mode
    z_int = _z_weight(zm, g, _START_POINTS)

    def profile(rr: np.ndarray) -> np.ndarray:
        return np.array([radial_profile(rs, g, float(x)) for x in rr])

    n = _START_POINTS
    r = np.linspace(g.r1, g.r2, n)
    rr2 = profile(r) ** 2
    previous = None
    while True:
        dr = float(r[1] - r[0])
        weight_num = r**2 if jacobian else r
        weight_den = r if jacobian else np.ones_like(r)
        num = simpson(rr2 * weight_num, dr) * z_int
        den = simpson(rr2 * weight_den, dr) * z_int
        estimate = num / den
        if previous is not None and abs(estimate - previous) < tol * g.r_mean:
            return estimate
        if n >= _MAX_POINTS:
            return estimate
        previous = estimate
        mids = 0.5 * (r[:-1] + r[1:])
        r_new = np.empty(2 * n - 1)
        r_new[0::2] = r
        r_new[1::2] = mids
        vals = np.empty(2 * n - 1)
        vals[0::2] = rr2
        vals[1::2] = profile(mids) ** 2
        r, rr2, n = r_new, vals, 2 * n - 1


def effective_index(m: float, r_av: float, g: Geometry) -> float:
    """``n_eff = m / (r_av k)``."""
    return m / (r_av * g.k)


def is_physical(n_eff: float, g: Geometry, margin: float = DEFAULT_MARGIN) -> bool:
    """Guided-mode test ``n_s (1 + margin) < n_eff < n_w (1 - margin)``."""
    return g.n_s * (1.0 + margin) < n_eff < g.n_w * (1.0 - margin)


def assemble_catalog(
    g: Geometry,
    scan_step: float = DEFAULT_SCAN_STEP,
    quadrature_tol: float = DEFAULT_QUAD_TOL,
    physicality_margin: float = DEFAULT_MARGIN,
    jacobian: bool = False,
    zmodes: list[ZModeSolution] | None = None,
) -> list[ModeRecord]:
    """Every (i, l) mode of ``g`` ordered by (i, l).

    Non-physical modes stay in the catalog with ``physical=False``.
    ``zmodes`` overrides the vertical solve (used for fault injection).
    """
    if zmodes is None:
        zmodes = solve_z_modes(g)
    catalog = []
    for zm in zmodes:
        for rs in solve_m(zm.h, g, scan_step=scan_step):
            r_av = average_radial_position((zm, rs), g, tol=quadrature_tol, jacobian=jacobian)
            n_eff = effective_index(rs.m, r_av, g)
            catalog.append(
                ModeRecord(
                    i=zm.index_i,
                    l=rs.l,
                    paper_parity=zm.paper_label,
                    m=rs.m,
                    n_eff=n_eff,
                    r_av=r_av,
                    physical=is_physical(n_eff, g, physicality_margin),
                    beta_w=zm.beta_w,
                    beta_s=zm.beta_s,
                    h=zm.h,
                    p=rs.p,
                    zmode=zm,
                    radial=rs,
                )
            )
    catalog.sort(key=lambda rec: (rec.i, rec.l))
    return catalog


def field_grid(mode: ModeRecord, g: Geometry, nr: int, nz: int, z_pad: float) -> FieldGrid:
    """Sample R(r) Z(z) on ``[r1, r2] x [-z0 - z_pad, z0 + z_pad]``, L2-normalized."""
    if nr < 16 or nz < 16:
        raise ValueError(f"grid needs nr, nz >= 16, got nr={nr}, nz={nz}")
    if z_pad < 0.0:
        raise ValueError(f"z_pad must be non-negative, got {z_pad}")
    r = np.linspace(g.r1, g.r2, nr)
    z = np.linspace(-g.z0 - z_pad, g.z0 + z_pad, nz)
    radial = np.array([radial_profile(mode.radial, g, float(x)) for x in r])
    vertical = np.array([z_profile(mode.zmode, g, float(t)) for t in z])
    values = np.outer(vertical, radial)
    return FieldGrid(r, z, values).normalized()
