"""Radial confinement between perfectly reflecting walls at r1 and r2.

For a vertical mode with in-plane momentum ``h`` the radial profile is::

    R(r) = sin(p) J_a(h r) + cos(p) Y_a(h r),    a = sqrt(m**2 + 1)

and the azimuthal order ``m`` is quantized by R(r1) = R(r2) = 0, i.e. by
the zeros of the Bessel cross product in ``m``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from bentmodes.slab import Geometry
from bentmodes.specfun import bessel_jy, cross_product, cross_product_scale

__all__ = [
    "RadialSolution",
    "DegenerateRootWarning",
    "l_max",
    "m0_estimate",
    "solve_m",
    "radial_profile",
    "radial_derivative",
    "DEFAULT_SCAN_STEP",
]

DEFAULT_SCAN_STEP = 0.02
_M_TOL = 1.0e-10
_ZERO_M = 1.0e-6


class DegenerateRootWarning(UserWarning):
    """A near-tangent zero of the cross product that bisection cannot certify."""


@dataclass(frozen=True)
class RadialSolution:
    """One radial mode at fixed ``h``.

    ``orientation`` (+1 or -1) multiplies the whole profile so that
    ``R'(r1) > 0``; ``p`` itself stays on the principal arctan branch.
    """

    l: int
    m: float
    alpha: float
    p: float
    h: float
    orientation: int = 1

    @property
    def m_nearest_int(self) -> int:
        """Closest integer order, for closed-ring interpretation."""
        return round(self.m)


def l_max(h: float, g: Geometry) -> int:
    """Zeroth-order bound on the number of radial modes, ``floor(h (r2 - r1) / pi)``."""
    if h <= 0.0:
        return 0
    return int(math.floor(h * g.width / math.pi))


def m0_estimate(h: float, l: int, g: Geometry) -> float | None:
    """Zeroth-order azimuthal order for radial index ``l``, or None if not real."""
    if l < 1:
        raise ValueError(f"radial index must be >= 1, got {l}")
    r_bar = g.r_mean
    radicand = h * h - (l * math.pi / g.width) ** 2 - 1.0 / r_bar**2
    if radicand < 0.0:
        return None
    return r_bar * math.sqrt(radicand)


def _alpha(m: float) -> float:
    return math.sqrt(m * m + 1.0)


def _bisect_m(f, lo: float, hi: float, f_lo: float) -> float:
    while hi - lo > _M_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _phase(alpha: float, h: float, g: Geometry) -> tuple[float, int]:
    inner = bessel_jy(alpha, h * g.r1)
    if inner.j_val == 0.0:
        p = 0.5 * math.pi
    else:
        p = math.atan(-inner.y_val / inner.j_val)
    slope = math.sin(p) * inner.jp_val + math.cos(p) * inner.yp_val
    return p, (1 if slope >= 0.0 else -1)


def solve_m(h: float, g: Geometry, scan_step: float = DEFAULT_SCAN_STEP) -> list[RadialSolution]:
    """All real azimuthal orders admitted at in-plane momentum ``h``.

    The cross product is sampled on ``m = 0, step, 2 step, ...`` up to
    ``h r2`` (beyond which the Bessel functions no longer oscillate between
    the walls), sign changes are bisected to ``1e-10`` in ``m``, and the
    roots are numbered ``l = 1, 2, ...`` from the largest ``m`` down.
    """
    if scan_step <= 0.0:
        raise ValueError(f"scan step must be positive, got {scan_step}")
    if h <= 0.0 or l_max(h, g) == 0:
        return []

    def f(m: float) -> float:
        return cross_product(_alpha(m), h, g.r1, g.r2)

    m_top = h * g.r2
    n_steps = max(1, math.ceil(m_top / scan_step))
    grid = [min(j * scan_step, m_top) for j in range(n_steps + 1)]
    values = [f(m) for m in grid]

    roots: list[float] = []
    for j in range(len(grid) - 1):
        a, b = grid[j], grid[j + 1]
        fa, fb = values[j], values[j + 1]
        if fa == 0.0:
            roots.append(a)
        elif fb != 0.0 and (fa < 0.0) != (fb < 0.0):
            roots.append(_bisect_m(f, a, b, fa))
        elif 0 < j and abs(fa) <= abs(values[j - 1]) and abs(fa) <= abs(fb):
            scale = cross_product_scale(_alpha(a), h, g.r1, g.r2)
            if abs(fa) < 1.0e-12 * scale:
                warnings.warn(
                    f"near-tangent cross-product zero near m={a:.6g} (h={h:.6g}) not reported",
                    DegenerateRootWarning,
                    stacklevel=2,
                )
    if values[-1] == 0.0:
        roots.append(grid[-1])

    roots.sort(reverse=True)
    solutions = []
    for l, m in enumerate(roots, start=1):
        if abs(m) < _ZERO_M:
            m = 0.0
        alpha = _alpha(m)
        p, orientation = _phase(alpha, h, g)
        solutions.append(RadialSolution(l, m, alpha, p, h, orientation))
    return solutions


def radial_profile(rs: RadialSolution, g: Geometry, r: float) -> float:
    """R(r) inside the guide, 0 outside ``[r1, r2]``."""
    if r < g.r1 or r > g.r2:
        return 0.0
    pair = bessel_jy(rs.alpha, rs.h * r)
    return rs.orientation * (math.sin(rs.p) * pair.j_val + math.cos(rs.p) * pair.y_val)


def radial_derivative(rs: RadialSolution, g: Geometry, r: float) -> float:
    """dR/dr inside the guide, 0 outside ``[r1, r2]``."""
    if r < g.r1 or r > g.r2:
        return 0.0
    pair = bessel_jy(rs.alpha, rs.h * r)
    return rs.orientation * rs.h * (math.sin(rs.p) * pair.jp_val + math.cos(rs.p) * pair.yp_val)
