"""Vertical (z) confinement: the symmetric slab dispersion problem.

Inside the core ``|z| <= z0`` the vertical profile oscillates with
``beta_w``; outside it decays with ``beta_s``.  Both share the in-plane
momentum ``h``::

    h**2 = (k n_w)**2 - beta_w**2 = (k n_s)**2 + beta_s**2

The two parity families are solved separately from residuals written
without tan/cot so that the bracketing scan never meets a pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

__all__ = [
    "Geometry",
    "ZModeSolution",
    "count_z_modes",
    "solve_z_modes",
    "z_profile",
    "z_residual",
    "PAPER_LABEL",
]

Parity = Literal["symmetric", "antisymmetric"]

# Historical naming: D = E gives an even Z(z) but is called "odd".
PAPER_LABEL: dict[str, str] = {"symmetric": "odd", "antisymmetric": "even"}


@dataclass(frozen=True)
class Geometry:
    """Rectangular cross-section of a toroidal ring segment.

    All lengths share one unit (micrometres throughout this package);
    wavenumbers are in the reciprocal unit.

    Attributes
    ----------
    r1, r2 : float
        Inner and outer bending radius.
    b : float
        Height; the core occupies ``|z| <= b/2``.
    n_w, n_s : float
        Core and surrounding refractive index.
    lambda0 : float
        Vacuum wavelength.
    """

    r1: float
    r2: float
    b: float
    n_w: float
    n_s: float
    lambda0: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r1 < self.r2:
            raise ValueError(f"need 0 < r1 < r2, got r1={self.r1}, r2={self.r2}")
        if self.b <= 0.0:
            raise ValueError(f"height b must be positive, got {self.b}")
        if self.n_s < 1.0 or self.n_w < self.n_s:
            raise ValueError(f"need n_w >= n_s >= 1, got n_w={self.n_w}, n_s={self.n_s}")
        if self.lambda0 <= 0.0:
            raise ValueError(f"wavelength must be positive, got {self.lambda0}")

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.lambda0

    @property
    def z0(self) -> float:
        return 0.5 * self.b

    @property
    def width(self) -> float:
        return self.r2 - self.r1

    @property
    def r_mean(self) -> float:
        return 0.5 * (self.r1 + self.r2)

    @property
    def v_number(self) -> float:
        """``k * sqrt(n_w**2 - n_s**2)``, the upper bound of ``beta_w``."""
        return self.k * math.sqrt(self.n_w**2 - self.n_s**2)


@dataclass(frozen=True)
class ZModeSolution:
    """One guided vertical mode.

    ``parity`` is the true symmetry of Z(z); ``paper_label`` keeps the
    odd/even naming used for the D = +-E families.
    """

    index_i: int
    parity: Parity
    beta_w: float
    beta_s: float
    h: float
    amp_A: float
    amp_B: float
    amp_D: float
    amp_E: float

    @property
    def paper_label(self) -> str:
        return PAPER_LABEL[self.parity]


def z_residual(parity: Parity, beta: float, g: Geometry) -> float:
    """Pole-free dispersion residual for one parity family."""
    kappa = math.sqrt(max(g.v_number**2 - beta * beta, 0.0))
    arg = beta * g.z0
    if parity == "symmetric":
        return beta * math.sin(arg) - kappa * math.cos(arg)
    return beta * math.cos(arg) + kappa * math.sin(arg)


def count_z_modes(g: Geometry) -> tuple[int, int]:
    """Upper estimate ``(N_odd, N_even)`` of guided roots per family."""
    s = g.k * g.b / (2.0 * math.pi) * math.sqrt(g.n_w**2 - g.n_s**2)
    n_odd = max(0, math.ceil(s))
    n_even = max(0, math.ceil(s - 0.5))
    return n_odd, n_even


def _bisect(f: Callable[[float], float], lo: float, hi: float, f_lo: float) -> float:
    # Runs until the bracket cannot shrink in floating point.
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid


def _scan_roots(f: Callable[[float], float], lo: float, hi: float, samples: int) -> list[float]:
    step = (hi - lo) / (samples - 1)
    roots = []
    x_prev = lo
    f_prev = f(lo)
    if f_prev == 0.0:
        roots.append(lo)
    for j in range(1, samples):
        x = lo + j * step if j < samples - 1 else hi
        fx = f(x)
        if fx == 0.0:
            roots.append(x)
        elif f_prev != 0.0 and (fx < 0.0) != (f_prev < 0.0):
            roots.append(_bisect(f, x_prev, x, f_prev))
        x_prev, f_prev = x, fx
    return roots


def _amplitudes(parity: Parity, beta_w: float, beta_s: float, z0: float) -> tuple[float, float, float, float]:
    edge = math.exp(-beta_s * z0)
    if parity == "symmetric":
        return 0.0, edge / math.cos(beta_w * z0), 1.0, 1.0
    return edge / math.sin(beta_w * z0), 0.0, 1.0, -1.0


def solve_z_modes(g: Geometry, resolution: int = 1) -> list[ZModeSolution]:
    """All guided vertical modes, ordered by descending ``h``.

    Parameters
    ----------
    g : Geometry
    resolution : int
        Multiplier on the number of scan samples; the root set must not
        change with it.
    """
    v = g.v_number
    if v <= 0.0:
        return []
    n_odd, n_even = count_z_modes(g)
    samples = max(4096, 64 * (n_odd + n_even)) * resolution
    eps = 1.0e-9 * g.k
    lo, hi = eps, v - eps
    if hi <= lo:
        return []

    found: list[tuple[float, Parity]] = []
    for parity in ("symmetric", "antisymmetric"):
        f = lambda beta, _p=parity: z_residual(_p, beta, g)  # noqa: E731
        found.extend((beta, parity) for beta in _scan_roots(f, lo, hi, samples))
    found.sort()

    kw2 = (g.k * g.n_w) ** 2
    modes = []
    for index, (beta_w, parity) in enumerate(found, start=1):
        beta_s = math.sqrt(v * v - beta_w * beta_w)
        h = math.sqrt(kw2 - beta_w * beta_w)
        a, b, d, e = _amplitudes(parity, beta_w, beta_s, g.z0)
        modes.append(ZModeSolution(index, parity, beta_w, beta_s, h, a, b, d, e))
    return modes


def z_profile(zm: ZModeSolution, g: Geometry, z: float) -> float:
    """Piecewise vertical profile Z(z) with unit exterior amplitude."""
    z0 = g.z0
    if z > z0:
        return zm.amp_D * math.exp(-zm.beta_s * z)
    if z < -z0:
        return zm.amp_E * math.exp(zm.beta_s * z)
    arg = zm.beta_w * z
    return zm.amp_A * math.sin(arg) + zm.amp_B * math.cos(arg)
