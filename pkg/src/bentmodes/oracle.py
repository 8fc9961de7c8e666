"""Finite-difference cross-checks of the two separated eigenproblems.

Both operators are discretized with the three-point stencil into symmetric
tridiagonal matrices whose eigenvalues are isolated by Sturm-sequence
bisection.  Nothing here touches the Bessel or slab-dispersion code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from bentmodes.slab import Geometry

__all__ = [
    "Tridiag",
    "sturm_count",
    "tridiag_eigenvalues",
    "tridiag_eigenvalue",
    "tridiag_eigenvector",
    "z_operator",
    "z_fd_eigen",
    "radial_operator",
    "radial_fd_eigen",
    "DEFAULT_ORACLE_POINTS",
]

DEFAULT_ORACLE_POINTS = 4001
_RTOL = 1.0e-10
_PIVOT_MIN = 1.0e-300


@dataclass(frozen=True)
class Tridiag:
    """Symmetric tridiagonal matrix."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self) -> None:
        if len(self.offdiag) != max(len(self.diag) - 1, 0):
            raise ValueError(f"offdiag length {len(self.offdiag)} does not match diag length {len(self.diag)}")

    def __len__(self) -> int:
        return len(self.diag)

    def gershgorin(self) -> tuple[float, float]:
        d = np.asarray(self.diag, dtype=float)
        e = np.abs(np.asarray(self.offdiag, dtype=float))
        radius = np.zeros_like(d)
        radius[:-1] += e
        radius[1:] += e
        return float(np.min(d - radius)), float(np.max(d + radius))

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def sturm_count(t: Tridiag, shift: float) -> int:
    """Number of eigenvalues strictly below ``shift``.

    Counts negative pivots of the LDL^T factorization of ``T - shift I``.
    """
    d = t.diag.tolist()
    e2 = (np.asarray(t.offdiag, dtype=float) ** 2).tolist()
    count = 0
    q = d[0] - shift
    if q < 0.0:
        count += 1
    for i in range(1, len(d)):
        if q == 0.0:
            q = _PIVOT_MIN
        q = d[i] - shift - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def _bisect_index(t: Tridiag, index: int, lo: float, hi: float, rtol: float) -> float:
    # Invariant: count(lo) <= index < count(hi).
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= rtol * max(abs(lo), abs(hi)):
            return mid
        if sturm_count(t, mid) > index:
            hi = mid
        else:
            lo = mid


def tridiag_eigenvalue(t: Tridiag, index: int, rtol: float = _RTOL) -> float:
    """The ``index``-th smallest eigenvalue (0-based)."""
    if not 0 <= index < len(t):
        raise IndexError(f"eigenvalue index {index} out of range for size {len(t)}")
    lo, hi = t.gershgorin()
    pad = 1.0e-12 * max(abs(lo), abs(hi), 1.0)
    return _bisect_index(t, index, lo - pad, hi + pad, rtol)


def tridiag_eigenvalues(t: Tridiag, lower: float, upper: float, rtol: float = _RTOL) -> list[float]:
    """All eigenvalues in the open window ``(lower, upper)``, ascending."""
    if not lower < upper:
        raise ValueError(f"need lower < upper, got {lower}, {upper}")
    # The window is open: eigenvalues equal to `lower` are skipped.
    first = sturm_count(t, math.nextafter(lower, math.inf))
    last = sturm_count(t, upper)
    return [_bisect_index(t, idx, lower, upper, rtol) for idx in range(first, last)]


def tridiag_eigenvector(t: Tridiag, eigenvalue: float, iterations: int = 3) -> np.ndarray:
    """Unit eigenvector by inverse iteration at a (converged) eigenvalue."""
    n = len(t)
    shift = eigenvalue * (1.0 + 1.0e-13) + 1.0e-13
    ab = np.zeros((3, n))
    ab[0, 1:] = t.offdiag
    ab[1, :] = np.asarray(t.diag, dtype=float) - shift
    ab[2, :-1] = t.offdiag
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        v = solve_banded((1, 1), ab, v)
        v /= np.linalg.norm(v)
    return v


def _z_grid(g: Geometry, n_points: int, half_width: float) -> tuple[np.ndarray, float]:
    if n_points < 200:
        raise ValueError(f"n_points must be >= 200, got {n_points}")
    if not half_width > g.z0:
        raise ValueError(f"domain half-width {half_width} must exceed z0 = {g.z0}")
    dz = 2.0 * half_width / (n_points - 1)
    # Snap the spacing so both core faces fall on grid nodes.
    core_steps = max(1, round(g.z0 / dz))
    dz = g.z0 / core_steps
    half_steps = (n_points - 1) // 2
    z = dz * np.arange(-half_steps, half_steps + 1)
    return z, dz


def z_operator(g: Geometry, n_points: int, domain_half_width: float) -> tuple[Tridiag, np.ndarray]:
    """Discretize ``Z'' + k^2 n(z)^2 Z`` with zero ends; returns (matrix, nodes).

    Nodes on the core faces take the mean of the two squared indices.
    """
    z, dz = _z_grid(g, n_points, domain_half_width)
    interior = z[1:-1]
    kw2 = (g.k * g.n_w) ** 2
    ks2 = (g.k * g.n_s) ** 2
    face_tol = 1.0e-9 * dz
    absz = np.abs(interior)
    n2k2 = np.where(absz < g.z0 - face_tol, kw2, ks2)
    n2k2 = np.where(np.abs(absz - g.z0) <= face_tol, 0.5 * (kw2 + ks2), n2k2)
    diag = -2.0 / dz**2 + n2k2
    off = np.full(len(interior) - 1, 1.0 / dz**2)
    return Tridiag(diag, off), interior


def z_fd_eigen(g: Geometry, n_points: int, domain_half_width: float) -> list[float]:
    """Guided in-plane momenta ``h`` of the FD slab, descending.

    Returns square roots of the eigenvalues strictly inside
    ``((k n_s)^2, (k n_w)^2)``.  Odd ``n_points`` keeps z = 0 on a node.
    """
    t, _ = z_operator(g, n_points, domain_half_width)
    lower = (g.k * g.n_s) ** 2
    upper = (g.k * g.n_w) ** 2
    if not lower < upper:
        return []
    return sorted((math.sqrt(ev) for ev in tridiag_eigenvalues(t, lower, upper)), reverse=True)


def radial_operator(m: float, g: Geometry, n_points: int) -> tuple[Tridiag, np.ndarray]:
    """Discretize ``-u'' + (m^2 + 3/4) u / r^2`` on ``(r1, r2)``, ``u = sqrt(r) R``."""
    if n_points < 200:
        raise ValueError(f"n_points must be >= 200, got {n_points}")
    r = np.linspace(g.r1, g.r2, n_points)
    dr = float(r[1] - r[0])
    interior = r[1:-1]
    diag = 2.0 / dr**2 + (m * m + 0.75) / interior**2
    off = np.full(len(interior) - 1, -1.0 / dr**2)
    return Tridiag(diag, off), interior


def radial_fd_eigen(m: float, g: Geometry, n_points: int = DEFAULT_ORACLE_POINTS, count: int | None = None) -> list[float]:
    """In-plane momenta ``h`` admitted at azimuthal order ``m``, ascending.

    The l-th entry has l - 1 radial nodes.  With ``count`` the lowest
    ``count`` values are returned; otherwise all with ``h < k n_w``.
    """
    t, _ = radial_operator(m, g, n_points)
    if count is not None:
        return [math.sqrt(tridiag_eigenvalue(t, idx)) for idx in range(count)]
    return [math.sqrt(ev) for ev in tridiag_eigenvalues(t, 0.0, (g.k * g.n_w) ** 2)]
