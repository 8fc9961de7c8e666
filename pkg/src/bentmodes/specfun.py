r"""Bessel functions of the first and second kind for real order.

The evaluator follows Temme's method: the ratio :math:`J_{\nu+1}/J_\nu` comes
from a continued fraction (CF1) and the order is lowered by downward
recurrence to :math:`\mu = \nu - n`.  At :math:`\mu` the pair
:math:`(J_\mu, Y_\mu)` is fixed either by Temme's series (``x < 2``) or by
Steed's complex continued fraction for the Hankel ratio (``x >= 2``),
closed with the Wronskian.  :math:`Y` is then raised back to :math:`\nu` by
upward recurrence, which is stable for the second kind.

Integer and non-integer orders take the same path, so there is no
reflection-formula cancellation near integer orders.  For large arguments
with moderate order the Hankel asymptotic expansion replaces the continued
fractions, whose rounding error grows with the number of CF1 iterations.
"""

from __future__ import annotations

import math
from typing import NamedTuple

__all__ = [
    "BesselPair",
    "BesselDomainError",
    "bessel_jy",
    "cross_product",
    "cross_product_scale",
    "MAX_ORDER",
    "MIN_ARG",
    "MAX_ARG",
]

MAX_ORDER = 1.0e4
MIN_ARG = 1.0e-6
MAX_ARG = 1.0e4

_EPS = 1.0e-16
_FPMIN = 1.0e-300
_MAXIT = 1_000_000
_RESCALE = 1.0e250

# Taylor coefficients of 1/Gamma(z) = sum_k c_k z^k, k = 1..30.
_RGAMMA_TAYLOR = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
)


class BesselDomainError(ValueError):
    """Order or argument outside the supported envelope."""


class BesselPair(NamedTuple):
    """Values and first derivatives of J and Y at one (order, x)."""

    j_val: float
    y_val: float
    jp_val: float
    yp_val: float


def _gamma_terms(mu: float) -> tuple[float, float, float, float]:
    """Temme's auxiliary gamma combinations for |mu| <= 1/2.

    Returns ``(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))`` where
    ``gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)`` and
    ``gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2``.
    """
    even = 0.0  # sum over c_k mu^(k-1), k odd
    odd = 0.0  # sum over c_k mu^(k-2), k even
    power = 1.0
    for k in range(1, len(_RGAMMA_TAYLOR) + 1, 2):
        even += _RGAMMA_TAYLOR[k - 1] * power
        odd += _RGAMMA_TAYLOR[k] * power
        power *= mu * mu
    gam1 = -odd
    gam2 = even
    gampl = gam2 - mu * gam1
    gammi = gam2 + mu * gam1
    return gam1, gam2, gampl, gammi


def _hankel_pq(order: float, x: float) -> tuple[float, float]:
    """Sums P, Q of the large-argument expansion, truncated at the smallest term."""
    four_nu2 = 4.0 * order * order
    p_sum = 1.0
    q_sum = 0.0
    term = 1.0
    last = math.inf
    eight_x = 8.0 * x
    for k in range(1, 4 * int(x) + 8):
        term *= (four_nu2 - (2 * k - 1) ** 2) / (k * eight_x)
        size = abs(term)
        if 2 * k - 1 > 2.0 * order and size > last:
            break
        if k % 4 == 1:
            q_sum += term
        elif k % 4 == 2:
            p_sum -= term
        elif k % 4 == 3:
            q_sum -= term
        else:
            p_sum += term
        if size < 1.0e-17 * (abs(p_sum) + abs(q_sum)):
            break
        last = size if size != 0.0 else last
        if term == 0.0:
            break
    return p_sum, q_sum


def _hankel_jy(order: float, x: float) -> tuple[float, float]:
    p_sum, q_sum = _hankel_pq(order, x)
    # omega = x - phase with the phase reduced mod 2 pi before scaling.
    phase = math.pi * math.fmod(0.5 * order + 0.25, 2.0)
    cx, sx = math.cos(x), math.sin(x)
    cp, sp = math.cos(phase), math.sin(phase)
    cos_w = cx * cp + sx * sp
    sin_w = sx * cp - cx * sp
    amp = math.sqrt(2.0 / (math.pi * x))
    return amp * (p_sum * cos_w - q_sum * sin_w), amp * (p_sum * sin_w + q_sum * cos_w)


def _use_hankel(order: float, x: float) -> bool:
    # Largest term of the expansion grows like exp(nu^2 / 2x); cap it near e^8.
    return x >= 30.0 and (order + 1.0) ** 2 <= 16.0 * x


def _check_domain(order: float, x: float) -> None:
    if not (math.isfinite(order) and math.isfinite(x)):
        raise BesselDomainError(f"non-finite input: order={order!r}, x={x!r}")
    if order < 0.0 or order > MAX_ORDER:
        raise BesselDomainError(f"order {order} outside [0, {MAX_ORDER:g}]")
    if x < MIN_ARG or x > MAX_ARG:
        raise BesselDomainError(f"argument {x} outside [{MIN_ARG:g}, {MAX_ARG:g}]")


def bessel_jy(order: float, x: float) -> BesselPair:
    """Evaluate J, Y and their derivatives at real order ``order >= 0``.

    Parameters
    ----------
    order : float
        Order, ``0 <= order <= MAX_ORDER``.
    x : float
        Argument, ``MIN_ARG <= x <= MAX_ARG``.

    Returns
    -------
    BesselPair
        Where the true value is outside the double range, J underflows to
        ``0.0`` and Y saturates at ``-inf``.

    Raises
    ------
    BesselDomainError
        If ``order`` or ``x`` is outside the supported envelope.
    """
    order = float(order)
    x = float(x)
    _check_domain(order, x)

    if _use_hankel(order, x):
        j_val, y_val = _hankel_jy(order, x)
        j_next, y_next = _hankel_jy(order + 1.0, x)
        ratio = order / x
        return BesselPair(j_val, y_val, ratio * j_val - j_next, ratio * y_val - y_next)

    if x < 2.0:
        nl = int(order + 0.5)
    else:
        nl = max(0, int(order - x + 1.5))
    mu = order - nl
    mu2 = mu * mu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / math.pi

    # CF1 for the ratio J_{nu+1} / J_nu by modified Lentz.  The number of
    # negative denominators gives the sign of J_nu.
    # The loop is the hot spot when x >> order (about x - order passes), so
    # the tiny-value guards are written as chained comparisons.
    isign = 1
    ratio = _FPMIN
    b = xi2 * order + xi2
    d = b
    c = b + 1.0 / _FPMIN
    for _ in range(_MAXIT):
        if -_FPMIN < d < _FPMIN:
            d = _FPMIN
        if -_FPMIN < c < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = c * d
        ratio *= delta
        if d < 0.0:
            isign = -isign
        if -_EPS < delta - 1.0 < _EPS:
            break
        b += xi2
        d = b - d
        c = b - 1.0 / c
    else:  # pragma: no cover - envelope keeps CF1 convergent
        raise ArithmeticError(f"CF1 did not converge at order={order}, x={x}")

    # Downward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} on unnormalized values.
    rj = isign * 1.0e-30
    rj_next = ratio * rj
    rj_top = rj
    ratio_top = ratio
    two_n = 2.0 * order
    for _ in range(nl):
        rj, rj_next = two_n * xi * rj - rj_next, rj
        two_n -= 2.0
        if abs(rj) > _RESCALE:
            rj /= _RESCALE
            rj_next /= _RESCALE
            rj_top /= _RESCALE
    if rj == 0.0:
        rj = _EPS
    ratio_mu = rj_next / rj
    rjl = rj

    if x < 2.0:
        # Temme's series for Y_mu, Y_{mu+1}.
        x2 = 0.5 * x
        pimu = math.pi * mu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = mu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _gamma_terms(mu)
        ff = 2.0 / math.pi * fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        e = math.exp(e)
        p = e / (gampl * math.pi)
        q = 1.0 / (e * math.pi * gammi)
        pimu2 = 0.5 * pimu
        fact3 = 1.0 if abs(pimu2) < _EPS else math.sin(pimu2) / pimu2
        r = math.pi * pimu2 * fact3 * fact3
        c = 1.0
        d = -x2 * x2
        total = ff + r * q
        total1 = p
        i = 1
        while True:
            ff = (i * ff + p + q) / (i * i - mu2)
            c *= d / i
            p /= i - mu
            q /= i + mu
            delta = c * (ff + r * q)
            total += delta
            delta1 = c * p - i * delta
            total1 += delta1
            if abs(delta) < (1.0 + abs(total)) * _EPS:
                break
            i += 1
            if i > _MAXIT:  # pragma: no cover
                raise ArithmeticError("Temme series did not converge")
        rymu = -total
        ry1 = -total1 * xi2
        rjmu = w / (ratio_mu * rymu - ry1)
    else:
        # Steed's CF2 for p + iq = (J'_mu + iY'_mu) / (J_mu + iY_mu).
        a = 0.25 - mu2
        p = -0.5 * xi
        q = 1.0
        br = 2.0 * x
        bi = 2.0
        fact = a * xi / (p * p + q * q)
        cr = br + q * fact
        ci = bi + p * fact
        den = br * br + bi * bi
        dr = br / den
        di = -bi / den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        temp = p * dlr - q * dli
        q = p * dli + q * dlr
        p = temp
        for i in range(2, _MAXIT):
            a += 2 * (i - 1)
            bi += 2.0
            dr = a * dr + br
            di = a * di + bi
            if abs(dr) + abs(di) < _FPMIN:
                dr = _FPMIN
            fact = a / (cr * cr + ci * ci)
            cr = br + cr * fact
            ci = bi - ci * fact
            if abs(cr) + abs(ci) < _FPMIN:
                cr = _FPMIN
            den = dr * dr + di * di
            dr /= den
            di /= -den
            dlr = cr * dr - ci * di
            dli = cr * di + ci * dr
            temp = p * dlr - q * dli
            q = p * dli + q * dlr
            p = temp
            if abs(dlr - 1.0) + abs(dli) < _EPS:
                break
        else:  # pragma: no cover
            raise ArithmeticError("CF2 did not converge")
        f = mu * xi - ratio_mu
        gam = (p - f) / q
        rjmu = math.sqrt(w / ((p - f) * gam + q))
        rjmu = math.copysign(rjmu, rjl)
        rymu = rjmu * gam
        rymup = rymu * (p + q / gam)
        ry1 = mu * xi * rymu - rymup

    j_val = rj_top * (rjmu / rjl)
    jp_val = j_val * (order * xi - ratio_top)
    for i in range(1, nl + 1):
        rytemp = (mu + i) * xi2 * ry1 - rymu
        rymu = ry1
        ry1 = rytemp
        if math.isinf(rytemp):
            return BesselPair(j_val, -math.inf, jp_val, math.inf)
    y_val = rymu
    yp_val = order * xi * rymu - ry1
    return BesselPair(j_val, y_val, jp_val, yp_val)


def cross_product(alpha: float, h: float, r1: float, r2: float) -> float:
    """Bessel cross product ``J_a(h r2) Y_a(h r1) - J_a(h r1) Y_a(h r2)``.

    Its zeros in ``alpha`` at fixed ``h`` are the admissible radial modes
    between Dirichlet walls at ``r1`` and ``r2``.
    """
    if h <= 0.0:
        raise BesselDomainError(f"h must be positive, got {h}")
    if r1 <= 0.0 or r2 <= 0.0:
        raise BesselDomainError(f"radii must be positive, got {r1}, {r2}")
    inner = bessel_jy(alpha, h * r1)
    outer = bessel_jy(alpha, h * r2)
    return outer.j_val * inner.y_val - inner.j_val * outer.y_val


def cross_product_scale(alpha: float, h: float, r1: float, r2: float) -> float:
    """Magnitude of the two products making up :func:`cross_product`.

    Used as the reference scale when judging whether a cross-product value
    counts as zero.
    """
    inner = bessel_jy(alpha, h * r1)
    outer = bessel_jy(alpha, h * r2)
    return abs(outer.j_val * inner.y_val) + abs(inner.j_val * outer.y_val)
