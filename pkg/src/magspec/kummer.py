"""Confluent hypergeometric (Kummer) series and Bessel-zero root finding.

Everything here is evaluated from the defining power series, summed in
fixed 45-digit decimal arithmetic.  The extra working precision matters:
for strongly negative first parameters the series alternates with terms
up to ~1e11 times the final value, and float64 accumulation (compensated
or not) cannot deliver the 1e-9 residual accuracy the eigenvalue solvers
rely on.  Terms are generated by exact recurrences, so the only rounding
is the final conversion to float.

The validated argument range is 0 <= z <= 50, which covers every flux
value the disk solvers produce (z = beta/2pi or beta*r^2/2pi); larger z
raises rather than silently losing accuracy to the growing terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

__all__ = [
    "KummerParams",
    "KummerConvergenceError",
    "kummer_m",
    "kummer_m_dz",
    "kummer_m_d2z",
    "kummer_m_da",
    "ode_residual",
    "bessel_j",
    "bessel_j_zero",
    "Z_MAX",
]

_PRECISION = 45
_REL_TOL = Decimal("1e-16")
_CONSECUTIVE_SMALL = 3
_MAX_TERMS = 10**6
Z_MAX = 50.0


class KummerConvergenceError(RuntimeError):
    """Series failed to satisfy the truncation rule within the term budget."""

    def __init__(self, a: float, b: float, z: float):
        super().__init__(f"Kummer series did not converge for a={a}, b={b}, z={z}")
        self.params = (a, b, z)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _validate(a: float, b: float, z: float) -> tuple[float, float, float]:
    a, b, z = float(a), float(b), float(z)  # accept numpy scalars
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(z)):
        raise ValueError(f"non-finite Kummer arguments a={a}, b={b}, z={z}")
    if _is_nonpositive_integer(b):
        raise ValueError(f"Kummer parameter b={b} is a non-positive integer")
    if z < 0:
        raise ValueError(f"Kummer argument z={z} is negative")
    if z > Z_MAX:
        raise ValueError(f"Kummer argument z={z} outside validated range [0, {Z_MAX}]")
    return a, b, z


@dataclass(frozen=True)
class KummerParams:
    """Argument bundle (a, b, z) for M(a, b, z); b not a non-positive integer, z >= 0."""

    a: float
    b: float
    z: float

    def __post_init__(self):
        _validate(self.a, self.b, self.z)


def _m_series(a: float, b: float, z: float) -> Decimal:
    """Sum the series for M(a,b,z): sum_k (a)_k z^k / ((b)_k k!).

    Stops once |term| <= 1e-16 * |partial sum| for three consecutive terms
    (a single small term can be a transient in alternating regimes).  For
    a a non-positive integer the recurrence hits an exact zero factor and
    the same rule terminates the polynomial automatically.
    """
    with localcontext() as ctx:
        ctx.prec = _PRECISION
        da, db, dz = Decimal(a), Decimal(b), Decimal(z)
        term = Decimal(1)
        total = Decimal(1)
        small = 0
        for k in range(_MAX_TERMS):
            term = term * (da + k) * dz / ((db + k) * (k + 1))
            total += term
            if abs(term) <= _REL_TOL * abs(total):
                small += 1
                if small >= _CONSECUTIVE_SMALL:
                    return total
            else:
                small = 0
        raise KummerConvergenceError(a, b, z)


def kummer_m(a: float, b: float, z: float) -> float:
    """Kummer function M(a, b, z), the regular solution with M(a, b, 0) = 1."""
    a, b, z = _validate(a, b, z)
    return float(_m_series(a, b, z))


def kummer_m_dz(a: float, b: float, z: float) -> float:
    """dM/dz via the contiguous relation M'(a,b,z) = (a/b) M(a+1, b+1, z)."""
    a, b, z = _validate(a, b, z)
    if a == 0.0:
        return 0.0
    return (a / b) * float(_m_series(a + 1.0, b + 1.0, z))


def kummer_m_d2z(a: float, b: float, z: float) -> float:
    """Second z-derivative, applying the contiguous relation twice."""
    a, b, z = _validate(a, b, z)
    if a == 0.0 or a == -1.0:
        # M is constant or linear in z; curvature vanishes.
        return 0.0
    return (a / b) * ((a + 1.0) / (b + 1.0)) * float(_m_series(a + 2.0, b + 2.0, z))


def ode_residual(a: float, b: float, z: float) -> float:
    """Residual z*M'' + (b-z)*M' - a*M of the defining differential equation."""
    m = kummer_m(a, b, z)
    mp = kummer_m_dz(a, b, z)
    mpp = kummer_m_d2z(a, b, z)
    return z * mpp + (b - z) * mp - a * m


def kummer_m_da(a: float, b: float, z: float) -> float:
    """Partial derivative dM/da by term-wise differentiation of the series.

    Carries the Pochhammer product P_k = (a)_k and its a-derivative D_k
    through the exact recurrences

        P_{k+1} = P_k (a+k),      D_{k+1} = D_k (a+k) + P_k,

    which stay finite for every real a, including non-positive integers
    where the division form (a)_k * sum_j 1/(a+j) degenerates.
    """
    a, b, z = _validate(a, b, z)
    with localcontext() as ctx:
        ctx.prec = _PRECISION
        da, db, dz = Decimal(a), Decimal(b), Decimal(z)
        poch = Decimal(1)      # (a)_k
        dpoch = Decimal(0)     # d/da (a)_k
        weight = Decimal(1)    # z^k / ((b)_k k!)
        total = Decimal(0)
        small = 0
        for k in range(_MAX_TERMS):
            dpoch, poch = dpoch * (da + k) + poch, poch * (da + k)
            weight = weight * dz / ((db + k) * (k + 1))
            term = dpoch * weight
            total += term
            if abs(term) <= _REL_TOL * abs(total):
                small += 1
                if small >= _CONSECUTIVE_SMALL:
                    return float(total)
            else:
                small = 0
        raise KummerConvergenceError(a, b, z)


# ---------------------------------------------------------------------------
# Bessel functions of the first kind and their positive zeros.
# Implemented from the power series so the package carries no external
# special-function dependency; adequate for the x-ranges the zero-field
# disk spectrum needs (x below ~60).


def bessel_j(order: int, x: float) -> float:
    """J_order(x) for integer order >= 0, from the ascending series."""
    if order < 0 or not float(order).is_integer():
        raise ValueError(f"Bessel order must be a non-negative integer, got {order}")
    if x < 0:
        raise ValueError(f"Bessel argument must be non-negative, got {x}")
    order, x = int(order), float(x)
    with localcontext() as ctx:
        ctx.prec = _PRECISION
        half = Decimal(x) / 2
        q = half * half
        term = half**order / Decimal(math.factorial(order))
        total = term
        max_term = abs(term)
        for m in range(1, 10001):
            term = -term * q / (m * (m + order))
            total += term
            if abs(term) > max_term:
                max_term = abs(term)
            # Past the hump and absolutely negligible.  The series
            # alternates, so a relative-to-sum rule is unsafe near the
            # zeros of J; compare against the largest term instead.
            if 2 * m > x and abs(term) <= Decimal("1e-40") * (max_term + 1):
                return float(total)
        raise KummerConvergenceError(order, 0.0, x)


# Consecutive zeros of J_nu are never closer than ~3.1 apart (their spacing
# tends to pi monotonically), so a unit-step scan cannot straddle two.
_ZERO_SCAN_STEP = 1.0


@lru_cache(maxsize=None)
def bessel_j_zero(order: int, k: int) -> float:
    """k-th positive zero of J_order, k >= 1, located by scan plus bisection."""
    if k < 1:
        raise ValueError(f"zero index k must be >= 1, got {k}")
    if order < 0:
        raise ValueError(f"Bessel order must be >= 0, got {order}")
    x = float(order)  # J_order > 0 on (0, order]; all zeros lie beyond
    f_lo = bessel_j(order, x) if x > 0 else 1.0
    crossings = 0
    while True:
        x_next = x + _ZERO_SCAN_STEP
        f_hi = bessel_j(order, x_next)
        if f_lo * f_hi < 0 or f_hi == 0.0:
            crossings += 1
            if crossings == k:
                return _bisect_bessel(order, x, x_next, f_lo)
        x, f_lo = x_next, f_hi


def _bisect_bessel(order: int, lo: float, hi: float, f_lo: float) -> float:
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = bessel_j(order, mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
