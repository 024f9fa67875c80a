"""Pointwise certified enclosures for convex functions.

All bounds here sandwich the Ostrowski difference

    D(x) = integral of f over [a, b]  -  (b - a) * f(x)

of a convex function f.  The lower bound uses the one-sided slopes at x,
the upper bound the endpoint slopes; both are attained by kink functions
k*|t - (a+b)/2| at x = (a+b)/2, so neither constant can be improved.
Bounds are computed in ordinary binary floating point; callers that need
guaranteed containment should verify at a small relative slack rather
than at ULP level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .convex_core import ConvexFunction
from .errors import (
    DegenerateSlopesError,
    DomainError,
    InternalInconsistencyError,
    UnboundedSlopeError,
)
from .extreal import INF, ensure_extended, xsub


@dataclass(frozen=True)
class Enclosure:
    """Certified pair lo <= hi of extended reals bounding a scalar."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = ensure_extended(self.lo)
        hi = ensure_extended(self.hi)
        if lo > hi:
            raise InternalInconsistencyError(f"enclosure bounds out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        if self.lo == self.hi:
            return 0.0
        return self.hi - self.lo

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def as_tuple(self):
        return (self.lo, self.hi)


def _interior_slopes(f: ConvexFunction, x: float):
    """One-sided slopes at an interior point; finite for any real convex f."""
    dm = f.left_derivative(x)
    dp = f.right_derivative(x)
    if not (math.isfinite(dm) and math.isfinite(dp)):
        raise UnboundedSlopeError(
            f"infinite one-sided derivative at interior point t={x}; "
            "the function is not finite and convex on its closed domain"
        )
    return dm, dp


def ostrowski_lower(f: ConvexFunction, x: float) -> float:
    """Lower bound for the Ostrowski difference at a strictly interior x.

    Returns (1/2) * [(b-x)^2 f'+(x) - (x-a)^2 f'-(x)].
    """
    if not f.domain.strictly_contains(x):
        raise DomainError("the lower bound requires a strictly interior x")
    a, b = f.domain.lo, f.domain.hi
    dm, dp = _interior_slopes(f, x)
    return 0.5 * ((b - x) ** 2 * dp - (x - a) ** 2 * dm)


def ostrowski_upper(f: ConvexFunction, x: float) -> float:
    """Upper bound for the Ostrowski difference, valid on the closed interval.

    Returns (1/2) * [(b-x)^2 f'-(b) - (x-a)^2 f'+(a)], or +inf when an
    endpoint slope is infinite (the bound then holds trivially).
    """
    if not f.domain.contains(x):
        raise DomainError(f"x={x} outside domain")
    slopes = f.endpoint_slopes()
    if slopes.at_lo == -INF or slopes.at_hi == INF:
        return INF
    a, b = f.domain.lo, f.domain.hi
    return 0.5 * ((b - x) ** 2 * slopes.at_hi - (x - a) ** 2 * slopes.at_lo)


def ostrowski_enclosure(f: ConvexFunction, x: float) -> Enclosure:
    """Two-sided enclosure of the Ostrowski difference at an interior x."""
    return Enclosure(ostrowski_lower(f, x), ostrowski_upper(f, x))


def hh_refinement(f: ConvexFunction) -> Enclosure:
    """Enclosure of the Hermite-Hadamard gap  mean(f) - f((a+b)/2).

    The gap lies in [(1/8)(f'+(m) - f'-(m))(b-a), (1/8)(f'-(b) - f'+(a))(b-a)]
    with m the midpoint; the lower bound is always >= 0, sharpening the
    classical statement that the gap is nonnegative.
    """
    a, b = f.domain.lo, f.domain.hi
    m = f.domain.midpoint
    dm, dp = _interior_slopes(f, m)
    lo = 0.125 * (dp - dm) * (b - a)
    slopes = f.endpoint_slopes()
    if slopes.at_lo == -INF or slopes.at_hi == INF:
        hi = INF
    else:
        hi = 0.125 * (slopes.at_hi - slopes.at_lo) * (b - a)
    return Enclosure(lo, hi)


def differentiable_lower(f: ConvexFunction, x: float) -> float:
    """Lower bound ((a+b)/2 - x) * f'(x) for the mean gap mean(f) - f(x).

    Requires f differentiable at x (left and right slopes agree)."""
    if not f.domain.strictly_contains(x):
        raise DomainError("requires a strictly interior x")
    d = f.derivative(x)
    return (f.domain.midpoint - x) * d


def window_enclosure(f: ConvexFunction, x: float, h: float) -> Enclosure:
    """Enclosure of  integral over [x-h/2, x+h/2]  -  h * f(x).

    The value lies in (1/8) h^2 * [f'+(x) - f'-(x),
    f'-(x+h/2) - f'+(x-h/2)]; the lower bound is >= 0.  The window must
    sit inside the domain (a protrusion below rounding noise is clamped).
    """
    if not h > 0.0:
        raise DomainError("window width h must be positive")
    a, b = f.domain.lo, f.domain.hi
    w_lo = x - 0.5 * h
    w_hi = x + 0.5 * h
    pad = 1e-12 * max(1.0, abs(a), abs(b))
    if w_lo < a - pad or w_hi > b + pad:
        raise DomainError(f"window [{w_lo}, {w_hi}] not contained in [{a}, {b}]")
    w_lo = max(w_lo, a)
    w_hi = min(w_hi, b)
    dm, dp = _interior_slopes(f, x)
    lo = 0.125 * h * h * (dp - dm)
    hi_slope = xsub(f.left_derivative(w_hi), f.right_derivative(w_lo))
    hi = INF if math.isinf(hi_slope) else 0.125 * h * h * hi_slope
    return Enclosure(lo, hi)


def quadratic_form_upper(f: ConvexFunction, x: float) -> float:
    """The endpoint-slope upper bound rewritten as a quadratic in x.

    With A = f'+(a), B = f'-(b), x0 = (bB - aA)/(B - A), returns
    (1/2)(B - A)[(x - x0)^2 - AB (b-a)^2 / (B-A)^2], which equals
    ostrowski_upper identically.  Requires finite A != B.
    """
    if not f.domain.contains(x):
        raise DomainError(f"x={x} outside domain")
    slopes = f.endpoint_slopes()
    if not slopes.both_finite:
        raise UnboundedSlopeError("quadratic form needs finite endpoint slopes")
    a_slope, b_slope = slopes.at_lo, slopes.at_hi
    if b_slope == a_slope:
        raise DegenerateSlopesError("endpoint slopes coincide (affine case); use ostrowski_upper")
    a, b = f.domain.lo, f.domain.hi
    spread = b_slope - a_slope
    x0 = (b * b_slope - a * a_slope) / spread
    return 0.5 * spread * ((x - x0) ** 2 - a_slope * b_slope * (b - a) ** 2 / spread**2)


def best_evaluation_point(f: ConvexFunction):
    """Exact minimizer over [a, b] of the endpoint-slope upper bound.

    The bound is convex in x; for distinct slopes its stationary point
    (bB - aA)/(B - A) is clamped to the interval, and in the affine case
    the bound is linear so an endpoint wins.  Returns (x_best, bound).
    """
    slopes = f.endpoint_slopes()
    if not slopes.both_finite:
        raise UnboundedSlopeError("cannot minimize an infinite upper bound")
    a, b = f.domain.lo, f.domain.hi
    a_slope, b_slope = slopes.at_lo, slopes.at_hi
    if b_slope > a_slope:
        x0 = (b * b_slope - a * a_slope) / (b_slope - a_slope)
        x_best = min(max(x0, a), b)
    else:
        x_best = b if b_slope >= 0.0 else a
    return x_best, ostrowski_upper(f, x_best)


def classical_ostrowski_bound(f: ConvexFunction, x: float) -> float:
    """Comparison baseline |f(x) - mean(f)| <= [1/4 + (x-m)^2/(b-a)^2](b-a) M.

    M = max(|f'+(a)|, |f'-(b)|) bounds |f'| on the interval; requires
    finite endpoint slopes.
    """
    if not f.domain.contains(x):
        raise DomainError(f"x={x} outside domain")
    slopes = f.endpoint_slopes()
    if not slopes.both_finite:
        raise UnboundedSlopeError("classical bound needs finite endpoint slopes")
    a, b = f.domain.lo, f.domain.hi
    m = max(abs(slopes.at_lo), abs(slopes.at_hi))
    centered = x - f.domain.midpoint
    return (0.25 + centered**2 / (b - a) ** 2) * (b - a) * m
