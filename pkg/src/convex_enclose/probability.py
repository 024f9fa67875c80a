"""Certified CDF and median-probability enclosures.

For a random variable on [a, b] whose density is monotone nondecreasing,
the CDF F is convex, and the identity  integral of F = b - E(X)  turns
the pointwise convex bounds on F into computable enclosures of

    b - E(X) - (b - a) F(x)

and hence of F(x) itself.  The one-sided limits of the density play the
role of F's one-sided derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .convex_core import ConvexFunction, Interval, _one_sided_quotient_limit
from .errors import DomainError, InconsistentModelError
from .extreal import INF, xsub
from .oracle import integrate_callable, reference_integral
from .pointwise import Enclosure, ostrowski_lower, ostrowski_upper

_NORMALIZATION_TOL = 1e-9
_EXPECTATION_TOL = 1e-8


@dataclass(frozen=True)
class RandomVariableModel:
    """Monotone nondecreasing density on [a, b] with derived CDF and mean.

    ``density_left`` / ``density_right`` are the one-sided limits of the
    density (they differ only at jump points) and double as the one-sided
    derivatives of the convex CDF.
    """

    support: Interval
    density: Callable[[float], float] = field(repr=False)
    density_left: Callable[[float], float] = field(repr=False)
    density_right: Callable[[float], float] = field(repr=False)
    cdf: ConvexFunction = field(repr=False)
    expectation: float = 0.0
    name: str = ""


def _validate(model: RandomVariableModel, n_grid: int = 65):
    a, b = model.support.lo, model.support.hi
    f0 = model.cdf(a)
    f1 = model.cdf(b)
    if abs(f0) > _NORMALIZATION_TOL or abs(f1 - 1.0) > _NORMALIZATION_TOL:
        raise InconsistentModelError(
            f"cdf spans [{f0}, {f1}]; the density must integrate to 1"
        )
    grid = [a + (b - a) * i / (n_grid - 1) for i in range(n_grid)]
    values = [model.density(t) for t in grid]
    if any(v < 0.0 for v in values):
        raise InconsistentModelError("density takes a negative value")
    scale = max(1.0, max(values))
    for s, t, u, v in zip(grid, grid[1:], values, values[1:]):
        if u > v + 1e-9 * scale:
            raise InconsistentModelError(
                f"density decreases between t={s} and t={t} ({u} > {v})"
            )
    if not a <= model.expectation <= b:
        raise InconsistentModelError("expectation outside the support")
    return model


def uniform_model(a: float, b: float) -> RandomVariableModel:
    """Constant density on [a, b]."""
    sup = Interval(a, b)
    c = 1.0 / sup.width
    density = lambda t: c
    cdf = ConvexFunction(
        domain=sup,
        fn=lambda x: (x - sup.lo) * c,
        dminus=density,
        dplus=density,
        name="uniform cdf",
    )
    return _validate(RandomVariableModel(
        support=sup, density=density, density_left=density, density_right=density,
        cdf=cdf, expectation=sup.midpoint, name="uniform",
    ))


def power_density_model(k: float, a: float, b: float) -> RandomVariableModel:
    """Density proportional to t**k, k >= 0, on [a, b] with a >= 0."""
    k = float(k)
    if k < 0.0:
        raise DomainError("power density needs k >= 0 to be nondecreasing")
    sup = Interval(a, b)
    if sup.lo < 0.0:
        raise DomainError("power density needs a >= 0")
    norm = (math.pow(sup.hi, k + 1.0) - math.pow(sup.lo, k + 1.0)) / (k + 1.0)
    density = lambda t: math.pow(t, k) / norm
    cdf = ConvexFunction(
        domain=sup,
        fn=lambda x: (math.pow(x, k + 1.0) - math.pow(sup.lo, k + 1.0)) / ((k + 1.0) * norm),
        dminus=density,
        dplus=density,
        name=f"t^{k:g} cdf",
    )
    expectation = (math.pow(sup.hi, k + 2.0) - math.pow(sup.lo, k + 2.0)) / ((k + 2.0) * norm)
    return _validate(RandomVariableModel(
        support=sup, density=density, density_left=density, density_right=density,
        cdf=cdf, expectation=expectation, name=f"power k={k:g}",
    ))


def exponential_density_model(a: float, b: float) -> RandomVariableModel:
    """Density proportional to exp(t) on [a, b]."""
    sup = Interval(a, b)
    norm = math.exp(sup.hi) - math.exp(sup.lo)
    density = lambda t: math.exp(t) / norm
    cdf = ConvexFunction(
        domain=sup,
        fn=lambda x: (math.exp(x) - math.exp(sup.lo)) / norm,
        dminus=density,
        dplus=density,
        name="exp cdf",
    )
    expectation = ((sup.hi - 1.0) * math.exp(sup.hi) - (sup.lo - 1.0) * math.exp(sup.lo)) / norm
    return _validate(RandomVariableModel(
        support=sup, density=density, density_left=density, density_right=density,
        cdf=cdf, expectation=expectation, name="truncated exponential",
    ))


def step_density_model(a: float, b: float, split: float, low: float) -> RandomVariableModel:
    """Two-level density: ``low`` on [a, split), a higher level on (split, b].

    The upper level is fixed by normalization; it must not drop below
    ``low`` (the density has to be nondecreasing).
    """
    sup = Interval(a, b)
    split = float(split)
    low = float(low)
    if not sup.lo < split < sup.hi:
        raise DomainError("split point must be interior")
    if low < 0.0:
        raise DomainError("density level must be nonnegative")
    high = (1.0 - low * (split - sup.lo)) / (sup.hi - split)
    if high < low:
        raise InconsistentModelError(
            f"normalization forces a decreasing step ({low} -> {high})"
        )
    density = lambda t: low if t < split else high
    density_left = lambda t: low if t <= split else high
    density_right = lambda t: low if t < split else high

    def cdf_fn(x):
        if x <= split:
            return low * (x - sup.lo)
        return low * (split - sup.lo) + high * (x - split)

    cdf = ConvexFunction(
        domain=sup, fn=cdf_fn, dminus=density_left, dplus=density_right,
        kinks=(split,), name="step cdf",
    )
    expectation = 0.5 * low * (split**2 - sup.lo**2) + 0.5 * high * (sup.hi**2 - split**2)
    return _validate(RandomVariableModel(
        support=sup, density=density, density_left=density_left,
        density_right=density_right, cdf=cdf, expectation=expectation,
        name=f"step at {split:g}",
    ))


def model_from_density(fn, a: float, b: float, tol: float = 1e-10,
                       name: str = "") -> RandomVariableModel:
    """Build a model from a black-box density by numeric integration.

    The CDF and expectation come from the adaptive Simpson integrator;
    one-sided density limits are estimated by the same monotone limiting
    scheme used for sampled derivatives.
    """
    sup = Interval(a, b)
    span = sup.width

    def density_left(t):
        if t == sup.lo:
            raise DomainError("no left limit at the lower endpoint")
        return _one_sided_value_limit(fn, t, span, sup.lo, -1)

    def density_right(t):
        if t == sup.hi:
            raise DomainError("no right limit at the upper endpoint")
        return _one_sided_value_limit(fn, t, span, sup.hi, +1)

    def cdf_fn(x):
        if x == sup.lo:
            return 0.0
        return integrate_callable(fn, sup.lo, x, tol)[0]

    cdf = ConvexFunction(
        domain=sup, fn=cdf_fn, dminus=density_left, dplus=density_right,
        name=name or "sampled cdf", certified=False,
    )
    expectation = integrate_callable(lambda t: t * fn(t), sup.lo, sup.hi, tol)[0]
    return _validate(RandomVariableModel(
        support=sup, density=fn, density_left=density_left, density_right=density_right,
        cdf=cdf, expectation=expectation, name=name or "sampled density",
    ))


def _one_sided_value_limit(fn, t, span, limit, sign):
    # One-sided limits of a monotone function: the quotient machinery on
    # raw values instead of difference quotients.
    h = min(span / 16.0, abs(limit - t))
    prev = None
    prev_d = None
    for _ in range(41):
        s = t + sign * h
        if (sign > 0 and s > limit) or (sign < 0 and s < limit):
            s = limit
        if s == t:
            break
        v = fn(s)
        if prev is not None:
            d = abs(v - prev)
            scale = max(1.0, abs(v))
            if d <= 1e-9 * scale:
                return v
            if prev_d is not None and d > prev_d and prev_d <= 1e-6 * scale:
                return prev
            prev_d = d
        prev = v
        h *= 0.5
    return prev


def cdf_gap_enclosure(m: RandomVariableModel, x: float) -> Enclosure:
    """Enclosure of  b - E(X) - (b-a) F(x).

    The lower line needs a strictly interior x; at an endpoint only the
    upper line applies and the lower bound is reported as -inf.
    """
    if not m.support.contains(x):
        raise DomainError(f"x={x} outside support")
    upper = ostrowski_upper(m.cdf, x)
    if m.support.strictly_contains(x):
        lower = ostrowski_lower(m.cdf, x)
    else:
        lower = -INF
    return Enclosure(lower, upper)


def cdf_enclosure(m: RandomVariableModel, x: float) -> Enclosure:
    """Certified bounds for F(x), clipped to [0, 1]."""
    gap = cdf_gap_enclosure(m, x)
    a, b = m.support.lo, m.support.hi
    rest = b - m.expectation
    lo = xsub(rest, gap.hi) / (b - a)
    hi = xsub(rest, gap.lo) / (b - a)
    return Enclosure(min(max(lo, 0.0), 1.0), min(max(hi, 0.0), 1.0))


def median_point_probability(m: RandomVariableModel) -> Enclosure:
    """Certified bounds for Pr(X <= (a+b)/2).

    This is the CDF enclosure specialized at the midpoint:
    (b-E)/(b-a) - (1/8)(b-a)[f-(b) - f+(a)]  <=  Pr  <=
    (b-E)/(b-a) - (1/8)(b-a)[f+(m) - f-(m)], clipped to [0, 1].  (The
    unscaled variant of these bounds is only dimensionless on unit-width
    supports; this form is valid for every b - a.)
    """
    return cdf_enclosure(m, m.support.midpoint)


def expectation_from_cdf(m: RandomVariableModel) -> float:
    """Recover E(X) = b - integral of F via the reference oracle.

    Cross-checks the model's stored expectation; a mismatch beyond 1e-8
    means the density, CDF, and expectation do not belong together.
    """
    area = reference_integral(m.cdf)
    value = m.support.hi - area.value
    if abs(value - m.expectation) > _EXPECTATION_TOL * max(1.0, abs(m.expectation)):
        raise InconsistentModelError(
            f"expectation {m.expectation} vs cdf-derived {value}"
        )
    return value
