"""Convex functions on closed intervals with one-sided derivative oracles.

A convex function f on [lo, hi] has finite one-sided derivatives at every
interior point, with

    f'+(s) <= f'-(t) <= f'+(t)    for all interior s < t,

and possibly infinite slopes at the endpoints: f'+(lo) may be -inf and
f'-(hi) may be +inf.  Every bound in this package consumes functions
through this interface.  Derivative oracles are either closed form
(``certified=True``, see the catalog module) or estimated from samples by
monotone difference quotients (``certified=False``).

All objects are immutable and all oracles are pure, so everything here is
safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import DomainError, NonConvexError, NotDifferentiableError, UndefinedSideError
from .extreal import ensure_extended

_MAX_HALVINGS = 40
_CONVERGENCE_ABS = 1e-9
_NOISE_FLOOR_REL = 1e-6


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with finite endpoints and lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("interval endpoints must be finite")
        if not lo < hi:
            raise DomainError(f"degenerate interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, t: float) -> bool:
        return self.lo <= t <= self.hi

    def strictly_contains(self, t: float) -> bool:
        return self.lo < t < self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class EndpointSlopes:
    """Right derivative at the lower endpoint, left derivative at the upper.

    Either value may be infinite (-inf at the lower end, +inf at the
    upper); for a convex function ``at_lo <= at_hi``.
    """

    at_lo: float
    at_hi: float

    def __post_init__(self):
        object.__setattr__(self, "at_lo", ensure_extended(self.at_lo))
        object.__setattr__(self, "at_hi", ensure_extended(self.at_hi))

    @property
    def both_finite(self) -> bool:
        return math.isfinite(self.at_lo) and math.isfinite(self.at_hi)


def _one_sided_quotient_limit(fn, t, span, limit, sign):
    """Limit of one-sided difference quotients of a convex function.

    For convex f the quotient (f(t + h) - f(t)) / h is nondecreasing in h,
    so shrinking h approaches the one-sided derivative monotonically.
    Steps are halved from span/16 and stop when successive quotients
    stabilize, when their differences start growing again after nearly
    stabilizing (the floating-point noise floor), or after 40 halvings.
    Divergent sequences (a vertical tangent) run the full 40 halvings and
    return a quotient of large magnitude.
    """
    f0 = fn(t)
    h = min(span / 16.0, abs(limit - t))
    prev_q = None
    prev_d = None
    for _ in range(_MAX_HALVINGS + 1):
        s = t + sign * h
        if (sign > 0 and s > limit) or (sign < 0 and s < limit):
            s = limit
        if s == t:
            break
        q = (fn(s) - f0) / (s - t)
        if prev_q is not None:
            d = abs(q - prev_q)
            scale = max(1.0, abs(q))
            if d <= _CONVERGENCE_ABS * scale:
                return q
            if prev_d is not None and d > prev_d and prev_d <= _NOISE_FLOOR_REL * scale:
                return prev_q
            prev_d = d
        prev_q = q
        h *= 0.5
    return prev_q


@dataclass(frozen=True)
class ConvexFunction:
    """A convex function with evaluation and one-sided derivative oracles.

    ``certified`` marks closed-form derivative oracles; functions wrapped
    from a bare callable (see :meth:`from_callable`) estimate their
    one-sided derivatives from samples instead and carry
    ``certified=False``.

    ``antiderivative``, when present, must be exact on the whole domain
    (kinks included); only the reference oracle consumes it.  ``kinks``
    lists interior points where the two one-sided derivatives differ.
    """

    domain: Interval
    fn: Callable[[float], float] = field(repr=False)
    dminus: Optional[Callable[[float], float]] = field(default=None, repr=False)
    dplus: Optional[Callable[[float], float]] = field(default=None, repr=False)
    antiderivative: Optional[Callable[[float], float]] = field(default=None, repr=False)
    kinks: tuple = ()
    name: str = ""
    certified: bool = True

    def __post_init__(self):
        if self.certified and (self.dminus is None or self.dplus is None):
            raise ValueError("certified functions need both closed-form derivative oracles")

    @classmethod
    def from_callable(cls, fn, domain: Interval, name: str = "") -> "ConvexFunction":
        """Wrap a black-box callable; derivatives are estimated on demand."""
        return cls(domain=domain, fn=fn, name=name, certified=False)

    def __call__(self, t: float) -> float:
        if not self.domain.contains(t):
            raise DomainError(f"t={t} outside domain [{self.domain.lo}, {self.domain.hi}]")
        return float(self.fn(t))

    def right_derivative(self, t: float) -> float:
        """f'+(t) for t in [lo, hi); may be -inf at t = lo."""
        if t == self.domain.hi:
            raise UndefinedSideError("no right derivative at the upper endpoint")
        if not self.domain.contains(t):
            raise DomainError(f"t={t} outside domain [{self.domain.lo}, {self.domain.hi}]")
        if self.dplus is not None:
            return ensure_extended(self.dplus(t))
        return ensure_extended(
            _one_sided_quotient_limit(self.fn, t, self.domain.width, self.domain.hi, +1)
        )

    def left_derivative(self, t: float) -> float:
        """f'-(t) for t in (lo, hi]; may be +inf at t = hi."""
        if t == self.domain.lo:
            raise UndefinedSideError("no left derivative at the lower endpoint")
        if not self.domain.contains(t):
            raise DomainError(f"t={t} outside domain [{self.domain.lo}, {self.domain.hi}]")
        if self.dminus is not None:
            return ensure_extended(self.dminus(t))
        return ensure_extended(
            _one_sided_quotient_limit(self.fn, t, self.domain.width, self.domain.lo, -1)
        )

    def endpoint_slopes(self) -> EndpointSlopes:
        return EndpointSlopes(
            self.right_derivative(self.domain.lo),
            self.left_derivative(self.domain.hi),
        )

    def derivative(self, t: float, rel_tol: Optional[float] = None) -> float:
        """Two-sided derivative where the one-sided slopes agree.

        At a domain endpoint the single existing one-sided slope counts
        as the derivative (it must be finite).  Certified oracles must
        agree exactly (up to 1e-9 relative); sampled oracles get a 1e-6
        relative allowance for estimation noise.  Raises
        NotDifferentiableError at kinks.
        """
        if t == self.domain.lo or t == self.domain.hi:
            d = self.right_derivative(t) if t == self.domain.lo else self.left_derivative(t)
            if math.isfinite(d):
                return d
            raise NotDifferentiableError(f"infinite one-sided derivative at endpoint t={t}")
        dm = self.left_derivative(t)
        dp = self.right_derivative(t)
        if dm == dp and math.isfinite(dm):
            return dm
        tol = rel_tol if rel_tol is not None else (1e-9 if self.certified else 1e-6)
        if (
            math.isfinite(dm)
            and math.isfinite(dp)
            and abs(dp - dm) <= tol * max(1.0, abs(dm), abs(dp))
        ):
            return 0.5 * (dm + dp)
        raise NotDifferentiableError(f"left/right derivatives differ at t={t}: {dm} vs {dp}")

    def scaled(self, k: float) -> "ConvexFunction":
        """k * f for k > 0 (preserves convexity and all oracles exactly)."""
        k = float(k)
        if not (math.isfinite(k) and k > 0.0):
            raise ValueError("scale factor must be positive and finite")
        fn, dm, dp, anti = self.fn, self.dminus, self.dplus, self.antiderivative
        return ConvexFunction(
            domain=self.domain,
            fn=lambda t: k * fn(t),
            dminus=None if dm is None else (lambda t: k * dm(t)),
            dplus=None if dp is None else (lambda t: k * dp(t)),
            antiderivative=None if anti is None else (lambda t: k * anti(t)),
            kinks=self.kinks,
            name=f"{k:g}*({self.name})" if self.name else "",
            certified=self.certified,
        )

    def add_affine(self, offset: float, slope: float) -> "ConvexFunction":
        """f + offset + slope * t (exact, preserves convexity)."""
        offset = float(offset)
        slope = float(slope)
        fn, dm, dp, anti = self.fn, self.dminus, self.dplus, self.antiderivative
        return ConvexFunction(
            domain=self.domain,
            fn=lambda t: fn(t) + offset + slope * t,
            dminus=None if dm is None else (lambda t: dm(t) + slope),
            dplus=None if dp is None else (lambda t: dp(t) + slope),
            antiderivative=None
            if anti is None
            else (lambda t: anti(t) + offset * t + 0.5 * slope * t * t),
            kinks=self.kinks,
            name=f"({self.name}) + affine" if self.name else "",
            certified=self.certified,
        )


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of sampled convexity falsification."""

    ok: bool
    worst_violation: float
    witness: Optional[tuple]
    checks: int
    tol: float


def check_convexity(f: ConvexFunction, n_samples: int = 129, tol: Optional[float] = None,
                    seed: int = 0) -> ConvexityReport:
    """Sampled falsification of convexity.

    Midpoint convexity f((s+t)/2) <= (f(s)+f(t))/2 is tested on pairs from
    a deterministic grid plus seeded random pairs, and slope monotonicity
    f'+(s) <= f'-(t) <= f'+(t) along the grid.  The default tolerance is
    1e-9 relative to the sampled value range, because floating-point
    midpoint tests on exactly convex functions can show round-off
    violations; sampled derivative oracles get a wider allowance for
    estimation noise.
    """
    if n_samples < 3:
        raise ValueError("n_samples must be at least 3")
    lo, hi = f.domain.lo, f.domain.hi
    grid = [lo + (hi - lo) * i / (n_samples - 1) for i in range(n_samples)]
    grid[-1] = hi
    values = [f(t) for t in grid]
    spread = max(values) - min(values)
    base = 1e-9 if tol is None else float(tol)
    mid_tol = base * max(1.0, spread)

    worst = -math.inf
    witness = None
    checks = 0
    ok = True

    def record(violation, pair, limit):
        nonlocal worst, witness, checks, ok
        checks += 1
        if violation > worst:
            worst = violation
            witness = pair
        if violation > limit:
            ok = False

    pairs = list(zip(grid, grid[1:]))
    pairs.extend(zip(grid, grid[2:]))
    rng = random.Random(seed)
    for _ in range(n_samples):
        s = rng.uniform(lo, hi)
        t = rng.uniform(lo, hi)
        if s != t:
            pairs.append((min(s, t), max(s, t)))
    for s, t in pairs:
        violation = f(0.5 * (s + t)) - 0.5 * (f(s) + f(t))
        record(violation, (s, t), mid_tol)

    rights = [f.right_derivative(t) for t in grid[:-1]]
    lefts = [None] + [f.left_derivative(t) for t in grid[1:]]
    finite = [abs(d) for d in rights + lefts[1:] if d is not None and math.isfinite(d)]
    dscale = max([1.0] + finite)
    deriv_tol = base * dscale * (1.0 if f.certified else 1e3)
    for i in range(1, len(grid) - 1):
        # Interior points: left slope must not exceed right slope.
        record(lefts[i] - rights[i], (grid[i], grid[i]), deriv_tol)
    for i in range(len(grid) - 1):
        gap = rights[i] - lefts[i + 1]
        if math.isnan(gap):  # -inf at lo paired with -inf estimate never occurs; be safe
            gap = -math.inf
        record(gap, (grid[i], grid[i + 1]), deriv_tol)

    if worst == -math.inf:
        worst = 0.0
    return ConvexityReport(ok=ok, worst_violation=worst, witness=witness, checks=checks,
                           tol=mid_tol)


def require_convex(f: ConvexFunction, n_samples: int = 129, tol: Optional[float] = None,
                   seed: int = 0) -> ConvexityReport:
    """Run check_convexity and raise NonConvexError on failure."""
    report = check_convexity(f, n_samples=n_samples, tol=tol, seed=seed)
    if not report.ok:
        s, t = report.witness
        raise NonConvexError(
            f"convexity violated by {report.worst_violation:.3e} at pair ({s!r}, {t!r})",
            report=report,
        )
    return report
