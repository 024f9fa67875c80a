"""Independent ground truth for containment and equality tests.

Two paths: exact antiderivatives (closed form, zero estimated error) and
an adaptive Simpson integrator with kink-aware splitting.  The Simpson
path shares no code or formulas with the certified bound modules, so
containment tests against it are non-circular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .convex_core import ConvexFunction, Interval
from .errors import DomainError, OracleFailureError

CLOSED_FORM = "closed-form"
ADAPTIVE_SIMPSON = "adaptive-simpson"

_MAX_DEPTH = 60
_DEFAULT_REL = 1e-13


@dataclass(frozen=True)
class OracleResult:
    value: float
    est_error: float
    method: str


def _simpson(fn, a, b):
    return (b - a) / 6.0 * (fn(a) + 4.0 * fn(0.5 * (a + b)) + fn(b))


def _adaptive(fn, a, b, fa, fm, fb, whole, tol, floor, depth):
    m = 0.5 * (a + b)
    if not a < m < b:
        # no representable midpoint; the panel is rounding-limited
        return whole, 0.0
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = fn(lm)
    frm = fn(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, abs(delta) / 15.0
    if depth <= 0:
        raise OracleFailureError(f"adaptive Simpson did not converge on [{a}, {b}]")
    # the child tolerance never drops below the rounding floor, else
    # integrable endpoint singularities would recurse without limit
    child_tol = max(0.5 * tol, floor)
    lv, le = _adaptive(fn, a, m, fa, flm, fm, left, child_tol, floor, depth - 1)
    rv, re = _adaptive(fn, m, b, fm, frm, fb, right, child_tol, floor, depth - 1)
    return lv + rv, le + re


def _breakpoints(lo, hi, kinks):
    inner = sorted({float(k) for k in kinks if lo < k < hi})
    return [lo] + inner + [hi]


def integrate_callable(fn, lo: float, hi: float, tol: float, breakpoints=()):
    """Adaptive Simpson on a plain callable; returns (value, est_error).

    ``breakpoints`` are split exactly so each recursive pass only ever
    sees a smooth integrand.
    """
    pts = _breakpoints(lo, hi, breakpoints)
    span = hi - lo
    total = 0.0
    err = 0.0
    for a, b in zip(pts, pts[1:]):
        piece_tol = tol * (b - a) / span if span > 0 else tol
        floor = 1e-4 * piece_tol
        fa, fb = fn(a), fn(b)
        fm = fn(0.5 * (a + b))
        whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        v, e = _adaptive(fn, a, b, fa, fm, fb, whole, piece_tol, floor, _MAX_DEPTH)
        total += v
        err += e
    return total, err


def reference_integral(f: ConvexFunction, interval: Optional[Interval] = None,
                       tol: Optional[float] = None, method: str = "auto") -> OracleResult:
    """Definite integral of f over ``interval`` (default: its whole domain).

    Catalog functions carry exact antiderivatives and are evaluated in
    closed form (kink points split exactly); everything else goes through
    adaptive Simpson to est_error <= tol, default 1e-13 * (1 + |result|).
    ``method`` can force either path.
    """
    target = interval if interval is not None else f.domain
    if not f.domain.encloses(target):
        raise DomainError("integration interval must lie inside the function domain")
    if method not in ("auto", CLOSED_FORM, ADAPTIVE_SIMPSON):
        raise ValueError(f"unknown oracle method {method!r}")
    if method == CLOSED_FORM and f.antiderivative is None:
        raise ValueError("no closed-form antiderivative available")

    use_closed = f.antiderivative is not None and method != ADAPTIVE_SIMPSON
    pts = _breakpoints(target.lo, target.hi, f.kinks)
    if use_closed:
        anti = f.antiderivative
        total = math.fsum(anti(b) - anti(a) for a, b in zip(pts, pts[1:]))
        return OracleResult(value=total, est_error=0.0, method=CLOSED_FORM)

    if tol is None:
        rough = math.fsum(_simpson(f.fn, a, b) for a, b in zip(pts, pts[1:]))
        tol = _DEFAULT_REL * (1.0 + abs(rough))
    value, err = integrate_callable(f.fn, target.lo, target.hi, tol, breakpoints=f.kinks)
    return OracleResult(value=value, est_error=err, method=ADAPTIVE_SIMPSON)


def brute_force_hh(kernel, p, q, tol: float = 1e-12) -> float:
    """Numeric evaluation of the per-atom integral-mean divergence.

    Every inner integral runs through the adaptive-Simpson oracle path,
    ignoring the kernel's closed form, so this validates the divergence
    module's closed-form sums.
    """
    from .divergence import _require_same_length

    _require_same_length(p, q)
    terms = []
    for pi, qi in zip(p.weights, q.weights):
        r = qi / pi
        if r == 1.0:
            continue
        lo, hi = (1.0, r) if r > 1.0 else (r, 1.0)
        piece = reference_integral(kernel.on_interval(lo, hi), tol=tol, method=ADAPTIVE_SIMPSON)
        signed = piece.value if r > 1.0 else -piece.value
        terms.append(pi * signed / (r - 1.0))
    return math.fsum(terms)
