"""Composite quadrature with certified remainder enclosures.

A tagged partition a = x0 < ... < xn = b with tags xi_i in [x_i, x_i+1]
defines the Riemann sum  sum h_i f(xi_i).  For convex f the remainder
integral - sum is sandwiched cell by cell by the pointwise bounds, which
yields computable two-sided certificates; with midpoint tags the
remainder is nonnegative and the certificate width contracts like 1/n^2
under uniform refinement, which drives the adaptive integrator.

Per-cell terms are summed left to right, so results are reproducible bit
for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .convex_core import ConvexFunction, Interval
from .errors import BudgetExceededError, DomainError, PartitionError, UnboundedSlopeError
from .extreal import xadd, xmul, xsub, xsum
from .pointwise import Enclosure

DEFAULT_MAX_CELLS = 2**20


@dataclass(frozen=True)
class Partition:
    """Sorted nodes spanning an interval plus one tag per cell."""

    nodes: tuple
    tags: tuple

    def __post_init__(self):
        nodes = tuple(float(x) for x in self.nodes)
        tags = tuple(float(x) for x in self.tags)
        if len(nodes) < 2:
            raise PartitionError("a partition needs at least two nodes")
        if any(u >= v for u, v in zip(nodes, nodes[1:])):
            raise PartitionError("nodes must be strictly increasing")
        if len(tags) != len(nodes) - 1:
            raise PartitionError("need exactly one tag per cell")
        for x0, x1, xi in zip(nodes, nodes[1:], tags):
            if not x0 <= xi <= x1:
                raise PartitionError(f"tag {xi} outside its cell [{x0}, {x1}]")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "tags", tags)

    @classmethod
    def uniform(cls, interval: Interval, n: int, rule: str = "midpoint") -> "Partition":
        if n < 1:
            raise PartitionError("need at least one cell")
        a, b = interval.lo, interval.hi
        nodes = [a + (b - a) * i / n for i in range(n + 1)]
        nodes[-1] = b
        if rule == "midpoint":
            tags = [0.5 * (u + v) for u, v in zip(nodes, nodes[1:])]
        elif rule == "left":
            tags = nodes[:-1]
        elif rule == "right":
            tags = nodes[1:]
        else:
            raise PartitionError(f"unknown tag rule {rule!r}")
        return cls(tuple(nodes), tuple(tags))

    @property
    def cells(self) -> int:
        return len(self.tags)

    @property
    def widths(self) -> tuple:
        return tuple(v - u for u, v in zip(self.nodes, self.nodes[1:]))

    def iter_cells(self):
        return zip(self.nodes, self.nodes[1:], self.tags)

    def spans(self, interval: Interval) -> bool:
        return self.nodes[0] == interval.lo and self.nodes[-1] == interval.hi


@dataclass(frozen=True)
class QuadratureResult:
    """Rule value plus a certified enclosure of integral - estimate."""

    estimate: float
    remainder: Enclosure
    cells: int
    partition: Partition

    @property
    def integral_bounds(self) -> Enclosure:
        return Enclosure(xadd(self.estimate, self.remainder.lo),
                         xadd(self.estimate, self.remainder.hi))

    @property
    def width(self) -> float:
        return self.remainder.width


def _require_spanning(f: ConvexFunction, partition: Partition):
    if not partition.spans(f.domain):
        raise PartitionError(
            f"partition [{partition.nodes[0]}, {partition.nodes[-1]}] does not span "
            f"the domain [{f.domain.lo}, {f.domain.hi}]"
        )


def riemann_sum(f: ConvexFunction, partition: Partition) -> float:
    """sum of h_i * f(tag_i) over the cells, left to right."""
    _require_spanning(f, partition)
    return xsum((x1 - x0) * f(xi) for x0, x1, xi in partition.iter_cells())


def remainder_enclosure(f: ConvexFunction, partition: Partition) -> Enclosure:
    """Certified enclosure of  integral - riemann_sum  for a convex f.

    Lower: (1/2) sum (x_i+1 - xi_i)^2 f'+(xi_i) - (xi_i - x_i)^2 f'-(xi_i)
    Upper: the same with the slopes moved to the cell endpoints.
    A side whose squared weight is zero (tag on a cell endpoint) is never
    evaluated, so tags at the domain ends stay well defined.  Infinite
    endpoint slopes propagate to the corresponding bound.
    """
    _require_spanning(f, partition)
    lo_terms = []
    hi_terms = []
    for x0, x1, xi in partition.iter_cells():
        wr = (x1 - xi) ** 2
        wl = (xi - x0) ** 2
        cell_lo = 0.0
        cell_hi = 0.0
        if wr > 0.0:
            cell_lo = xadd(cell_lo, xmul(wr, f.right_derivative(xi)))
            cell_hi = xadd(cell_hi, xmul(wr, f.left_derivative(x1)))
        if wl > 0.0:
            cell_lo = xsub(cell_lo, xmul(wl, f.left_derivative(xi)))
            cell_hi = xsub(cell_hi, xmul(wl, f.right_derivative(x0)))
        lo_terms.append(cell_lo)
        hi_terms.append(cell_hi)
    return Enclosure(xmul(0.5, xsum(lo_terms)), xmul(0.5, xsum(hi_terms)))


def remainder_upper_by_node(f: ConvexFunction, partition: Partition) -> float:
    """The upper remainder bound regrouped by node instead of by cell.

    Algebraically identical to remainder_enclosure's upper bound; exposed
    so the regrouping can be verified numerically.
    """
    _require_spanning(f, partition)
    nodes, tags = partition.nodes, partition.tags
    a, b = nodes[0], nodes[-1]
    terms = []
    w_last = (b - tags[-1]) ** 2
    if w_last > 0.0:
        terms.append(xmul(w_last, f.left_derivative(b)))
    for i in range(1, len(nodes) - 1):
        w_in = (nodes[i] - tags[i - 1]) ** 2
        if w_in > 0.0:
            terms.append(xmul(w_in, f.left_derivative(nodes[i])))
        w_out = (tags[i] - nodes[i]) ** 2
        if w_out > 0.0:
            terms.append(xmul(-w_out, f.right_derivative(nodes[i])))
    w_first = (tags[0] - a) ** 2
    if w_first > 0.0:
        terms.append(xmul(-w_first, f.right_derivative(a)))
    return xmul(0.5, xsum(terms))


def differentiable_lower_form(f: ConvexFunction, partition: Partition) -> float:
    """Lower remainder bound  sum ((x_i + x_i+1)/2 - xi_i) h_i f'(xi_i).

    Valid when f is differentiable at every tag; equals the general lower
    bound there.  Raises NotDifferentiableError at a kinked tag.
    """
    _require_spanning(f, partition)
    return xsum(
        (0.5 * (x0 + x1) - xi) * (x1 - x0) * f.derivative(xi)
        for x0, x1, xi in partition.iter_cells()
    )


def midpoint_rule(f: ConvexFunction, n: int) -> QuadratureResult:
    """Uniform midpoint rule with a certified remainder enclosure.

    The remainder is sandwiched by
        (1/8) sum [f'+(m_i) - f'-(m_i)] h_i^2   (always >= 0)
    and (1/8) sum [f'-(x_i+1) - f'+(x_i)] h_i^2,
    both attained by kink functions, so the 1/8 cannot be improved.
    """
    partition = Partition.uniform(f.domain, n)
    estimate = riemann_sum(f, partition)
    lo_terms = []
    hi_terms = []
    for x0, x1, m in partition.iter_cells():
        h2 = (x1 - x0) ** 2
        lo_terms.append(0.125 * h2 * (f.right_derivative(m) - f.left_derivative(m)))
        hi_terms.append(xmul(0.125 * h2, xsub(f.left_derivative(x1), f.right_derivative(x0))))
    remainder = Enclosure(xsum(lo_terms), xsum(hi_terms))
    return QuadratureResult(estimate=estimate, remainder=remainder, cells=n, partition=partition)


def integrate_adaptive(f: ConvexFunction, tol: float,
                       max_cells: int = DEFAULT_MAX_CELLS) -> QuadratureResult:
    """Certified integration by uniform doubling of the midpoint rule.

    Doubles n starting at 1 until the remainder-enclosure width is <= tol.
    The returned result satisfies
        integral in [estimate + remainder.lo, estimate + remainder.hi].
    Requires finite endpoint slopes (otherwise the width never becomes
    finite).  Raises BudgetExceededError carrying the best result when
    max_cells is exhausted.
    """
    if not tol > 0.0:
        raise DomainError("tolerance must be positive")
    if not f.endpoint_slopes().both_finite:
        raise UnboundedSlopeError(
            "certified width cannot converge with an infinite endpoint slope"
        )
    n = 1
    result = None
    while n <= max_cells:
        result = midpoint_rule(f, n)
        if result.width <= tol:
            return result
        n *= 2
    raise BudgetExceededError(
        f"enclosure width {result.width:.3e} > tol {tol:.3e} after {result.cells} cells",
        best=result,
    )
