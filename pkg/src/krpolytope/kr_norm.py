"""Kantorovich-Rubinstein norm on sum-zero vectors, by transport LP and by polytope gauge.

Conventions: for ``v`` with coordinate sum 0, the source vector is
``u = max(v, 0)`` and the sink vector is ``w = max(-v, 0)``, so ``v = u - w``
with both nonnegative. A transport plan ``psi`` has row sums ``u`` and column
sums ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_math import as_vector, dot, solve_lp
from .metric_space import DistanceMatrix, require_metric
from .polytope import HRepresentation, analyze


@dataclass(frozen=True)
class TransportPlan:
    psi: tuple[tuple[Fraction, ...], ...]

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.psi]

    def column_sums(self) -> list[Fraction]:
        return [sum(col, Fraction(0)) for col in zip(*self.psi)]

    def cost(self, D: DistanceMatrix) -> Fraction:
        return sum(
            (D.d[i][j] * x for i, row in enumerate(self.psi) for j, x in enumerate(row)), Fraction(0)
        )


def mass_vector(v: Sequence) -> list[Fraction]:
    """Convert to exact rationals and insist on coordinate sum 0."""
    vec = as_vector(v)
    total = sum(vec, Fraction(0))
    if total != 0:
        raise ValueError(f"mass vector must sum to 0, got {total}")
    return vec


def split_signs(v: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    vec = mass_vector(v)
    zero = Fraction(0)
    return [max(x, zero) for x in vec], [max(-x, zero) for x in vec]


def _solve_transport(D: DistanceMatrix, v: Sequence) -> tuple[Fraction, TransportPlan]:
    require_metric(D)
    vec = mass_vector(v)
    if len(vec) != D.n:
        raise ValueError(f"vector has length {len(vec)}, metric has {D.n} points")
    u, w = split_signs(vec)
    n = D.n
    sources = [i for i in range(n) if u[i] > 0]
    sinks = [j for j in range(n) if w[j] > 0]
    psi = [[Fraction(0)] * n for _ in range(n)]
    if not sources:
        return Fraction(0), TransportPlan(tuple(map(tuple, psi)))
    pairs = [(i, j) for i in sources for j in sinks]
    cost = [D.d[i][j] for i, j in pairs]
    A = [[int(i == s) for i, _ in pairs] for s in sources]
    A += [[int(j == t) for _, j in pairs] for t in sinks]
    rhs = [u[s] for s in sources] + [w[t] for t in sinks]
    result = solve_lp(cost, A, rhs)
    if not result.optimal:
        raise RuntimeError(f"transport LP returned {result.status}")
    for (i, j), x in zip(pairs, result.solution):
        psi[i][j] = x
    return result.value, TransportPlan(tuple(map(tuple, psi)))


def transport_norm(D: DistanceMatrix, v: Sequence) -> Fraction:
    """Optimal transport cost from the positive to the negative part of ``v``."""
    return _solve_transport(D, v)[0]


def optimal_plan(D: DistanceMatrix, v: Sequence) -> TransportPlan:
    return _solve_transport(D, v)[1]


def gauge_norm(H: HRepresentation, v: Sequence) -> Fraction:
    """Minkowski gauge of the polytope: the largest facet functional at ``v``."""
    vec = mass_vector(v)
    return max(dot(a, vec) for a in H.facets)


def unit_vector_difference(n: int, x: int, y: int) -> list[Fraction]:
    """``1_x - 1_y``, which equals delta_x - delta_y."""
    return [Fraction(int(k == x) - int(k == y)) for k in range(n)]


def extension_check(D: DistanceMatrix, H: HRepresentation | None = None) -> bool:
    """The norm extends the metric: ``||1_x - 1_y|| = d(x,y)`` by LP, and every e_{x,y} has gauge 1."""
    require_metric(D)
    if H is None:
        H = analyze(D).hrep
    n = D.n
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            diff = unit_vector_difference(n, x, y)
            if transport_norm(D, diff) != D.d[x][y]:
                return False
            if gauge_norm(H, [c / D.d[x][y] for c in diff]) != 1:
                return False
    return True
