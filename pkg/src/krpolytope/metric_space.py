"""Finite metric spaces: parsing, validation, sampling, and the vectors e_{x,y}.

Points are indexed ``0..n-1`` everywhere in the library.

The map x -> delta_x sends a point to the function that is ``(n-1)/n`` at x and
``-1/n`` elsewhere. For two points the constant ``-1/n`` offsets cancel, so
``delta_x - delta_y`` is simply the indicator of x minus the indicator of y and
``e_{x,y} = (1_x - 1_y) / d(x, y)`` is exactly rational with coordinate sum 0.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .exact_math import format_rational, parse_rational, psd_check, solve_lp, to_fraction


class MetricParseError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceMatrix:
    """Square matrix of exact distances. Validation is explicit, see :func:`validate_metric`."""

    d: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Sequence[Sequence]):
        mat = tuple(tuple(to_fraction(x) for x in row) for row in rows)
        if len(mat) < 2:
            raise ValueError("a distance matrix needs at least 2 points")
        if any(len(row) != len(mat) for row in mat):
            raise ValueError("distance matrix is not square")
        object.__setattr__(self, "d", mat)

    @property
    def n(self) -> int:
        return len(self.d)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.d[i][j]

    @classmethod
    def unit(cls, n: int) -> "DistanceMatrix":
        """All distinct points at distance 1."""
        return cls([[int(i != j) for j in range(n)] for i in range(n)])

    def scaled(self, factor) -> "DistanceMatrix":
        factor = to_fraction(factor)
        return DistanceMatrix([[x * factor for x in row] for row in self.d])

    def permuted(self, perm: Sequence[int]) -> "DistanceMatrix":
        """Relabel so that new point ``perm[i]`` is old point ``i``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        return DistanceMatrix([[self.d[inv[a]][inv[b]] for b in range(n)] for a in range(n)])

    def is_symmetric_positive(self) -> bool:
        n = self.n
        return all(self.d[i][i] == 0 for i in range(n)) and all(
            self.d[i][j] == self.d[j][i] and self.d[i][j] > 0
            for i in range(n)
            for j in range(n)
            if i != j
        )

    def to_text(self) -> str:
        return "\n".join(" ".join(format_rational(x) for x in row) for row in self.d) + "\n"

    def to_json(self) -> dict:
        return {"n": self.n, "d": [[format_rational(x) for x in row] for row in self.d]}


@dataclass(frozen=True)
class LabeledPoint:
    source: int
    target: int
    coords: tuple[Fraction, ...]

    @property
    def label(self) -> tuple[int, int]:
        return (self.source, self.target)


@dataclass(frozen=True)
class MetricReport:
    violations: tuple[tuple[str, tuple[int, ...]], ...] = field(default_factory=tuple)

    @property
    def is_valid(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _parse_entry(token, row: int, col: int) -> Fraction:
    try:
        return parse_rational(str(token))
    except ValueError as exc:
        raise MetricParseError(f"row {row}, col {col}: {exc}") from None


def parse_distance_matrix(text: str) -> DistanceMatrix:
    """Read a distance matrix from whitespace-separated text or the JSON form.

    Symmetry and a zero diagonal are enforced here; the triangle inequality is not.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MetricParseError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict) or "d" not in obj:
            raise MetricParseError('JSON matrix must be an object with key "d"')
        raw = obj["d"]
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            raise MetricParseError('"d" must be a list of rows')
        if "n" in obj and obj["n"] != len(raw):
            raise MetricParseError(f'"n" is {obj["n"]} but "d" has {len(raw)} rows')
    else:
        raw = [
            line.split()
            for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
    rows = [[_parse_entry(tok, i, j) for j, tok in enumerate(r)] for i, r in enumerate(raw)]
    n = len(rows)
    if n < 2:
        raise MetricParseError(f"need at least 2 rows, got {n}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MetricParseError(f"row {i} has {len(row)} entries, expected {n}")
    for i in range(n):
        if rows[i][i] != 0:
            raise MetricParseError(f"nonzero diagonal at ({i},{i})")
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise MetricParseError(f"asymmetric at ({i},{j})/({j},{i})")
    return DistanceMatrix(rows)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_metric(D: DistanceMatrix) -> MetricReport:
    """Check every metric axiom; triangle witnesses ``(i, j, k)`` mean d(i,j) > d(i,k) + d(k,j)."""
    n, d = D.n, D.d
    violations: list[tuple[str, tuple[int, ...]]] = []
    for i in range(n):
        if d[i][i] != 0:
            violations.append(("nonzero-diagonal", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                violations.append(("asymmetry", (i, j)))
    for i in range(n):
        for j in range(n):
            if i != j and d[i][j] <= 0:
                violations.append(("nonpositive", (i, j)))
    for i, j, k in product(range(n), repeat=3):
        if len({i, j, k}) == 3 and d[i][j] > d[i][k] + d[k][j]:
            violations.append(("triangle", (i, j, k)))
    return MetricReport(tuple(violations))


def is_strict_metric(D: DistanceMatrix) -> bool:
    """All triangle inequalities hold strictly."""
    n, d = D.n, D.d
    return validate_metric(D).is_valid and all(
        d[i][j] < d[i][k] + d[k][j]
        for i, j, k in product(range(n), repeat=3)
        if len({i, j, k}) == 3
    )


def require_metric(D: DistanceMatrix) -> None:
    report = validate_metric(D)
    if not report.is_valid:
        kind, witness = report.violations[0]
        raise ValueError(f"not a metric: {kind} violation at {witness}")


def require_symmetric_positive(D: DistanceMatrix) -> None:
    if not D.is_symmetric_positive():
        raise ValueError("distances must be symmetric, positive off the diagonal, zero on it")


# ---------------------------------------------------------------------------
# the vectors e_{x,y}
# ---------------------------------------------------------------------------


def fundamental_vectors(D: DistanceMatrix) -> list[LabeledPoint]:
    """``e_{x,y} = (1_x - 1_y) / d(x,y)`` for all ordered pairs, lexicographic in (x, y)."""
    require_symmetric_positive(D)
    n = D.n
    points = []
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            inv = 1 / D.d[x][y]
            coords = [Fraction(0)] * n
            coords[x] = inv
            coords[y] = -inv
            points.append(LabeledPoint(x, y, tuple(coords)))
    return points


def _interior_directions(n: int) -> list[list[int]]:
    # n * 1_i - 1 for each i: sums to zero and positively spans the sum-zero hyperplane
    return [[n * (k == i) - 1 for k in range(n)] for i in range(n)]


def is_interior_point(point: Sequence[Fraction], others: Sequence[Sequence[Fraction]], order=None) -> bool:
    """Whether ``point`` is interior to conv(``others``) inside the sum-zero hyperplane.

    For each direction u of a positive spanning set of the hyperplane, solve
    ``max t : point + t*u in conv(others)``. The point is interior exactly when
    every such maximum is strictly positive (the small moves in all spanning
    directions then enclose a neighbourhood). An infeasible LP means the point
    is outside the hull altogether.
    """
    n = len(point)
    if not others:
        return False
    k = len(others)
    directions = _interior_directions(n)
    if order is not None:
        directions = [directions[i] for i in order]
    # columns: lambda_1..lambda_k, t
    for u in directions:
        A = [[p[row] for p in others] + [-u[row]] for row in range(n)]
        A.append([1] * k + [0])
        rhs = list(point) + [1]
        result = solve_lp([0] * k + [-1], A, rhs)
        if result.status != "optimal" or result.value == 0:
            return False
    return True


def extremality_metric_test(D: DistanceMatrix) -> bool:
    """True iff no e_{x,y} lies in the interior of the hull of the other points.

    For symmetric positive input this holds exactly when the triangle inequality does.
    """
    require_symmetric_positive(D)
    pts = fundamental_vectors(D)
    for idx, p in enumerate(pts):
        others = [q.coords for j, q in enumerate(pts) if j != idx]
        # the outward direction at the source coordinate usually exits immediately
        order = [p.source] + [i for i in range(D.n) if i != p.source]
        if is_interior_point(p.coords, others, order):
            return False
    return True


def gram_matrix(D: DistanceMatrix) -> list[list[Fraction]]:
    """``G[i][j] = (d0i^2 + d0j^2 - dij^2) / 2`` for points ``1..n-1`` anchored at point 0."""
    d = D.d
    n = D.n
    return [[(d[0][i] ** 2 + d[0][j] ** 2 - d[i][j] ** 2) / 2 for j in range(1, n)] for i in range(1, n)]


def euclidean_type_test(D: DistanceMatrix) -> bool:
    """Isometric embeddability into a Euclidean space (Schoenberg's criterion)."""
    require_metric(D)
    return psd_check(gram_matrix(D))


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def _random_unit_rational(rng: random.Random, bound: int) -> Fraction:
    q = rng.randint(1, bound)
    return Fraction(rng.randint(1, q), q)


def shortest_path_closure(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    d = [list(row) for row in rows]
    n = len(d)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return d


def random_metric(
    n: int,
    seed: int | str,
    denominator_bound: int = 10,
    mode: str = "closure",
    strict: bool = False,
) -> DistanceMatrix:
    """Draw a random rational metric on ``n`` points, deterministically in the arguments.

    ``closure``: symmetric uniform draws in (0, 1] with denominators up to
    ``denominator_bound``, repaired by shortest-path closure. Closure lands
    on the boundary of the metric cone whenever it shortens an entry, so it
    over-weights degenerate metrics.

    ``euclidean``: l1 distances between random rational points of the cube
    ``[0, 1]^(n-1)``. Always a metric; actual Euclidean embeddability is
    decided separately by :func:`euclidean_type_test`.

    With ``strict=True`` draws are repeated until every triangle inequality
    is strict.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if denominator_bound < 1:
        raise ValueError("denominator_bound must be positive")
    rng = random.Random(f"{n}:{seed}:{denominator_bound}:{mode}")
    while True:
        if mode == "closure":
            raw = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    raw[i][j] = raw[j][i] = _random_unit_rational(rng, denominator_bound)
            D = DistanceMatrix(shortest_path_closure(raw))
        elif mode == "euclidean":
            pts = [
                [Fraction(rng.randint(0, denominator_bound), denominator_bound) for _ in range(n - 1)]
                for _ in range(n)
            ]
            rows = [[sum((abs(a - b) for a, b in zip(p, q)), Fraction(0)) for q in pts] for p in pts]
            if any(rows[i][j] == 0 for i in range(n) for j in range(n) if i != j):
                continue
            D = DistanceMatrix(rows)
        else:
            raise ValueError(f"unknown sampling mode {mode!r}")
        if not strict or is_strict_metric(D):
            return D


def random_symmetric_positive(n: int, seed: int | str, denominator_bound: int = 10) -> DistanceMatrix:
    """Symmetric positive matrix with no triangle repair (mostly non-metric for n >= 4)."""
    rng = random.Random(f"sym:{n}:{seed}:{denominator_bound}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = _random_unit_rational(rng, denominator_bound)
    return DistanceMatrix(rows)
