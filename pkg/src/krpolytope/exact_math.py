"""Exact rational kernel: parsing, linear algebra, linear programming, PSD tests.

Everything here works on :class:`fractions.Fraction`, which keeps every value in
lowest terms with a positive denominator after each operation. Matrices are plain
lists of rows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = list[Fraction]
Matrix = list[list[Fraction]]

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction. Decimals are not accepted."""
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ValueError(f"malformed rational {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value: Fraction | int) -> str:
    return str(Fraction(value))


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(value)


def as_vector(values: Sequence) -> Vector:
    return [to_fraction(v) for v in values]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [as_vector(row) for row in rows]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# Gaussian elimination
# ---------------------------------------------------------------------------


def row_echelon(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    mat = as_matrix(rows)
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points``."""
    if len(points) == 0:
        raise ValueError("affine_rank of an empty point set")
    base = as_vector(points[0])
    if any(len(p) != len(base) for p in points):
        raise ValueError("points have different lengths")
    diffs = [[to_fraction(x) - y for x, y in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def inverse(rows: Sequence[Sequence]) -> Matrix:
    mat = as_matrix(rows)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("inverse of a non-square matrix")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(vec)
    return basis


def determinant(rows: Sequence[Sequence]) -> Fraction:
    mat = as_matrix(rows)
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / mat[c][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return det


def psd_check(rows: Sequence[Sequence]) -> bool:
    """Decide positive semidefiniteness of a symmetric rational matrix exactly.

    Repeatedly eliminates on a positive diagonal entry (taking the Schur
    complement). A negative diagonal entry, or a zero diagonal paired with a
    nonzero off-diagonal entry, certifies failure.
    """
    mat = as_matrix(rows)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("psd_check needs a square matrix")
    if any(mat[i][j] != mat[j][i] for i in range(n) for j in range(i)):
        raise ValueError("psd_check needs a symmetric matrix")
    while mat:
        diag = [mat[i][i] for i in range(len(mat))]
        if any(d < 0 for d in diag):
            return False
        k = next((i for i, d in enumerate(diag) if d > 0), None)
        if k is None:
            return all(x == 0 for row in mat for x in row)
        pivot_row = mat[k]
        inv = 1 / pivot_row[k]
        mat = [
            [mat[i][j] - mat[i][k] * pivot_row[j] * inv for j in range(len(mat)) if j != k]
            for i in range(len(mat))
            if i != k
        ]
    return True


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Dense simplex tableau; rows are ``[coefficients..., rhs]``."""

    def __init__(self, rows: Matrix, basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.cost: Vector = []

    def set_cost(self, cost: Sequence[Fraction]) -> None:
        width = len(self.rows[0]) if self.rows else len(cost) + 1
        red = list(cost) + [Fraction(0)]
        red += [Fraction(0)] * (width - len(red))
        for row, b in zip(self.rows, self.basis):
            cb = cost[b]
            if cb != 0:
                red = [x - cb * y for x, y in zip(red, row)]
        self.cost = red

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        row = [x * inv for x in row]
        self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [x - f * y for x, y in zip(other, row)]
        if self.cost[c] != 0:
            f = self.cost[c]
            self.cost = [x - f * y for x, y in zip(self.cost, row)]
        self.basis[r] = c

    def run(self, allowed: int) -> str:
        """Bland's rule iterations over columns ``[0, allowed)``."""
        while True:
            entering = next((j for j in range(allowed) if self.cost[j] < 0), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def solve_lp(
    objective: Sequence,
    eq_matrix: Sequence[Sequence],
    eq_rhs: Sequence,
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Minimize ``objective @ x`` subject to ``eq_matrix @ x == eq_rhs``.

    Variables flagged in ``nonneg`` (all of them by default) are constrained to
    be >= 0; the rest are free. Two-phase simplex with Bland's pivot rule.
    """
    c = as_vector(objective)
    A = as_matrix(eq_matrix)
    b = as_vector(eq_rhs)
    nvar = len(c)
    if nonneg is None:
        nonneg = [True] * nvar
    if len(nonneg) != nvar:
        raise ValueError("nonneg flags do not match the number of variables")
    if len(A) != len(b):
        raise ValueError(f"eq_matrix has {len(A)} rows but eq_rhs has {len(b)} entries")
    if any(len(row) != nvar for row in A):
        raise ValueError("eq_matrix row length does not match the objective")

    # free variables are split as x = x+ - x-
    columns: list[tuple[int, int]] = []
    for j, flag in enumerate(nonneg):
        columns.append((j, 1))
        if not flag:
            columns.append((j, -1))
    ncol = len(columns)
    cost = [c[j] * s for j, s in columns]
    rows: Matrix = []
    for row, rhs in zip(A, b):
        std = [row[j] * s for j, s in columns]
        if rhs < 0:
            std, rhs = [-x for x in std], -rhs
        rows.append(std + [rhs])

    m = len(rows)
    if m == 0:
        # only sign constraints remain
        if any(cj < 0 for cj in cost):
            return LPResult("unbounded")
        return LPResult("optimal", Fraction(0), tuple(Fraction(0) for _ in range(nvar)))

    tab_rows = [
        row[:-1] + [Fraction(int(i == k)) for k in range(m)] + [row[-1]] for i, row in enumerate(rows)
    ]
    tab = _Tableau(tab_rows, [ncol + i for i in range(m)])
    tab.set_cost([Fraction(0)] * ncol + [Fraction(1)] * m)
    tab.run(ncol + m)
    if tab.cost[-1] != 0:
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= ncol:
            j = next((j for j in range(ncol) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.rows = [row[:ncol] + [row[-1]] for row in tab.rows]
    if not tab.rows:
        if any(cj < 0 for cj in cost):
            return LPResult("unbounded")
        return LPResult("optimal", Fraction(0), tuple(Fraction(0) for _ in range(nvar)))
    tab.set_cost(cost)
    if tab.run(ncol) == "unbounded":
        return LPResult("unbounded")

    std_x = [Fraction(0)] * ncol
    for row, bvar in zip(tab.rows, tab.basis):
        std_x[bvar] = row[-1]
    x = [Fraction(0)] * nvar
    for (j, s), val in zip(columns, std_x):
        x[j] += s * val
    return LPResult("optimal", dot(c, x), tuple(x))


def in_convex_hull(point: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact membership of ``point`` in conv(``points``) via a feasibility LP."""
    if not points:
        return False
    dim = len(point)
    A = [[p[k] for p in points] for k in range(dim)] + [[1] * len(points)]
    rhs = list(point) + [1]
    return solve_lp([0] * len(points), A, rhs).status == "optimal"
