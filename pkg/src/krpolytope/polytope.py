"""Fundamental polytopes: vertices, facets, incidence, face lattice, f-vector.

Facets are stored as normals ``a`` in ambient coordinates with ``sum(a) == 0``,
describing the inequality ``a . x <= 1`` on the sum-zero hyperplane. Since the
origin is interior to every fundamental polytope this normalization is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exact_math import affine_rank, dot, format_rational, in_convex_hull, inverse, rank
from .metric_space import DistanceMatrix, LabeledPoint, fundamental_vectors


class DegeneratePolytopeError(ValueError):
    def __init__(self, message: str, affine_rank: int | None = None):
        super().__init__(message)
        self.affine_rank = affine_rank


@dataclass(frozen=True)
class VRepresentation:
    ambient_dim: int
    points: tuple[LabeledPoint, ...]
    is_vertex: tuple[bool, ...]

    @property
    def vertex_indices(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.is_vertex) if v)

    @property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        return [self.points[i].coords for i in self.vertex_indices]


@dataclass(frozen=True)
class HRepresentation:
    facets: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Incidence:
    """Vertex-by-facet incidence; ``rows[i][j]`` is True when vertex i lies on facet j."""

    vertex_indices: tuple[int, ...]
    vertex_coords: tuple[tuple[Fraction, ...], ...]
    rows: tuple[tuple[bool, ...], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.rows)

    @property
    def num_facets(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def facet_sets(self) -> list[int]:
        """Vertex sets of the facets as bitmasks over vertex positions."""
        masks = [0] * self.num_facets
        for i, row in enumerate(self.rows):
            for j, on in enumerate(row):
                if on:
                    masks[j] |= 1 << i
        return masks


@dataclass(frozen=True)
class FaceLattice:
    """Faces as sorted tuples of vertex positions (rows of the incidence) with dimensions."""

    faces: tuple[tuple[tuple[int, ...], int], ...]
    dim: int

    def level_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for _, k in self.faces:
            counts[k] = counts.get(k, 0) + 1
        return counts


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


def build_fundamental_polytope(D: DistanceMatrix) -> VRepresentation:
    """All points e_{x,y}, each flagged by an exact LP as extreme or not."""
    points = fundamental_vectors(D)
    coords = [p.coords for p in points]
    flags = tuple(
        not in_convex_hull(c, coords[:i] + coords[i + 1 :]) for i, c in enumerate(coords)
    )
    return VRepresentation(D.n, tuple(points), flags)


def root_polytope(n: int) -> VRepresentation:
    """Hull of the A_{n-1} roots 1_i - 1_j, i.e. the fundamental polytope of the unit metric."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return build_fundamental_polytope(DistanceMatrix.unit(n))


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------


def _primitive(vec: Sequence[Fraction | int]) -> tuple[int, ...]:
    fr = [Fraction(x) for x in vec]
    scale = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * scale) for x in fr]
    g = gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _initial_basis(rows: list[tuple[int, ...]], dim: int) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == dim:
                break
    return chosen


def cone_extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{c : row . c >= 0 for every row}``.

    Incremental double description with the combinatorial adjacency test. The
    rows must have full column rank. Rays are returned as primitive integer
    vectors.
    """
    rows = [_primitive(r) for r in rows]
    dim = len(rows[0])
    basis = _initial_basis(rows, dim)
    if len(basis) < dim:
        raise DegeneratePolytopeError("constraint rows do not have full rank", len(basis))
    inv = inverse([rows[i] for i in basis])
    rays = [_primitive([inv[r][j] for r in range(dim)]) for j in range(dim)]
    full = 0
    for i in basis:
        full |= 1 << i
    zeros = [full & ~(1 << basis[j]) for j in range(dim)]

    for k in (i for i in range(len(rows)) if i not in basis):
        a = rows[k]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zeros = [z | (1 << k) if v == 0 else z for z, v in zip(zeros, vals)]
            continue
        new_rays: list[tuple[int, ...]] = []
        new_zeros: list[int] = []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | (1 << k) if v == 0 else zeros[i])
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if bin(common).count("1") < dim - 2:
                    continue
                if any(t != p and t != q and common & zeros[t] == common for t in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                combo = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(combo))
                new_zeros.append(common | (1 << k))
        rays, zeros = new_rays, new_zeros
    return rays


def _chart(coords: Sequence[Fraction]) -> list[Fraction]:
    # drop the last coordinate: a linear isomorphism of the sum-zero hyperplane onto R^(n-1)
    return list(coords[:-1])


def _ambient_normal(chart_normal: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    last = -sum(chart_normal, Fraction(0)) / n
    return tuple(a + last for a in chart_normal) + (last,)


def enumerate_facets(V: VRepresentation) -> HRepresentation:
    """Irredundant facet normals ``a`` with ``a . x <= 1``, sorted lexicographically."""
    verts = V.vertices
    n = V.ambient_dim
    r = affine_rank(verts)
    if r != n - 1:
        raise DegeneratePolytopeError(
            f"polytope is not full-dimensional in the sum-zero hyperplane (affine rank {r})", r
        )
    rows = [_chart(v) + [Fraction(1)] for v in verts]
    facets = set()
    for ray in cone_extreme_rays(rows):
        *b, beta = ray
        if beta <= 0:
            raise DegeneratePolytopeError("origin is not interior to the polytope", r)
        chart_normal = [Fraction(-x, beta) for x in b]
        facets.add(_ambient_normal(chart_normal, n))
    return HRepresentation(tuple(sorted(facets)))


def vertex_facet_incidence(V: VRepresentation, H: HRepresentation) -> Incidence:
    idx = V.vertex_indices
    coords = tuple(V.points[i].coords for i in idx)
    rows = tuple(tuple(dot(a, v) == 1 for a in H.facets) for v in coords)
    return Incidence(idx, coords, rows)


def _closure(facet_masks: Sequence[int], nverts: int) -> set[int]:
    full = (1 << nverts) - 1
    faces = {full}
    frontier = list(dict.fromkeys(facet_masks))
    faces.update(frontier)
    while frontier:
        nxt = []
        for face in frontier:
            for f in facet_masks:
                meet = face & f
                if meet not in faces:
                    faces.add(meet)
                    nxt.append(meet)
        frontier = nxt
    faces.add(0)
    return faces


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def build_face_lattice(incidence: Incidence, use_coords: bool = True) -> FaceLattice:
    """All faces as intersections of facet vertex sets, plus the empty and full faces.

    Dimensions come from the affine rank of the face's vertices, or, with
    ``use_coords=False``, purely combinatorially as the height in the lattice.
    """
    nverts = incidence.num_vertices
    faces = _closure(incidence.facet_sets(), nverts)
    if use_coords:
        coords = incidence.vertex_coords
        dims = {m: (affine_rank([coords[i] for i in _bits(m)]) if m else -1) for m in faces}
    else:
        dims = {}
        for m in sorted(faces, key=lambda m: bin(m).count("1")):
            subs = [dims[s] for s in dims if s != m and s & m == s]
            dims[m] = max(subs) + 1 if subs else -1
    top = dims[(1 << nverts) - 1]
    ordered = sorted(((_bits(m), dims[m]) for m in faces), key=lambda f: (f[1], f[0]))
    return FaceLattice(tuple(ordered), top)


def f_vector(lattice: FaceLattice) -> FVector:
    counts = lattice.level_counts()
    return FVector(tuple(counts.get(k, 0) for k in range(lattice.dim)))


def facet_size_histogram(incidence: Incidence) -> dict[int, int]:
    hist: dict[int, int] = {}
    for mask in incidence.facet_sets():
        size = bin(mask).count("1")
        hist[size] = hist.get(size, 0) + 1
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class PolytopeData:
    """Everything the pipeline computes for one distance matrix."""

    vrep: VRepresentation
    hrep: HRepresentation
    incidence: Incidence
    lattice: FaceLattice

    @property
    def fvector(self) -> FVector:
        return f_vector(self.lattice)


def analyze(D: DistanceMatrix) -> PolytopeData:
    V = build_fundamental_polytope(D)
    H = enumerate_facets(V)
    inc = vertex_facet_incidence(V, H)
    return PolytopeData(V, H, inc, build_face_lattice(inc))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _vec(v: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in v]


def vrep_to_json(V: VRepresentation) -> dict:
    return {
        "ambient_dim": V.ambient_dim,
        "points": [
            {"from": p.source, "to": p.target, "coords": _vec(p.coords), "is_vertex": flag}
            for p, flag in zip(V.points, V.is_vertex)
        ],
    }


def hrep_to_json(H: HRepresentation) -> dict:
    return {"rhs": "1", "facets": [_vec(a) for a in H.facets]}


def lattice_to_json(lattice: FaceLattice, incidence: Incidence) -> dict:
    """Faces listed by point indices (positions in the V-representation)."""
    faces = []
    for verts, k in lattice.faces:
        faces.append({"dim": k, "points": sorted(incidence.vertex_indices[i] for i in verts)})
    faces.sort(key=lambda f: (f["dim"], f["points"]))
    return {"dim": lattice.dim, "faces": faces}
