"""Combinatorial types: canonical incidence certificates, similarity, symmetries.

The vertex-facet incidence of a polytope determines its whole face lattice
(every face is the intersection of the facets containing it), so a canonical
form of the incidence bipartite graph is a canonical form of the face poset.

Canonization is individualization-refinement: colour refinement on the
bipartite graph, then branching over the first non-singleton cell until the
colouring is discrete. Each leaf orders vertices and facets and yields a bit
matrix; the certificate is the lexicographically smallest one. Without pruning
the leaves giving that minimum form one orbit of the automorphism group, which
acts freely on leaves, so their number is the automorphism group order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

from .metric_space import DistanceMatrix, require_metric
from .polytope import Incidence, PolytopeData, analyze

CERTIFICATE_VERSION = "v1"


@dataclass(frozen=True)
class CombinatorialType:
    certificate: str
    num_vertices: int
    num_facets: int
    automorphism_order: int

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.certificate.encode()).hexdigest()

    def canonical_rows(self) -> list[list[bool]]:
        return decode_certificate(self.certificate)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CombinatorialType):
            return NotImplemented
        return self.certificate == other.certificate

    def __hash__(self) -> int:
        return hash(self.certificate)


def encode_certificate(rows: Sequence[Sequence[bool]]) -> str:
    nv = len(rows)
    nf = len(rows[0]) if rows else 0
    bits = "".join("1" if b else "0" for row in rows for b in row)
    bits += "0" * (-len(bits) % 4)
    hexed = "".join(format(int(bits[i : i + 4], 2), "x") for i in range(0, len(bits), 4))
    return f"{CERTIFICATE_VERSION}:{nv}:{nf}:{hexed}"


def decode_certificate(cert: str) -> list[list[bool]]:
    version, nv, nf, hexed = cert.split(":")
    if version != CERTIFICATE_VERSION:
        raise ValueError(f"unsupported certificate version {version!r}")
    nv, nf = int(nv), int(nf)
    bits = "".join(format(int(h, 16), "04b") for h in hexed)
    return [[bits[i * nf + j] == "1" for j in range(nf)] for i in range(nv)]


def _refine(colors: list[int], adj: list[list[int]]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[e], tuple(sorted(colors[x] for x in adj[e]))) for e in range(len(colors))]
        ranking = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
        if len(ranking) == ncolors:
            return colors
        ncolors = len(ranking)


def _canonize(rows: Sequence[Sequence[bool]]) -> tuple[int, int]:
    """Return (smallest leaf matrix as an int, number of leaves attaining it)."""
    nv = len(rows)
    nf = len(rows[0]) if rows else 0
    size = nv + nf
    adj: list[list[int]] = [[] for _ in range(size)]
    for i, row in enumerate(rows):
        for j, on in enumerate(row):
            if on:
                adj[i].append(nv + j)
                adj[nv + j].append(i)

    best: list = [None, 0]

    def leaf_value(colors: list[int]) -> int:
        # vertices occupy colours 0..nv-1 and facets nv..size-1
        top = nv * nf - 1
        value = 0
        for i in range(nv):
            for e in adj[i]:
                value |= 1 << (top - colors[i] * nf - (colors[e] - nv))
        return value

    def search(colors: list[int]) -> None:
        colors = _refine(colors, adj)
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min((c for c, k in counts.items() if k > 1), default=None)
        if target is None:
            # most significant bit = first row, first column; smaller int = lexicographically smaller
            value = leaf_value(colors)
            if best[0] is None or value < best[0]:
                best[0], best[1] = value, 1
            elif value == best[0]:
                best[1] += 1
            return
        for e in [e for e in range(size) if colors[e] == target]:
            branched = [2 * c + 1 for c in colors]
            branched[e] = 2 * target
            search(branched)

    search([0] * nv + [1] * nf)
    return best[0], best[1]


def canonical_certificate(incidence: Incidence | Sequence[Sequence[bool]]) -> CombinatorialType:
    """Canonical form of a vertex-facet incidence, invariant under row and column permutations."""
    rows = incidence.rows if isinstance(incidence, Incidence) else incidence
    rows = [list(map(bool, r)) for r in rows]
    nv = len(rows)
    nf = len(rows[0]) if rows else 0
    value, order = _canonize(rows)
    canon = [[bool(value >> ((nv - 1 - i) * nf + (nf - 1 - j)) & 1) for j in range(nf)] for i in range(nv)]
    return CombinatorialType(encode_certificate(canon), nv, nf, order)


def combinatorial_type(D: DistanceMatrix) -> CombinatorialType:
    return canonical_certificate(analyze(D).incidence)


def is_similar(D1: DistanceMatrix, D2: DistanceMatrix) -> bool:
    """Whether two metric spaces have combinatorially equivalent fundamental polytopes."""
    require_metric(D1)
    require_metric(D2)
    if D1.n != D2.n:
        return False
    return combinatorial_type(D1) == combinatorial_type(D2)


def _isometries(D: DistanceMatrix) -> list[tuple[int, ...]]:
    n, d = D.n, D.d
    found = []
    image: list[int] = []
    used = [False] * n

    def extend() -> None:
        i = len(image)
        if i == n:
            found.append(tuple(image))
            return
        for p in range(n):
            if used[p] or any(d[p][image[k]] != d[i][k] for k in range(i)):
                continue
            used[p] = True
            image.append(p)
            extend()
            image.pop()
            used[p] = False

    extend()
    return found


def _preserves_incidence(perm: Sequence[int], data: PolytopeData) -> bool:
    points = data.vrep.points
    label_index = {p.label: i for i, p in enumerate(points)}
    vpos = {pi: k for k, pi in enumerate(data.incidence.vertex_indices)}
    facets = data.hrep.facets
    facet_index = {a: j for j, a in enumerate(facets)}
    n = len(perm)
    # coordinates move as x'_{perm[i]} = x_i
    vertex_map = {}
    for k, pi in enumerate(data.incidence.vertex_indices):
        src, dst = points[pi].label
        image = label_index[(perm[src], perm[dst])]
        if image not in vpos:
            return False
        vertex_map[k] = vpos[image]
    facet_map = {}
    for j, a in enumerate(facets):
        moved = [None] * n
        for i in range(n):
            moved[perm[i]] = a[i]
        if tuple(moved) not in facet_index:
            return False
        facet_map[j] = facet_index[tuple(moved)]
    rows = data.incidence.rows
    return all(
        rows[k][j] == rows[vertex_map[k]][facet_map[j]] for k in range(len(rows)) for j in range(len(facets))
    )


def isometry_induced_automorphisms(D: DistanceMatrix, data: PolytopeData | None = None) -> list[tuple[int, ...]]:
    """All distance-preserving point permutations, as tuples ``perm[i] = image of i``.

    Each one is checked to permute the vertices and facets of the fundamental
    polytope compatibly with the incidence.
    """
    require_metric(D)
    if data is None:
        data = analyze(D)
    perms = _isometries(D)
    for perm in perms:
        if not _preserves_incidence(perm, data):
            raise RuntimeError(f"isometry {perm} does not preserve the incidence")
    return perms
