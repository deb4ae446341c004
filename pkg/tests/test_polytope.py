import itertools
import json
from fractions import Fraction

import pytest

from krpolytope.exact_math import dot
from krpolytope.metric_space import DistanceMatrix, random_metric, random_symmetric_positive
from krpolytope.polytope import (
    DegeneratePolytopeError,
    VRepresentation,
    analyze,
    build_face_lattice,
    build_fundamental_polytope,
    cone_extreme_rays,
    enumerate_facets,
    f_vector,
    facet_size_histogram,
    hrep_to_json,
    lattice_to_json,
    root_polytope,
    vertex_facet_incidence,
    vrep_to_json,
)

from oracles import brute_force_facets


def degenerate_triangle():
    return DistanceMatrix([[0, 1, 1], [1, 0, 2], [1, 2, 0]])


def test_unit_n3_all_vertices():
    V = build_fundamental_polytope(DistanceMatrix.unit(3))
    assert len(V.points) == 6 and all(V.is_vertex)


def test_degenerate_triangle_vertices():
    V = build_fundamental_polytope(degenerate_triangle())
    missing = {p.label for p, flag in zip(V.points, V.is_vertex) if not flag}
    assert missing == {(1, 2), (2, 1)}
    assert sum(V.is_vertex) == 4


def test_unit_n4_all_vertices():
    V = root_polytope(4)
    assert len(V.points) == 12 and all(V.is_vertex)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_root_polytope_is_minkowski_difference(n):
    # vertices are exactly the pairwise differences of simplex vertices 1_x - 1_y
    V = root_polytope(n)
    diffs = {
        tuple(Fraction(int(k == x) - int(k == y)) for k in range(n))
        for x in range(n)
        for y in range(n)
        if x != y
    }
    assert set(V.vertices) == diffs
    assert V == build_fundamental_polytope(DistanceMatrix.unit(n))


def test_root_polytope_n3_coordinates():
    assert sorted(root_polytope(3).vertices) == sorted(
        tuple(map(Fraction, v)) for v in [(1, -1, 0), (1, 0, -1), (0, 1, -1), (-1, 1, 0), (-1, 0, 1), (0, -1, 1)]
    )


def test_root_polytope_rejects_small_n():
    with pytest.raises(ValueError):
        root_polytope(1)


# ---------------------------------------------------------------------------
# facets
# ---------------------------------------------------------------------------


def test_hexagon_facets():
    H = enumerate_facets(root_polytope(3))
    assert len(H.facets) == 6
    assert list(H.facets) == sorted(H.facets)


def test_cuboctahedron_facets():
    P = analyze(DistanceMatrix.unit(4))
    assert len(P.hrep.facets) == 14
    assert facet_size_histogram(P.incidence) == {3: 8, 4: 6}


@pytest.mark.parametrize("seed", range(20))
def test_facets_properties(seed):
    n = 2 + seed % 5
    D = random_metric(n, seed, 50)
    P = analyze(D)
    facets = set(P.hrep.facets)
    for a in facets:
        assert sum(a) == 0
        assert tuple(-x for x in a) in facets
    # no two facets point in the same direction (a and -a are distinct facets)
    for a, b in itertools.combinations(facets, 2):
        ratios = {x / y for x, y in zip(a, b) if y != 0}
        zeros_match = all((x == 0) == (y == 0) for x, y in zip(a, b))
        assert not (zeros_match and len(ratios) == 1 and ratios.pop() > 0)
    # polarity: vertices reach 1, every point stays <= 1
    for p, is_v in zip(P.vrep.points, P.vrep.is_vertex):
        top = max(dot(a, p.coords) for a in facets)
        assert top <= 1
        if is_v:
            assert top == 1


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("seed", range(8))
def test_double_description_matches_brute_force(n, seed):
    D = random_metric(n, seed, 12) if seed % 2 else random_symmetric_positive(n, seed, 6)
    V = build_fundamental_polytope(D)
    H = enumerate_facets(V)
    assert set(H.facets) == brute_force_facets([p.coords for p in V.points])


def test_double_description_brute_force_unit():
    for n in (2, 3, 4):
        V = root_polytope(n)
        assert set(enumerate_facets(V).facets) == brute_force_facets(V.vertices)


def test_enumerate_facets_rejects_lower_dimensional():
    pts = build_fundamental_polytope(DistanceMatrix.unit(3)).points
    flat = VRepresentation(3, (pts[0], pts[2]), (True, True))  # +-(1,-1,0): a segment
    with pytest.raises(DegeneratePolytopeError) as info:
        enumerate_facets(flat)
    assert info.value.affine_rank == 1


def test_cone_extreme_rays_orthant():
    rays = cone_extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    assert sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_cone_extreme_rays_square_pyramid():
    # {c : c . (+-1, +-1, 1) >= 0} is a square cone with 4 extreme rays
    rows = [[sx, sy, 1] for sx in (1, -1) for sy in (1, -1)]
    assert len(cone_extreme_rays(rows)) == 4


# ---------------------------------------------------------------------------
# incidence and lattice
# ---------------------------------------------------------------------------


def test_hexagon_incidence():
    P = analyze(DistanceMatrix.unit(3))
    rows = P.incidence.rows
    assert all(sum(r) == 2 for r in rows)
    assert all(sum(col) == 2 for col in zip(*rows))


@pytest.mark.parametrize("seed", range(6))
def test_incidence_symmetry_and_counts(seed):
    D = random_metric(4, seed, 30)
    P = analyze(D)
    d = D.n - 1
    inc = P.incidence
    coords = list(inc.vertex_coords)
    facets = list(P.hrep.facets)
    for i, v in enumerate(coords):
        assert sum(inc.rows[i]) >= d
        neg_v = coords.index(tuple(-x for x in v))
        for j, a in enumerate(facets):
            neg_a = facets.index(tuple(-x for x in a))
            assert inc.rows[i][j] == inc.rows[neg_v][neg_a]
    for j in range(inc.num_facets):
        on = [coords[i] for i in range(inc.num_vertices) if inc.rows[i][j]]
        assert len(on) >= d


def test_hexagon_lattice():
    P = analyze(DistanceMatrix.unit(3))
    assert len(P.lattice.faces) == 14
    assert P.lattice.level_counts() == {-1: 1, 0: 6, 1: 6, 2: 1}


def test_cuboctahedron_lattice():
    P = analyze(DistanceMatrix.unit(4))
    assert P.lattice.level_counts() == {-1: 1, 0: 12, 1: 24, 2: 14, 3: 1}


def test_segment():
    P = analyze(DistanceMatrix([[0, 5], [5, 0]]))
    assert f_vector(P.lattice).counts == (2,)
    assert str(P.fvector) == "(2)"


@pytest.mark.parametrize(
    "n, expected", [(2, (2,)), (3, (6, 6)), (4, (12, 24, 14)), (5, (20, 60, 70, 30))]
)
def test_root_f_vectors(n, expected):
    assert analyze(DistanceMatrix.unit(n)).fvector.counts == expected


def test_degenerate_triangle_f_vector():
    assert analyze(degenerate_triangle()).fvector.counts == (4, 4)


@pytest.mark.parametrize("seed", range(15))
def test_euler_relation(seed):
    n = 2 + seed % 5
    P = analyze(random_metric(n, seed, 40))
    d = P.lattice.dim
    assert d == n - 1
    assert sum((-1) ** i * f for i, f in enumerate(P.fvector.counts)) == 1 - (-1) ** d


@pytest.mark.parametrize("seed", range(8))
def test_lattice_dims_combinatorial_equal_geometric(seed):
    P = analyze(random_metric(3 + seed % 3, seed, 20))
    assert build_face_lattice(P.incidence, use_coords=False) == P.lattice


@pytest.mark.parametrize("seed", range(4))
def test_lattice_is_closed_under_intersection(seed):
    P = analyze(random_metric(4, seed, 20))
    faces = {frozenset(f) for f, _ in P.lattice.faces}
    for a, b in itertools.combinations(faces, 2):
        assert a & b in faces


def test_json_emission_is_sorted_and_exact():
    P = analyze(degenerate_triangle())
    v = vrep_to_json(P.vrep)
    assert v["points"][3] == {"from": 1, "to": 2, "coords": ["0", "1/2", "-1/2"], "is_vertex": False}
    h = hrep_to_json(P.hrep)
    assert h["facets"] == sorted(h["facets"], key=lambda a: [Fraction(x) for x in a])
    lat = lattice_to_json(P.lattice, P.incidence)
    assert lat["faces"][0] == {"dim": -1, "points": []}
    assert lat["faces"][-1]["dim"] == 2
    assert json.dumps(lat, sort_keys=True) == json.dumps(lattice_to_json(P.lattice, P.incidence), sort_keys=True)
