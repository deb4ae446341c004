"""End-to-end acceptance checks, one group per criterion.

Every comparison is exact. The conftest hook prints a PASS/FAIL line per criterion.
"""

import itertools
import json
import math
import random
from fractions import Fraction

import pytest

from krpolytope.census import SamplerParams, run_census, write_registry_jsonl, write_snapshot
from krpolytope.combinatorics import combinatorial_type, isometry_induced_automorphisms
from krpolytope.exact_math import dot
from krpolytope.kr_norm import gauge_norm, transport_norm, unit_vector_difference
from krpolytope.metric_space import (
    DistanceMatrix,
    euclidean_type_test,
    extremality_metric_test,
    random_metric,
    random_symmetric_positive,
    validate_metric,
)
from krpolytope.polytope import (
    analyze,
    build_fundamental_polytope,
    enumerate_facets,
    facet_size_histogram,
    root_polytope,
)

from oracles import brute_force_facets, cayley_menger, cayley_menger_ok

STAR = DistanceMatrix([[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]])


def random_v(rng, n, bound=9):
    head = [Fraction(rng.randint(-bound, bound), rng.randint(1, 6)) for _ in range(n - 1)]
    return head + [-sum(head)]


# 1 ---------------------------------------------------------------------------


def test_criterion_01_hexagon():
    D = DistanceMatrix.unit(3)
    P = analyze(D)
    assert P.fvector.counts == (6, 6)
    assert len(P.vrep.points) == 6 and all(P.vrep.is_vertex)
    assert combinatorial_type(D).automorphism_order == 12


# 2 ---------------------------------------------------------------------------


def test_criterion_02_cuboctahedron():
    P = analyze(DistanceMatrix.unit(4))
    assert P.fvector.counts == (12, 24, 14)
    assert facet_size_histogram(P.incidence) == {3: 8, 4: 6}


# 3 ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_03_weyl_containment(n):
    D = DistanceMatrix.unit(n)
    P = analyze(D)
    perms = isometry_induced_automorphisms(D, P)
    assert len(set(perms)) == len(perms) == math.factorial(n)
    # check incidence preservation directly: coordinates move with the permutation
    verts = set(P.incidence.vertex_coords)
    facets = set(P.hrep.facets)
    for perm in perms:
        def act(x):
            out = [None] * n
            for i, xi in enumerate(x):
                out[perm[i]] = xi
            return tuple(out)

        assert {act(v) for v in verts} == verts
        assert {act(a) for a in facets} == facets
        for v in verts:
            for a in facets:
                assert (dot(a, v) == 1) == (dot(act(a), act(v)) == 1)


# 4 ---------------------------------------------------------------------------


def _perturbed(D, rng):
    """Break one triangle inequality by a small rational margin."""
    n = D.n
    i, j, k = rng.sample(range(n), 3)
    rows = [list(r) for r in D.d]
    rows[i][j] = rows[j][i] = rows[i][k] + rows[k][j] + Fraction(1, 1000)
    return DistanceMatrix(rows)


def _criterion_4_corpus():
    rng = random.Random(2024)
    corpus = []
    for idx in range(520):
        n = 3 + idx % 3
        kind = idx % 4
        if kind == 0:
            D = random_metric(n, idx, 20)
        elif kind == 1:
            D = random_metric(n, idx, 20, strict=True)
        elif kind == 2:
            D = _perturbed(random_metric(n, idx, 20), rng)
        else:
            D = random_symmetric_positive(n, idx, 8)
        corpus.append(D)
    return corpus


def test_criterion_04_extremality_equivalence():
    corpus = _criterion_4_corpus()
    assert len(corpus) >= 500
    mismatches = [D for D in corpus if validate_metric(D).is_valid != extremality_metric_test(D)]
    assert mismatches == []
    # the mixture really contains both sides
    valid = sum(validate_metric(D).is_valid for D in corpus)
    assert 100 < valid < len(corpus) - 100


# 5 ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5])
def test_criterion_05_transport_equals_gauge(n):
    rng = random.Random(500 + n)
    checked = 0
    for seed in range(10):
        D = random_metric(n, 50 + seed, 40)
        H = analyze(D).hrep
        for _ in range(10):
            v = random_v(rng, n)
            assert transport_norm(D, v) == gauge_norm(H, v)
            checked += 1
    assert checked >= 100


# 6 ---------------------------------------------------------------------------


def test_criterion_06_extension_property():
    count = 0
    for seed in range(24):
        n = 2 + seed % 4
        D = random_metric(n, 600 + seed, 60)
        for x, y in itertools.permutations(range(n), 2):
            assert transport_norm(D, unit_vector_difference(n, x, y)) == D[x, y]
        count += 1
    assert count >= 20


# 7 ---------------------------------------------------------------------------


def test_criterion_07_unit_metric_half_l1():
    rng = random.Random(7)
    for trial in range(120):
        n = 2 + trial % 4
        v = random_v(rng, n)
        assert transport_norm(DistanceMatrix.unit(n), v) == sum(abs(x) for x in v) / 2


# 8 ---------------------------------------------------------------------------


def test_criterion_08_similarity_invariance():
    rng = random.Random(8)
    trials = 0
    for base in range(10):
        n = 3 + base % 2
        D = random_metric(n, 800 + base, 50)
        T = combinatorial_type(D)
        for _ in range(10):
            perm = list(range(n))
            rng.shuffle(perm)
            lam = Fraction(rng.randint(1, 50), rng.randint(1, 50))
            assert combinatorial_type(D.permuted(perm).scaled(lam)) == T
            trials += 1
    assert trials >= 100


# 9 ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_criterion_09_facet_oracle(n):
    spaces = [DistanceMatrix.unit(n)]
    spaces += [random_metric(n, 900 + s, 15) for s in range(4)]
    spaces += [random_symmetric_positive(n, 950 + s, 6) for s in range(3)]
    for D in spaces:
        V = build_fundamental_polytope(D)
        assert set(enumerate_facets(V).facets) == brute_force_facets([p.coords for p in V.points])
    V = root_polytope(n)
    assert set(enumerate_facets(V).facets) == brute_force_facets(V.vertices)


# 10 --------------------------------------------------------------------------


def test_criterion_10_census_determinism(tmp_path):
    params = SamplerParams(denominator_bound=100)
    blobs = []
    for k in range(2):
        reg = run_census(4, 20, 10, params)
        write_registry_jsonl(reg, tmp_path / f"r{k}.jsonl")
        write_snapshot(reg, tmp_path / f"s{k}.json")
        blobs.append(((tmp_path / f"r{k}.jsonl").read_bytes(), (tmp_path / f"s{k}.json").read_bytes()))
    assert blobs[0] == blobs[1]
    assert json.loads(blobs[0][1])["total_samples"] == 20


def test_criterion_10_census_n3_strict():
    reg = run_census(3, 100, 0, SamplerParams(denominator_bound=1000, strict=True))
    assert reg.total_samples == 100
    assert len(reg.records) == 1
    (rec,) = reg.records.values()
    assert rec.f_vector == (6, 6)
    assert rec.sample_count == 100


# 11 --------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_criterion_11_unit_metrics_embed(n):
    D = DistanceMatrix.unit(n)
    assert euclidean_type_test(D) is True
    assert cayley_menger_ok(D.d)


def test_criterion_11_star_rejected():
    assert euclidean_type_test(STAR) is False
    assert not cayley_menger_ok(STAR.d)
    assert cayley_menger(STAR.d, [0, 1, 2, 3]) < 0
