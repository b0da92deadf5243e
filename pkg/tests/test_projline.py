import random

import pytest

from chaingeo import from_spec, projline
from chaingeo.errors import NotLocal

from conftest import ALL_RINGS, LOCAL_RINGS

# rings small enough for the quadratic admissible-pair oracle
ORACLE_RINGS = [
    "gf(4)/gf(2)",
    "gf(2) x gf(2)",
    "gf(2)[t]/(t^2)",
    "gf(2)[t]/(t^3)",
    "gf(9)/gf(3)",
    "gf(3)[t]/(t^2)",
    "gf(3) x gf(3)",
    "gf(4)[t]/(t^2) over gf(2)",
]


# ---------------------------------------------------------------------------
# point counts
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec,v", [
    ("gf(4)/gf(2)", 5),                    # q^2 + 1
    ("gf(2)[t]/(t^2)", 6),                 # q^2 + q
    ("gf(2) x gf(2)", 9),                  # (q+1)^2
    ("gf(9)/gf(3)", 10),
    ("gf(3)[t]/(t^2)", 12),
    ("gf(2)[t]/(t^3)", 12),
    ("gf(3) x gf(3)", 16),
    ("gf(4)[t]/(t^2) over gf(2)", 20),
])
def test_point_counts(spec, v, geom):
    assert geom(spec).v == v


@pytest.mark.parametrize("spec", LOCAL_RINGS)
def test_local_point_count_formula(spec, geom):
    G = geom(spec)
    A = G.algebra
    assert G.v == A.q ** A.dim + A.q ** A.delta


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_point_count_floor(spec, geom):
    G = geom(spec)
    A = G.algebra
    assert G.v >= 2 * A.q ** A.dim - A.r_star


@pytest.mark.parametrize("spec", ORACLE_RINGS)
def test_orbit_matches_bruteforce_oracle(spec, geom):
    G = geom(spec)
    assert G.points == projline.enumerate_points_bruteforce(G.algebra)


# ---------------------------------------------------------------------------
# canonical representatives
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ["gf(2)[t]/(t^2)", "gf(9)/gf(3)", "gf(3) x gf(3)"])
def test_canonicalization_idempotent_and_unit_invariant(spec, geom):
    G = geom(spec)
    A = G.algebra
    for pair in G.points:
        assert projline.canonical_pair(A, pair) == pair
        for u in A.units:
            shifted = (A.mul(u, pair[0]), A.mul(u, pair[1]))
            assert projline.canonical_pair(A, shifted) == pair


# ---------------------------------------------------------------------------
# the distant relation
# ---------------------------------------------------------------------------

def test_base_points_are_distant():
    A = from_spec("gf(2)[t]/(t^2)")
    assert projline.is_distant_pair(A, (A.one, A.zero), (A.zero, A.one))


@pytest.mark.parametrize("spec", LOCAL_RINGS)
def test_local_distance_criteria(spec, geom):
    # R(1,z) || R(1,w) for nonunits z, w;  R(x,1) never parallel to R(1,z)
    A = geom(spec).algebra
    nonunits = A.nonunits
    for z in nonunits:
        for w in nonunits:
            if z != w:
                assert not projline.is_distant_pair(A, (A.one, z), (A.one, w))
    rng = random.Random(11)
    for _ in range(20):
        x = rng.randrange(A.size)
        z = nonunits[rng.randrange(len(nonunits))]
        assert projline.is_distant_pair(A, (x, A.one), (A.one, z))


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_distant_matrix_shape(spec, geom):
    G = geom(spec)
    A = G.algebra
    for i in range(G.v):
        assert not G.distant(i, i)
        assert G.distant_masks[i].bit_count() == A.q ** A.dim
        for j in range(i + 1, G.v):
            assert G.distant(i, j) == G.distant(j, i)


# ---------------------------------------------------------------------------
# parallelism
# ---------------------------------------------------------------------------

def test_parallel_classes_of_small_truncated_ring(geom):
    G = geom("gf(2)[t]/(t^2)")
    classes = G.parallel_classes()
    assert len(classes) == 3
    assert all(len(c) == 2 for c in classes)


def test_field_classes_are_singletons(geom):
    G = geom("gf(9)/gf(3)")
    assert all(len(c) == 1 for c in G.parallel_classes())


@pytest.mark.parametrize("spec", LOCAL_RINGS)
def test_class_of_infinity_is_the_nonunit_slope_points(spec, geom):
    G = geom(spec)
    A = G.algebra
    inf = G.point_id((A.one, A.zero))
    cls = next(c for c in G.parallel_classes() if inf in c)
    expected = {G.point_id((A.one, z)) for z in A.nonunits}
    assert set(cls) == expected


@pytest.mark.parametrize("spec", LOCAL_RINGS)
def test_parallel_is_equivalence(spec, geom):
    G = geom(spec)
    cls_of = {}
    for ci, cls in enumerate(G.parallel_classes()):
        for p in cls:
            cls_of[p] = ci
    for i in range(G.v):
        for j in range(G.v):
            same = cls_of[i] == cls_of[j]
            assert same == (i == j or not G.distant(i, j))


def test_parallel_classes_refuse_nonlocal(geom):
    with pytest.raises(NotLocal):
        geom("gf(2) x gf(2)").parallel_classes()


# ---------------------------------------------------------------------------
# transitivity on distant triples
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ["gf(9)/gf(3)", "gf(2)[t]/(t^3)", "gf(3) x gf(3)"])
def test_transport_between_random_triples(spec, geom):
    G = geom(spec)
    A = G.algebra
    rng = random.Random(97)

    def random_triple():
        while True:
            i = rng.randrange(G.v)
            js = [j for j in range(G.v) if G.distant(i, j)]
            j = rng.choice(js)
            ks = [k for k in range(G.v) if G.distant(i, k) and G.distant(j, k)]
            if ks:
                return i, j, rng.choice(ks)

    for _ in range(10):
        t1, t2 = random_triple(), random_triple()
        g1 = G._solve_transport(*t1)
        g2 = G._solve_transport(*t2)
        g = projline.mat_mul(A, projline.mat_inv(A, g1), g2)
        moved = tuple(G.point_id(projline.pair_apply(A, G.points[p], g))
                      for p in t1)
        assert moved == t2
