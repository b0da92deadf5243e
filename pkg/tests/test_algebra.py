import io
import random

import pytest

from chaingeo.algebra import (
    Algebra,
    RingSpec,
    from_spec,
    parse_ring_spec,
    read_structure_file,
    write_structure_file,
)
from chaingeo.errors import (
    BadSpec,
    NoUnity,
    NonAssociative,
    NotAUnit,
    NotLocal,
)
from chaingeo.field import Field

from conftest import ALL_RINGS


def matrix_ring_2x2(p=2):
    """M_2(GF(p)) from its structure constants; the standard basis E_ij
    multiplies as E_ij E_kl = [j==k] E_il."""
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    prods = [[None] * 4 for _ in range(4)]
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            v = [0] * 4
            if j == k:
                v[idx[(i, l)]] = 1
            prods[a][b] = tuple(v)
    return Algebra(Field(p, 1), 4, prods, (1, 0, 0, 1), kind="file",
                   label=f"M2(gf({p}))")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def test_product_ring_units():
    A = from_spec("gf(2) x gf(2)")
    assert (A.dim, A.r_star, A.is_local) == (2, 1, False)
    # the only unit is (1,1)
    assert A.units == (A.one,)


def test_truncated_ring():
    A = from_spec("gf(2)[t]/(t^2)")
    assert (A.dim, A.is_local, A.delta, A.r_star) == (2, True, 1, 2)
    t = A.basis_index(1)
    assert sorted(A.units) == sorted([A.one, A.add(A.one, t)])


def test_field_extension_is_local_with_zero_radical():
    A = from_spec("gf(4)/gf(2)")
    assert (A.dim, A.is_local, A.delta, A.r_star) == (2, True, 0, 3)


def test_orthogonal_idempotents():
    A = from_spec("gf(3) x gf(3)")
    e0, e1 = A.basis_index(0), A.basis_index(1)
    assert A.mul(e0, e1) == A.zero
    assert A.mul(e1, e0) == A.zero


def test_truncation_kills_t_squared():
    A = from_spec("gf(5)[t]/(t^2)")
    t = A.basis_index(1)
    assert A.mul(t, t) == A.zero


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_one_is_neutral(spec, geom):
    A = geom(spec).algebra
    for a in A.elements():
        assert A.mul(A.one, a) == a
        assert A.mul(a, A.one) == a


# ---------------------------------------------------------------------------
# units and inverses
# ---------------------------------------------------------------------------

def test_zero_divisor_is_not_a_unit():
    A = from_spec("gf(2) x gf(2)")
    assert not A.is_unit(A.basis_index(0))
    assert not A.is_unit(A.zero)


def test_unit_inverse_in_truncated_ring():
    A = from_spec("gf(2)[t]/(t^2)")
    u = A.add(A.one, A.basis_index(1))     # 1 + t, self-inverse
    assert A.is_unit(u)
    assert A.inv(u) == u


def test_inv_raises_for_nonunit():
    A = from_spec("gf(2) x gf(2)")
    with pytest.raises(NotAUnit):
        A.inv(A.basis_index(0))


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_unit_partition(spec, geom):
    A = geom(spec).algebra
    assert A.r_star + len(A.nonunits) == A.size
    for a in A.elements():
        assert A.is_unit(a) != (a in set(A.nonunits))
    for u in A.units:
        assert A.mul(u, A.inv(u)) == A.one
        assert A.mul(A.inv(u), u) == A.one


# ---------------------------------------------------------------------------
# locality and the residue field
# ---------------------------------------------------------------------------

def test_classify_local_examples():
    assert from_spec("gf(2)[t]/(t^3)").classify_local() == (True, 2)
    assert from_spec("gf(2) x gf(2)").classify_local() == (False, None)
    assert from_spec("gf(9)/gf(3)").classify_local() == (True, 0)


def test_local_nonunit_count_is_power_of_q():
    for spec in ["gf(2)[t]/(t^2)", "gf(3)[t]/(t^2)", "gf(2)[t]/(t^3)",
                 "gf(4)[t]/(t^2) over gf(2)"]:
        A = from_spec(spec)
        assert A.is_local
        assert len(A.nonunits) == A.q ** A.delta


def test_residue_field_of_truncated_ring():
    A = from_spec("gf(2)[t]/(t^2)")
    F, proj = A.residue_field()
    assert F.size == 2
    # elements encode as a + b*t -> index a + 2b; the projection drops b
    for a in range(2):
        for b in range(2):
            assert proj(A.encode((a, b))) == a


def test_residue_field_of_bivariate_local_ring():
    A = from_spec("gf(4)[t]/(t^2) over gf(2)")
    F, proj = A.residue_field()
    assert F.size == 4
    assert F.r_star == 3
    assert proj(A.one) == F.one


def test_residue_of_a_field_is_itself():
    A = from_spec("gf(4)/gf(2)")
    F, proj = A.residue_field()
    assert F.size == A.size
    for a in A.elements():
        assert proj(a) == a


def test_residue_field_requires_local():
    with pytest.raises(NotLocal):
        from_spec("gf(2) x gf(2)").residue_field()


# ---------------------------------------------------------------------------
# normalizer
# ---------------------------------------------------------------------------

def test_normalizer_examples():
    assert from_spec("gf(4)/gf(2)").normalizer_order() == 3
    assert from_spec("gf(2)[t]/(t^2)").normalizer_order() == 2


@pytest.mark.parametrize("spec", ALL_RINGS)
def test_lambda3_is_positive_integer(spec, geom):
    A = geom(spec).algebra
    # all built-in families are commutative, so conjugation is trivial
    assert A.normalizer_order() == A.r_star
    assert A.lambda3() == 1


# ---------------------------------------------------------------------------
# structure-constant files
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", ["gf(2)[t]/(t^2)", "gf(9)/gf(3)",
                                  "gf(3) x gf(3)", "gf(4)[t]/(t^2) over gf(2)"])
def test_structure_file_roundtrip(spec):
    A = from_spec(spec)
    buf = io.StringIO()
    write_structure_file(A, buf)
    B = read_structure_file(buf.getvalue())
    assert (B.dim, B.q, B.r_star, B.is_local, B.delta) == \
           (A.dim, A.q, A.r_star, A.is_local, A.delta)
    rng = random.Random(7)
    for _ in range(50):
        a, b = rng.randrange(A.size), rng.randrange(A.size)
        assert A.mul(a, b) == B.mul(a, b)


def test_structure_file_malformed():
    with pytest.raises(BadSpec):
        read_structure_file("")
    with pytest.raises(BadSpec):
        read_structure_file("2 1 2\n1 0\n1 0\n0 1\n")          # too few rows
    with pytest.raises(BadSpec):
        read_structure_file("2 1 1\n1\nx\n")                   # non-integer
    with pytest.raises(BadSpec):
        read_structure_file("2 1 1\n1\n3\n")                   # digit out of range
    with pytest.raises(BadSpec):
        read_structure_file("2 2 1\n1\n1\n")                   # missing modulus


def test_nonassociative_table_rejected():
    # e1*e1 = e2 but e1*e2 = 1 while e2*e1 = 0
    F = Field(2, 1)
    prods = [[(1, 0, 0), (0, 1, 0), (0, 0, 1)],
             [(0, 1, 0), (0, 0, 1), (1, 0, 0)],
             [(0, 0, 1), (0, 0, 0), (0, 0, 0)]]
    with pytest.raises(NonAssociative):
        Algebra(F, 3, prods, (1, 0, 0))


def test_wrong_unit_rejected():
    F = Field(2, 1)
    prods = [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]
    with pytest.raises(NoUnity):
        Algebra(F, 2, prods, (1, 0))       # (1,0) is not the unit of K x K


def test_matrix_ring_is_a_valid_noncommutative_input():
    A = matrix_ring_2x2(2)
    assert A.r_star == 6                   # |GL_2(GF(2))|
    assert not A.is_local
    assert A.lambda3() == 1                # scalars are central
    e12, e21 = A.basis_index(1), A.basis_index(2)
    assert A.mul(e12, e21) != A.mul(e21, e12)
    buf = io.StringIO()
    write_structure_file(A, buf)
    assert read_structure_file(buf.getvalue()).r_star == 6


# ---------------------------------------------------------------------------
# ring-spec grammar
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("text,canonical", [
    ("gf(7)", "gf(7)"),
    ("GF( 4 )", "gf(4)"),
    ("gf(4;1,1,1)", "gf(4;1,1,1)"),
    ("gf(4)/gf(2)", "gf(4)/gf(2)"),
    ("gf(4) over gf(2)", "gf(4)/gf(2)"),
    ("gf(2)x gf(2)", "gf(2) x gf(2)"),
    ("gf(3) X gf(3)", "gf(3) x gf(3)"),
    ("gf(2)[t]/(t^3)", "gf(2)[t]/(t^3)"),
    ("gf(4)[t]/(t^2) over gf(2)", "gf(4)[t]/(t^2) over gf(2)"),
    ("gf(4)[t]/(t^2) over gf(4)", "gf(4)[t]/(t^2)"),
])
def test_spec_canonical_roundtrip(text, canonical):
    spec = parse_ring_spec(text)
    assert spec.canonical() == canonical
    assert parse_ring_spec(spec.canonical()) == spec


def test_spec_rejects_garbage():
    for bad in ["", "gf(6)", "gf(4)xgf(2)", "gf(2) x gf(3)", "gf[4]",
                "gf(8)/gf(4)", "gf(2)[t]/(t^0)", "gf(1)",
                "gf(2) x gf(2) over gf(2)", "gf(4)/gf(2) over gf(2)",
                "gf(3;1,1) x gf(3)"]:
        with pytest.raises(BadSpec):
            parse_ring_spec(bad).build()


def test_file_spec_roundtrip(tmp_path):
    A = from_spec("gf(2)[t]/(t^2)")
    path = tmp_path / "ring.txt"
    with open(path, "w") as fh:
        write_structure_file(A, fh)
    spec = parse_ring_spec(f"file:{path}")
    B = spec.build()
    assert spec.canonical() == f"file:{path}"
    assert (B.dim, B.r_star) == (2, 2)
