import random

import pytest
import sympy

from chaingeo.errors import (
    DivisionByZero,
    NonPrimeCharacteristic,
    ReducibleModulus,
    UnsupportedOrder,
)
from chaingeo.field import _DEFAULT_MODULUS, Field, field_make

SMALL_ORDERS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2),
                (2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6)]


def _sympy_irreducible(coeffs, p):
    x = sympy.symbols("x")
    expr = sum(c * x**i for i, c in enumerate(coeffs))
    factors = sympy.factor_list(expr, modulus=p)[1]
    return (len(factors) == 1 and factors[0][1] == 1
            and sympy.degree(factors[0][0], x) == len(coeffs) - 1)


def test_default_moduli_are_lexicographically_least():
    # independent oracle: sympy factorization, scanning the non-leading
    # coefficient vectors in increasing base-p integer order
    for q, mod in _DEFAULT_MODULUS.items():
        p = sympy.primefactors(q)[0]
        e = len(mod) - 1
        assert q == p**e
        assert _sympy_irreducible(mod, p)
        value = sum(c * p**i for i, c in enumerate(mod[:-1]))
        for smaller in range(value):
            tail, x = [], smaller
            for _ in range(e):
                tail.append(x % p)
                x //= p
            assert not _sympy_irreducible(tail + [1], p), (q, smaller)


def test_characteristic_two_addition():
    F = field_make(2, 1)
    assert F.add(1, 1) == 0


def test_gf4_hand_reduction():
    # t*t reduces to t+1 modulo t^2+t+1; indices: t=2, t+1=3
    F = field_make(2, 2, [1, 1, 1])
    assert F.mul(2, 2) == 3
    assert F.inv(2) == 3          # t(t+1) = t^2+t = 1
    assert F.inv(1) == 1


def test_gf3_inverse():
    F = field_make(3, 1)
    assert F.inv(2) == 2          # 2*2 = 4 = 1 mod 3


def test_gf9_default_modulus():
    # default modulus is t^2+1, so t*t = -1 = 2
    F = field_make(3, 2)
    assert F.modulus == (1, 0, 1)
    assert F.mul(3, 3) == 2


def test_modulus_override():
    # t^2+2t+2 is irreducible over GF(3); t*t = -2t-2 = t+1 -> index 4
    F = field_make(3, 2, [2, 2, 1])
    assert F.mul(3, 3) == F.from_coords((1, 1))


def test_rejects_non_prime_characteristic():
    with pytest.raises(NonPrimeCharacteristic):
        field_make(4, 1)
    with pytest.raises(NonPrimeCharacteristic):
        field_make(6, 1)


def test_rejects_reducible_modulus():
    with pytest.raises(ReducibleModulus):
        field_make(2, 2, [1, 0, 1])      # t^2+1 = (t+1)^2
    with pytest.raises(ReducibleModulus):
        field_make(3, 2, [0, 0, 1])      # t^2
    with pytest.raises(ReducibleModulus):
        field_make(2, 3, [1, 1, 1])      # wrong degree


def test_rejects_unsupported_order():
    with pytest.raises(UnsupportedOrder):
        field_make(2, 8)                 # q = 256 > 128, no modulus given
    with pytest.raises(UnsupportedOrder):
        field_make(2, 0)


def test_division_by_zero():
    F = field_make(2, 2)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        F.div(1, 0)


@pytest.mark.parametrize("p,e", SMALL_ORDERS)
def test_inverses_exhaustive(p, e):
    F = field_make(p, e)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1),
                                 (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)])
def test_distributivity_exhaustive(p, e):
    F = field_make(p, e)
    for a in F.elements():
        for b in F.elements():
            for c in F.elements():
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p,e", [(5, 2), (3, 3), (2, 5), (7, 2), (2, 6),
                                 (3, 4), (11, 2), (5, 3), (2, 7)])
def test_distributivity_random(p, e):
    F = field_make(p, e)
    rng = random.Random(20240 + F.q)
    for _ in range(300):
        a, b, c = (rng.randrange(F.q) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.add(b, c), a) == F.add(F.mul(b, a), F.mul(c, a))


@pytest.mark.parametrize("p,e", SMALL_ORDERS)
def test_multiplicative_group_cyclic(p, e):
    F = field_make(p, e)
    g, x, order = F.generator, 1, 0
    while True:
        x = F.mul(x, g)
        order += 1
        if x == 1:
            break
    assert order == F.q - 1


@pytest.mark.parametrize("p,e", SMALL_ORDERS)
def test_add_sub_neg_consistency(p, e):
    F = field_make(p, e)
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        for b in F.elements():
            assert F.sub(F.add(a, b), b) == a


def test_coords_roundtrip():
    F = field_make(3, 3)
    for a in F.elements():
        assert F.from_coords(F.coords(a)) == a
