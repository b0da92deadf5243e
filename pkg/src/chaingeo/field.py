"""Exact arithmetic in GF(q), q = p^e.

Elements are plain integers 0..q-1.  For e > 1 the integer encodes the
coefficient vector (c0, .., c_{e-1}) of the polynomial basis, low degree
first: index = sum(c_i * p^i).  Multiplication reduces modulo a monic
irreducible polynomial of degree e; a log/antilog table pair over a fixed
generator backs mul, div and inv, so after construction every operation is
a table lookup.

The default modulus for each supported order is the first irreducible monic
polynomial of its degree when the non-leading coefficient vectors are
enumerated in increasing base-p integer order (the lexicographically least
choice, frozen in _DEFAULT_MODULUS for reproducibility).
"""

from __future__ import annotations

from .errors import (
    DivisionByZero,
    NonPrimeCharacteristic,
    ReducibleModulus,
    UnsupportedOrder,
)

# Default monic irreducible moduli, low-degree coefficient first, for every
# non-prime prime power q <= 128.  Each is the lexicographically least
# irreducible monic polynomial of its degree (see polynomial helpers below;
# regenerated and asserted in the test suite).
_DEFAULT_MODULUS = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 0, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (1, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
    81: (2, 1, 0, 0, 1),
    121: (1, 0, 1),
    125: (1, 1, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
}

MAX_ORDER = 128


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomial helpers over Z_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_rem(num, den, p):
    """Remainder of num mod den; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        lead = num[-1]
        if lead:
            shift = len(num) - 1 - dd
            for i, c in enumerate(den):
                num[shift + i] = (num[shift + i] - lead * c) % p
        num.pop()
        if not num:
            num = [0]
    return poly_trim(num)


def _monic_polys(p, deg):
    # non-leading coefficient vectors in increasing base-p integer order
    for val in range(p ** deg):
        tail, x = [], val
        for _ in range(deg):
            tail.append(x % p)
            x //= p
        yield tail + [1]


def poly_is_irreducible(poly, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for dd in range(1, deg // 2 + 1):
        for den in _monic_polys(p, dd):
            if poly_rem(poly, den, p) == [0]:
                return False
    return True


def lexleast_irreducible(p, deg):
    for cand in _monic_polys(p, deg):
        if poly_is_irreducible(cand, p):
            return cand
    raise UnsupportedOrder(f"no irreducible polynomial of degree {deg} over GF({p})")


# ---------------------------------------------------------------------------
# the field proper
# ---------------------------------------------------------------------------

class Field:
    """GF(q) with dense add/mul/inv tables and a log/antilog pair."""

    def __init__(self, p: int, e: int, modulus=None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if e < 1:
            raise UnsupportedOrder(f"extension degree must be >= 1, got {e}")
        q = p ** e
        if q > MAX_ORDER:
            raise UnsupportedOrder(f"order {q} exceeds the supported maximum {MAX_ORDER}")
        self.p = p
        self.e = e
        self.q = q

        if e == 1:
            if modulus is not None:
                raise UnsupportedOrder("a modulus is only meaningful for e > 1")
            self.modulus = None
        else:
            if modulus is None:
                modulus = _DEFAULT_MODULUS[q]
            modulus = list(modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ReducibleModulus(
                    f"modulus must be monic of degree {e}, got {modulus}")
            if any(not (0 <= c < p) for c in modulus):
                raise ReducibleModulus(f"modulus coefficients must lie in [0,{p})")
            if not poly_is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = tuple(modulus)

        self._build_tables()

    # -- encoding ----------------------------------------------------------

    def coords(self, a: int):
        """Base-p digit vector (c0, .., c_{e-1}) of element index a."""
        digs = []
        for _ in range(self.e):
            digs.append(a % self.p)
            a //= self.p
        return tuple(digs)

    def from_coords(self, digs) -> int:
        val = 0
        for c in reversed(list(digs)):
            val = val * self.p + c
        return val

    # -- table construction -------------------------------------------------

    def _mul_poly(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = poly_mul_mod_p(self.coords(a), self.coords(b), self.p)
        return self.from_coords(poly_rem(prod, self.modulus, self.p) + [0] * self.e)

    def _build_tables(self):
        q, p = self.q, self.p
        self._add = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self.coords(a)
            for b in range(a, q):
                cb = self.coords(b)
                s = self.from_coords((x + y) % p for x, y in zip(ca, cb))
                self._add[a][b] = s
                self._add[b][a] = s
        self._neg = [self.from_coords((-x) % p for x in self.coords(a)) for a in range(q)]

        self._mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                m = self._mul_poly(a, b)
                self._mul[a][b] = m
                self._mul[b][a] = m

        # generator of the multiplicative group; its existence is the
        # cyclicity check
        self.generator = None
        for g in range(1, q):
            seen, x = set(), 1
            for _ in range(q - 1):
                x = self._mul[x][g]
                seen.add(x)
            if len(seen) == q - 1:
                self.generator = g
                break
        if self.generator is None:
            raise ReducibleModulus("multiplication table has no generator; not a field")

        self._log = [0] * q
        self._exp = [0] * (2 * q)
        x = 1
        for i in range(q - 1):
            self._exp[i] = x
            self._log[x] = i
            x = self._mul[x][self.generator]
        for i in range(q - 1, 2 * q):
            self._exp[i] = self._exp[i - (q - 1)]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = self._exp[(q - 1) - self._log[a]]

        if q <= 16:
            self._check_axioms()

    def _check_axioms(self):
        rng = range(self.q)
        for a in rng:
            for b in rng:
                for c in rng:
                    ab_c = self._mul[self._add[a][b]][c]
                    if ab_c != self._add[self._mul[a][c]][self._mul[b][c]]:
                        raise ReducibleModulus("distributivity failed; not a field")

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by 0")
        return self._mul[a][self._inv[b]]

    def elements(self):
        return range(self.q)

    # -- misc ----------------------------------------------------------------

    def __repr__(self):
        if self.e == 1:
            return f"Field({self.p})"
        return f"Field({self.p}^{self.e}, mod={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))


def field_make(p: int, e: int = 1, modulus=None) -> Field:
    """Construct GF(p^e); the default modulus table covers all q <= 128."""
    if e > 1 and modulus is None and p ** e not in _DEFAULT_MODULUS:
        raise UnsupportedOrder(f"no built-in modulus for order {p ** e}")
    return Field(p, e, modulus)
