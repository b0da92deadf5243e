"""Finite algebras over GF(q), given by structure constants.

An Algebra is a d-dimensional GF(q)-vector space with a bilinear,
associative, unital multiplication.  The multiplication is stored as a
d x d table of coordinate vectors (the product of basis vectors e_i * e_j).
Elements are plain integers 0..q^d-1 encoding base-q digit vectors, digit k
being the coefficient of e_k.

The scalar field embeds as c -> c*1 and is central; units are detected by
invertibility of the left-multiplication matrix (valid in any finite ring,
where one-sided inverses are two-sided).  A ring is local exactly when its
nonunits form an additive subgroup, which for a finite algebra is the same
as spanning a subspace of matching size.

Supported ring spec grammar (whitespace-insensitive):

    gf(q)                  the field itself
    gf(q;c0,c1,...,1)      field with explicit modulus (base-p digits)
    gf(q^m)/gf(q)          field extension as a gf(q)-algebra
    gf(q) x gf(q)          product ring
    gf(q)[t]/(t^n)         truncated polynomials
    gf(q^m)[t]/(t^n) over gf(q)
    file:<path>            structure-constant file (format in write_structure_file)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as iproduct

from . import linalg
from .errors import (
    BadSpec,
    NoUnity,
    NonAssociative,
    NotAUnit,
    NotLocal,
    ScalarsNotCentral,
)
from .field import Field, field_make, is_prime

_DENSE_LIMIT = 256


# ---------------------------------------------------------------------------
# polynomials with coefficients in an arbitrary Field (index lists, low first)
# ---------------------------------------------------------------------------

def _fpoly_rem(F, num, den):
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        lead = num[-1]
        if lead:
            f = F.div(lead, den[-1])
            shift = len(num) - 1 - dd
            for i, c in enumerate(den):
                num[shift + i] = F.sub(num[shift + i], F.mul(f, c))
        num.pop()
        if not num:
            num = [0]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _fpoly_mul(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _fpoly_irreducible(F, poly):
    deg = len(poly) - 1
    for dd in range(1, deg // 2 + 1):
        for tail in iproduct(range(F.q), repeat=dd):
            den = list(tail) + [1]
            if _fpoly_rem(F, poly, den) == [0]:
                return False
    return True


def lexleast_irreducible_over(F, deg):
    """First irreducible monic polynomial over F, scanning non-leading
    coefficient vectors in increasing base-q integer order."""
    for val in range(F.q ** deg):
        tail, x = [], val
        for _ in range(deg):
            tail.append(x % F.q)
            x //= F.q
        if _fpoly_irreducible(F, tail + [1]):
            return tail + [1]
    raise BadSpec(f"no irreducible polynomial of degree {deg} over GF({F.q})")


# ---------------------------------------------------------------------------
# the algebra proper
# ---------------------------------------------------------------------------

class Algebra:
    """Associative unital GF(q)-algebra from a structure-constant table."""

    def __init__(self, field: Field, dim: int, basis_products, one, kind="custom",
                 label=None, spec=None):
        if dim < 1:
            raise BadSpec("dimension must be >= 1")
        self.field = field
        self.dim = dim
        self.q = field.q
        self.size = field.q ** dim
        self._prod = tuple(tuple(tuple(v) for v in row) for row in basis_products)
        if len(self._prod) != dim or any(len(r) != dim for r in self._prod) \
                or any(len(v) != dim for r in self._prod for v in r):
            raise BadSpec("structure-constant table must be d x d vectors of length d")
        self.one_coords = tuple(one)
        if len(self.one_coords) != dim:
            raise BadSpec("unit vector must have length d")
        self.kind = kind
        self.spec = spec
        self.label = label or kind

        self._powers = [field.q ** k for k in range(dim)]
        self.one = self.encode(self.one_coords)
        self.zero = 0

        self._mul_memo = {}
        self._validate()
        self._dense = None
        if self.size <= _DENSE_LIMIT:
            self._dense = [[self._mul_raw(a, b) for b in range(self.size)]
                           for a in range(self.size)]
        self._compute_units()
        self._classify()

    # -- encoding ------------------------------------------------------------

    def coords(self, a: int):
        q = self.q
        digs = []
        for _ in range(self.dim):
            digs.append(a % q)
            a //= q
        return tuple(digs)

    def encode(self, coords) -> int:
        val = 0
        for c in reversed(list(coords)):
            val = val * self.q + c
        return val

    def basis_index(self, i: int) -> int:
        return self._powers[i]

    def elements(self):
        return range(self.size)

    # -- arithmetic ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        F = self.field
        return self.encode(F.add(x, y) for x, y in zip(self.coords(a), self.coords(b)))

    def sub(self, a: int, b: int) -> int:
        F = self.field
        return self.encode(F.sub(x, y) for x, y in zip(self.coords(a), self.coords(b)))

    def neg(self, a: int) -> int:
        F = self.field
        return self.encode(F.neg(x) for x in self.coords(a))

    def scalar_mul(self, c: int, a: int) -> int:
        F = self.field
        return self.encode(F.mul(c, x) for x in self.coords(a))

    def scalar_embed(self, c: int) -> int:
        """The element c*1 of the embedded copy of GF(q)."""
        return self.scalar_mul(c, self.one)

    def _mul_raw(self, a: int, b: int) -> int:
        F = self.field
        acc = [0] * self.dim
        ca, cb = self.coords(a), self.coords(b)
        for i, ai in enumerate(ca):
            if not ai:
                continue
            prow = self._prod[i]
            for j, bj in enumerate(cb):
                if not bj:
                    continue
                f = F.mul(ai, bj)
                for k, t in enumerate(prow[j]):
                    if t:
                        acc[k] = F.add(acc[k], F.mul(f, t))
        return self.encode(acc)

    def mul(self, a: int, b: int) -> int:
        if self._dense is not None:
            return self._dense[a][b]
        key = (a, b)
        r = self._mul_memo.get(key)
        if r is None:
            r = self._mul_memo[key] = self._mul_raw(a, b)
        return r

    def left_matrix(self, a: int):
        """d x d matrix over the base field of x -> a*x (columns a*e_j)."""
        cols = [self.coords(self.mul(a, self._powers[j])) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def is_unit(self, a: int) -> bool:
        return a in self._unit_set

    def inv(self, a: int) -> int:
        try:
            return self._inv[a]
        except KeyError:
            raise NotAUnit(f"element {a} ({self.coords(a)}) is not a unit") from None

    # -- construction-time validation -----------------------------------------

    def _validate(self):
        for j in range(self.dim):
            ej = self._powers[j]
            if self._mul_raw(self.one, ej) != ej or self._mul_raw(ej, self.one) != ej:
                raise NoUnity(f"designated unit {self.one_coords} is not two-sided")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self._mul_raw(self._powers[i], self._powers[j])
                for k in range(self.dim):
                    left = self._mul_raw(ij, self._powers[k])
                    right = self._mul_raw(
                        self._powers[i], self._mul_raw(self._powers[j], self._powers[k]))
                    if left != right:
                        raise NonAssociative(
                            f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")
        for c in range(1, self.q):
            s = self.scalar_embed(c)
            for j in range(self.dim):
                ej = self._powers[j]
                want = self.scalar_mul(c, ej)
                if self._mul_raw(s, ej) != want or self._mul_raw(ej, s) != want:
                    raise ScalarsNotCentral(
                        f"scalar {c}*1 does not act centrally on e{j}")

    # -- units, locality ---------------------------------------------------------

    def _compute_units(self):
        F = self.field
        units, inv = [], {}
        one_coords = list(self.one_coords)
        for a in range(self.size):
            rows = self.left_matrix(a)
            x = linalg.solve(F, rows, one_coords)
            if x is None:
                continue
            b = self.encode(x)
            if self.mul(b, a) != self.one:
                # left-invertible but not right: impossible in a finite ring
                raise NonAssociative("one-sided inverse found; multiplication broken")
            units.append(a)
            inv[a] = b
        self.units = tuple(units)
        self.r_star = len(units)
        self._unit_set = frozenset(units)
        self._inv = inv
        self.nonunits = tuple(a for a in range(self.size) if a not in self._unit_set)

    def _classify(self):
        F = self.field
        if not self.nonunits:
            # impossible: 0 is never a unit
            raise NoUnity("no nonunits")
        rows = [list(self.coords(a)) for a in self.nonunits]
        ech, pivots = linalg.rref(F, rows)
        rank = len(pivots)
        self.is_local = (self.q ** rank == len(self.nonunits))
        if self.is_local:
            self.delta = rank
            self.radical_rows = [ech[i] for i in range(rank)]
            self.radical_pivots = pivots
        else:
            self.delta = None
            self.radical_rows = None
            self.radical_pivots = None

    def classify_local(self):
        return self.is_local, self.delta

    # -- residue field --------------------------------------------------------

    def residue_field(self):
        """The quotient by the nonunit ideal of a local algebra.

        Returns (F_alg, proj) where F_alg is a field of order q^(d-delta)
        realized over the same base field, and proj maps element indices of
        this algebra onto element indices of F_alg.  Coset representatives
        are the vectors vanishing on the radical's pivot coordinates.
        """
        if not self.is_local:
            raise NotLocal(f"{self.label} is not local")
        F = self.field
        co_cols = [c for c in range(self.dim) if c not in self.radical_pivots]
        fdim = len(co_cols)

        def down(a):
            red = linalg.reduce_mod_rowspace(
                F, self.coords(a), self.radical_rows, self.radical_pivots)
            return tuple(red[c] for c in co_cols)

        prods = [[None] * fdim for _ in range(fdim)]
        for i, ci in enumerate(co_cols):
            for j, cj in enumerate(co_cols):
                prods[i][j] = down(self.mul(self._powers[ci], self._powers[cj]))
        quotient = Algebra(F, fdim, prods, down(self.one), kind="residue",
                           label=f"{self.label} mod radical")
        if quotient.r_star != quotient.size - 1:
            raise NotLocal("quotient by the nonunit set is not a field")

        def proj(a):
            return quotient.encode(down(a))

        self._check_projection(quotient, proj)
        return quotient, proj

    def _check_projection(self, quotient, proj):
        fibers = {}
        for a in range(self.size):
            fibers.setdefault(proj(a), 0)
            fibers[proj(a)] += 1
        expected = self.q ** self.delta
        if len(fibers) != quotient.size or set(fibers.values()) != {expected}:
            raise NotLocal("projection fibers are not uniform radical cosets")
        elems = range(self.size)
        if self.size > 64:
            import random
            rng = random.Random(0xC0DE)
            elems = [rng.randrange(self.size) for _ in range(64)]
        for a in elems:
            for b in elems:
                if proj(self.mul(a, b)) != quotient.mul(proj(a), proj(b)):
                    raise NotLocal("projection is not multiplicative")
                if proj(self.add(a, b)) != quotient.add(proj(a), proj(b)):
                    raise NotLocal("projection is not additive")

    # -- normalizer of the embedded scalar group ---------------------------------

    def normalizer_order(self) -> int:
        """#N for N = units n with n^-1 (K*) n = K*, K* the embedded scalars."""
        kstar = {self.scalar_embed(c) for c in range(1, self.q)}
        count = 0
        for n in self.units:
            ninv = self._inv[n]
            if all(self.mul(self.mul(ninv, k), n) in kstar for k in kstar):
                count += 1
        return count

    def lambda3(self) -> int:
        n = self.normalizer_order()
        if self.r_star % n:
            raise NonAssociative("normalizer order does not divide the unit count")
        return self.r_star // n

    def __repr__(self):
        return f"Algebra({self.label}, q={self.q}, d={self.dim})"


# ---------------------------------------------------------------------------
# constructors for the built-in ring families
# ---------------------------------------------------------------------------

def field_algebra(K: Field, label=None, spec=None) -> Algebra:
    return Algebra(K, 1, [[(1,)]], (1,), kind="field",
                   label=label or f"gf({K.q})", spec=spec)


def extension_algebra(K: Field, m: int, modulus=None, label=None, spec=None) -> Algebra:
    """GF(q^m) as a K-algebra with basis 1, t, .., t^(m-1)."""
    if m < 2:
        raise BadSpec("extension degree must be >= 2")
    if modulus is None:
        modulus = lexleast_irreducible_over(K, m)
    else:
        modulus = list(modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1 or not _fpoly_irreducible(K, modulus):
            raise BadSpec(f"{modulus} is not a monic irreducible of degree {m}")
    powers = []  # t^k mod modulus, k = 0 .. 2m-2
    cur = [1]
    for _ in range(2 * m - 1):
        powers.append(_fpoly_rem(K, cur, modulus))
        cur = _fpoly_mul(K, cur, [0, 1])
    def vec(poly):
        return tuple(poly[i] if i < len(poly) else 0 for i in range(m))
    prods = [[vec(powers[i + j]) for j in range(m)] for i in range(m)]
    one = vec([1])
    return Algebra(K, m, prods, one, kind="extension",
                   label=label or f"gf({K.q ** m})/gf({K.q})", spec=spec)


def product_algebra(K: Field, label=None, spec=None) -> Algebra:
    prods = [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]
    return Algebra(K, 2, prods, (1, 1), kind="product",
                   label=label or f"gf({K.q}) x gf({K.q})", spec=spec)


def truncated_algebra(coeff: Algebra, n: int, label=None, spec=None) -> Algebra:
    """coeff[t]/(t^n): basis a_i t^j with index i + dim(coeff)*j."""
    if n < 1:
        raise BadSpec("truncation exponent must be >= 1")
    m, d = coeff.dim, coeff.dim * n
    prods = [[None] * d for _ in range(d)]
    zero = (0,) * d
    for i in range(m):
        for j in range(n):
            for k in range(m):
                for l in range(n):
                    bi, bk = i + m * j, k + m * l
                    if j + l >= n:
                        prods[bi][bk] = zero
                    else:
                        c = coeff.coords(coeff.mul(coeff.basis_index(i),
                                                   coeff.basis_index(k)))
                        v = [0] * d
                        v[m * (j + l):m * (j + l + 1)] = c
                        prods[bi][bk] = tuple(v)
    one = [0] * d
    one[:m] = coeff.one_coords
    return Algebra(coeff.field, d, prods, one, kind="truncated",
                   label=label, spec=spec)


# ---------------------------------------------------------------------------
# structure-constant files
# ---------------------------------------------------------------------------

def write_structure_file(alg: Algebra, fp):
    """Text dump: `p e d`, modulus digits if e > 1, the unit vector, then the
    d^2 basis products row-major, all as space-separated base-q digits."""
    F = alg.field
    fp.write(f"{F.p} {F.e} {alg.dim}\n")
    if F.e > 1:
        fp.write(" ".join(str(c) for c in F.modulus) + "\n")
    fp.write(" ".join(str(c) for c in alg.one_coords) + "\n")
    for i in range(alg.dim):
        for j in range(alg.dim):
            fp.write(" ".join(str(c) for c in alg._prod[i][j]) + "\n")


def read_structure_file(text: str, label=None, spec=None) -> Algebra:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise BadSpec("empty structure-constant file")

    def ints(line, want=None, what=""):
        try:
            vals = [int(t) for t in line.split()]
        except ValueError:
            raise BadSpec(f"non-integer token in {what}: {line!r}") from None
        if want is not None and len(vals) != want:
            raise BadSpec(f"expected {want} values for {what}, got {len(vals)}")
        return vals

    p, e, d = ints(lines[0], 3, "header")
    pos = 1
    modulus = None
    if e > 1:
        if pos >= len(lines):
            raise BadSpec("missing modulus line")
        modulus = ints(lines[pos], e + 1, "modulus")
        pos += 1
    K = Field(p, e, modulus)
    body = lines[pos:]
    if len(body) != 1 + d * d:
        raise BadSpec(f"expected {1 + d * d} vector lines, got {len(body)}")
    q = K.q

    def vec(line, what):
        v = ints(line, d, what)
        if any(not (0 <= c < q) for c in v):
            raise BadSpec(f"digit out of range in {what}: {line!r}")
        return v

    one = vec(body[0], "unit vector")
    prods = [[vec(body[1 + i * d + j], f"e{i}*e{j}") for j in range(d)]
             for i in range(d)]
    return Algebra(K, d, prods, one, kind="file", label=label, spec=spec)


# ---------------------------------------------------------------------------
# ring spec grammar
# ---------------------------------------------------------------------------

_FIELD_RE = r"gf\((\d+)(?:;([\d,]+))?\)"


@dataclass(frozen=True)
class RingSpec:
    """Parsed form of the ring grammar; `canonical()` round-trips."""
    kind: str                      # field | extension | product | truncated | file
    p: int = 0
    e: int = 1                     # base field is GF(p^e)
    base_modulus: tuple = None     # only when overriding the default
    degree: int = 1                # extension degree over the base
    trunc: int = 1                 # n in [t]/(t^n)
    path: str = None

    def base_field(self) -> Field:
        return Field(self.p, self.e, self.base_modulus)

    def _base_str(self) -> str:
        q = self.p ** self.e
        if self.base_modulus is not None:
            return f"gf({q};{','.join(str(c) for c in self.base_modulus)})"
        return f"gf({q})"

    def canonical(self) -> str:
        b = self._base_str()
        q = self.p ** self.e
        if self.kind == "field":
            return b
        if self.kind == "extension":
            return f"gf({q ** self.degree})/{b}"
        if self.kind == "product":
            return f"{b} x {b}"
        if self.kind == "truncated":
            if self.degree == 1:
                return f"{b}[t]/(t^{self.trunc})"
            return f"gf({q ** self.degree})[t]/(t^{self.trunc}) over {b}"
        return f"file:{self.path}"

    def build(self) -> Algebra:
        if self.kind == "file":
            try:
                with open(self.path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise BadSpec(f"cannot read {self.path}: {exc}") from None
            return read_structure_file(text, label=self.canonical(), spec=self)
        K = self.base_field()
        label = self.canonical()
        if self.kind == "field":
            return field_algebra(K, label=label, spec=self)
        if self.kind == "extension":
            return extension_algebra(K, self.degree, label=label, spec=self)
        if self.kind == "product":
            return product_algebra(K, label=label, spec=self)
        if self.kind == "truncated":
            coeff = (field_algebra(K) if self.degree == 1
                     else extension_algebra(K, self.degree))
            return truncated_algebra(coeff, self.trunc, label=label, spec=self)
        raise BadSpec(f"unknown ring kind {self.kind}")


def _parse_field_token(tok, where):
    m = re.fullmatch(_FIELD_RE, tok)
    if not m:
        raise BadSpec(f"expected gf(..) in {where}, got {tok!r}")
    q = int(m.group(1))
    digits = None
    if m.group(2) is not None:
        digits = tuple(int(t) for t in m.group(2).split(",") if t != "")
    if q < 2:
        raise BadSpec(f"field order must be >= 2, got {q}")
    p, e = None, None
    for cand in range(2, q + 1):
        if is_prime(cand):
            pe, ee = cand, 0
            n = q
            while n % cand == 0:
                n //= cand
                ee += 1
            if n == 1:
                p, e = pe, ee
                break
    if p is None:
        raise BadSpec(f"{q} is not a prime power")
    if digits is not None and e == 1:
        raise BadSpec("modulus digits are only allowed for extension fields")
    return p, e, digits


def _field_degree_over(p, e, pb, eb, what):
    if p != pb or e % eb:
        raise BadSpec(f"gf({p ** e}) is not an extension of gf({pb ** eb}) in {what}")
    return e // eb


def parse_ring_spec(text: str) -> RingSpec:
    raw = text.strip()
    if raw.lower().startswith("file:"):
        path = raw[5:].strip()
        if not path:
            raise BadSpec("file: spec needs a path")
        return RingSpec(kind="file", path=path)
    s = re.sub(r"\s+", "", raw.lower())
    if not s:
        raise BadSpec("empty ring spec")

    over = None
    if "over" in s:
        s, _, tail = s.rpartition("over")
        over = _parse_field_token(tail, "over clause")

    m = re.fullmatch(rf"({_FIELD_RE})\[t\]/\(t\^(\d+)\)", s)
    if m:
        p, e, digits = _parse_field_token(m.group(1), "coefficient field")
        n = int(m.group(4))
        if over is None:
            return RingSpec(kind="truncated", p=p, e=e, base_modulus=digits,
                            degree=1, trunc=n)
        pb, eb, digs_b = over
        deg = _field_degree_over(p, e, pb, eb, text)
        if deg == 1:
            return RingSpec(kind="truncated", p=p, e=e, base_modulus=digits,
                            degree=1, trunc=n)
        if digits is not None:
            raise BadSpec("modulus override on the coefficient field of an "
                          "'over' form is not supported")
        return RingSpec(kind="truncated", p=pb, e=eb, base_modulus=digs_b,
                        degree=deg, trunc=n)

    m = re.fullmatch(rf"({_FIELD_RE})/({_FIELD_RE})", s)
    if m:
        p1, e1, d1 = _parse_field_token(m.group(1), "extension field")
        p2, e2, d2 = _parse_field_token(m.group(4), "base field")
        if over is not None:
            raise BadSpec("'over' cannot follow an extension spec")
        deg = _field_degree_over(p1, e1, p2, e2, text)
        if deg == 1:
            return RingSpec(kind="field", p=p2, e=e2, base_modulus=d2 or d1)
        if d1 is not None:
            raise BadSpec("modulus override on the extension field is not supported")
        return RingSpec(kind="extension", p=p2, e=e2, base_modulus=d2, degree=deg)

    m = re.fullmatch(rf"({_FIELD_RE})x({_FIELD_RE})", s)
    if m:
        p1, e1, d1 = _parse_field_token(m.group(1), "left factor")
        p2, e2, d2 = _parse_field_token(m.group(4), "right factor")
        if (p1, e1, d1) != (p2, e2, d2):
            raise BadSpec("product factors must be identical fields")
        if over is not None:
            raise BadSpec("'over' cannot follow a product spec")
        return RingSpec(kind="product", p=p1, e=e1, base_modulus=d1)

    m = re.fullmatch(_FIELD_RE, s)
    if m:
        p, e, digits = _parse_field_token(s, "field spec")
        if over is None:
            return RingSpec(kind="field", p=p, e=e, base_modulus=digits)
        pb, eb, digs_b = over
        deg = _field_degree_over(p, e, pb, eb, text)
        if deg == 1:
            return RingSpec(kind="field", p=p, e=e, base_modulus=digits or digs_b)
        if digits is not None:
            raise BadSpec("modulus override on the extension field is not supported")
        return RingSpec(kind="extension", p=pb, e=eb, base_modulus=digs_b, degree=deg)

    raise BadSpec(f"cannot parse ring spec {text!r}")


def from_spec(text: str) -> Algebra:
    """Parse a ring spec string and build the algebra."""
    return parse_ring_spec(text).build()
