"""Chain geometries: the point set P(R) together with its blocks.

The blocks ("chains") are the images of the embedded projective line over
the scalar field under GL_2(R).  They are generated by solving, for every
mutually distant triple, the 2x2 matrix g carrying the standard triple
R(1,0), R(0,1), R(1,1) onto it, and transporting the lines over the
conjugates of the scalar field by g.  Four incidence constants lambda_i
(chains through i prescribed mutually distant points) govern the counting;
the enumeration cross-checks all of them against their closed formulas:

    lambda_0 = v q^(d-1) r* lambda_3 / (q^2 - 1)
    lambda_1 =   q^(d-1) r* lambda_3 / (q - 1)
    lambda_2 =            r* lambda_3 / (q - 1)
    lambda_3 = r* / #N

with v the point count, r* the unit count and N the normalizer of the
embedded scalar group in the unit group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg, projline
from .errors import (
    ChainCountMismatch,
    DesignViolation,
    LambdaMismatch,
    NotMutuallyDistant,
    SolveFailed,
)
from .incidence import Incidence


def _exact_div(num, den, what):
    if num % den:
        raise LambdaMismatch(f"{what} = {num}/{den} is not an integer")
    return num // den


def lambda_formulas(v, q, d, r_star, lam3):
    """The four incidence constants from the closed formulas."""
    lam2 = _exact_div(r_star * lam3, q - 1, "lambda2")
    lam1 = _exact_div(q ** (d - 1) * r_star * lam3, q - 1, "lambda1")
    lam0 = _exact_div(v * q ** (d - 1) * r_star * lam3, q * q - 1, "lambda0")
    return lam0, lam1, lam2, lam3


@dataclass
class DesignReport:
    points: int
    blocks: int
    class_size: int      # q^delta
    block_size: int      # q+1
    lam: int             # chains through a mutually distant triple
    classes: int


class Geometry:
    """P(R) with its distant relation and (lazily) its chain list."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.points = projline.enumerate_points(algebra)
        self.v = len(self.points)
        self.point_ids = {p: i for i, p in enumerate(self.points)}
        self._build_distant()
        self._chains = None
        self._lambda = None
        self._classes = None
        self._triple_count = None

    # -- distant relation ------------------------------------------------------

    def _build_distant(self):
        A = self.algebra
        v = self.v
        masks = [0] * v
        for i in range(v):
            for j in range(i + 1, v):
                if projline.is_distant_pair(A, self.points[i], self.points[j]):
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        expect = A.q ** A.dim
        for i, m in enumerate(masks):
            if m.bit_count() != expect:
                raise ChainCountMismatch(
                    f"point {i} is distant from {m.bit_count()} points, "
                    f"expected q^d = {expect}")
        self.distant_masks = masks

    def distant(self, i, j):
        return i != j and (self.distant_masks[i] >> j) & 1 == 1

    def point_id(self, pair):
        return self.point_ids[projline.canonical_pair(self.algebra, pair)]

    # -- distinguished points ----------------------------------------------------

    def base_ids(self):
        """Ids of R(1,0), R(0,1), R(1,1)."""
        A = self.algebra
        return (self.point_id((A.one, A.zero)),
                self.point_id((A.zero, A.one)),
                self.point_id((A.one, A.one)))

    def standard_chain(self):
        """The embedded line over the scalar field, as a sorted id tuple."""
        A = self.algebra
        ids = {self.point_id((A.one, A.zero))}
        for c in range(A.q):
            ids.add(self.point_id((A.scalar_embed(c), A.one)))
        chain = tuple(sorted(ids))
        if len(chain) != A.q + 1:
            raise ChainCountMismatch("standard chain does not have q+1 points")
        return chain

    # -- chains through a triple ---------------------------------------------------

    def _solve_transport(self, i, j, k):
        """g in GL_2(R) with R(1,0), R(0,1), R(1,1) -> points i, j, k."""
        A = self.algebra
        F = A.field
        d = A.dim
        (a1, b1), (a2, b2), (a3, b3) = self.points[i], self.points[j], self.points[k]
        # unknowns u, v with u*(a1,b1) + v*(a2,b2) = (a3,b3); column s of the
        # 2d x 2d system is the pair (e_s*a1, e_s*b1) resp. (e_s*a2, e_s*b2)
        cols = []
        for s in range(d):
            es = A.basis_index(s)
            cols.append(list(A.coords(A.mul(es, a1))) + list(A.coords(A.mul(es, b1))))
        for s in range(d):
            es = A.basis_index(s)
            cols.append(list(A.coords(A.mul(es, a2))) + list(A.coords(A.mul(es, b2))))
        rows = [[cols[c][r] for c in range(2 * d)] for r in range(2 * d)]
        rhs = list(A.coords(a3)) + list(A.coords(b3))
        x = linalg.solve(F, rows, rhs)
        if x is None:
            raise SolveFailed(f"no transport onto triple ({i},{j},{k})")
        u, w = A.encode(x[:d]), A.encode(x[d:])
        if not (A.is_unit(u) and A.is_unit(w)):
            raise SolveFailed(
                f"transport coefficients for triple ({i},{j},{k}) are not units")
        return ((A.mul(u, a1), A.mul(u, b1)), (A.mul(w, a2), A.mul(w, b2)))

    def chains_through_triple(self, i, j, k):
        """All chains through three mutually distant points, as sorted id
        tuples.  There are exactly lambda_3 = r*/#N of them: the images under
        the transport matrix of the lines over the conjugates of the scalar
        field (the stabilizer of the standard triple is the unit scalars)."""
        A = self.algebra
        for x, y in ((i, j), (i, k), (j, k)):
            if not self.distant(x, y):
                raise NotMutuallyDistant(f"points {x} and {y} are not distant")
        g = self._solve_transport(i, j, k)
        lam3 = A.lambda3()
        chains = set()
        for w in A.units:
            winv = A.inv(w)
            ids = {self.point_id(projline.pair_apply(A, (A.one, A.zero), g))}
            for c in range(A.q):
                x = A.mul(A.mul(winv, A.scalar_embed(c)), w)
                ids.add(self.point_id(projline.pair_apply(A, (x, A.one), g)))
            chain = tuple(sorted(ids))
            if len(chain) != A.q + 1:
                raise ChainCountMismatch("transported chain lost points")
            chains.add(chain)
        result = sorted(chains)
        if len(result) != lam3:
            raise ChainCountMismatch(
                f"triple ({i},{j},{k}) lies on {len(result)} chains, "
                f"expected lambda3 = {lam3}")
        for chain in result:
            if not {i, j, k} <= set(chain):
                raise ChainCountMismatch("constructed chain misses its triple")
        return result

    # -- full enumeration ------------------------------------------------------------

    def _enumerate_chains(self):
        A = self.algebra
        lam3 = A.lambda3()
        lam0 = lambda_formulas(self.v, A.q, A.dim, A.r_star, lam3)[0]
        chains = set()
        count = {}
        for i in range(self.v):
            mi = self.distant_masks[i] >> (i + 1) << (i + 1)
            for j in _bits(mi):
                mij = self.distant_masks[i] & self.distant_masks[j]
                mij = mij >> (j + 1) << (j + 1)
                for k in _bits(mij):
                    t = (i, j, k)
                    if count.get(t, 0) == lam3:
                        continue
                    for chain in self.chains_through_triple(i, j, k):
                        if chain in chains:
                            continue
                        chains.add(chain)
                        for tri in combinations(chain, 3):
                            c = count.get(tri, 0) + 1
                            if c > lam3:
                                raise ChainCountMismatch(
                                    f"triple {tri} lies on more than "
                                    f"lambda3 = {lam3} chains")
                            count[tri] = c
                    if count.get(t, 0) != lam3:
                        raise ChainCountMismatch(
                            f"triple {t} ended with {count.get(t, 0)} chains, "
                            f"expected {lam3}")
        result = sorted(chains)
        if len(result) != lam0:
            raise ChainCountMismatch(
                f"enumerated {len(result)} chains, formula gives "
                f"lambda0 = {lam0}")
        self._triple_count = count
        return result

    @property
    def chains(self):
        if self._chains is None:
            self._chains = self._enumerate_chains()
        return self._chains

    def chain_masks(self):
        return [_mask(c) for c in self.chains]

    # -- incidence constants -------------------------------------------------------

    def lambda_table(self):
        """(lambda_0, .., lambda_3), formulas cross-checked against direct
        counts over the enumerated chain list."""
        if self._lambda is not None:
            return self._lambda
        A = self.algebra
        lam = lambda_formulas(self.v, A.q, A.dim, A.r_star, A.lambda3())
        p0, p1, p2 = self.base_ids()
        chains = self.chains
        emp0 = len(chains)
        emp1 = sum(1 for c in chains if p0 in c)
        emp2 = sum(1 for c in chains if p0 in c and p1 in c)
        emp3 = sum(1 for c in chains if p0 in c and p1 in c and p2 in c)
        if (emp0, emp1, emp2, emp3) != lam:
            raise LambdaMismatch(
                f"counted {(emp0, emp1, emp2, emp3)}, formulas give {lam}")
        self._lambda = lam
        return lam

    # -- parallelism -------------------------------------------------------------

    def parallel_classes(self):
        if self._classes is None:
            self._classes = projline.parallel_classes(
                self.points, self.distant_masks, self.algebra)
        return self._classes

    def verify_divisible_design(self):
        """Exhaustive check of the divisible-design structure of a local
        geometry: classes partition the points, each chain meets a class at
        most once, and every mutually distant triple lies on lambda_3 chains."""
        A = self.algebra
        classes = self.parallel_classes()
        chains = self.chains
        lam3 = A.lambda3()
        if self.v != A.q ** A.dim + A.q ** A.delta:
            raise DesignViolation(
                f"v = {self.v} != q^d + q^delta")
        class_of = {}
        for ci, cls in enumerate(classes):
            for p in cls:
                class_of[p] = ci
        for bi, chain in enumerate(chains):
            hit = [class_of[p] for p in chain]
            if len(set(hit)) != len(hit):
                raise DesignViolation(f"chain {bi} meets a parallel class twice")
        count = self._triple_count
        if count is None:
            count = {}
            for chain in chains:
                for tri in combinations(chain, 3):
                    count[tri] = count.get(tri, 0) + 1
        for i in range(self.v):
            for j in _bits(self.distant_masks[i] >> (i + 1) << (i + 1)):
                mij = self.distant_masks[i] & self.distant_masks[j]
                for k in _bits(mij >> (j + 1) << (j + 1)):
                    if count.get((i, j, k), 0) != lam3:
                        raise DesignViolation(
                            f"triple ({i},{j},{k}) lies on "
                            f"{count.get((i, j, k), 0)} != {lam3} chains")
        return DesignReport(points=self.v, blocks=len(chains),
                            class_size=A.q ** A.delta, block_size=A.q + 1,
                            lam=lam3, classes=len(classes))

    # -- export ---------------------------------------------------------------------

    def incidence(self) -> Incidence:
        return Incidence(self.v, list(self.chains))


def _mask(ids):
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
