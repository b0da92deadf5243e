"""Blocking sets: lower bounds, certificates, exact search, lifting.

A blocking set meets every chain.  Three lower bounds are computed:

  * trivial:  ceil(lambda_0 / lambda_1), valid whenever the number of
    blocks through a point is constant;
  * general:  ceil((2 q^d - r*) / (q+1)), from the point-count floor
    v >= 2 q^d - r*;
  * glynn:    for local rings, the smallest x at or above the general
    bound whose cubic counting polynomial P_bound(x) is nonnegative.
    P_bound aggregates the intersection distribution n_i of a hypothetical
    blocking set of size x with the nonnegative cubic weight
    (i-1)(i-3)(i-4); sizes with P_bound(x) < 0 are impossible.

The exact minimum is found by branch and bound over the chain list, with a
second lexicographic pass that pins down the canonical witness.  All
arithmetic is plain Python integers, hence exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import Geometry
from .errors import (
    BadParameters,
    CounterexampleFound,
    NotApplicable,
    NotBlockingDownstairs,
    NotLocal,
    PolynomialMismatch,
    UnknownPoint,
    VerificationError,
)
from .incidence import Incidence


def _ceil_div(a, b):
    return -(-a // b)


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def bound_trivial(G: Geometry) -> int:
    lam = G.lambda_table()
    return _ceil_div(lam[0], lam[1])


def bound_general(q: int, d: int, r_star: int) -> int:
    """ceil((2 q^d - r*) / (q+1)); holds in every chain geometry."""
    return _ceil_div(2 * q ** d - r_star, q + 1)


def theta(q: int, n: int) -> int:
    """(q^(n+1) - 1)/(q - 1): the number of points of PG(n, q)."""
    if n < -1:
        raise BadParameters(f"theta undefined for n = {n}")
    return (q ** (n + 1) - 1) // (q - 1)


def glynn_weight(i: int) -> int:
    """(i-1)(i-3)(i-4) = i(i-1)(i-2) - 5i(i-1) + 12i - 12; >= 0 for i >= 1."""
    return (i - 1) * (i - 3) * (i - 4)


class GlynnPolynomial:
    """The cubic bound polynomial for a local ring with parameters (q, d, delta).

    For a blocking set of size x, summing the weight (i-1)(i-3)(i-4) over the
    intersection distribution and bounding each moment by its counting
    identity yields 0 <= P_bound(x); the coefficients are exact integers.
    """

    def __init__(self, q: int, d: int, delta: int):
        if q < 2 or d < 1 or not 0 <= delta <= d - 1:
            raise BadParameters(
                f"need q >= 2, d >= 1, 0 <= delta <= d-1; got {(q, d, delta)}")
        self.q = q
        self.d = d
        self.delta = delta
        self.theta_top = theta(q, d - delta - 1)
        self.square_sum = sum(q ** (2 * j) for j in range(d - delta))

    def p_bound(self, x: int) -> int:
        q, d, delta = self.q, self.d, self.delta
        return (x * (x - 1) * (x - 2)
                - 5 * x * (x - q ** delta) * self.theta_top * q ** delta
                + 12 * x * q ** (d + delta - 1) * self.theta_top
                - 12 * self.square_sum * q ** (d + 2 * delta - 1))

    def scan_start(self) -> int:
        # the general bound specialized to a local ring, where
        # v = q^d + q^delta and r* = q^d - q^delta
        return _ceil_div(self.q ** self.d + self.q ** self.delta, self.q + 1)


def glynn_bound(q: int, d: int, delta: int) -> int:
    """Smallest x at or above the local general bound with P_bound(x) >= 0."""
    poly = GlynnPolynomial(q, d, delta)
    x = poly.scan_start()
    while poly.p_bound(x) < 0:
        x += 1
    return x


def glynn_poly_3d(q: int, t: int) -> int:
    """P_bound(2q^2 - q + t) for (d, delta) = (3, 0), cross-checked against
    its expansion as a quartic in q."""
    value = GlynnPolynomial(q, 3, 0).p_bound(2 * q * q - q + t)
    expanded = ((-1 + 4 * t) * q ** 4 + (19 - 10 * t) * q ** 3
                + (-11 - 2 * t + t * t) * q ** 2
                + (-7 + 21 * t - 8 * t * t) * q
                + (7 * t - 8 * t * t + t ** 3))
    if value != expanded:
        raise PolynomialMismatch(
            f"P_bound(2q^2-q+t) = {value} but the quartic expansion gives "
            f"{expanded} at (q, t) = ({q}, {t})")
    return value


def moebius_published_bounds(q: int) -> dict:
    """Piecewise published blocking-set bounds for 2- and 3-dimensional
    Moebius geometries over GF(q)."""
    b2 = 2 * q - 1 if q < 4 else 2 * q
    b3 = 2 * q * q - q - 2
    if q >= 4:
        b3 += 1
    if q >= 7:
        b3 += 1
    if q >= 19:
        b3 += 1
    return {2: b2, 3: b3}


def moebius3_comparison(q_max: int = 25):
    """Per-q comparison of glynn_bound(q, 3, 0) with the published values,
    plus the stable crossover: the least q0 such that the excess over
    2q^2 - q - 2 stays >= k for every q0 <= q <= q_max."""
    rows = []
    for q in range(2, q_max + 1):
        g = glynn_bound(q, 3, 0)
        base = 2 * q * q - q - 2
        rows.append({"q": q, "glynn": g, "published": moebius_published_bounds(q)[3],
                     "excess": g - base})
    crossovers = {}
    for k in (1, 2, 3):
        q0 = None
        for row in reversed(rows):
            if row["excess"] >= k:
                q0 = row["q"]
            else:
                break
        crossovers[k] = q0
    return rows, crossovers


# ---------------------------------------------------------------------------
# intersection distributions and reports
# ---------------------------------------------------------------------------

@dataclass
class IntersectionDistribution:
    n: list          # n[i] = number of blocks meeting the set in i points
    x: int           # size of the set

    def moment(self, weights) -> int:
        return sum(weights(i) * c for i, c in enumerate(self.n))


@dataclass
class BlockingReport:
    set: tuple
    is_blocking: bool
    first_missed_chain: int
    distribution: IntersectionDistribution
    bounds: tuple    # (trivial, general, glynn-or-None)
    checks: dict     # name -> (lhs, relation, rhs, ok)

    def all_checks_pass(self) -> bool:
        return all(ok for (_, _, _, ok) in self.checks.values())


def _clean_set(v, points):
    ids = sorted(set(int(p) for p in points))
    for p in ids:
        if not 0 <= p < v:
            raise UnknownPoint(f"point id {p} outside 0..{v - 1}")
    return tuple(ids)


def _distribution(masks, k, B):
    bmask = 0
    for p in B:
        bmask |= 1 << p
    n = [0] * (k + 1)
    first_missed = None
    for bi, m in enumerate(masks):
        c = (m & bmask).bit_count()
        n[c] += 1
        if c == 0 and first_missed is None:
            first_missed = bi
    return n, first_missed


def is_blocking(G: Geometry, points) -> BlockingReport:
    """Full certificate for a point set: the intersection distribution, the
    blocking verdict, the lower bounds, and the four counting checks
    (two exact identities, two inequalities)."""
    A = G.algebra
    B = _clean_set(G.v, points)
    x = len(B)
    lam0, lam1, lam2, lam3 = G.lambda_table()
    n, first_missed = _distribution(G.chain_masks(), A.q + 1, B)
    dist = IntersectionDistribution(n=n, x=x)

    checks = {}
    s0 = sum(n)
    checks["block_total"] = (s0, "==", lam0, s0 == lam0)
    s1 = dist.moment(lambda i: i)
    checks["incidence_count"] = (s1, "==", x * lam1, s1 == x * lam1)
    if A.is_local:
        s2 = dist.moment(lambda i: i * (i - 1))
        rhs2 = x * (x - A.q ** A.delta) * lam2
        checks["distant_pair_count"] = (s2, ">=", rhs2, s2 >= rhs2)
    s3 = dist.moment(lambda i: i * (i - 1) * (i - 2))
    rhs3 = x * (x - 1) * (x - 2) * lam3
    checks["distant_triple_count"] = (s3, "<=", rhs3, s3 <= rhs3)

    glynn = glynn_bound(A.q, A.dim, A.delta) if A.is_local else None
    bounds = (bound_trivial(G), bound_general(A.q, A.dim, A.r_star), glynn)
    return BlockingReport(set=B, is_blocking=(n[0] == 0),
                          first_missed_chain=first_missed, distribution=dist,
                          bounds=bounds, checks=checks)


def is_blocking_incidence(inc: Incidence, points) -> BlockingReport:
    """Generic-mode certificate: no algebra, so no counting checks or bounds."""
    B = _clean_set(inc.v, points)
    n, first_missed = _distribution(inc.masks(), inc.k, B)
    return BlockingReport(set=B, is_blocking=(n[0] == 0),
                          first_missed_chain=first_missed,
                          distribution=IntersectionDistribution(n=n, x=len(B)),
                          bounds=(None, None, None), checks={})


# ---------------------------------------------------------------------------
# exact minimum search
# ---------------------------------------------------------------------------

class _HittingSetSolver:
    """Branch and bound over blocks-as-bitmasks.

    Phase one branches on the points of the first uncovered block (ids
    ascending) to find the exact minimum size; phase two re-runs a
    lexicographic search of that size, so the reported witness is the
    lexicographically least minimum blocking set.
    """

    def __init__(self, inc: Incidence, floor: int = 1):
        self.v = inc.v
        self.blocks = inc.blocks
        self.nblocks = inc.b
        self.point_masks = inc.point_block_masks()
        self.all_mask = (1 << inc.b) - 1
        self.lam_max = max((m.bit_count() for m in self.point_masks), default=1)
        self.block_max_point = [blk[-1] for blk in inc.blocks]
        self.floor = max(1, floor)

    def _first_uncovered(self, covered):
        rem = self.all_mask & ~covered
        return (rem & -rem).bit_length() - 1

    def greedy(self):
        covered, chosen = 0, []
        while covered != self.all_mask:
            best_p, best_gain = None, -1
            for p in range(self.v):
                gain = (self.point_masks[p] & ~covered).bit_count()
                if gain > best_gain:
                    best_p, best_gain = p, gain
            if best_gain <= 0:
                raise VerificationError("a block contains no points; cannot cover")
            covered |= self.point_masks[best_p]
            chosen.append(best_p)
        return sorted(chosen)

    def min_size(self, cap=None):
        best = len(self.greedy())
        have = True
        if cap is not None and cap + 1 < best:
            best, have = cap + 1, False

        def dfs(covered, depth):
            nonlocal best, have
            if covered == self.all_mask:
                if depth < best:
                    best, have = depth, True
                return
            if have and best == self.floor:
                return
            rem = (self.all_mask & ~covered).bit_count()
            if depth + _ceil_div(rem, self.lam_max) >= best:
                return
            blk = self.blocks[self._first_uncovered(covered)]
            for p in blk:
                dfs(covered | self.point_masks[p], depth + 1)

        dfs(0, 0)
        return best if have else None

    def lex_least_of_size(self, m):
        pm = self.point_masks

        def feasible(covered, start, budget):
            rem = self.all_mask & ~covered
            if _ceil_div(rem.bit_count(), self.lam_max) > budget:
                return False
            while rem:
                low = rem & -rem
                bi = low.bit_length() - 1
                if self.block_max_point[bi] < start:
                    return False
                rem ^= low
            return True

        def dfs(covered, start, chosen):
            if covered == self.all_mask:
                return chosen
            budget = m - len(chosen)
            if budget == 0 or not feasible(covered, start, budget):
                return None
            for p in range(start, self.v):
                if pm[p] & ~covered == 0:
                    continue
                got = dfs(covered | pm[p], p + 1, chosen + [p])
                if got is not None:
                    return got
            return None

        return dfs(0, 0, [])

    def all_of_size(self, m):
        pm = self.point_masks
        found = []

        def dfs(covered, start, chosen):
            if covered == self.all_mask:
                found.append(tuple(chosen))
                return
            budget = m - len(chosen)
            if budget == 0:
                return
            rem = self.all_mask & ~covered
            if _ceil_div(rem.bit_count(), self.lam_max) > budget:
                return
            while rem:
                low = rem & -rem
                if self.block_max_point[low.bit_length() - 1] < start:
                    return
                rem ^= low
            for p in range(start, self.v):
                if pm[p] & ~covered == 0:
                    continue
                dfs(covered | pm[p], p + 1, chosen + [p])

        dfs(0, 0, [])
        return sorted(found)


def min_blocking(G: Geometry, cap=None):
    """Exact minimum blocking-set size and its lexicographically least
    witness.  The search floor combines the trivial bound with the cubic
    bound when the ring is local."""
    A = G.algebra
    floor = bound_trivial(G)
    if A.is_local:
        floor = max(floor, glynn_bound(A.q, A.dim, A.delta))
    solver = _HittingSetSolver(G.incidence(), floor=floor)
    m = solver.min_size(cap=cap)
    if m is None:
        return None, None
    witness = solver.lex_least_of_size(m)
    return m, tuple(witness)


def min_blocking_incidence(inc: Incidence, cap=None):
    solver = _HittingSetSolver(inc)
    m = solver.min_size(cap=cap)
    if m is None:
        return None, None
    return m, tuple(solver.lex_least_of_size(m))


def enumerate_minimum_blocking(G: Geometry):
    """All minimum blocking sets, sorted."""
    m, _ = min_blocking(G)
    solver = _HittingSetSolver(G.incidence())
    return m, solver.all_of_size(m)


# ---------------------------------------------------------------------------
# Bose-Burton style characterization
# ---------------------------------------------------------------------------

@dataclass
class BoseBurtonReport:
    size: int
    minima: list
    classes: list


def bose_burton_check(G: Geometry) -> BoseBurtonReport:
    """For a local ring with delta = d-1: verify that the minimum blocking
    sets are exactly the parallel classes (each of size q^(d-1))."""
    A = G.algebra
    if not A.is_local or A.delta != A.dim - 1:
        raise NotApplicable(
            f"{A.label}: characterization needs a local ring with delta = d-1")
    expected = A.q ** (A.dim - 1)
    size, minima = enumerate_minimum_blocking(G)
    classes = sorted(G.parallel_classes())
    if size != expected:
        raise CounterexampleFound(
            f"minimum blocking size {size} != q^(d-1) = {expected}")
    if minima != classes:
        raise CounterexampleFound(
            f"minimum blocking sets {minima} differ from the parallel "
            f"classes {classes}")
    return BoseBurtonReport(size=size, minima=minima, classes=classes)


# ---------------------------------------------------------------------------
# lifting along the residue-field projection
# ---------------------------------------------------------------------------

@dataclass
class LiftReport:
    lifted: tuple
    x: int
    delta: int
    residue_points: int
    blocking: BlockingReport


def residue_geometry(G: Geometry):
    """The chain geometry of R modulo its radical, plus the induced point
    map: phi[i] is the id in the residue geometry of the image of point i."""
    F_alg, proj = G.algebra.residue_field()
    G_F = Geometry(F_alg)
    phi = [G_F.point_id((proj(a), proj(b))) for (a, b) in G.points]
    return G_F, phi


def lift_blocking(G: Geometry, residue_set, residue=None) -> LiftReport:
    """Pull a blocking set of the residue geometry back through the
    projection: the preimage is a union of parallel classes, one per point,
    giving a blocking set of size x * q^delta upstairs.

    Verifies the two structural facts the construction rests on: chain
    images are chains, and two points project together iff they are
    parallel."""
    A = G.algebra
    if not A.is_local:
        raise NotLocal(f"{A.label} is not local; there is no residue geometry")
    if residue is None:
        residue = residue_geometry(G)
    G_F, phi = residue

    B_F = _clean_set(G_F.v, residue_set)
    down_report = is_blocking(G_F, B_F)
    if not down_report.is_blocking:
        raise NotBlockingDownstairs(
            f"set {B_F} misses chain {down_report.first_missed_chain} "
            f"of the residue geometry")

    # fibers of phi are exactly the parallel classes
    fibers = {}
    for i, img in enumerate(phi):
        fibers.setdefault(img, []).append(i)
    classes = {tuple(c) for c in G.parallel_classes()}
    if len(fibers) != G_F.v or {tuple(f) for f in fibers.values()} != classes:
        raise VerificationError(
            "projection fibers do not coincide with the parallel classes")
    for i in range(G.v):
        for j in range(i + 1, G.v):
            if (phi[i] == phi[j]) == G.distant(i, j):
                raise VerificationError(
                    f"points {i},{j}: projected equality must match parallelism")

    # chain images are chains downstairs
    down_chains = set(G_F.chains)
    for chain in G.chains:
        img = tuple(sorted({phi[p] for p in chain}))
        if img not in down_chains:
            raise VerificationError(f"image of chain {chain} is not a chain")

    lifted = tuple(sorted(i for i in range(G.v) if phi[i] in set(B_F)))
    x = len(B_F)
    if len(lifted) != x * A.q ** A.delta:
        raise VerificationError(
            f"lifted size {len(lifted)} != x * q^delta = {x * A.q ** A.delta}")
    up_report = is_blocking(G, lifted)
    if not up_report.is_blocking:
        raise VerificationError("lifted set fails to block upstairs")
    return LiftReport(lifted=lifted, x=x, delta=A.delta,
                      residue_points=G_F.v, blocking=up_report)
