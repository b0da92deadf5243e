"""The projective line over a finite algebra R.

A point is the orbit R(a,b) of an admissible pair under left multiplication
by units; we store the lexicographically least unit multiple as the
canonical representative.  The point set is generated as the orbit of
(1, 0) under right multiplication by a generating set of invertible 2x2
matrices (transvections along a scalar-multiple basis, the swap, and unit
diagonals); the count is cross-checked against closed formulas, and a slow
filter over all pairs doubles as an independent oracle for small rings.

Two points are distant when stacking their representatives gives an
invertible 2x2 matrix over R, tested via the base-field matrix of its
left-regular action on R^2.
"""

from __future__ import annotations

from . import linalg
from .errors import NotLocal, OrbitCountMismatch

# 2x2 matrices over an algebra are ((m00, m01), (m10, m11)) element tuples.


def canonical_pair(A, pair):
    """Least pair (u*a, u*b) over units u, ordered by element index."""
    a, b = pair
    best = None
    for u in A.units:
        cand = (A.mul(u, a), A.mul(u, b))
        if best is None or cand < best:
            best = cand
    return best


def pair_apply(A, pair, M):
    """Row vector times matrix: (a, b) * M."""
    a, b = pair
    (m00, m01), (m10, m11) = M
    return (A.add(A.mul(a, m00), A.mul(b, m10)),
            A.add(A.mul(a, m01), A.mul(b, m11)))


def mat_mul(A, M, N):
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return ((A.add(A.mul(a, e), A.mul(b, g)), A.add(A.mul(a, f), A.mul(b, h))),
            (A.add(A.mul(c, e), A.mul(d, g)), A.add(A.mul(c, f), A.mul(d, h))))


def _regular_matrix(A, M):
    """2d x 2d base-field matrix of (x, y) -> (m00 x + m01 y, m10 x + m11 y)."""
    d = A.dim
    (m00, m01), (m10, m11) = M
    blocks = [[A.left_matrix(m00), A.left_matrix(m01)],
              [A.left_matrix(m10), A.left_matrix(m11)]]
    rows = []
    for bi in range(2):
        for r in range(d):
            rows.append(blocks[bi][0][r] + blocks[bi][1][r])
    return rows


def mat_is_invertible(A, M):
    return linalg.is_invertible(A.field, _regular_matrix(A, M))


def mat_inv(A, M):
    """Inverse of an invertible 2x2 matrix over R, column by column."""
    F = A.field
    rows = _regular_matrix(A, M)
    d = A.dim
    cols = []
    for target in ((A.one, A.zero), (A.zero, A.one)):
        rhs = list(A.coords(target[0])) + list(A.coords(target[1]))
        x = linalg.solve(F, rows, rhs)
        if x is None:
            raise OrbitCountMismatch("matrix inversion failed on an invertible input")
        cols.append((A.encode(x[:d]), A.encode(x[d:])))
    # cols solve M * col = e_i, i.e. they form M^-1 column-wise
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))


def is_distant_pair(A, pa, pb):
    """Whether the stacked representative matrix lies in GL_2(R)."""
    return mat_is_invertible(A, (tuple(pa), tuple(pb)))


def _generators(A):
    gens = []
    for i in range(A.dim):
        e = A.basis_index(i)
        for c in range(1, A.q):
            x = A.scalar_mul(c, e)
            gens.append(((A.one, x), (A.zero, A.one)))
            gens.append(((A.one, A.zero), (x, A.one)))
    gens.append(((A.zero, A.one), (A.one, A.zero)))
    for u in A.units:
        gens.append(((u, A.zero), (A.zero, A.one)))
    return gens


def enumerate_points(A):
    """Sorted canonical representatives of the orbit of (1,0) under GL_2(R).

    Raises OrbitCountMismatch when the result contradicts the closed-form
    counts: v = q^d + q^delta for local R, v = (q+1)^2 for a product of two
    copies of the base field, and v >= 2q^d - r* always.
    """
    gens = _generators(A)
    start = canonical_pair(A, (A.one, A.zero))
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for pair in frontier:
            for g in gens:
                img = canonical_pair(A, pair_apply(A, pair, g))
                if img not in seen:
                    seen.add(img)
                    new.append(img)
        frontier = new
    points = sorted(seen)

    v, q, d = len(points), A.q, A.dim
    if A.is_local and v != q ** d + q ** A.delta:
        raise OrbitCountMismatch(
            f"{A.label}: orbit gives {v} points, local count predicts "
            f"{q ** d + q ** A.delta}")
    if A.kind == "product" and v != (q + 1) ** 2:
        raise OrbitCountMismatch(
            f"{A.label}: orbit gives {v} points, product ring predicts {(q + 1) ** 2}")
    if v < 2 * q ** d - A.r_star:
        raise OrbitCountMismatch(
            f"{A.label}: {v} points is below the floor {2 * q ** d - A.r_star}")
    return points


def enumerate_points_bruteforce(A):
    """Independent oracle: scan all pairs, keep those completing to an
    invertible matrix, and bucket them by canonical representative.
    Quadratic in #R^2; intended for #R <= 64."""
    points = set()
    for a in A.elements():
        for b in A.elements():
            admissible = False
            for c in A.elements():
                for dd in A.elements():
                    if mat_is_invertible(A, ((a, b), (c, dd))):
                        admissible = True
                        break
                if admissible:
                    break
            if admissible:
                points.add(canonical_pair(A, (a, b)))
    return sorted(points)


def parallel_classes(points, distant_masks, A):
    """Partition of the point list under non-distance, for local R only.

    Classes come back as sorted id tuples, sorted by first member; sizes and
    count are checked against q^delta and q^(d-delta) + 1.
    """
    if not A.is_local:
        raise NotLocal(
            f"{A.label} is not local; non-distance is not an equivalence there")
    v = len(points)
    full = (1 << v) - 1
    seen = [False] * v
    classes = []
    for i in range(v):
        if seen[i]:
            continue
        cls_mask = full & ~distant_masks[i]
        members = [j for j in range(v) if (cls_mask >> j) & 1]
        for j in members:
            if seen[j]:
                raise NotLocal("non-distance classes overlap; relation not transitive")
            seen[j] = True
            if full & ~distant_masks[j] != cls_mask:
                raise NotLocal("non-distance classes disagree; relation not transitive")
        classes.append(tuple(members))
    size = A.q ** A.delta
    want = A.q ** (A.dim - A.delta) + 1
    if any(len(c) != size for c in classes) or len(classes) != want:
        raise OrbitCountMismatch(
            f"{A.label}: parallel classes {[len(c) for c in classes]} "
            f"do not match {want} classes of size {size}")
    return classes
