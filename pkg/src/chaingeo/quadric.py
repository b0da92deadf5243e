"""The hyperbolic-quadric model of the chain geometry over K x K.

Points R((a1,a2),(b1,b2)) of the projective line over the product ring map
through

    psi: R(a,b) -> K(a1*b2, a2*b1, a1*a2, b1*b2)

onto the quadric Q: x0*x1 - x2*x3 = 0 in PG(3, q).  Under this bijection
chains correspond to the nondegenerate conics cut by non-tangent planes
(a plane [u0:u1:u2:u3] is tangent exactly when u0*u1 - u2*u3 = 0), the
distant relation corresponds to secancy of the joining line, and the two
rulings of Q pull back to blocking sets of size q+1 that attain the general
lower bound.

PG(3, q) support is local and minimal: points and planes are normalized
4-tuples (first nonzero coordinate 1), lines are point sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import blocking
from .chains import Geometry
from .errors import (
    ModelViolation,
    NotCoplanar,
    TangentPlane,
    WrongRing,
)
from .linalg import nullspace


def _require_product(G: Geometry):
    if G.algebra.kind != "product":
        raise WrongRing(f"{G.algebra.label} is not a product of two copies of "
                        "the base field")


def normalize4(F, vec):
    vec = tuple(vec)
    lead = next((c for c in vec if c != 0), 0)
    if lead == 0:
        raise ModelViolation("zero vector cannot be normalized")
    if lead == 1:
        return vec
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in vec)


def psi(G: Geometry, point_id: int):
    """Image of a point of P(K x K) on the quadric, as a normalized 4-tuple."""
    _require_product(G)
    A = G.algebra
    F = A.field
    a, b = G.points[point_id]
    a1, a2 = A.coords(a)
    b1, b2 = A.coords(b)
    img = (F.mul(a1, b2), F.mul(a2, b1), F.mul(a1, a2), F.mul(b1, b2))
    img = normalize4(F, img)
    if not on_quadric(F, img):
        raise ModelViolation(f"psi image {img} of point {point_id} is off the quadric")
    return img


def on_quadric(F, x) -> bool:
    return F.sub(F.mul(x[0], x[1]), F.mul(x[2], x[3])) == 0


def pg3_points(F):
    """All (q^4-1)/(q-1) normalized points of PG(3, q)."""
    q = F.q
    pts = []
    for lead in range(4):
        head = (0,) * lead + (1,)
        tail_len = 3 - lead
        idx = [0] * tail_len
        while True:
            pts.append(head + tuple(idx))
            for i in range(tail_len - 1, -1, -1):
                idx[i] += 1
                if idx[i] < q:
                    break
                idx[i] = 0
            else:
                break
    return sorted(set(pts))


def quadric_points(F):
    return [x for x in pg3_points(F) if on_quadric(F, x)]


def pg3_planes(F):
    """Dual coordinates of all planes, normalized like points."""
    return pg3_points(F)


def plane_is_tangent(F, u) -> bool:
    return F.sub(F.mul(u[0], u[1]), F.mul(u[2], u[3])) == 0


def incident(F, x, u) -> bool:
    acc = 0
    for xi, ui in zip(x, u):
        acc = F.add(acc, F.mul(xi, ui))
    return acc == 0


def plane_section(F, u):
    return frozenset(x for x in quadric_points(F) if incident(F, x, u))


def psi_map(G: Geometry):
    """point id -> quadric point for every point; checked to be a bijection
    onto the quadric."""
    _require_product(G)
    F = G.algebra.field
    images = [psi(G, i) for i in range(G.v)]
    if len(set(images)) != G.v or set(images) != set(quadric_points(F)):
        raise ModelViolation("psi is not a bijection onto the quadric")
    return images


def chain_to_plane(G: Geometry, chain):
    """The unique plane through a chain's image; it must be non-tangent and
    cut the quadric exactly in that image."""
    _require_product(G)
    F = G.algebra.field
    imgs = [psi(G, p) for p in chain]
    basis = nullspace(F, [list(x) for x in imgs], ncols=4)
    if len(basis) != 1:
        raise NotCoplanar(
            f"chain image spans a space with {len(basis)} dual dimensions, "
            "expected exactly one plane")
    u = normalize4(F, basis[0])
    if plane_is_tangent(F, u):
        raise TangentPlane(f"chain image lies on the tangent plane {u}")
    if plane_section(F, u) != frozenset(imgs):
        raise ModelViolation(
            f"plane {u} cuts the quadric beyond the chain image")
    return u


def line_through(F, x, y):
    """The q+1 points of the PG(3, q) line joining two distinct points."""
    pts = {normalize4(F, y)}
    for t in range(F.q):
        combo = tuple(F.add(xi, F.mul(t, yi)) for xi, yi in zip(x, y))
        pts.add(normalize4(F, combo))
    if len(pts) != F.q + 1:
        raise ModelViolation("degenerate line")
    return frozenset(pts)


def line_in_quadric(F, pts) -> bool:
    return all(on_quadric(F, x) for x in pts)


def distant_iff_secant(G: Geometry, i: int, j: int) -> bool:
    """Check that two distinct points are distant exactly when the line
    joining their images leaves the quadric; returns the distant verdict."""
    _require_product(G)
    F = G.algebra.field
    line = line_through(F, psi(G, i), psi(G, j))
    secant = not line_in_quadric(F, line)
    if secant != G.distant(i, j):
        raise ModelViolation(
            f"points {i},{j}: distant={G.distant(i, j)} but the joining "
            f"line {'leaves' if secant else 'lies on'} the quadric")
    return secant


def ruling_lines(G: Geometry):
    """The two rulings of the quadric, pulled back to point-id tuples.

    Each family holds q+1 pairwise disjoint lines; every line is verified to
    be a pairwise non-distant blocking set of size q+1 meeting every chain
    exactly once."""
    _require_product(G)
    F = G.algebra.field
    images = psi_map(G)
    index = {x: i for i, x in enumerate(images)}
    qpts = list(images)
    lines = set()
    for i in range(len(qpts)):
        for j in range(i + 1, len(qpts)):
            line = line_through(F, qpts[i], qpts[j])
            if line_in_quadric(F, line):
                lines.add(line)
    q = F.q
    if len(lines) != 2 * (q + 1):
        raise ModelViolation(f"found {len(lines)} quadric lines, expected {2 * (q + 1)}")
    pulled = sorted(tuple(sorted(index[x] for x in line)) for line in lines)

    masks = G.chain_masks()
    for ids in pulled:
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                if G.distant(ids[a], ids[b]):
                    raise ModelViolation(f"ruling line {ids} contains distant points")
        lm = 0
        for p in ids:
            lm |= 1 << p
        for ci, cm in enumerate(masks):
            if (cm & lm).bit_count() != 1:
                raise ModelViolation(
                    f"ruling line {ids} does not meet chain {ci} exactly once")
        if not blocking.is_blocking(G, ids).is_blocking:
            raise ModelViolation(f"ruling line {ids} is not a blocking set")

    first = pulled[0]
    fam_a = [ids for ids in pulled if ids == first or not set(ids) & set(first)]
    fam_b = [ids for ids in pulled if ids not in fam_a]
    if len(fam_a) != q + 1 or len(fam_b) != q + 1:
        raise ModelViolation("rulings do not split into two families of q+1 lines")
    return fam_a, fam_b


# ---------------------------------------------------------------------------
# the induced projectivity of a one-sided GL_2(K) action
# ---------------------------------------------------------------------------

def action_matrix(F, M):
    """4x4 projectivity matrix induced on the quadric by acting with M on the
    first product component and trivially on the second."""
    (m1, m2), (m3, m4) = M
    z = 0
    return [[m1, z, z, m2],
            [z, m4, m3, z],
            [z, m2, m1, z],
            [m3, z, z, m4]]


def check_action(G: Geometry, M) -> bool:
    """Verify on every point that transporting by (M, 1) inside the ring
    matches the displayed 4x4 projectivity on the quadric."""
    _require_product(G)
    from .projline import pair_apply
    A = G.algebra
    F = A.field
    (m1, m2), (m3, m4) = M
    det = F.sub(F.mul(m1, m4), F.mul(m2, m3))
    if det == 0:
        raise ModelViolation("action matrix must be invertible")
    g = ((A.encode((m1, 1)), A.encode((m2, 0))),
         (A.encode((m3, 0)), A.encode((m4, 1))))
    P = action_matrix(F, M)
    for i in range(G.v):
        moved = G.point_id(pair_apply(A, G.points[i], g))
        x = psi(G, i)
        img = [0, 0, 0, 0]
        for c in range(4):
            acc = 0
            for r in range(4):
                acc = F.add(acc, F.mul(x[r], P[r][c]))
            img[c] = acc
        if normalize4(F, img) != psi(G, moved):
            raise ModelViolation(
                f"4x4 projectivity disagrees with the ring action at point {i}")
    return True


# ---------------------------------------------------------------------------
# aggregate model verification
# ---------------------------------------------------------------------------

@dataclass
class ModelReport:
    q: int
    points: int
    chains: int
    nontangent_planes: int
    checks: dict     # name -> bool


def model_check_all(G: Geometry, matrix_samples: int = 20, seed: int = 2024):
    """Run every correspondence check for the quadric model of P(K x K)."""
    import random

    _require_product(G)
    F = G.algebra.field
    checks = {}

    psi_map(G)
    checks["psi_bijective"] = True

    planes_of_chains = set()
    for chain in G.chains:
        planes_of_chains.add(chain_to_plane(G, chain))
    checks["chains_are_nontangent_sections"] = True

    nontangent = [u for u in pg3_planes(F) if not plane_is_tangent(F, u)]
    sections = {frozenset(plane_section(F, u)) for u in nontangent}
    image_sets = {frozenset(psi(G, p) for p in chain) for chain in G.chains}
    if sections != image_sets:
        raise ModelViolation("non-tangent sections and chain images disagree")
    checks["sections_are_chain_images"] = True
    if len(nontangent) != len(G.chains):
        raise ModelViolation(
            f"{len(nontangent)} non-tangent planes vs {len(G.chains)} chains")
    checks["nontangent_plane_count_is_lambda0"] = True

    for i in range(G.v):
        for j in range(i + 1, G.v):
            distant_iff_secant(G, i, j)
    checks["distant_iff_secant"] = True

    ruling_lines(G)
    checks["rulings_block"] = True

    rng = random.Random(seed)
    done = 0
    while done < matrix_samples:
        M = ((rng.randrange(F.q), rng.randrange(F.q)),
             (rng.randrange(F.q), rng.randrange(F.q)))
        (m1, m2), (m3, m4) = M
        if F.sub(F.mul(m1, m4), F.mul(m2, m3)) == 0:
            continue
        check_action(G, M)
        done += 1
    checks["one_sided_action_matrix"] = True

    return ModelReport(q=F.q, points=G.v, chains=len(G.chains),
                       nontangent_planes=len(nontangent), checks=checks)
