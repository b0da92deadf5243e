"""Dense linear algebra over a Field: elimination, solving, nullspaces.

Matrices are lists of row lists of element indices.  Everything is exact;
sizes stay tiny (at most 4d x 4d for the algebras handled here), so plain
Gauss-Jordan with full pivot normalization is the right tool.
"""


def rref(F, rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r] + rows[r:], pivots


def rank(F, rows):
    return len(rref(F, rows)[1])


def is_invertible(F, rows):
    n = len(rows)
    return n == 0 or (len(rows[0]) == n and rank(F, rows) == n)


def solve(F, rows, rhs):
    """One solution x of rows @ x = rhs, or None if inconsistent."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug)
    ncols = len(rows[0]) if n else 0
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def nullspace(F, rows, ncols=None):
    """Basis of the right nullspace, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, c in enumerate(pivots):
            v[c] = F.neg(red[i][fc])
        basis.append(v)
    return basis


def reduce_mod_rowspace(F, vec, ech_rows, pivots):
    """Canonical coset representative of vec modulo the span of ech_rows.

    ech_rows must be in reduced echelon form with the given pivot columns;
    the result has zeros in every pivot position.
    """
    v = list(vec)
    for row, c in zip(ech_rows, pivots):
        if v[c] != 0:
            f = v[c]
            v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
    return v
