"""Dense linear algebra over a prime field F_p.

Vectors are int tuples with entries in [0, p); matrices are tuples of row
tuples.  Everything is exact modular arithmetic; dimensions at desk scale
stay below ~40, so plain Gaussian elimination is fine.
"""

from __future__ import annotations

from itertools import combinations, product


def inv_mod(a: int, p: int) -> int:
    return pow(a % p, p - 2, p)


def rref(rows, p: int):
    """Reduced row-echelon form; returns (rows_without_zero_rows, pivot_cols)."""
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(mat)) if mat[r][col] % p != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = inv_mod(mat[row][col], p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] % p != 0:
                f = mat[r][col] % p
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:row]), tuple(pivots)


def rank(rows, p: int) -> int:
    return len(rref(rows, p)[0])


def reduce_vec(basis, pivots, v, p: int):
    """Residue of v after reduction against an RREF basis."""
    res = list(x % p for x in v)
    for row, col in zip(basis, pivots):
        c = res[col]
        if c:
            res = [(x - c * y) % p for x, y in zip(res, row)]
    return tuple(res)


def coords_in_span(basis, pivots, v, p: int):
    """Coordinates of v in the RREF basis, or None when v is outside the span."""
    res = list(x % p for x in v)
    coords = []
    for row, col in zip(basis, pivots):
        c = res[col]
        coords.append(c)
        if c:
            res = [(x - c * y) % p for x, y in zip(res, row)]
    if any(x % p for x in res):
        return None
    return tuple(coords)


def nullspace(rows, p: int):
    """Basis of the right nullspace of the matrix, as row vectors."""
    if not rows:
        return ()
    ncols = len(rows[0])
    basis, pivots = rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row, col in zip(basis, pivots):
            vec[col] = (-row[fc]) % p
        out.append(tuple(vec))
    return tuple(out)


def mat_mul(a, b, p: int):
    bt = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def mat_vec(a, v, p: int):
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def mat_inv(a, p: int):
    """Inverse of a square matrix mod p, or None if singular."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = inv_mod(aug[col][col], p)
        aug[col] = [(x * inv) % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] % p != 0:
                f = aug[r][col] % p
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def subspaces(n: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^n as RREF bases: yields (rows, pivots).

    Standard echelon parameterization: fix pivot columns, then free entries sit
    strictly right of their pivot and outside later pivot columns.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield ((), ())
        return
    for pivots in combinations(range(n), k):
        free_slots = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for values in product(range(p), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for r in range(k):
                rows[r][pivots[r]] = 1
            for (r, c), val in zip(free_slots, values):
                rows[r][c] = val
            yield (tuple(tuple(r) for r in rows), tuple(pivots))


def num_subspaces(n: int, k: int, p: int) -> int:
    """Gaussian binomial [n choose k]_p."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def random_matrix(rows: int, cols: int, p: int, rng):
    return tuple(tuple(rng.randrange(p) for _ in range(cols)) for _ in range(rows))


def random_invertible(n: int, p: int, rng):
    while True:
        m = random_matrix(n, n, p, rng)
        if rank(m, p) == n:
            return m
