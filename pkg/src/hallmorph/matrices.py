"""Small exact dense-matrix helpers over the integers / rationals.

Matrices are tuples of row tuples of Python ints (or Fractions where noted),
so all arithmetic is exact and hashable.  Sizes here are tiny (at most
2n x 2n for desk-scale quivers), so no attempt at asymptotic cleverness.
"""

from __future__ import annotations

from fractions import Fraction

Mat = tuple  # tuple[tuple[int, ...], ...]
Vec = tuple  # tuple[int, ...]


def freeze(rows) -> Mat:
    return tuple(tuple(row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Mat:
    return tuple((0,) * c for _ in range(r))


def shape(m: Mat) -> tuple:
    return (len(m), len(m[0]) if m else 0)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Mat) -> Mat:
    return tuple(tuple(-x for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def vec_scale(k: int, a: Vec) -> Vec:
    return tuple(k * x for x in a)


def hstack(a: Mat, b: Mat) -> Mat:
    return tuple(ra + rb for ra, rb in zip(a, b))


def vstack(a: Mat, b: Mat) -> Mat:
    return a + b


def is_skew(m: Mat) -> bool:
    n = len(m)
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))


def bilinear(m: Mat, a: Vec, b: Vec) -> int:
    """a^T M b."""
    return sum(a[i] * sum(m[i][j] * b[j] for j in range(len(b))) for i in range(len(a)))


def diagonal(entries) -> Mat:
    entries = tuple(entries)
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def solve_exact(a: Mat, b: Vec):
    """Solve A x = b exactly over Q; returns a Fraction list or None.

    A must be square with nonzero determinant for a unique solution; None is
    returned when the system is singular or inconsistent.
    """
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        row += 1
    if row < n:
        # singular; check consistency anyway and refuse (caller wants uniqueness)
        return None
    return [aug[i][n] for i in range(n)]


def leading_minors_positive(m: Mat) -> bool:
    """Sylvester test: all leading principal minors > 0 (exact)."""
    n = len(m)
    for k in range(1, n + 1):
        sub = [[Fraction(m[i][j]) for j in range(k)] for i in range(k)]
        det = Fraction(1)
        for col in range(k):
            piv = next((r for r in range(col, k) if sub[r][col] != 0), None)
            if piv is None:
                return False
            if piv != col:
                sub[col], sub[piv] = sub[piv], sub[col]
                det = -det
            det *= sub[col][col]
            inv = 1 / sub[col][col]
            for r in range(col + 1, k):
                if sub[r][col] != 0:
                    f = sub[r][col] * inv
                    sub[r] = [x - f * y for x, y in zip(sub[r], sub[col])]
        if det <= 0:
            return False
    return True
