"""Small exact linear algebra over FiniteField instances.

Vectors are tuples of int codes, matrices are tuples of row tuples.  Sizes here
are tiny (d <= 16), so everything is straightforward Gaussian elimination; the
numpy fast paths for prime fields live next to their call sites.
"""

import numpy as np


def zeros(n):
    return (0,) * n


def identity(F, n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F, A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = 0
            for t in range(k):
                a = Ai[t]
                if a:
                    acc = F.add(acc, F.mul(a, B[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F, A, v):
    return tuple(_dot(F, row, v) for row in A)


def vec_mat(F, v, A):
    n = len(A[0])
    out = []
    for j in range(n):
        acc = 0
        for i, x in enumerate(v):
            if x:
                acc = F.add(acc, F.mul(x, A[i][j]))
        out.append(acc)
    return tuple(out)


def _dot(F, u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


def dot(F, u, v):
    return _dot(F, u, v)


def scale(F, c, v):
    return tuple(F.mul(c, x) for x in v)


def add_vec(F, u, v):
    return tuple(F.add(x, y) for x, y in zip(u, v))


def mat_frobenius(F, A, k):
    if k % F.f == 0:
        return tuple(tuple(row) for row in A)
    return tuple(tuple(F.frobenius(x, k) for x in row) for row in A)


def rref(F, rows):
    """Reduced row echelon form; returns (rows_tuple, pivot_columns).

    The output is canonical: two row spaces are equal iff their rrefs are
    byte-identical.
    """
    R = [list(r) for r in rows]
    if not R:
        return (), ()
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                m = R[i][c]
                R[i] = [F.sub(x, F.mul(m, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    R = [row for row in R[:r]]
    return tuple(tuple(row) for row in R), tuple(pivots)


def nullspace(F, rows, ncols=None):
    """Canonical rref basis of {x : rows . x^T = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][fc])
        basis.append(tuple(v))
    B, _ = rref(F, basis)
    return B


def mat_inv(F, A):
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = F.inv(aug[c][c])
        aug[c] = [F.mul(inv, x) for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                m = aug[i][c]
                aug[i] = [F.sub(x, F.mul(m, y)) for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def det(F, A):
    n = len(A)
    M = [list(r) for r in A]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                m = F.mul(inv, M[i][c])
                M[i] = [F.sub(x, F.mul(m, y)) for x, y in zip(M[i], M[c])]
    return d


def rank(F, rows):
    return len(rref(F, rows)[0])


def in_rowspace(F, rows_rref, v):
    """Membership test against an rref basis."""
    v = list(v)
    for row in rows_rref:
        c = next((j for j, x in enumerate(row) if x), None)
        if c is not None and v[c]:
            m = v[c]
            v = [F.sub(x, F.mul(m, y)) for x, y in zip(v, row)]
    return not any(v)


# -- numpy helpers for prime fields ---------------------------------------

_F64_SAFE = 2 ** 53


def mulmod(A, B, p):
    """Exact (A @ B) % p via float64 BLAS.

    Inputs must be reduced mod p; the inner dimension k must satisfy
    k*(p-1)^2 < 2^53 so every accumulated dot product is exactly representable.
    """
    k = A.shape[-1]
    assert k * (p - 1) ** 2 < _F64_SAFE
    C = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
    return np.remainder(C, p).astype(np.int64)
