"""Dense linear algebra over F_q.

Matrices are lists of rows of integer-encoded field elements.  Vectors
are rows throughout the package, so a linear map with matrix A acts as
v |-> v @ A; kernels and solves below follow that convention.
"""

from __future__ import annotations

__all__ = [
    "identity", "transpose", "mat_mul", "vec_mat", "rref",
    "right_kernel", "left_kernel", "solve_left", "rank", "inverse",
]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(F, A, B):
    Bt = list(zip(*B))
    out = []
    for row in A:
        orow = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            orow.append(acc)
        out.append(orow)
    return out


def vec_mat(F, v, A):
    n = len(A[0]) if A else 0
    out = [0] * n
    for vi, row in zip(v, A):
        if vi:
            for j, a in enumerate(row):
                if a:
                    out[j] = F.add(out[j], F.mul(vi, a))
    return out


def rref(F, A):
    """(reduced row echelon form, pivot columns)."""
    R = [list(r) for r in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if R[i][j]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][j])
        R[r] = [F.mul(inv, a) for a in R[r]]
        for i in range(m):
            if i != r and R[i][j]:
                c = R[i][j]
                R[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(R[i], R[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(F, A):
    return len(rref(F, A)[1])


def right_kernel(F, A):
    """Basis of {v : A @ v = 0} (as row vectors)."""
    m = len(A)
    n = len(A[0]) if m else 0
    R, pivots = rref(F, A)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for r, j in enumerate(pivots):
            v[j] = F.neg(R[r][fcol])
        basis.append(v)
    return basis


def left_kernel(F, A):
    """Basis of {v : v @ A = 0}."""
    return right_kernel(F, transpose(A))


def solve_left(F, A, b):
    """Some v with v @ A = b, or None if inconsistent."""
    # solve A^T x = b^T
    At = transpose(A)
    m = len(At)
    aug = [row + [bi] for row, bi in zip(At, b)]
    R, pivots = rref(F, aug)
    n = len(A)
    if n in pivots:
        return None
    v = [0] * n
    for r, j in enumerate(pivots):
        v[j] = R[r][-1]
    return v


def inverse(F, A):
    """Inverse of a square matrix, or None if singular."""
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = rref(F, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in R]
