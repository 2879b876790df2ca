"""Matrices over F_q[x].

A matrix is a list of rows; each row is a list of polynomial tuples
(see ffinfra.poly).  Everything here is exact.  The two workhorses are

* hnf: row Hermite normal form by Euclidean elimination.  Pivots are
  monic, entries above a pivot have degree strictly below it, zero rows
  sink to the bottom; for a square nonsingular matrix the form is the
  canonical triangular basis of the row module.

* weak_popov: shifted row reduction.  With column shifts s the shifted
  degree of a row is max_l (deg row[l] + s[l]) and its pivot is the
  rightmost column attaining it; rows are reduced against each other
  until pivots are distinct.  The resulting rows have the predictable
  degree property, which is what turns Riemann-Roch membership
  conditions into per-row degree bounds.
"""

from __future__ import annotations

from . import backend
from .poly import padd, pdeg, pdiv, pdivmod, pmul, pscale, pshift, psub, PONE

NEG_INF = -(1 << 60)  # shifted degree of an all-zero row

__all__ = [
    "mat_identity", "mat_mul", "mat_vec", "vec_mat", "mat_transpose",
    "hnf", "det", "mat_inv_with_den", "weak_popov", "row_shifted_degree",
    "NEG_INF",
]


def mat_identity(n):
    return [[PONE if i == j else () for j in range(n)] for i in range(n)]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(F, A, B):
    Bt = list(zip(*B))
    out = []
    for row in A:
        orow = []
        for col in Bt:
            acc = ()
            for a, b in zip(row, col):
                if a and b:
                    acc = padd(F, acc, pmul(F, a, b))
            orow.append(acc)
        out.append(orow)
    return out


def mat_vec(F, A, v):
    """A @ v for a column vector v (list of polys)."""
    out = []
    for row in A:
        acc = ()
        for a, b in zip(row, v):
            if a and b:
                acc = padd(F, acc, pmul(F, a, b))
        out.append(acc)
    return out


def vec_mat(F, v, A):
    """v @ A for a row vector v."""
    n = len(A[0]) if A else 0
    out = [()] * n
    for vi, row in zip(v, A):
        if vi:
            for j, a in enumerate(row):
                if a:
                    out[j] = padd(F, out[j], pmul(F, vi, a))
    return out


def _row_axpy(F, dst, src, q):
    """dst -= q * src, in place."""
    if not q:
        return
    fk = F.kernel
    for j, s in enumerate(src):
        if s:
            dst[j] = tuple(backend.poly_submul(dst[j], q, s, fk))


def hnf(F, A, transform=False):
    """Row Hermite normal form.

    Returns (H, U, rank, pivots, detu): U @ A == H when transform is
    requested (else U is None), pivots lists the pivot column of each of
    the first `rank` rows, and detu is the determinant of U (a nonzero
    scalar; swaps and monic rescalings are the only ops that change it).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(r) for r in A]
    U = mat_identity(m) if transform else None
    detu = 1
    r = 0
    pivots = []
    for j in range(n):
        if r == m:
            break
        rows_j = [i for i in range(r, m) if H[i][j]]
        if not rows_j:
            continue
        while True:
            piv = min((i for i in range(r, m) if H[i][j]),
                      key=lambda i: pdeg(H[i][j]), default=-1)
            if piv < 0:
                raise AssertionError("pivot vanished")
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if U is not None:
                    U[r], U[piv] = U[piv], U[r]
                detu = F.neg(detu)
            others = [i for i in range(r + 1, m) if H[i][j]]
            if not others:
                break
            for i in others:
                q, _ = pdivmod(F, H[i][j], H[r][j])
                _row_axpy(F, H[i], H[r], q)
                if U is not None:
                    _row_axpy(F, U[i], U[r], q)
        lc = H[r][j][-1]
        if lc != 1:
            inv = F.inv(lc)
            H[r] = [pscale(F, inv, f) for f in H[r]]
            if U is not None:
                U[r] = [pscale(F, inv, f) for f in U[r]]
            detu = F.mul(detu, inv)
        for i in range(r):
            if H[i][j] and pdeg(H[i][j]) >= pdeg(H[r][j]):
                q, _ = pdivmod(F, H[i][j], H[r][j])
                _row_axpy(F, H[i], H[r], q)
                if U is not None:
                    _row_axpy(F, U[i], U[r], q)
        pivots.append(j)
        r += 1
    return H, U, r, pivots, detu


def det(F, A):
    """Determinant of a square matrix (a polynomial tuple)."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return PONE
    H, _, rank, _, detu = hnf(F, A)
    if rank < n:
        return ()
    d = PONE
    for i in range(n):
        d = pmul(F, d, H[i][i])
    return pscale(F, F.inv(detu), d)


def mat_inv_with_den(F, A):
    """(B, den) with A @ B == den * I, den the monic determinant of A
    up to the scalar making it monic.  Raises ValueError if singular."""
    n = len(A)
    H, U, rank, _, _ = hnf(F, A, transform=True)
    if rank < n:
        raise ValueError("singular matrix")
    den = PONE
    for i in range(n):
        den = pmul(F, den, H[i][i])
    # X = den * H^{-1} by back substitution (entries are exact)
    X = [[()] * n for _ in range(n)]
    for c in range(n):
        for i in range(n - 1, -1, -1):
            acc = den if i == c else ()
            for j in range(i + 1, n):
                if H[i][j] and X[j][c]:
                    acc = psub(F, acc, pmul(F, H[i][j], X[j][c]))
            X[i][c] = pdiv(F, acc, H[i][i]) if acc else ()
    return mat_mul(F, X, U), den


def row_shifted_degree(row, shifts):
    """(shifted degree, pivot column) of a row; (NEG_INF, -1) if zero.
    The pivot is the rightmost column attaining the shifted degree."""
    best, bestl = NEG_INF, -1
    for l, f in enumerate(row):
        if f:
            d = len(f) - 1 + shifts[l]
            if d >= best:
                best, bestl = d, l
    return best, bestl


def weak_popov(F, A, shifts=None, transform=False):
    """Shifted weak Popov form.

    Returns (R, T, degs): R has pairwise distinct pivot columns among
    its nonzero rows, T @ A == R when transform is requested, and degs
    lists each row's shifted degree (NEG_INF for zero rows).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if shifts is None:
        shifts = [0] * n
    R = [list(r) for r in A]
    T = mat_identity(m) if transform else None
    info = [row_shifted_degree(r, shifts) for r in R]
    while True:
        bycol = {}
        clash = None
        for i in range(m):
            d, l = info[i]
            if l < 0:
                continue
            if l in bycol:
                clash = (bycol[l], i, l)
                break
            bycol[l] = i
        if clash is None:
            break
        a, b, l = clash
        # reduce the row with the larger pivot degree by the other;
        # on a tie the later row is reduced so earlier rows stay put
        da, db = pdeg(R[a][l]), pdeg(R[b][l])
        src, dst = (a, b) if db >= da else (b, a)
        k = pdeg(R[dst][l]) - pdeg(R[src][l])
        c = F.mul(R[dst][l][-1], F.inv(R[src][l][-1]))
        for j in range(n):
            s = R[src][j]
            if s:
                R[dst][j] = psub(F, R[dst][j], pshift(pscale(F, c, s), k))
        if T is not None:
            for j in range(m):
                s = T[src][j]
                if s:
                    T[dst][j] = psub(F, T[dst][j], pshift(pscale(F, c, s), k))
        info[dst] = row_shifted_degree(R[dst], shifts)
    return R, T, [d for d, _ in info]
