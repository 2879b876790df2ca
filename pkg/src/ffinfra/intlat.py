"""Integer row lattices.

Small exact routines for the sublattices of Z^n produced by unit-lattice
computations: row Hermite normal form (upper triangular, positive
pivots, entries above a pivot reduced into [0, pivot)), determinants,
and reduction of vectors into the HNF fundamental parallelepiped.
Matrices are lists of int lists.
"""

from __future__ import annotations

__all__ = ["hnf_int", "det_int", "fd_reduce", "in_lattice", "hnf_insert"]


def hnf_int(rows):
    """(H, rank, pivots) row Hermite normal form of integer rows.

    H is upper triangular on its pivot columns: pivots positive, entries
    above a pivot lie in [0, pivot).  Zero rows are dropped.
    """
    if not rows:
        return [], 0, []
    m, n = len(rows), len(rows[0])
    H = [list(r) for r in rows]
    r = 0
    pivots = []
    for j in range(n):
        if r == m:
            break
        if not any(H[i][j] for i in range(r, m)):
            continue
        while True:
            piv = min((i for i in range(r, m) if H[i][j]),
                      key=lambda i: abs(H[i][j]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
            others = [i for i in range(r + 1, m) if H[i][j]]
            if not others:
                break
            for i in others:
                q = H[i][j] // H[r][j]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        if H[r][j] < 0:
            H[r] = [-a for a in H[r]]
        for i in range(r):
            q = H[i][j] // H[r][j]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        pivots.append(j)
        r += 1
    return [H[i] for i in range(r)], r, pivots


def det_int(H):
    """Determinant of a full-rank square HNF (product of pivots)."""
    d = 1
    for i, row in enumerate(H):
        d *= row[i]
    return d


def fd_reduce(H, v):
    """Canonical representative of v modulo the full-rank square lattice
    basis H (upper-triangular HNF): the result w satisfies
    0 <= w[i] < H[i][i] and w == v mod the row span."""
    w = list(v)
    for i in range(len(H)):
        q = w[i] // H[i][i]
        if q:
            w = [a - q * b for a, b in zip(w, H[i])]
    return w


def in_lattice(H, v):
    """Whether v lies in the row span of the full-rank square HNF H."""
    return not any(fd_reduce(H, v))


def hnf_insert(H, v):
    """HNF of the lattice spanned by the rows of H plus the vector v."""
    return hnf_int(list(H) + [list(v)])[0]
