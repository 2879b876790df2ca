"""Linear algebra layers: k[x] HNF / weak Popov, integer HNF, F_q kernels."""
from __future__ import annotations

import random
from fractions import Fraction

from ffinfra import fqmat, intlat, polymat
from ffinfra.fq import FieldSpec, Fq
from ffinfra.poly import PZERO, padd, pdeg, pmul, prand


def randmat(F, rng, m, n, maxdeg=3):
    return [[tuple(prand(F, rng.randrange(-1, maxdeg + 1), rng)) for _ in range(n)]
            for _ in range(m)]


# ---------------------------------------------------------------- polymat ---

def test_hnf_shape_and_transform():
    rng = random.Random(41)
    for F in (Fq(5), Fq(FieldSpec(3, 2, (1, 0, 1)))):
        for _ in range(60):
            m = rng.randrange(1, 5)
            n = rng.randrange(1, 5)
            A = randmat(F, rng, m, n)
            H, U, rank, pivots, detu = polymat.hnf(F, A, transform=True)
            assert polymat.mat_mul(F, U, A) == H
            assert detu != 0
            assert len(pivots) == rank
            # pivots strictly increase; pivot entries monic; entries above a
            # pivot have lower degree
            for r, j in enumerate(pivots):
                piv = H[r][j]
                assert piv and piv[-1] == 1
                for i in range(r):
                    assert pdeg(H[i][j]) < pdeg(piv)
                for jj in range(j):
                    assert H[r][jj] == PZERO
            for i in range(rank, m):
                assert all(c == PZERO for c in H[i])


def test_hnf_row_space_preserved():
    rng = random.Random(42)
    F = Fq(5)
    for _ in range(40):
        A = randmat(F, rng, 3, 3)
        H1 = polymat.hnf(F, A)[0]
        # the HNF is a row-space invariant: permuting rows keeps it,
        assert polymat.hnf(F, [A[2], A[0], A[1]])[0] == H1
        # as does adding a polynomial multiple of one row to another
        q = tuple(prand(F, 2, rng))
        B = [list(r) for r in A]
        B[0] = [padd(F, c0, pmul(F, q, c2)) for c0, c2 in zip(A[0], A[2])]
        assert polymat.hnf(F, B)[0] == H1


def test_hnf_det_vs_laplace():
    rng = random.Random(43)
    F = Fq(5)
    for _ in range(40):
        A = randmat(F, rng, 3, 3, maxdeg=2)

        def laplace(M):
            if len(M) == 1:
                return M[0][0]
            total = PZERO
            from ffinfra.poly import padd, pneg
            for j in range(len(M)):
                minor = [row[:j] + row[j + 1:] for row in M[1:]]
                term = pmul(F, M[0][j], laplace(minor))
                total = padd(F, total, pneg(F, term) if j % 2 else term)
            return total

        assert polymat.det(F, A) == laplace(A)


def test_mat_inv_with_den():
    rng = random.Random(44)
    F = Fq(5)
    done = 0
    while done < 25:
        A = randmat(F, rng, 3, 3, maxdeg=2)
        if not polymat.det(F, A):
            continue
        Minv, den = polymat.mat_inv_with_den(F, A)
        prod = polymat.mat_mul(F, A, Minv)
        for i in range(3):
            for j in range(3):
                expect = den if i == j else PZERO
                assert prod[i][j] == expect
        done += 1


def test_weak_popov_pivots_distinct():
    rng = random.Random(45)
    F = Fq(5)
    for _ in range(40):
        A = randmat(F, rng, 3, 4)
        R, T, degs = polymat.weak_popov(F, A, transform=True)
        assert polymat.mat_mul(F, T, A) == R
        pivcols = []
        for row in R:
            if any(c != PZERO for c in row):
                d, l = polymat.row_shifted_degree(row, [0, 0, 0, 0])
                pivcols.append(l)
        assert len(set(pivcols)) == len(pivcols)


# ----------------------------------------------------------------- intlat ---

def test_hnf_int_properties():
    rng = random.Random(46)
    for _ in range(200):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        H, rank, pivots = intlat.hnf_int(rows)
        assert len(H) == rank == len(pivots)
        for r, j in enumerate(pivots):
            assert H[r][j] > 0
            assert all(H[r][jj] == 0 for jj in range(j))
            for i in range(r):
                assert 0 <= H[i][j] < H[r][j]
        # row space unchanged under shuffling input rows
        rng.shuffle(rows)
        assert intlat.hnf_int(rows)[0] == H


def test_hnf_int_det_vs_fraction_gauss():
    rng = random.Random(47)
    for _ in range(100):
        n = rng.randrange(1, 4)
        rows = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(n)]
        M = [[Fraction(c) for c in row] for row in rows]
        det = Fraction(1)
        ok = True
        for j in range(n):
            piv = next((i for i in range(j, n) if M[i][j]), None)
            if piv is None:
                ok = False
                break
            if piv != j:
                M[j], M[piv] = M[piv], M[j]
                det = -det
            det *= M[j][j]
            inv = 1 / M[j][j]
            for i in range(j + 1, n):
                f = M[i][j] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[j])]
        if not ok:
            continue
        H, rank, _ = intlat.hnf_int(rows)
        assert rank == n
        assert intlat.det_int(H) == abs(det)


def test_fd_reduce_and_membership():
    rng = random.Random(48)
    H = [[4, 1], [0, 6]]
    for _ in range(300):
        v = [rng.randrange(-40, 40), rng.randrange(-40, 40)]
        w = intlat.fd_reduce(H, v)
        assert 0 <= w[0] < 4 and 0 <= w[1] < 6
        assert intlat.in_lattice(H, [a - b for a, b in zip(v, w)])
    assert intlat.in_lattice(H, [4, 1])
    assert intlat.in_lattice(H, [8, 2])
    assert not intlat.in_lattice(H, [1, 0])
    assert intlat.det_int(H) == 24


def test_hnf_insert_refines():
    H = [[6, 0], [0, 6]]
    H2 = intlat.hnf_insert(H, [2, 4])
    assert intlat.det_int(H2) == 12
    assert intlat.in_lattice(H2, [2, 4])
    assert intlat.in_lattice(H2, [6, 0])
    # inserting a lattice vector is a no-op
    assert intlat.hnf_insert(H2, [4, 8]) == H2


# ------------------------------------------------------------------ fqmat ---

def test_rref_rank_kernel():
    rng = random.Random(49)
    for F in (Fq(2), Fq(5), Fq(FieldSpec(5, 2, (2, 1, 1)))):
        for _ in range(80):
            m = rng.randrange(1, 5)
            n = rng.randrange(1, 5)
            A = [[rng.randrange(F.q) for _ in range(n)] for _ in range(m)]
            r = fqmat.rank(F, A)
            K = fqmat.right_kernel(F, A)
            assert len(K) == n - r  # rank-nullity
            for v in K:
                prod = fqmat.mat_mul(F, A, [[c] for c in v])
                assert all(row[0] == 0 for row in prod)
            # kernel vectors are independent
            assert fqmat.rank(F, K) == len(K) if K else True


def test_solve_left_and_inverse():
    rng = random.Random(50)
    F = Fq(7)
    done = 0
    while done < 30:
        A = [[rng.randrange(7) for _ in range(3)] for _ in range(3)]
        if fqmat.rank(F, A) < 3:
            continue
        Ainv = fqmat.inverse(F, A)
        assert fqmat.mat_mul(F, A, Ainv) == fqmat.identity(3)
        x = [rng.randrange(7) for _ in range(3)]
        b = fqmat.vec_mat(F, x, A)
        assert fqmat.solve_left(F, A, b) == x
        done += 1
