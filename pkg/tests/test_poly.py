"""Univariate polynomial arithmetic over F_q, cross-checked against sympy."""
from __future__ import annotations

import random

from sympy import GF, Poly, Symbol

from ffinfra.fq import FieldSpec, Fq
from ffinfra.poly import (
    PONE,
    PZERO,
    factor,
    is_irreducible,
    padd,
    pdeg,
    pdivmod,
    peval,
    pgcd,
    pmonic,
    pmul,
    pnorm,
    prand,
    pxgcd,
    roots,
    squarefree,
)

x = Symbol("x")


def to_sympy(a, p):
    return Poly(list(reversed(a)) or [0], x, domain=GF(p))


def from_sympy(f, p):
    return pnorm([int(c) % p for c in reversed(f.all_coeffs())])


def test_mul_divmod_vs_sympy():
    rng = random.Random(21)
    for p in (2, 3, 5, 1009):
        F = Fq(p)
        for _ in range(120):
            a = prand(F, rng.randrange(0, 9), rng)
            b = prand(F, rng.randrange(0, 9), rng)
            sa, sb = to_sympy(a, p), to_sympy(b, p)
            assert pmul(F, a, b) == from_sympy(sa * sb, p)
            assert padd(F, a, b) == from_sympy(sa + sb, p)
            if b:
                q, r = pdivmod(F, a, b)
                sq, sr = divmod(sa, sb)
                assert q == from_sympy(sq, p)
                assert r == from_sympy(sr, p)


def test_gcd_vs_sympy():
    rng = random.Random(22)
    for p in (2, 5, 31):
        F = Fq(p)
        for _ in range(80):
            a = prand(F, rng.randrange(0, 7), rng)
            b = prand(F, rng.randrange(0, 7), rng)
            g = pgcd(F, a, b)
            sg = to_sympy(a, p).gcd(to_sympy(b, p))
            assert g == from_sympy(sg, p)


def test_xgcd_bezout():
    rng = random.Random(23)
    F = Fq(FieldSpec(5, 2, (2, 1, 1)))
    for _ in range(100):
        a = prand(F, rng.randrange(0, 7), rng)
        b = prand(F, rng.randrange(0, 7), rng)
        g, u, v = pxgcd(F, a, b)
        assert padd(F, pmul(F, u, a), pmul(F, v, b)) == g
        if a or b:
            assert g and g[-1] == 1  # monic gcd
            _, ra = pdivmod(F, a, g) if g != PONE else (None, PZERO)
            assert pdivmod(F, a, g)[1] == PZERO
            assert pdivmod(F, b, g)[1] == PZERO


def test_eval_is_hom():
    rng = random.Random(24)
    for F in (Fq(5), Fq(FieldSpec(3, 2, (1, 0, 1)))):
        for _ in range(60):
            a = prand(F, rng.randrange(0, 6), rng)
            b = prand(F, rng.randrange(0, 6), rng)
            c = rng.randrange(F.q)
            assert peval(F, pmul(F, a, b), c) == F.mul(peval(F, a, c), peval(F, b, c))
            assert peval(F, padd(F, a, b), c) == F.add(peval(F, a, c), peval(F, b, c))


def test_factor_vs_sympy():
    rng = random.Random(25)
    for p in (2, 3, 5):
        F = Fq(p)
        for _ in range(40):
            f = prand(F, rng.randrange(1, 9), rng)
            if not f:
                continue
            lc, facs = factor(F, f)
            # product of factors reproduces f
            acc = (lc,)
            for g, e in facs:
                assert g[-1] == 1 and is_irreducible(F, g)
                for _ in range(e):
                    acc = pmul(F, acc, g)
            assert acc == f
            # factor multiset matches sympy
            sfacs = to_sympy(f, p).factor_list()[1]
            mine = sorted((g, e) for g, e in facs)
            theirs = sorted((from_sympy(sf, p), e) for sf, e in sfacs)
            assert mine == theirs


def test_is_irreducible_vs_sympy():
    rng = random.Random(26)
    for p in (2, 5):
        F = Fq(p)
        for _ in range(80):
            f = prand(F, rng.randrange(1, 8), rng, monic=True)
            assert is_irreducible(F, f) == to_sympy(f, p).is_irreducible


def test_roots():
    rng = random.Random(27)
    F = Fq(31)
    for _ in range(60):
        f = prand(F, rng.randrange(1, 6), rng)
        if not f:
            continue
        rs = roots(F, f)
        assert rs == sorted(c for c in range(F.q) if peval(F, f, c) == 0
                            for _ in range(1))  # set equality, multiplicity-free
        assert len(set(rs)) == len(rs)


def test_squarefree_decomposition():
    F = Fq(5)
    f = pmul(F, pmul(F, (1, 1), (1, 1)), (2, 0, 1))  # (x+1)^2 (x^2+2)
    sf = squarefree(F, f)
    assert sorted(sf) == [((1, 1), 2), ((2, 0, 1), 1)]
    acc = PONE
    for g, m in sf:
        for _ in range(m):
            acc = pmul(F, acc, g)
    assert acc == f  # f is monic, so the decomposition reproduces it exactly
    # parts are pairwise coprime
    for i, (g, _) in enumerate(sf):
        for h, _ in sf[i + 1:]:
            assert pgcd(F, g, h) == PONE


def test_pnorm_contract():
    assert pnorm([0, 0, 0]) == PZERO
    assert pnorm([3, 0, 0]) == (3,)
    assert pnorm([0, 1]) == (0, 1)
    assert pdeg(PZERO) == -1 and pdeg(PONE) == 0
