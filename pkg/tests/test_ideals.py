"""Fractional ideals: canonical HNF form, multiplication, inversion, norms."""
from __future__ import annotations

import random

import pytest

from ffinfra import ffield, ideals
from ffinfra.poly import PONE, pdeg, pmul, pnorm, prand


def rand_integral_elt(ctx, rng, maxdeg=2):
    K = ctx.K
    while True:
        cvec = tuple(tuple(prand(K.F, rng.randrange(-1, maxdeg + 1), rng))
                     for _ in range(K.d))
        if any(cvec):
            return ctx.ok.from_coords(cvec)


def rand_ideal(ctx, rng):
    """A random product of two principal ideals divided by a principal one."""
    a = ideals.principal_ideal(ctx.ok, rand_integral_elt(ctx, rng, 1))
    b = ideals.principal_ideal(ctx.ok, rand_integral_elt(ctx, rng, 1))
    return ideals.ideal_mul(a, ideals.ideal_inv(b))


def test_unit_ideal_is_identity(ctx_f5_rank0, ctx_f7_rank2):
    rng = random.Random(71)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2):
        one = ideals.unit_ideal(ctx.ok)
        for _ in range(10):
            a = rand_ideal(ctx, rng)
            assert ideals.ideal_mul(a, one) == a
        assert ideals.ideal_mul(one, one) == one
        assert ideals.divisor_degree(one) == 0


def test_mul_commutative_associative(ctx_f5_rank0, ctx_f7_rank2):
    rng = random.Random(72)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2):
        for _ in range(12):
            a = rand_ideal(ctx, rng)
            b = rand_ideal(ctx, rng)
            c = rand_ideal(ctx, rng)
            assert ideals.ideal_mul(a, b) == ideals.ideal_mul(b, a)
            assert ideals.ideal_mul(ideals.ideal_mul(a, b), c) == \
                ideals.ideal_mul(a, ideals.ideal_mul(b, c))


def test_inverse(ctx_f5_rank0, ctx_f7_rank2):
    rng = random.Random(73)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2):
        one = ideals.unit_ideal(ctx.ok)
        for _ in range(12):
            a = rand_ideal(ctx, rng)
            assert ideals.ideal_mul(a, ideals.ideal_inv(a)) == one


def test_ideal_pow(ctx_f5_rank0):
    rng = random.Random(74)
    ctx = ctx_f5_rank0
    a = rand_ideal(ctx, rng)
    acc = ideals.unit_ideal(ctx.ok)
    for n in range(5):
        assert ideals.ideal_pow(a, n) == acc
        acc = ideals.ideal_mul(acc, a)
    assert ideals.ideal_pow(a, -2) == ideals.ideal_inv(ideals.ideal_pow(a, 2))


def test_divisor_degree_additive(ctx_f5_rank0, ctx_f7_rank2):
    rng = random.Random(75)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2):
        for _ in range(12):
            a = rand_ideal(ctx, rng)
            b = rand_ideal(ctx, rng)
            assert ideals.divisor_degree(ideals.ideal_mul(a, b)) == \
                ideals.divisor_degree(a) + ideals.divisor_degree(b)
            assert ideals.divisor_degree(ideals.ideal_inv(a)) == \
                -ideals.divisor_degree(a)


def test_principal_ideal_degree_matches_norm(ctx_f5_rank0, ctx_c1):
    # deg div_fin(h) = deg norm(h) for integral h (as ideals of ok)
    rng = random.Random(76)
    for ctx in (ctx_f5_rank0, ctx_c1):
        K = ctx.K
        for _ in range(10):
            h = rand_integral_elt(ctx, rng)
            a = ideals.principal_ideal(ctx.ok, h)
            num, den = K.norm(h)
            assert ideals.divisor_degree(a) == pdeg(num) - pdeg(den)


def test_membership(ctx_f5_rank0):
    ctx = ctx_f5_rank0
    rng = random.Random(77)
    K = ctx.K
    for _ in range(10):
        h = rand_integral_elt(ctx, rng)
        a = ideals.principal_ideal(ctx.ok, h)
        assert ideals.ideal_contains(a, h)
        assert ideals.ideal_contains(a, K.mul(h, rand_integral_elt(ctx, rng)))
        one = K.one
        # 1 is in (h) iff (h) is the unit ideal
        assert ideals.ideal_contains(a, one) == \
            (a == ideals.unit_ideal(ctx.ok))


def test_constructor_rebuilds_verbatim(ctx_f5_rank0):
    ctx = ctx_f5_rank0
    rng = random.Random(78)
    a = rand_ideal(ctx, rng)
    b = ideals.FracIdeal(a.order, a.num, a.den)
    assert a == b
    assert ideals.canonical_bytes(a) == ideals.canonical_bytes(b)


def test_make_ideal_canonicalizes(ctx_f5_rank0):
    ctx = ctx_f5_rank0
    rng = random.Random(79)
    F = ctx.K.F
    a = rand_ideal(ctx, rng)
    # scale every row by the same nonzero polynomial and the denominator too:
    # the content reduction must bring it back
    s = (2, 1)
    rows = [[pmul(F, s, f) if f else () for f in row] for row in a.num]
    b = ideals.make_ideal(a.order, rows, pmul(F, s, a.den))
    assert a == b
    # permuted generating rows produce the same canonical form
    rows2 = [a.num[i] for i in (2, 0, 1)] if len(a.num) == 3 else list(a.num)
    rng.shuffle(rows2)
    assert ideals.make_ideal(a.order, rows2, a.den) == a


def test_place_ideal_and_alpha(ctx_f5_rank0, ctx_f7_rank2):
    for ctx in (ctx_f5_rank0, ctx_f7_rank2):
        for P in ctx.places:
            assert P.alpha is not None  # attached during context build
            assert P.valuation(P.alpha) == -1
            # alpha has nonnegative valuation at the other infinite places
            for Q in ctx.places:
                if Q is not P:
                    assert Q.valuation(P.alpha) >= 0
