"""Function fields, orders, and places: arithmetic, valuations, product formula."""
from __future__ import annotations

import random

import pytest

from ffinfra import ffield, ideals
from ffinfra.fq import Fq
from ffinfra.poly import PONE, factor, pmul, pnorm, prand


def rand_elt(ctx, rng, maxdeg=2):
    K = ctx.K
    while True:
        vec = tuple(tuple(prand(K.F, rng.randrange(-1, maxdeg + 1), rng))
                    for _ in range(K.d))
        if any(vec):
            return K.elt(vec)


def test_field_arithmetic_axioms(ctx_f5_rank0, ctx_f7_rank2, ctx_c1):
    rng = random.Random(61)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2, ctx_c1):
        K = ctx.K
        for _ in range(40):
            a = rand_elt(ctx, rng)
            b = rand_elt(ctx, rng)
            c = rand_elt(ctx, rng)
            assert K.mul(a, b) == K.mul(b, a)
            assert K.add(a, b) == K.add(b, a)
            assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            assert K.is_zero(K.sub(a, a))
            assert K.mul(a, K.inv(a)) == K.one
            assert K.sub(K.add(a, b), b) == a


def test_defining_relation(ctx_f5_rank0, ctx_f7_rank2, ctx_c1):
    # y, as an element, satisfies F(x, y) = 0
    for ctx in (ctx_f5_rank0, ctx_f7_rank2, ctx_c1):
        K = ctx.K
        y = K.elt(((), PONE) + ((),) * (K.d - 2))
        acc = K.zero
        ypow = K.one
        for i in range(K.d + 1):
            acc = K.add(acc, K.mul(K.from_x(K.fy[i]), ypow))
            if i < K.d:
                ypow = K.mul(ypow, y)
        assert K.is_zero(acc)


def test_norm_multiplicative(ctx_f5_rank0, ctx_c1):
    rng = random.Random(62)
    for ctx in (ctx_f5_rank0, ctx_c1):
        K = ctx.K
        F = K.F
        for _ in range(25):
            a = rand_elt(ctx, rng)
            b = rand_elt(ctx, rng)
            na = K.norm(a)
            nb = K.norm(b)
            nab = K.norm(K.mul(a, b))
            lhs = (pmul(F, na[0], nb[0]), pmul(F, na[1], nb[1]))
            lhs = ffield.rnorm(F, *lhs)
            assert lhs == nab


def test_infinite_places_sum_efd(ctx_f5_rank0, ctx_f7_rank2, ctx_f3_g2,
                                 ctx_f5_g3, ctx_c1):
    for ctx in (ctx_f5_rank0, ctx_f7_rank2, ctx_f3_g2, ctx_f5_g3, ctx_c1):
        assert sum(p.e * p.f for p in ctx.places) == ctx.K.d
        assert ctx.dist is ctx.places[-1]
        # the distinguished place is deg 1 whenever one exists
        if any(p.deg == 1 for p in ctx.places):
            assert ctx.dist.deg == 1


def test_valuation_is_discrete_and_multiplicative(ctx_f5_rank0, ctx_f7_rank2):
    rng = random.Random(63)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2):
        K = ctx.K
        for P in ctx.places:
            x_elt = K.from_x((0, 1))
            # v_P(x) = -e at every infinite place
            assert P.valuation(x_elt) == -P.e
            for _ in range(25):
                a = rand_elt(ctx, rng)
                b = rand_elt(ctx, rng)
                va, vb = P.valuation(a), P.valuation(b)
                assert P.valuation(K.mul(a, b)) == va + vb
                s = K.add(a, b)
                if not K.is_zero(s):
                    assert P.valuation(s) >= min(va, vb)
                if va != vb:
                    assert P.valuation(s) == min(va, vb)
                assert P.valuation(K.inv(a)) == -va


def finite_divisor(ctx, h):
    """[(place, v_P(h))] over finite places via norm factorization."""
    K = ctx.K
    F = K.F
    num_den = K.norm(h)
    out = []
    for side in (0, 1):
        poly = num_den[side]
        if pnorm(poly) in ((), PONE):
            continue
        for prime, _ in factor(F, poly)[1]:
            for P in ffield.split_prime(ctx.ok, prime):
                ideals.attach_alpha(P)
                v = P.valuation(h)
                if v:
                    out.append((P, v))
    # deduplicate (a prime can divide both num and den of the norm)
    seen = {}
    for P, v in out:
        seen[P.key()] = (P, v)
    return list(seen.values())


def test_product_formula(ctx_f5_rank0, ctx_f7_rank2, ctx_f3_g2):
    rng = random.Random(64)
    for ctx in (ctx_f5_rank0, ctx_f7_rank2, ctx_f3_g2):
        K = ctx.K
        for _ in range(8):
            h = rand_elt(ctx, rng)
            total = sum(P.valuation(h) * P.deg for P in ctx.places)
            total += sum(v * P.deg for P, v in finite_divisor(ctx, h))
            assert total == 0


def test_norm_degree_identity(ctx_f5_rank0, ctx_c1):
    # deg at infinity of h equals -deg(norm) as a rational function in x
    rng = random.Random(65)
    for ctx in (ctx_f5_rank0, ctx_c1):
        K = ctx.K
        from ffinfra.poly import pdeg
        for _ in range(15):
            h = rand_elt(ctx, rng)
            num, den = K.norm(h)
            inf_deg = sum(P.valuation(h) * P.deg for P in ctx.places)
            assert inf_deg == -(pdeg(num) - pdeg(den))


def test_order_coords_roundtrip(ctx_f5_rank0, ctx_c1):
    rng = random.Random(66)
    for ctx in (ctx_f5_rank0, ctx_c1):
        for order in (ctx.ok, ctx.oinf):
            K = ctx.K
            for _ in range(25):
                cvec = tuple(tuple(prand(K.F, rng.randrange(-1, 3), rng))
                             for _ in range(K.d))
                h = order.from_coords(cvec)
                assert order.contains(h)
                assert list(order.coords(h)) == [pnorm(c) for c in cvec]
            # an element with a pole at a finite prime is not in ok
            x_inv = K.from_x(PONE, (0, 1))
            assert not ctx.ok.contains(x_inv)


def test_context_invariants(ctx_f5_rank0, ctx_f7_rank2, ctx_f3_g2, ctx_f5_g1,
                            ctx_f3_g3, ctx_f5_g3, ctx_c1):
    expected = {
        "f5_rank0": (0, 2, 2),
        "f7_rank2": (2, 1, 1),
        "f3_g2": (1, 2, 1),
        "f5_g1": (1, 1, 1),
        "f3_g3": (1, 3, 1),
        "f5_g3": (1, 3, 1),
        "c1": (1, 3, 1),
    }
    ctxs = {
        "f5_rank0": ctx_f5_rank0, "f7_rank2": ctx_f7_rank2,
        "f3_g2": ctx_f3_g2, "f5_g1": ctx_f5_g1, "f3_g3": ctx_f3_g3,
        "f5_g3": ctx_f5_g3, "c1": ctx_c1,
    }
    for name, (n, g, dist_deg) in expected.items():
        ctx = ctxs[name]
        assert ctx.n == n, name
        assert ctx.genus == g, name
        assert ctx.dist.deg == dist_deg, name


def test_build_context_rejects_reducible():
    F = Fq(5)
    # y^2 - x^2 = (y-x)(y+x)
    with pytest.raises(ValueError):
        ffield.build_context(F, (pnorm((0, 0, 4)), (), PONE))
