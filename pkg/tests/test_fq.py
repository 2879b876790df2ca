"""Finite field arithmetic: axioms, table/raw agreement, spec validation."""
from __future__ import annotations

import random

import pytest

from ffinfra.fq import FieldSpec, Fq, is_prime

FIELDS = [
    Fq(2),
    Fq(3),
    Fq(5),
    Fq(1009),
    Fq(FieldSpec(2, 3, (1, 1, 0, 1))),
    Fq(FieldSpec(3, 2, (1, 0, 1))),
    Fq(FieldSpec(5, 2, (2, 1, 1))),
    Fq(FieldSpec(31, 2, (3, 29, 1))),
]


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 1009}
    for n in range(2, 40):
        assert is_prime(n) == (n in primes)
    assert is_prime(1009)
    assert not is_prime(1)
    assert not is_prime(961)


def test_field_axioms_sampled():
    rng = random.Random(11)
    for F in FIELDS:
        for _ in range(200):
            a = rng.randrange(F.q)
            b = rng.randrange(F.q)
            c = rng.randrange(F.q)
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.add(a, 0) == a
            assert F.mul(a, 1) == a
            assert F.add(a, F.neg(a)) == 0
            assert F.sub(a, b) == F.add(a, F.neg(b))
            if a:
                assert F.mul(a, F.inv(a)) == 1


def test_pow_matches_repeated_mul():
    rng = random.Random(12)
    for F in FIELDS:
        for _ in range(40):
            a = rng.randrange(1, F.q)
            n = rng.randrange(0, 3 * F.q)
            acc = 1
            for _ in range(n % (F.q - 1) if F.q > 2 else n % 1):
                acc = F.mul(acc, a)
            # a^(q-1) = 1, so reduce the exponent before the slow loop
            assert F.pow_(a, n) == acc


def test_frobenius_and_fermat():
    for F in FIELDS:
        for a in range(min(F.q, 64)):
            # x -> x^p is additive (Frobenius)
            b = (a * 7 + 3) % F.q
            assert F.pow_(F.add(a, b), F.p) == F.add(F.pow_(a, F.p), F.pow_(b, F.p))
            if a:
                assert F.pow_(a, F.q - 1) == 1


def test_coeffs_roundtrip():
    for F in FIELDS:
        for a in range(min(F.q, 200)):
            cs = F.coeffs(a)
            assert len(cs) == F.e
            assert all(0 <= c < F.p for c in cs)
            assert F.from_coeffs(cs) == a


def test_embed_int_is_ring_hom():
    for F in FIELDS:
        for n in range(-6, 12):
            for m in range(-3, 7):
                assert F.embed_int(n + m) == F.add(F.embed_int(n), F.embed_int(m))
                assert F.embed_int(n * m) == F.mul(F.embed_int(n), F.embed_int(m))


def test_extension_agrees_with_prime_subfield():
    F25 = Fq(FieldSpec(5, 2, (2, 1, 1)))
    F5 = Fq(5)
    for a in range(5):
        for b in range(5):
            assert F25.add(a, b) == F5.add(a, b)
            assert F25.mul(a, b) == F5.mul(a, b)


def test_spec_validation():
    with pytest.raises(ValueError):
        Fq(4)
    with pytest.raises(ValueError):
        Fq(FieldSpec(5, 2, (1, 0, 1)))  # x^2 + 1 = (x+2)(x+3) over F_5
    with pytest.raises(ValueError):
        FieldSpec(5, 2, (1, 1))  # wrong modulus length
    with pytest.raises(ValueError):
        FieldSpec(5, 2, (1, 1, 2))  # not monic
    with pytest.raises(ValueError):
        FieldSpec(5, 1, (0, 1))  # prime field takes no modulus


def test_instances_cached_and_digest_stable():
    assert Fq(5) is Fq(5)
    s = FieldSpec(5, 2, (2, 1, 1))
    assert Fq(s) is Fq(s)
    assert Fq(5).digest != Fq(3).digest
    assert Fq(s).digest != Fq(5).digest


def test_kernel_descriptor_shape():
    for F in FIELDS:
        fk = F.kernel
        assert fk[1] == F.p and fk[2] == F.q
        if F.e == 1:
            assert fk[0] == 0
        elif F.q <= 1 << 16:
            assert fk[0] == 1
            assert len(fk[3]) == 2 * (F.q - 1) and len(fk[4]) == F.q
