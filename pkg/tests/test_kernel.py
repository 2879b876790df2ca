"""Kernel contract and pure-Python / compiled backend agreement.

Both kernels take normalized ascending coefficient sequences (no trailing
zeros, zero polynomial = empty) plus a field kernel descriptor, and return
normalized lists.  The compiled backend is optional; agreement tests skip
when it is not built.
"""
from __future__ import annotations

import random

import pytest

from ffinfra import _kernel_py as KP
from ffinfra import backend
from ffinfra.fq import FieldSpec, Fq

try:
    from ffinfra import _kernel_c as KC
except ImportError:
    KC = None

FIELDS = [
    Fq(2),
    Fq(5),
    Fq(1009),
    Fq(FieldSpec(2, 3, (1, 1, 0, 1))),
    Fq(FieldSpec(5, 2, (2, 1, 1))),
    Fq(FieldSpec(31, 2, (3, 29, 1))),
]


def randpoly(rng, F, maxdeg):
    d = rng.randrange(-1, maxdeg + 1)
    if d < 0:
        return []
    return [rng.randrange(F.q) for _ in range(d)] + [rng.randrange(1, F.q)]


def test_backend_selected():
    assert backend.name in ("py", "c")
    for fn in ("poly_mul", "poly_divmod", "poly_submul", "poly_axpy_shift"):
        assert callable(getattr(backend, fn))


def test_py_kernel_contract():
    F = Fq(5)
    fk = F.kernel
    assert KP.poly_mul([], [1, 2], fk) == []
    assert KP.poly_mul([2], [3], fk) == [1]
    assert KP.poly_divmod([4, 0, 1], [2, 1], fk) == ([3, 1], [3])
    # results are normalized: (x+2)(x+3) = x^2 + 0x + 1 over F_5
    assert KP.poly_mul([2, 1], [3, 1], fk) == [1, 0, 1]
    assert KP.poly_submul([1, 0, 1], [1], [1, 0, 1], fk) == []


def test_py_kernel_matches_field_ops():
    rng = random.Random(31)
    for F in FIELDS:
        fk = F.kernel
        for _ in range(150):
            a = randpoly(rng, F, 7)
            b = randpoly(rng, F, 7)
            # reference: schoolbook with Fq ops
            ref = [0] * (len(a) + len(b) - 1) if a and b else []
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    ref[i + j] = F.add(ref[i + j], F.mul(ai, bj))
            while ref and not ref[-1]:
                ref.pop()
            assert KP.poly_mul(a, b, fk) == ref
            if b:
                q, r = KP.poly_divmod(a, b, fk)
                # a = q*b + r and deg r < deg b
                qb = KP.poly_mul(q, b, fk)
                total = list(qb) + [0] * max(0, len(r) - len(qb))
                for i, c in enumerate(r):
                    total[i] = F.add(total[i], c)
                while total and not total[-1]:
                    total.pop()
                assert total == list(a)
                assert len(r) < len(b)


@pytest.mark.skipif(KC is None, reason="compiled kernel not built")
def test_c_matches_py_all_fields():
    rng = random.Random(7)
    for F in FIELDS:
        fk = F.kernel
        for _ in range(600):
            a = randpoly(rng, F, 9)
            b = randpoly(rng, F, 9)
            q = randpoly(rng, F, 5)
            assert KC.poly_mul(a, b, fk) == KP.poly_mul(a, b, fk)
            assert KC.poly_submul(a, q, b, fk) == KP.poly_submul(a, q, b, fk)
            if b:
                assert KC.poly_divmod(a, b, fk) == KP.poly_divmod(a, b, fk)
                s = rng.randrange(F.q)
                k = rng.randrange(4)
                assert KC.poly_axpy_shift(a, b, s, k, fk) == \
                    KP.poly_axpy_shift(a, b, s, k, fk)


@pytest.mark.skipif(KC is None, reason="compiled kernel not built")
def test_c_edge_cases():
    for F in FIELDS:
        fk = F.kernel
        assert KC.poly_mul([], [], fk) == []
        assert KC.poly_mul([1], [], fk) == []
        assert KC.poly_divmod([], [1], fk) == ([], [])
        assert KC.poly_divmod([3], [0, 1], fk) == ([], [3])
        assert KC.poly_submul([], [], [], fk) == []
