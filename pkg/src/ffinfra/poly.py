"""Univariate polynomial arithmetic over F_q.

A polynomial is an ascending tuple of integer-encoded coefficients (see
ffinfra.fq) with no trailing zero; the zero polynomial is the empty
tuple and has degree -1.  All functions take the coefficient field F
(an Fq instance) as first argument and return normalized tuples.  The
multiply/divide inner loops are delegated to ffinfra.backend.

Factorization is squarefree decomposition + distinct-degree +
equal-degree splitting.  The splitting step is randomized; callers pass
a random.Random for reproducibility, and factor() defaults to a fixed
seed so its output is deterministic.
"""

from __future__ import annotations

import random

from . import backend

PZERO = ()
PONE = (1,)
PX = (0, 1)

__all__ = [
    "PZERO", "PONE", "PX",
    "pdeg", "pnorm", "pconst", "padd", "pneg", "psub", "pscale", "pshift",
    "pmul", "pdivmod", "pmod", "pdiv", "pmonic", "peval", "pderiv",
    "pgcd", "pxgcd", "ppow_mod", "prand", "prev",
    "squarefree", "factor", "is_irreducible", "roots",
]


def pdeg(a):
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def pnorm(coeffs):
    """Tuple with trailing zeros stripped."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def pconst(c):
    return (c,) if c else ()


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = F.add(out[i], bi)
    return pnorm(out)


def pneg(F, a):
    return tuple(F.neg(c) for c in a)


def psub(F, a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] = F.sub(out[i], bi)
    return pnorm(out)


def pscale(F, c, a):
    """Scalar multiple c*a."""
    if not c:
        return ()
    return tuple(F.mul(c, ai) for ai in a)


def pshift(a, k):
    """a * x^k (k >= 0)."""
    if not a:
        return ()
    return (0,) * k + tuple(a)


def pmul(F, a, b):
    return tuple(backend.poly_mul(a, b, F.kernel))


def pdivmod(F, a, b):
    q, r = backend.poly_divmod(a, b, F.kernel)
    return tuple(q), tuple(r)


def pmod(F, a, b):
    return tuple(backend.poly_divmod(a, b, F.kernel)[1])


def pdiv(F, a, b):
    """Exact quotient; raises ValueError if b does not divide a."""
    q, r = backend.poly_divmod(a, b, F.kernel)
    if r:
        raise ValueError("inexact polynomial division")
    return tuple(q)


def pmonic(F, a):
    """(monic multiple of a, leading coefficient); zero maps to ((), 0)."""
    if not a:
        return (), 0
    lc = a[-1]
    if lc == 1:
        return a, 1
    inv = F.inv(lc)
    return tuple(F.mul(inv, c) for c in a), lc


def peval(F, a, c):
    """Value a(c) by Horner's rule."""
    acc = 0
    for ai in reversed(a):
        acc = F.add(F.mul(acc, c), ai)
    return acc


def pderiv(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.embed_int(i), a[i]))
    return pnorm(out)


def pgcd(F, a, b):
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)[0]


def pxgcd(F, a, b):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = PONE, PZERO
    t0, t1 = PZERO, PONE
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if not r0:
        return (), (), ()
    g, lc = pmonic(F, r0)
    if lc != 1:
        inv = F.inv(lc)
        s0 = pscale(F, inv, s0)
        t0 = pscale(F, inv, t0)
    return g, s0, t0


def ppow_mod(F, a, n, m):
    """a^n mod m for n >= 0, deg m >= 1."""
    if n < 0:
        raise ValueError("negative exponent")
    result = pmod(F, PONE, m)
    a = pmod(F, a, m)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, a), m)
        n >>= 1
        if n:
            a = pmod(F, pmul(F, a, a), m)
    return result


def prand(F, deg, rng, monic=False):
    """Random polynomial of degree exactly deg (deg >= 0)."""
    coeffs = [F.random(rng) for _ in range(deg)]
    coeffs.append(1 if monic else F.random_nonzero(rng))
    return tuple(coeffs)


def prev(a, m):
    """Reversal x^m * a(1/x) for m >= deg a."""
    if m < pdeg(a):
        raise ValueError("reversal bound below degree")
    out = [0] * (m + 1)
    for i, c in enumerate(a):
        out[m - i] = c
    return pnorm(out)


# -- factorization ---------------------------------------------------------


def _pth_root(F, a):
    """p-th root of a polynomial that is a p-th power in F_q[x]."""
    p, e = F.p, F.e
    out = []
    for i in range(0, len(a), p):
        c = a[i]
        # inverse Frobenius: c = b^p has b = c^(p^(e-1))
        for _ in range(e - 1):
            c = F.pow_(c, p)
        out.append(c)
    return pnorm(out)


def squarefree(F, f):
    """Squarefree decomposition [(g_i, m_i)] of monic f = prod g_i^m_i."""
    p = F.p
    out = []
    c = pgcd(F, f, pderiv(F, f))
    w = pdiv(F, f, c)
    i = 1
    while pdeg(w) > 0:
        y = pgcd(F, w, c)
        z = pdiv(F, w, y)
        if pdeg(z) > 0:
            out.append((z, i))
        w = y
        c = pdiv(F, c, y)
        i += 1
    if pdeg(c) > 0:
        # remaining part is a p-th power
        for g, m in squarefree(F, _pth_root(F, c)):
            out.append((g, p * m))
    return out


def _ddf(F, f):
    """Distinct-degree split [(product of degree-d irreducibles, d)] of
    monic squarefree f."""
    out = []
    v = f
    h = pmod(F, PX, v)
    d = 0
    while pdeg(v) >= 2 * (d + 1):
        d += 1
        h = ppow_mod(F, h, F.q, v)
        g = pgcd(F, psub(F, h, PX), v)
        if pdeg(g) > 0:
            out.append((g, d))
            v = pdiv(F, v, g)
            h = pmod(F, h, v)
    if pdeg(v) > 0:
        out.append((v, pdeg(v)))
    return out


def _edf(F, f, d, rng):
    """Split monic squarefree f, all of whose irreducible factors have
    degree d, into those factors (Cantor-Zassenhaus)."""
    n = pdeg(f)
    if n == d:
        return [f]
    while True:
        h = prand(F, rng.randrange(1, n + 1) if n > 1 else 1, rng)
        g = pgcd(F, h, f)
        if 0 < pdeg(g) < n:
            break
        if F.p == 2:
            # trace over F_2 of the degree e*d extension
            t = pmod(F, h, f)
            acc = t
            for _ in range(F.e * d - 1):
                t = pmod(F, pmul(F, t, t), f)
                acc = padd(F, acc, t)
            g = pgcd(F, acc, f)
        else:
            t = ppow_mod(F, h, (F.q ** d - 1) // 2, f)
            g = pgcd(F, psub(F, t, PONE), f)
        if 0 < pdeg(g) < n:
            break
    return _edf(F, g, d, rng) + _edf(F, pdiv(F, f, g), d, rng)


def factor(F, f, rng=None):
    """Full factorization (lc, [(monic irreducible, multiplicity), ...]).

    Factors are sorted by (degree, coefficient tuple), so the output is
    canonical; the default rng seed makes the run deterministic too.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if rng is None:
        rng = random.Random(0x5EED)
    fm, lc = pmonic(F, f)
    if pdeg(fm) == 0:
        return lc, []
    out = []
    for g, m in squarefree(F, fm):
        for h, d in _ddf(F, g):
            for irr in _edf(F, h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return lc, out


def is_irreducible(F, f):
    """Rabin irreducibility test."""
    n = pdeg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    fm = pmonic(F, f)[0]
    if ppow_mod(F, PX, F.q ** n, fm) != pmod(F, PX, fm):
        return False
    for ell in _prime_divisors(n):
        h = ppow_mod(F, PX, F.q ** (n // ell), fm)
        if pdeg(pgcd(F, psub(F, h, PX), fm)) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def roots(F, f):
    """Roots of f in F_q, each listed once, sorted by element code."""
    if not f:
        raise ValueError("zero polynomial")
    # restrict to the split part: gcd(x^q - x, f)
    fm = pmonic(F, f)[0]
    if pdeg(fm) == 0:
        return []
    h = psub(F, ppow_mod(F, PX, F.q, fm), pmod(F, PX, fm))
    g = pgcd(F, h, fm)
    out = []
    if pdeg(g) > 0:
        rng = random.Random(0x5EED)
        for lin in _edf(F, g, 1, rng):
            out.append(F.neg(lin[0]))
    return sorted(out)
