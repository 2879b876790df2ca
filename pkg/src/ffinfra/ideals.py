"""Fractional ideals of an order, in Hermite normal form.

A FracIdeal over an Order (ffinfra.ffield) is a pair (num, den): num is
the canonical row HNF of an integral ideal w.r.t. the order's basis
(d x d over k[var], monic pivots) and den is a monic polynomial in the
order's variable; the ideal is (1/den) * rowspan(num).  The pair is
normalized so num's entries and den share no factor, which makes equal
ideals compare equal componentwise and gives a canonical byte
serialization (used as a hash key by the group walks).

Multiplication expands products of basis generators through the order's
structure constants and re-HNFs.  Inversion computes the module
{c : c * M_j integral for all j} dual to the stacked multiplication
matrices of the generators, via a column HNF and a triangular inverse.
"""

from __future__ import annotations

from . import polymat as PM
from .poly import (PONE, padd, pdeg, pdiv, pdivmod, pgcd, pmod, pmonic,
                   pmul, pnorm, psub)

__all__ = [
    "FracIdeal", "make_ideal", "unit_ideal", "principal_ideal",
    "ideal_mul", "ideal_inv", "ideal_pow", "divisor_degree",
    "ideal_contains", "canonical_bytes", "ideal_from_place", "attach_alpha",
]

_FORMAT_TAG = b"IDL1"  # bump when the serialization below changes


class FracIdeal:
    __slots__ = ("order", "num", "den")

    def __init__(self, order, num, den):
        self.order = order
        self.num = tuple(tuple(row) for row in num)
        self.den = den

    def __eq__(self, other):
        return (isinstance(other, FracIdeal) and self.order is other.order
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((id(self.order), self.num, self.den))

    def __repr__(self):
        return f"FracIdeal(var={self.order.var!r}, den_deg={pdeg(self.den)})"


def make_ideal(order, rows, den=PONE):
    """Canonical FracIdeal spanned by the coordinate rows over den."""
    F = order.K.F
    H, _, rank, _, _ = PM.hnf(F, [list(r) for r in rows])
    if rank != order.K.d:
        raise ValueError("ideal basis does not have full rank")
    H = H[:rank]
    den = pmonic(F, pnorm(den))[0]
    g = den
    for row in H:
        for f in row:
            if f and pdeg(g) > 0:
                g = pgcd(F, g, f)
    if pdeg(g) > 0:
        H = [[pdiv(F, f, g) if f else () for f in row] for row in H]
        den = pdiv(F, den, g)
    return FracIdeal(order, H, den)


def unit_ideal(order):
    d = order.K.d
    return FracIdeal(order, [[PONE if i == j else () for j in range(d)]
                             for i in range(d)], PONE)


def _coord_mul(order, u, v):
    """Coordinate vector of the product of two coordinate vectors."""
    F = order.K.F
    d = order.K.d
    S = order.S
    out = [()] * d
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    c = pmul(F, ui, vj)
                    row = S[i][j]
                    for l in range(d):
                        if row[l]:
                            out[l] = padd(F, out[l], pmul(F, c, row[l]))
    return out


def principal_ideal(order, h):
    """The ideal h * O."""
    K = order.K
    if K.is_zero(h):
        raise ValueError("zero element generates no fractional ideal")
    F = K.F
    pairs = []
    den = PONE
    for b in order.basis:
        cvec, cden = order.coords_rat(K.mul(h, b))
        pairs.append((cvec, cden))
        den = pmul(F, den, pdiv(F, cden, pgcd(F, den, cden)))
    rows = []
    for cvec, cden in pairs:
        scale = pdiv(F, den, cden)
        rows.append([pmul(F, c, scale) if c else () for c in cvec])
    return make_ideal(order, rows, den)


def ideal_mul(a, b):
    if a.order is not b.order:
        raise ValueError("ideals of different orders")
    order = a.order
    F = order.K.F
    rows = []
    for ra in a.num:
        for rb in b.num:
            rows.append(_coord_mul(order, ra, rb))
    return make_ideal(order, rows, pmul(F, a.den, b.den))


def _mult_matrix_rows(order, gen):
    """Rows i of the matrix sending coords c to coords of c * gen."""
    d = order.K.d
    ident = [[PONE if j == i else () for j in range(d)] for i in range(d)]
    return [_coord_mul(order, ident[i], gen) for i in range(d)]


def ideal_inv(a):
    """The inverse fractional ideal."""
    order = a.order
    F = order.K.F
    d = order.K.d
    # invert the integral part: {c : c * M_j integral for every generator}
    blocks = [_mult_matrix_rows(order, g) for g in a.num]
    wide = [[blk[i][l] for blk in blocks for l in range(d)]
            for i in range(d)]
    H, _, rank, _, _ = PM.hnf(F, PM.mat_transpose(wide))
    if rank != d:
        raise ValueError("ideal is not invertible")
    R = H[:d]
    B, dR = PM.mat_inv_with_den(F, R)
    rows = PM.mat_transpose(B)
    # scale back by the original denominator
    if a.den != PONE:
        rows = [[pmul(F, a.den, f) if f else () for f in row] for row in rows]
    return make_ideal(order, rows, dR)


def ideal_pow(a, n):
    if n < 0:
        a = ideal_inv(a)
        n = -n
    result = unit_ideal(a.order)
    while n:
        if n & 1:
            result = ideal_mul(result, a)
        n >>= 1
        if n:
            a = ideal_mul(a, a)
    return result


def divisor_degree(a):
    """Degree of the divisor of the ideal: deg det(num) - d * deg(den).
    Positive for integral ideals."""
    degdet = sum(pdeg(a.num[i][i]) for i in range(len(a.num)))
    return degdet - a.order.K.d * pdeg(a.den)


def ideal_contains(a, h):
    """Whether the element h lies in the fractional ideal a."""
    order = a.order
    K = order.K
    if K.is_zero(h):
        return True
    F = K.F
    cvec, cden = order.coords_rat(h)
    # h in (1/den) span(num)  <=>  (den*h coords)/cden is a k[var]-combination
    # of the HNF rows.  Triangularity makes the combination unique; peel it
    # off coordinate by coordinate, requiring each quotient to be exact.
    v = [pmul(F, a.den, c) if c else () for c in cvec]
    d = len(v)
    for i in range(d):
        if not v[i]:
            continue
        q, r = pdivmod(F, v[i], pmul(F, a.num[i][i], cden))
        if r:
            return False
        qc = pmul(F, q, cden)
        for j in range(i, d):
            if a.num[i][j]:
                v[j] = psub(F, v[j], pmul(F, qc, a.num[i][j]))
    return not any(v)


def canonical_bytes(a):
    """Deterministic serialization: format tag, order side, field digest,
    then den and the HNF rows with 32-bit length prefixes and fixed-width
    little-endian coefficients."""
    F = a.order.K.F
    parts = [_FORMAT_TAG, bytes([1 if a.order.var == "u" else 0]), F.digest]
    for poly in (a.den,) + tuple(f for row in a.num for f in row):
        parts.append(len(poly).to_bytes(4, "little"))
        for c in poly:
            parts.append(F.element_bytes(c))
    return b"".join(parts)


def ideal_from_place(place):
    return FracIdeal(place.order, place.hnf, PONE)


def attach_alpha(place):
    """Attach an anti-uniformizer: an element of P^{-1} outside the order,
    so v_P(alpha) = -1 and v_Q(alpha) >= 0 at every other prime Q."""
    if place.alpha is not None:
        return
    order = place.order
    F = order.K.F
    inv = ideal_inv(ideal_from_place(place))
    for row in inv.num:
        if any(f and pmod(F, f, inv.den) for f in row):
            place.alpha = order.from_coords(list(row), inv.den)
            return
    raise AssertionError("P^{-1} has no element outside the order")
