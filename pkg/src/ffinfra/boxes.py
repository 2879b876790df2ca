"""Riemann-Roch spaces for divisors split into a finite ideal and
exponents at the infinite places.

The space of a divisor div(a) + sum_i t_i p_i (a a fractional ideal of
the finite order, p_i the infinite places) is the intersection of the
inverse ideal a^{-1} with the product of infinite prime powers
J = prod p_i^{-t_i}.  Writing both modules in power-basis coordinates,
the transition matrix between their bases has entries with poles only
at x = 0 and x = infinity once the finite module is integral -- its
denominator is a power of x.  Membership then reduces to bounding the
x-degrees of a polynomial row vector times a fixed matrix, which a
weak Popov form solves: row degrees give one bound per basis row and
the space gets an explicit monomial basis.

The same module provides the genus (dimension count for one large
divisor against Riemann's theorem) and the valuation filtration used to
pick minimal elements of a space: echelonizing a basis by valuation at
one infinite place via leading-coefficient residues.
"""

from __future__ import annotations

from . import polymat as PM
from .ideals import ideal_inv, ideal_mul, ideal_pow, unit_ideal
from .poly import PONE, padd, pdeg, pdiv, pgcd, pmul, pshift, prev

__all__ = ["BoxBasis", "rr_space", "rr_dim", "genus_of",
           "max_valuation_stratum"]


class BoxBasis:
    """Explicit basis of a Riemann-Roch space.

    Elements are sums over j and 0 <= e <= bounds[j] of F_q-multiples of
    x^e * gens[j] / den, where gens[j] is a coordinate row w.r.t. the
    finite order's basis.  dim = sum(bounds[j] + 1).
    """

    __slots__ = ("order", "gens", "bounds", "den", "dim")

    def __init__(self, order, gens, bounds, den):
        self.order = order
        self.gens = [tuple(g) for g in gens]
        self.bounds = list(bounds)
        self.den = den
        self.dim = sum(b + 1 for b in self.bounds)

    def basis_elements(self):
        """The monomial basis as field elements."""
        out = []
        for g, b in zip(self.gens, self.bounds):
            for e in range(b + 1):
                row = [pshift(c, e) if c else () for c in g]
                out.append(self.order.from_coords(row, self.den))
        return out

    def __repr__(self):
        return f"BoxBasis(dim={self.dim})"


def _umat_to_x(F, M, dU):
    """Rewrite a k[u]-matrix over a k[u]-denominator as a k[x]-matrix over
    a k[x]-denominator (u = 1/x)."""
    degs = [[pdeg(f) for f in row] for row in M]
    dmax = max((d for row in degs for d in row if d >= 0), default=0)
    ddu = pdeg(dU)
    dmax = max(dmax, ddu)
    Mx = [[pshift(prev(f, degs[i][j]), dmax - degs[i][j]) if f else ()
           for j, f in enumerate(row)] for i, row in enumerate(M)]
    dx = pshift(prev(dU, ddu), dmax - ddu)
    return Mx, dx


def _mat_content_reduce(F, A, den):
    g = den
    for row in A:
        for f in row:
            if f and pdeg(g) > 0:
                g = pgcd(F, g, f)
    if pdeg(g) > 0:
        A = [[pdiv(F, f, g) if f else () for f in row] for row in A]
        den = pdiv(F, den, g)
    return A, den


def _place_power(ctx, idx, k):
    """ctx.places[idx] ** k as a fractional ideal of the infinite order."""
    cache = ctx._place_pow_cache
    key = (idx, k)
    got = cache.get(key)
    if got is not None:
        return got
    place = ctx.places[idx]
    from .ideals import FracIdeal
    if k == 0:
        out = unit_ideal(ctx.oinf)
    elif k == 1:
        out = FracIdeal(ctx.oinf, place.hnf, PONE)
    elif k == -1:
        out = ideal_inv(_place_power(ctx, idx, 1))
    elif k > 0:
        out = ideal_mul(_place_power(ctx, idx, k - 1), _place_power(ctx, idx, 1))
    else:
        out = ideal_mul(_place_power(ctx, idx, k + 1), _place_power(ctx, idx, -1))
    cache[key] = out
    return out


def _s_ideal(ctx, texp):
    """prod_i places[i]^(-texp[i]) over the infinite order."""
    key = tuple(texp)
    got = ctx._s_ideal_cache.get(key)
    if got is not None:
        return got
    J = unit_ideal(ctx.oinf)
    for i, t in enumerate(key):
        if t:
            J = ideal_mul(J, _place_power(ctx, i, -t))
    ctx._s_ideal_cache[key] = J
    return J


def rr_space(ctx, a, t):
    """Basis of the space of the divisor div(a) + sum t_i p_i.

    a is a fractional ideal of the finite order; t gives one exponent per
    infinite place, distinguished place last.
    """
    if len(t) != len(ctx.places):
        raise ValueError("need one exponent per infinite place")
    F = ctx.K.F
    ok = ctx.ok
    inv = ideal_inv(a)
    delta = inv.den
    ddeg = pdeg(delta)
    # clear the denominator of a^{-1}: work with its integral numerator
    # module and absorb delta into the infinite exponents
    texp = [ti + p.e * ddeg for ti, p in zip(t, ctx.places)]
    J = _s_ideal(ctx, texp)
    if any(c for c in J.den[:-1]) or (J.den and J.den[-1] != 1):
        raise AssertionError("infinite-prime product has a non-u denominator")
    # power-basis coordinates of both modules (x-world)
    NV = PM.mat_mul(F, [list(r) for r in inv.num], ok.om)
    Wx, dWx = _umat_to_x(F, [list(r) for r in J.num], J.den)
    NW = PM.mat_mul(F, Wx, ctx.oinf.om)
    dNW = pmul(F, dWx, ctx.oinf.om_den)
    # transition matrix T = NV/dV * (NW/dNW)^{-1}; its denominator must be
    # a power of x (poles confined to x = 0 and infinity)
    BW, dB = PM.mat_inv_with_den(F, NW)
    NT = PM.mat_mul(F, NV, BW)
    NT = [[pmul(F, dNW, f) if f else () for f in row] for row in NT]
    NT, dT = _mat_content_reduce(F, NT, pmul(F, ok.om_den, dB))
    if any(c for c in dT[:-1]):
        raise AssertionError("transition denominator is not a power of x")
    s = pdeg(dT)
    # rows a in k[x]^d with deg((a*NT)_j) <= s for all j
    R, U, degs = PM.weak_popov(F, NT, transform=True)
    gens = []
    bounds = []
    for i, rdeg in enumerate(degs):
        b = s - rdeg
        if b >= 0:
            gens.append(PM.vec_mat(F, list(U[i]), [list(r) for r in inv.num]))
            bounds.append(b)
    return BoxBasis(ok, gens, bounds, delta)


def rr_dim(ctx, a, t):
    return rr_space(ctx, a, t).dim


def genus_of(ctx):
    """Genus via one large Riemann-Roch dimension.

    For F monic of degree d in y with x-degree at most M, the genus is at
    most B = (d-1)(M-1); a divisor of degree >= 2B+1 is nonspecial, so
    dim = deg + 1 - g determines g exactly.
    """
    K = ctx.K
    d = K.d
    M = max((pdeg(f) for f in K.fy[:d] if f), default=0)
    B = max(0, (d - 1) * (M - 1))
    P = ctx.dist
    m = -(-(2 * B + 1) // P.deg)
    t = [0] * len(ctx.places)
    t[-1] = m
    dim = rr_space(ctx, unit_ideal(ctx.ok), t).dim
    g = m * P.deg + 1 - dim
    if g < 0 or dim < 1:
        raise AssertionError("genus computation is inconsistent")
    return g


def max_valuation_stratum(ctx, place, elems, clear_exp, cap, fin_den=PONE):
    """Echelonize a basis of an F_q-space by valuation at one infinite place.

    elems must be F_q-linearly independent field elements whose poles at
    the infinite places are cleared by multiplying with u^clear_exp and
    whose finite poles are cleared by the polynomial fin_den.  Returns
    (vmax, stratum): the largest valuation attained by a nonzero element
    of the span, and basis elements realizing it (every nonzero
    combination of the returned elements has valuation exactly vmax).
    cap bounds the possible valuation; exceeding it signals a bug.
    """
    K = ctx.K
    F = K.F
    oinf = ctx.oinf
    u = K.inv(K.from_x((0, 1)))
    # fin_den * u^deg(fin_den) kills the finite poles and has valuation 0
    # at every infinite place, so it never disturbs the leading residues
    dd = pdeg(fin_den)
    mult = K.mul(K.from_x(fin_den), K.pow_(u, dd + clear_exp)) \
        if dd + clear_exp else K.from_x(fin_den)
    if place.alpha is None:
        raise RuntimeError("place has no anti-uniformizer attached")

    def residue(h, v):
        shift = v + clear_exp * place.e
        w = K.mul(h, mult)
        if shift:
            w = K.mul(w, K.pow_(place.alpha, shift))
        cv = oinf.coords(w)
        if cv is None:
            raise AssertionError("cleared element left the infinite order")
        return place.residue_vec(cv)

    def smul(c, h):
        vec = tuple(tuple(F.mul(c, cc) for cc in f) if f else ()
                    for f in h[0])
        return (vec, h[1])

    pool = [(place.valuation(h), h) for h in elems]
    while True:
        vmin = min(v for v, _ in pool)
        if vmin > cap:
            raise AssertionError("valuation filtration exceeded its cap")
        low = [h for v, h in pool if v == vmin]
        rest = [(v, h) for v, h in pool if v > vmin]
        # Gauss-reduce the residue rows of the lowest level, tracking the
        # combinations; dependencies climb to a strictly higher valuation
        keep = []
        climbed = []
        basis_rows = []
        combos = []
        for i, h in enumerate(low):
            r = list(residue(h, vmin))
            comb = [0] * len(low)
            comb[i] = 1
            for br, bc in zip(basis_rows, combos):
                piv = next(k for k, c in enumerate(br) if c)
                if r[piv]:
                    f = F.mul(r[piv], F.inv(br[piv]))
                    for k in range(len(r)):
                        if br[k]:
                            r[k] = F.sub(r[k], F.mul(f, br[k]))
                    for k in range(len(low)):
                        if bc[k]:
                            comb[k] = F.sub(comb[k], F.mul(f, bc[k]))
            if any(r):
                basis_rows.append(r)
                combos.append(comb)
                keep.append(h)
            else:
                hh = K.zero
                for c, hl in zip(comb, low):
                    if c:
                        hh = K.add(hh, smul(c, hl))
                if K.is_zero(hh):
                    raise AssertionError("basis elements were dependent")
                v = place.valuation(hh)
                if v <= vmin or v > cap:
                    raise AssertionError("valuation filtration failed to climb")
                climbed.append((v, hh))
        # Combinations involving a kept element have valuation exactly vmin
        # (their residues are independent), so if anything lives strictly
        # above, the top stratum is spanned without the kept elements.
        if keep and not rest and not climbed:
            return vmin, keep
        pool = rest + climbed
