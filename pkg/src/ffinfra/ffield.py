"""Global function fields K = F_q(x)[y]/(F) and their two maximal orders.

Conventions used throughout:

* The defining polynomial F is monic in y of degree d; it is stored as a
  tuple fy of d+1 polynomials in x (ascending powers of y, fy[d] == 1).

* A field element is a pair (vec, den): vec is a tuple of d polynomials
  in x (the coordinates w.r.t. the power basis 1, y, ..., y^(d-1)) and
  den is a monic polynomial in x; the pair is normalized so that den
  has no common factor with all of vec.

* Two orders matter: the maximal order over k[x] (the "finite" side)
  and the maximal order over k[u], u = 1/x (the "infinite" side).  An
  Order stores its basis, the change of basis to power coordinates, and
  the multiplication tensor of the basis over k[var]; ideals of either
  order are handled uniformly by ffinfra.ideals on top of that tensor.

* Places of the infinite order above u (and of the finite order above a
  monic irreducible p(x)) are computed by splitting O/pO into local
  components: the radical is the kernel of an iterated Frobenius, the
  semisimple quotient is split with idempotents obtained by factoring
  minimal polynomials, and the idempotents are lifted back.  Each place
  carries its HNF ideal basis, ramification index and residue degree,
  and (once attached) an anti-uniformizer alpha with v_P(alpha) = -1
  and v_Q(alpha) >= 0 at every other place of its order, which makes
  v_P(h) computable by repeated multiplication.
"""

from __future__ import annotations

import random

from . import fqmat as QM
from . import polymat as PM
from .fq import FieldSpec, Fq
from .poly import (
    PONE, PX, factor, is_irreducible, padd, pconst, pdeg, pdiv,
    pdivmod, peval, pgcd, pmod, pmonic, pmul, pneg, pnorm, prev, pscale,
    pshift, psub, pxgcd, squarefree,
)

__all__ = [
    "FunctionField", "Order", "Place", "FieldCtx", "build_context",
    "split_prime", "kummer_data",
]


# -- rational-function helpers ----------------------------------------------


def rnorm(F, num, den):
    """Normalize a rational function: monic denominator, no common factor."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), PONE
    g = pgcd(F, num, den)
    if pdeg(g) > 0:
        num = pdiv(F, num, g)
        den = pdiv(F, den, g)
    den, lc = pmonic(F, den)
    if lc != 1:
        num = pscale(F, F.inv(lc), num)
    return num, den


def rat_recip(F, num, den):
    """Rewrite the rational function num(t)/den(t) in s = 1/t.

    Works in both directions (x to u and back) since s = 1/t is an
    involution.  Returns a normalized pair in the new variable."""
    dn, dd = pdeg(num), pdeg(den)
    if dn < 0:
        return (), PONE
    nu = prev(num, dn)
    du = prev(den, dd)
    if dd >= dn:
        nu = pshift(nu, dd - dn)
    else:
        du = pshift(du, dn - dd)
    return rnorm(F, nu, du)


def _mat_content_reduce(F, A, den):
    """Divide a polynomial matrix and its common denominator by their gcd."""
    g = den
    for row in A:
        for f in row:
            if f:
                g = pgcd(F, g, f)
            if pdeg(g) == 0:
                break
        if pdeg(g) == 0:
            break
    if pdeg(g) > 0:
        A = [[pdiv(F, f, g) if f else () for f in row] for row in A]
        den = pdiv(F, den, g)
    den, lc = pmonic(F, den)
    if lc != 1:
        inv = F.inv(lc)
        A = [[pscale(F, inv, f) for f in row] for row in A]
    return A, den


# -- the field ---------------------------------------------------------------


class FunctionField:
    """K = F_q(x)[y]/(F) with exact element arithmetic."""

    __slots__ = ("F", "fy", "d", "_ypow", "zero", "one", "ex", "ey")

    def __init__(self, F, fy):
        fy = tuple(pnorm(c) for c in fy)
        if len(fy) < 2 or fy[-1] != PONE:
            raise ValueError("defining polynomial must be monic in y")
        self.F = F
        self.fy = fy
        self.d = d = len(fy) - 1
        # y^k for k = d .. 2d-2 in power coordinates (polynomial entries)
        ypow = {d: tuple(pneg(F, fy[j]) for j in range(d))}
        for k in range(d, 2 * d - 2):
            v = ypow[k]
            shifted = [()] + list(v[: d - 1])
            top = v[d - 1]
            if top:
                shifted = [padd(F, s, pmul(F, top, w))
                           for s, w in zip(shifted, ypow[d])]
            ypow[k + 1] = tuple(shifted)
        self._ypow = ypow
        self.zero = (((),) * d, PONE)
        self.one = self.elt((PONE,) + ((),) * (d - 1))
        self.ex = self.elt((PX,) + ((),) * (d - 1))
        if d > 1:
            self.ey = self.elt(((), PONE) + ((),) * (d - 2))
        else:
            self.ey = self.elt(ypow[1])

    def elt(self, vec, den=PONE):
        """Normalized element from power coordinates vec and denominator."""
        F = self.F
        vec = tuple(pnorm(v) for v in vec)
        if len(vec) != self.d:
            raise ValueError("coordinate vector has wrong length")
        if all(not v for v in vec):
            return self.zero
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = den
        for v in vec:
            if v and pdeg(g) > 0:
                g = pgcd(F, g, v)
        if pdeg(g) > 0:
            vec = tuple(pdiv(F, v, g) if v else () for v in vec)
            den = pdiv(F, den, g)
        den, lc = pmonic(F, den)
        if lc != 1:
            inv = F.inv(lc)
            vec = tuple(pscale(F, inv, v) for v in vec)
        return (vec, den)

    def from_x(self, num, den=PONE):
        """The element num(x)/den(x)."""
        return self.elt((pnorm(num),) + ((),) * (self.d - 1), pnorm(den))

    def is_zero(self, h):
        return all(not v for v in h[0])

    def add(self, a, b):
        F = self.F
        va, da = a
        vb, db = b
        g = pgcd(F, da, db)
        ca = pdiv(F, db, g)
        cb = pdiv(F, da, g)
        vec = tuple(padd(F, pmul(F, v, ca), pmul(F, w, cb))
                    for v, w in zip(va, vb))
        return self.elt(vec, pmul(F, da, ca))

    def neg(self, a):
        return (tuple(pneg(self.F, v) for v in a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_vec(self, va, vb):
        """Product of two coordinate vectors, reduced to degree < d."""
        F, d = self.F, self.d
        conv = [()] * (2 * d - 1)
        for i, vi in enumerate(va):
            if vi:
                for j, wj in enumerate(vb):
                    if wj:
                        conv[i + j] = padd(F, conv[i + j], pmul(F, vi, wj))
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                red = self._ypow[k]
                for j in range(d):
                    if red[j]:
                        out[j] = padd(F, out[j], pmul(F, ck, red[j]))
        return tuple(out)

    def mul(self, a, b):
        return self.elt(self._mul_vec(a[0], b[0]), pmul(self.F, a[1], b[1]))

    def mult_matrix(self, vec):
        """Matrix of multiplication by the integral part vec: row j holds
        the power coordinates of vec * y^j."""
        F, d = self.F, self.d
        rows = [list(vec)]
        cur = list(vec)
        for _ in range(d - 1):
            nxt = [()] + cur[: d - 1]
            top = cur[d - 1]
            if top:
                red = self._ypow[d]
                nxt = [padd(F, s, pmul(F, top, w)) for s, w in zip(nxt, red)]
            rows.append(nxt)
            cur = nxt
        return rows

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        F = self.F
        M = self.mult_matrix(a[0])
        B, den = PM.mat_inv_with_den(F, M)
        vec = tuple(pmul(F, a[1], c) if c else () for c in B[0])
        return self.elt(vec, den)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def norm(self, a):
        """Field norm as a rational function (num, den)."""
        F = self.F
        nm = PM.det(F, self.mult_matrix(a[0]))
        dn = PONE
        for _ in range(self.d):
            dn = pmul(F, dn, a[1])
        return rnorm(F, nm, dn)

    def trace_vec(self, vec):
        """Trace of the integral element with power coordinates vec."""
        F = self.F
        M = self.mult_matrix(vec)
        t = ()
        for j in range(self.d):
            t = padd(F, t, M[j][j])
        return t

    def __repr__(self):
        return f"FunctionField(q={self.F.q}, d={self.d})"


# -- orders ------------------------------------------------------------------


class Order:
    """An order of K, free of rank d over k[x] (var 'x') or k[u] (var 'u').

    Stores the power-coordinate matrix of its basis, its inverse, and
    the multiplication tensor S with S[i][j] the coordinate vector of
    basis[i]*basis[j] over k[var].  Construction validates that the
    basis spans a ring containing 1; a basis that is not closed under
    multiplication is rejected.
    """

    __slots__ = ("K", "var", "basis", "om", "om_den", "oi", "oi_den",
                 "S", "one_coords")

    def __init__(self, K, var, basis):
        if var not in ("x", "u"):
            raise ValueError("order variable must be 'x' or 'u'")
        if len(basis) != K.d:
            raise ValueError("basis has wrong length")
        F = K.F
        self.K = K
        self.var = var
        self.basis = tuple(basis)
        # common-denominator power-coordinate matrix
        den = PONE
        for b in basis:
            den = pmul(F, den, pdiv(F, b[1], pgcd(F, den, b[1])))
        om = []
        for b in basis:
            scale = pdiv(F, den, b[1])
            om.append([pmul(F, v, scale) if v else () for v in b[0]])
        self.om, self.om_den = _mat_content_reduce(F, om, den)
        try:
            B, dB = PM.mat_inv_with_den(F, self.om)
        except ValueError:
            raise ValueError("basis is not a k(x)-basis of K") from None
        # inverse of om/om_den is om_den * B / dB
        oi = [[pmul(F, self.om_den, f) if f else () for f in row] for row in B]
        self.oi, self.oi_den = _mat_content_reduce(F, oi, dB)
        one = self.coords(K.one)
        if one is None:
            raise ValueError("1 does not lie in the span of the basis")
        self.one_coords = one
        # multiplication tensor (also proves the basis spans a ring)
        d = K.d
        S = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                prod = K.mul(basis[i], basis[j])
                c = self.coords(prod)
                if c is None:
                    raise ValueError(
                        "basis is not closed under multiplication "
                        f"(basis[{i}]*basis[{j}] leaves the module)")
                S[i][j] = S[j][i] = c
        self.S = S

    # coordinates w.r.t. the order basis --------------------------------

    def coords_rat(self, h):
        """(vector of k[var] polys, monic den in k[var]) for any h in K."""
        F = self.K.F
        vec, den = h
        num = PM.vec_mat(F, list(vec), self.oi)
        dden = pmul(F, den, self.oi_den)
        pairs = [rnorm(F, f, dden) if f else ((), PONE) for f in num]
        if self.var == "u":
            pairs = [rat_recip(F, n, d) for n, d in pairs]
        # combine to a common denominator
        cden = PONE
        for _, d in pairs:
            cden = pmul(F, cden, pdiv(F, d, pgcd(F, cden, d)))
        out = []
        for n, d in pairs:
            out.append(pmul(F, n, pdiv(F, cden, d)) if n else ())
        return out, cden

    def coords(self, h):
        """Integral coordinates (list of k[var] polys) or None."""
        vec, den = self.coords_rat(h)
        if pdeg(den) > 0:
            return None
        return vec

    def contains(self, h):
        return self.coords(h) is not None

    def from_coords(self, cvec, den=PONE):
        """Element sum_i cvec[i]/den * basis[i], cvec over k[var]."""
        K = self.K
        F = K.F
        acc = K.zero
        for c, b in zip(cvec, self.basis):
            if not c:
                continue
            if self.var == "u":
                n, dd = rat_recip(F, c, PONE)
            else:
                n, dd = c, PONE
            acc = K.add(acc, K.mul(K.from_x(n, dd), b))
        if den != PONE:
            if self.var == "u":
                n, dd = rat_recip(F, den, PONE)
                acc = K.div(acc, K.from_x(n, dd))
            else:
                acc = K.div(acc, K.from_x(den))
        return acc

    def disc(self):
        """Discriminant of the basis: det of the trace form, a polynomial
        in k[var] (integrality is a consistency check)."""
        K = self.K
        F = K.F
        d = K.d
        T = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                prod = K.mul(self.basis[i], self.basis[j])
                n, dd = rnorm(F, K.trace_vec(prod[0]), prod[1])
                if self.var == "u":
                    n, dd = rat_recip(F, n, dd)
                if pdeg(dd) > 0:
                    raise ValueError("trace form is not integral")
                T[i][j] = T[j][i] = n
        return PM.det(F, T)

    def __repr__(self):
        return f"Order(var={self.var!r}, d={self.K.d})"


# -- places ------------------------------------------------------------------


class Place:
    """A prime of an order, with enough structure to compute valuations."""

    __slots__ = ("order", "prime", "hnf", "e", "f", "deg", "alpha", "_key")

    def __init__(self, order, prime, hnf_rows, e, f):
        self.order = order
        self.prime = prime
        self.hnf = tuple(tuple(row) for row in hnf_rows)
        self.e = e
        self.f = f
        self.deg = f * pdeg(prime)
        self.alpha = None
        F = order.K.F
        parts = [bytes([1 if order.var == "u" else 0])]
        for poly in (prime,) + tuple(c for row in self.hnf for c in row):
            parts.append(len(poly).to_bytes(4, "little"))
            for c in poly:
                parts.append(F.element_bytes(c))
        self._key = b"".join(parts)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Place) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return (self.deg, self._key) < (other.deg, other._key)

    def residue_dim(self):
        """dim over F_q of the residue field (= self.deg)."""
        return self.deg

    def residue_vec(self, cvec):
        """Residue of an integral coordinate vector modulo the place, as a
        flat F_q-vector of length deg (coefficients of the coordinate
        remainders after reduction by the HNF rows)."""
        F = self.order.K.F
        v = [pnorm(c) for c in cvec]
        d = len(v)
        for i in range(d):
            piv = self.hnf[i][i]
            if pdeg(v[i]) >= pdeg(piv):
                q, _ = pdivmod(F, v[i], piv)
                for j in range(i, d):
                    if self.hnf[i][j]:
                        v[j] = psub(F, v[j], pmul(F, q, self.hnf[i][j]))
        out = []
        for i in range(d):
            w = pdeg(self.hnf[i][i])
            out.extend(list(v[i]) + [0] * (w - len(v[i])))
        return out

    def valuation(self, h):
        """v_P(h) for nonzero h in K (requires alpha to be attached)."""
        order = self.order
        K = order.K
        if K.is_zero(h):
            raise ZeroDivisionError("valuation of zero")
        if self.alpha is None:
            raise RuntimeError("anti-uniformizer not attached")
        F = K.F
        cvec, cden = order.coords_rat(h)
        # pull the prime out of the denominator
        kden = 0
        while True:
            q, r = pdivmod(F, cden, self.prime)
            if r:
                break
            cden = q
            kden += 1
        # lower bound: divide the prime out of all numerator coordinates
        m0 = None
        for c in cvec:
            if c:
                k = 0
                cc = c
                while True:
                    q, r = pdivmod(F, cc, self.prime)
                    if r:
                        break
                    cc = q
                    k += 1
                m0 = k if m0 is None else min(m0, k)
                if m0 == 0:
                    break
        if m0:
            pk = PONE
            for _ in range(m0):
                pk = pmul(F, pk, self.prime)
            cvec = [pdiv(F, c, pk) if c else () for c in cvec]
        else:
            m0 = 0
        # the remaining denominator is coprime to the prime, so it is a
        # unit at this place and contributes nothing beyond -e*kden
        eta = order.from_coords(cvec)
        j = 0
        cur = K.mul(eta, self.alpha)
        while order.contains(cur):
            j += 1
            cur = K.mul(cur, self.alpha)
        return self.e * (m0 - kden) + j

    def __repr__(self):
        return (f"Place(var={self.order.var!r}, deg={self.deg}, "
                f"e={self.e}, f={self.f})")


# -- prime splitting ---------------------------------------------------------


def _residue_setup(order, prime):
    """Coefficient field k0 of O/(prime) and the reduction k[var] -> k0."""
    F = order.K.F
    m = pdeg(prime)
    if m == 1:
        root = F.neg(prime[0])

        def red(poly):
            return peval(F, poly, root)

        return F, red
    if F.e == 1:
        k0 = Fq(FieldSpec(F.p, m, tuple(prime)))

        def red(poly):
            r = pmod(F, poly, prime)
            return k0.from_coeffs(list(r) + [0] * (m - len(r)))

        return k0, red
    raise NotImplementedError(
        "residue fields of degree > 1 over a non-prime constant field "
        "form a tower this package does not construct")


def _min_poly(k0, amul, eps, rows, g):
    """Minimal polynomial of g in the unital algebra with identity eps
    spanned by rows (all vectors in ambient coordinates)."""
    powers = [eps]
    cur = eps
    for _ in range(len(rows) + 1):
        cur = amul(cur, g)
        sol = QM.solve_left(k0, powers, cur)
        if sol is not None:
            return pnorm([k0.neg(c) for c in sol] + [1])
        powers.append(cur)
    raise AssertionError("minimal polynomial exceeds algebra dimension")


def split_prime(order, prime):
    """Places of `order` above the monic irreducible `prime` of k[var].

    Splits A = O/(prime) into its local components: the radical is the
    kernel of an iterated Frobenius, the semisimple quotient is cut by
    idempotents found through minimal-polynomial factorizations, and the
    idempotents are Hensel-lifted back to A (in a commutative ring the
    individual lifts are automatically orthogonal and complete).
    """
    K = order.K
    F = K.F
    d = K.d
    prime = pmonic(F, pnorm(prime))[0]
    if not is_irreducible(F, prime):
        raise ValueError("cannot split a reducible modulus")
    k0, red = _residue_setup(order, prime)
    m = pdeg(prime)
    T = [[tuple(red(c) for c in order.S[i][j]) for j in range(d)]
         for i in range(d)]
    one0 = [red(c) for c in order.one_coords]

    def amul(u, v):
        out = [0] * d
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        c = k0.mul(ui, vj)
                        row = T[i][j]
                        for l in range(d):
                            if row[l]:
                                out[l] = k0.add(out[l], k0.mul(c, row[l]))
        return out

    def apow(v, n):
        out = list(one0)
        while n:
            if n & 1:
                out = amul(out, v)
            n >>= 1
            if n:
                v = amul(v, v)
        return out

    # radical = kernel of Frobenius iterated past the nilpotency order
    frob = [apow([1 if j == i else 0 for j in range(d)], k0.q)
            for i in range(d)]
    mtot = frob
    grown = k0.q
    while grown < d:
        mtot = QM.mat_mul(k0, mtot, frob)
        grown *= k0.q
    rad = QM.left_kernel(k0, mtot)
    r = len(rad)
    s = d - r
    # complement of the radical and the two maps A <-> B = A/rad
    rad_r, rad_pivots = QM.rref(k0, rad) if rad else ([], [])
    comp = [[1 if j == c else 0 for j in range(d)]
            for c in range(d) if c not in rad_pivots]
    stack = (rad_r + comp) if rad_r else comp
    stack_inv = QM.inverse(k0, stack)

    def proj(v):
        return QM.vec_mat(k0, v, stack_inv)[r:]

    def lift(w):
        return QM.vec_mat(k0, w, comp)

    one_b = proj(one0)

    def bmul(u, v):
        return proj(amul(lift(u), lift(v)))

    # split the semisimple quotient
    rng = random.Random(0xA17)
    final = []
    work = [(one_b, QM.identity(s))]
    while work:
        eps, rows = work.pop()
        c = len(rows)
        if c == 1:
            final.append((eps, 1))
            continue
        done = False
        for attempt in range(64 * c):
            if attempt < c:
                g = list(rows[attempt])
            else:
                g = [0] * s
                for row in rows:
                    t = k0.random(rng)
                    if t:
                        g = [k0.add(a, k0.mul(t, b)) for a, b in zip(g, row)]
            mu = _min_poly(k0, bmul, eps, rows, g)
            facs = factor(k0, mu)[1]
            if len(facs) == 1:
                irr, mult = facs[0]
                if mult != 1:
                    raise AssertionError("non-squarefree minimal polynomial "
                                         "in a semisimple algebra")
                if pdeg(irr) == c:
                    final.append((eps, c))
                    done = True
                    break
                continue
            for irr, mult in facs:
                if mult != 1:
                    raise AssertionError("non-squarefree minimal polynomial "
                                         "in a semisimple algebra")
                cof = pdiv(k0, mu, irr)
                _, _, tinv = pxgcd(k0, irr, cof)
                hpoly = pmod(k0, pmul(k0, cof, tinv), mu)
                # evaluate hpoly at g inside the component (Horner)
                acc = [0] * s
                for coeff in reversed(hpoly):
                    acc = bmul(acc, g)
                    if coeff:
                        acc = [k0.add(a, k0.mul(coeff, e))
                               for a, e in zip(acc, eps)]
                sub_rows = [bmul(acc, row) for row in rows]
                sub_r, piv = QM.rref(k0, sub_rows)
                sub_basis = [sub_r[i] for i in range(len(piv))]
                work.append((acc, sub_basis))
            done = True
            break
        if not done:
            raise AssertionError("failed to split a semisimple component")

    # lift idempotents to A and assemble the places
    three = k0.embed_int(3)
    two = k0.embed_int(2)
    places = []
    ident = QM.identity(d)
    for eps_b, f in final:
        e_a = lift(eps_b)
        for _ in range(64):
            sq = amul(e_a, e_a)
            if sq == e_a:
                break
            cu = amul(sq, e_a)
            e_a = [k0.sub(k0.mul(three, a), k0.mul(two, b))
                   for a, b in zip(sq, cu)]
        else:
            raise AssertionError("idempotent lift did not converge")
        comp_rows = [amul(e_a, ident[i]) for i in range(d)]
        comp_r, piv = QM.rref(k0, comp_rows)
        dim = len(piv)
        if dim % f:
            raise AssertionError("component dimension incompatible with "
                                 "its residue degree")
        e_ram = dim // f
        # maximal ideal above: radical + the other components
        others = [v for v in rad]
        for eps2_b, _ in final:
            if eps2_b == eps_b:
                continue
            oe = lift(eps2_b)
            others.extend(amul(oe, ident[i]) for i in range(d))
        # the radical part inside this component is already covered by rad
        def enc(code):
            if m == 1:
                return pconst(code)
            return pnorm(k0.coeffs(code))
        gen_rows = [[prime if j == i else () for j in range(d)]
                    for i in range(d)]
        for v in others:
            gen_rows.append([enc(c) for c in v])
        H, _, rank, _, _ = PM.hnf(F, gen_rows)
        if rank != d:
            raise AssertionError("prime ideal basis is not full rank")
        H = H[:d]
        degdet = sum(pdeg(H[i][i]) for i in range(d))
        if degdet != f * m:
            raise AssertionError("prime ideal norm does not match e*f")
        places.append(Place(order, prime, H, e_ram, f))
    if sum(p.e * p.f for p in places) != d:
        raise AssertionError("sum of e*f over the places does not equal d")
    return sorted(places)


# -- built-in integral bases (tame superelliptic y^m = D) ---------------------


def kummer_data(K):
    """Integral bases for y^m = D(x) with gcd(m, char) = 1.

    Returns (finite_basis, infinite_basis) or None when the defining
    polynomial does not have that shape (or is wildly ramified, in which
    case no built-in basis applies).  Raises ValueError when the shape
    matches but the polynomial is reducible (the classical criterion:
    D must not be an ell-th power for any prime ell | m, and if 4 | m
    then D must avoid -4 * (fourth powers)).
    """
    F = K.F
    d = K.d
    fy = K.fy
    if d < 2 or any(fy[j] for j in range(1, d)):
        return None
    if d % F.p == 0:
        return None
    D = pneg(F, fy[0])
    if not D:
        raise ValueError("defining polynomial is reducible (y^m)")
    lc, facs = factor(F, D)

    def is_pow(c, ell):
        g = (F.q - 1) // _gcd(ell, F.q - 1)
        return F.pow_(c, g) == 1

    for ell in _prime_divisors(d):
        if all(e % ell == 0 for _, e in facs) and is_pow(lc, ell):
            raise ValueError(
                f"defining polynomial is reducible (constant term is an "
                f"{ell}-th power)")
    if d % 4 == 0:
        c4 = F.mul(lc, F.inv(F.neg(F.embed_int(4))))
        if all(e % 4 == 0 for _, e in facs) and is_pow(c4, 4):
            raise ValueError(
                "defining polynomial is reducible (-4 fourth-power case)")

    # finite side: w_j = y^j / prod f_i^floor(j*e_i/m)
    finite = []
    for j in range(d):
        den = PONE
        for g, e in facs:
            k = j * e // d
            for _ in range(k):
                den = pmul(F, den, g)
        vec = [()] * d
        vec[j] = PONE
        finite.append(K.elt(tuple(vec), den))

    # infinite side: z = y*u^s with s = ceil(deg D / m); z^m = Du(u)
    degD = pdeg(D)
    s = -(-degD // d)
    Du = pshift(prev(D, degD), d * s - degD)
    facs_u = factor(F, Du)[1]
    infinite = []
    for j in range(d):
        den_u = PONE
        for g, e in facs_u:
            k = j * e // d
            for _ in range(k):
                den_u = pmul(F, den_u, g)
        # y^j * u^(j*s) / den_u(u), written as an element over k(x)
        num_x, den_x = rat_recip(F, PONE, den_u)
        vec = [()] * d
        vec[j] = num_x
        infinite.append(K.elt(tuple(vec), pmul(F, den_x, pshift(PONE, j * s))))
    return finite, infinite


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _prime_divisors(n):
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def certify_irreducible(K, assume=False):
    """Certify irreducibility of the defining polynomial over k(x).

    Kummer-shaped polynomials are decided exactly by kummer_data; for
    other shapes a specialization scan is used: F monic in y means an
    irreducible specialization F(x0, y) of full degree proves
    irreducibility.  The scan can fail for irreducible polynomials, in
    which case assume=True lets the caller vouch for it."""
    F = K.F
    if kummer_data(K) is not None:
        return True
    for x0 in range(F.q):
        spec = pnorm([peval(F, c, x0) for c in K.fy])
        if len(spec) == K.d + 1 and is_irreducible(F, spec):
            return True
    if assume:
        return True
    raise ValueError(
        "could not certify that the defining polynomial is irreducible; "
        "set assume_irreducible if it is known to be")


# -- assembled context ---------------------------------------------------------


class FieldCtx:
    """A function field together with its orders, its infinite places
    (distinguished place last), and the genus."""

    __slots__ = ("K", "ok", "oinf", "places", "n", "genus",
                 "_place_pow_cache", "_s_ideal_cache")

    def __init__(self, K, ok, oinf, places, genus):
        self.K = K
        self.ok = ok
        self.oinf = oinf
        self.places = tuple(places)
        self.n = len(places) - 1
        self.genus = genus
        self._place_pow_cache = {}
        self._s_ideal_cache = {}

    @property
    def dist(self):
        return self.places[-1]

    def val_vector(self, h):
        """(v_P(h)) over all infinite places, distinguished last."""
        return tuple(p.valuation(h) for p in self.places)

    def psi(self, h):
        """(-v_p_i(h)) over the first n infinite places."""
        return tuple(-p.valuation(h) for p in self.places[:-1])

    def __repr__(self):
        return (f"FieldCtx(q={self.K.F.q}, d={self.K.d}, g={self.genus}, "
                f"n={self.n})")


def build_context(F, fy, finite_basis=None, infinite_basis=None,
                  assume_irreducible=False, distinguished=None):
    """Assemble a FieldCtx: element arithmetic, validated orders, the
    infinite places with attached anti-uniformizers, and the genus.

    finite_basis/infinite_basis are lists of K-elements; both default to
    the built-in construction for y^m = D curves.  `distinguished`
    overrides the default choice of distinguished place (an index into
    the places sorted by (degree, canonical key))."""
    K = FunctionField(F, fy)
    certify_irreducible(K, assume=assume_irreducible)
    supplied = finite_basis is not None or infinite_basis is not None
    if finite_basis is None or infinite_basis is None:
        kd = kummer_data(K)
        if kd is None:
            raise ValueError(
                "no built-in integral basis for this curve shape; supply "
                "finite and infinite bases")
        finite_basis = finite_basis if finite_basis is not None else kd[0]
        infinite_basis = infinite_basis if infinite_basis is not None else kd[1]
    ok = Order(K, "x", finite_basis)
    oinf = Order(K, "u", infinite_basis)
    if supplied:
        _disc_sanity(K, ok)
    places = split_prime(oinf, PX)
    if distinguished is None:
        idx = next((i for i, p in enumerate(places) if p.deg == 1), 0)
    else:
        idx = distinguished
        if not 0 <= idx < len(places):
            raise ValueError(f"distinguished place index {idx} out of range "
                             f"(have {len(places)} infinite places)")
    dist = places[idx]
    ordered = [p for i, p in enumerate(places) if i != idx] + [dist]
    from . import ideals
    for p in ordered:
        ideals.attach_alpha(p)
    ctx = FieldCtx(K, ok, oinf, ordered, None)
    from . import boxes
    genus = boxes.genus_of(ctx)
    return FieldCtx(K, ok, oinf, ordered, genus)


def _disc_sanity(K, ok):
    """disc(power basis) / disc(order basis) must be a nonzero square;
    this catches supplied bases that do not span an order of K."""
    F = K.F
    d = K.d
    T = [[None] * d for _ in range(d)]
    pw = []
    cur = K.one
    for i in range(d):
        pw.append(cur)
        cur = K.mul(cur, K.ey)
    for i in range(d):
        for j in range(i, d):
            prod = K.mul(pw[i], pw[j])
            n, dd = rnorm(F, K.trace_vec(prod[0]), prod[1])
            if pdeg(dd) > 0:
                raise AssertionError("power basis trace is not integral")
            T[i][j] = T[j][i] = n
    disc_pow = PM.det(F, T)
    disc_ord = ok.disc()
    if not disc_ord:
        raise ValueError("supplied finite basis is degenerate")
    q, r = pdivmod(F, disc_pow, disc_ord)
    if r:
        raise ValueError("supplied finite basis does not span an order "
                         "containing the equation order")
    for _, e in squarefree(F, pmonic(F, q)[0]):
        if e % 2:
            raise ValueError("index of the equation order in the supplied "
                             "order is not a square; basis rejected")
