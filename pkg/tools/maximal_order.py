"""Maximal-order computation for curve files (developer tool).

Given a curve file (bases not required), saturates the equation orders
on both sides into the maximal orders and prints ``finite_basis`` /
``infinite_basis`` lines ready to paste back into the file.

The saturation is the classical one over the principal ideal domains
k[x] and k[u]: while some prime p has p^2 dividing the discriminant of
the current order O, replace O by the ring of multipliers of its
p-radical.  The radical of O/pO is the kernel of a high enough q-power
Frobenius (an F_q-linear map), the multiplier ring is the annihilator
of radical/p*radical, and both kernels are ordinary F_q linear algebra
after flattening k[v]/(p)-coordinates into F_q coordinates.  Each
enlargement is rebuilt as a full Order, so closure and integrality are
re-validated at every step.

Usage: python tools/maximal_order.py CURVEFILE [--side fin|inf|both]
"""

from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ffinfra import polymat as PM                               # noqa: E402
from ffinfra import fqmat as QM                                 # noqa: E402
from ffinfra.curvefile import parse_curve                       # noqa: E402
from ffinfra.ffield import FunctionField, Order, certify_irreducible  # noqa: E402
from ffinfra.poly import (PONE, factor, padd, pdeg, pdivmod, pmod, pmul,
                          pnorm, psub)                          # noqa: E402


def _pmulmod(F, a, b, p):
    return pmod(F, pmul(F, a, b), p)


def _coord_mul(order, a, b, p):
    """Product of two coordinate vectors in O/pO (coords over k[v]/p)."""
    F = order.K.F
    d = order.K.d
    S = order.S
    out = [() for _ in range(d)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            s = _pmulmod(F, ai, bj, p)
            row = S[i][j]
            for k in range(d):
                if row[k]:
                    out[k] = padd(F, out[k], _pmulmod(F, s, row[k], p))
    return [pmod(F, c, p) for c in out]


def _flatten(F, coords, dp):
    """k[v]/(p) coordinate vector -> F_q coordinate row of length d*dp."""
    row = []
    for c in coords:
        for l in range(dp):
            row.append(c[l] if l < len(c) else 0)
    return row


def _unflatten(row, d, dp):
    out = []
    for i in range(d):
        out.append(pnorm(tuple(row[i * dp:(i + 1) * dp])))
    return out


def _basis_mod_p(order, p):
    """F_q-basis of O/pO as coordinate vectors: v^l * e_i."""
    d = order.K.d
    dp = pdeg(p)
    out = []
    for i in range(d):
        for l in range(dp):
            coords = [()] * d
            coords[i] = pnorm((0,) * l + (1,))
            out.append(coords)
    return out


def _pow_coords(order, a, n, p):
    """a^n in O/pO by binary powering."""
    acc = list(order.one_coords)
    acc = [pmod(order.K.F, c, p) for c in acc]
    base = a
    while n:
        if n & 1:
            acc = _coord_mul(order, acc, base, p)
        base = _coord_mul(order, base, base, p)
        n >>= 1
    return acc


def _radical_rows(order, p):
    """Rows (k[v] coords) spanning the p-radical together with p*O."""
    F = order.K.F
    d = order.K.d
    dp = pdeg(p)
    Q = F.q
    e = 1
    while Q < d:
        Q *= F.q
        e += 1
    basis = _basis_mod_p(order, p)
    M = [_flatten(F, _pow_coords(order, b, Q, p), dp) for b in basis]
    ker = QM.right_kernel(F, QM.transpose(M))
    rows = [[pmul(F, p, PONE) if i == j else () for j in range(d)]
            for i in range(d)]
    for kv in ker:
        rows.append(_unflatten(list(kv), d, dp))
    H, _, rank, _, _ = PM.hnf(F, rows)
    return [list(r) for r in H[:rank]]


def _multiplier_rows(order, p, rad_rows):
    """Rows of U = {u in O : u * rad <= p * rad}; O' = U / p."""
    F = order.K.F
    d = order.K.d
    dp = pdeg(p)
    Minv, dn = PM.mat_inv_with_den(F, rad_rows)
    rows = []
    for b in _basis_mod_p(order, p):
        cond = []
        for t in range(d):
            prod = _mul_int(order, b, rad_rows[t])
            y = PM.vec_mat(F, prod, Minv)
            for c in y:
                cq, cr = pdivmod(F, c, dn)
                if cr:
                    raise AssertionError("radical is not an ideal of O")
                cm = pmod(F, cq, p)
                for l in range(dp):
                    cond.append(cm[l] if l < len(cm) else 0)
        rows.append(cond)
    ker = QM.right_kernel(F, QM.transpose(rows))
    urows = [[pmul(F, p, PONE) if i == j else () for j in range(d)]
             for i in range(d)]
    for kv in ker:
        urows.append(_unflatten(list(kv), d, dp))
    H, _, rank, _, _ = PM.hnf(F, urows)
    if rank != d:
        raise AssertionError("multiplier module lost rank")
    return [list(r) for r in H[:rank]]


def _mul_int(order, a, b):
    """Product of integral coordinate vectors, exact over k[v]."""
    F = order.K.F
    d = order.K.d
    S = order.S
    out = [() for _ in range(d)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            s = pmul(F, ai, bj)
            row = S[i][j]
            for k in range(d):
                if row[k]:
                    out[k] = padd(F, out[k], pmul(F, s, row[k]))
    return out


def _enlarge(order, p):
    """One multiplier-ring step at p; returns a new Order or None.

    None means U = p*O (every HNF row is p*e_i), i.e. the order is
    already p-maximal."""
    F = order.K.F
    rad = _radical_rows(order, p)
    urows = _multiplier_rows(order, p, rad)
    is_po = True
    for i in range(order.K.d):
        for j in range(order.K.d):
            want = p if i == j else ()
            if pnorm(tuple(urows[i][j])) != pnorm(tuple(want)):
                is_po = False
    if is_po:
        return None
    newb = [order.from_coords(row, den=p) for row in urows]
    return Order(order.K, order.var, newb)


def saturate(order):
    """The maximal order containing `order` (same variable side)."""
    F = order.K.F
    disc = order.disc()
    sq = [p for p, m in factor(F, disc)[1] if m >= 2]
    for p in sorted(sq):
        while True:
            bigger = _enlarge(order, p)
            if bigger is None:
                break
            order = bigger
    return order


def equation_orders(K):
    """Seed orders: k[x][y] and the k[u]-order on z = y * u^s."""
    F = K.F
    d = K.d
    fin = []
    for j in range(d):
        vec = [()] * d
        vec[j] = PONE
        fin.append((tuple(vec), PONE))
    s = 0
    for i in range(d):
        bi = K.fy[i]
        if bi:
            need = -(-pdeg(bi) // (d - i))
            s = max(s, need)
    inf = []
    L = s * (d - 1)
    for j in range(d):
        vec = [()] * d
        vec[j] = pnorm((0,) * (L - s * j) + (1,))
        den = pnorm((0,) * L + (1,)) if L else PONE
        inf.append(K.elt(tuple(vec), den))
    return Order(K, "x", fin), Order(K, "u", inf), s


def _fmt_xpoly(F, poly, var="x"):
    if not poly:
        return "0"
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        cs = _fmt_fq(F, c)
        if "+" in cs or "*" in cs:
            cs = f"({cs})"
        if i == 0:
            terms.append(cs)
        else:
            xi = var if i == 1 else f"{var}^{i}"
            terms.append(xi if cs == "1" else f"{cs}*{xi}")
    return " + ".join(terms)


def _fmt_fq(F, c):
    if F.e == 1:
        return str(c)
    digits = []
    v = c
    for _ in range(F.e):
        digits.append(v % F.p)
        v //= F.p
    terms = []
    for i in range(F.e - 1, -1, -1):
        if digits[i] == 0:
            continue
        if i == 0:
            terms.append(str(digits[i]))
        else:
            ai = "a" if i == 1 else f"a^{i}"
            terms.append(ai if digits[i] == 1 else f"{digits[i]}*{ai}")
    return " + ".join(terms) if terms else "0"


def fmt_element(K, h):
    """A K-element as curve-file syntax (y-polynomial over an x-poly)."""
    vec, den = h
    parts = []
    for j, p in enumerate(vec):
        if not p:
            continue
        ps = _fmt_xpoly(K.F, p)
        if j == 0:
            parts.append(f"({ps})" if " + " in ps else ps)
        else:
            yj = "y" if j == 1 else f"y^{j}"
            parts.append(yj if ps == "1" else f"({ps})*{yj}")
    body = " + ".join(parts) if parts else "0"
    if den != PONE:
        return f"({body}) / ({_fmt_xpoly(K.F, den)})"
    return body


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("curve")
    ap.add_argument("--side", choices=("fin", "inf", "both"),
                    default="both")
    args = ap.parse_args(argv)
    with open(args.curve, encoding="utf-8") as fh:
        spec = parse_curve(fh.read())
    K = FunctionField(spec.F, spec.fy)
    certify_irreducible(K, assume=spec.assume_irreducible)
    ofin0, oinf0, s = equation_orders(K)
    if args.side in ("fin", "both"):
        ofin = saturate(ofin0)
        print("finite_basis = " +
              ", ".join(fmt_element(K, b) for b in ofin.basis))
        print(f"# [disc deg {pdeg(ofin0.disc())} -> {pdeg(ofin.disc())}]")
    if args.side in ("inf", "both"):
        oinf = saturate(oinf0)
        print("infinite_basis = " +
              ", ".join(fmt_element(K, b) for b in oinf.basis))
        print(f"# [z = y*u^{s}; disc deg {pdeg(oinf0.disc())} -> "
              f"{pdeg(oinf.disc())}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
