"""Pure-Python polynomial kernels.

These are the hot inner loops of the package: dense univariate arithmetic
over F_q on ascending coefficient lists of integer-encoded field elements
(see ffinfra.fq).  ffinfra.backend selects between this module and the
compiled mirror ffinfra._kernel_c at import time; both expose the same
three functions with identical semantics.

A kernel descriptor ``fk`` (from Fq.kernel_descriptor) is a tuple
``(kind, p, q, exp, log, addt_or_field)``:

* kind 0 - prime field: coefficients are residues mod p.
* kind 1 - table field: coefficients are codes; exp/log drive mul,
  addt (flat q*q list) drives add.
* kind 2 - generic: the last slot is the Fq instance; correct for any
  field but slow.

Inputs are normalized (no trailing zero) coefficient sequences; outputs
are normalized lists.  The zero polynomial is the empty sequence.
"""

__all__ = ["poly_mul", "poly_divmod", "poly_axpy_shift", "poly_submul"]


def poly_mul(a, b, fk):
    """Product a*b."""
    if not a or not b:
        return []
    kind = fk[0]
    if kind == 0:
        p = fk[1]
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return [c % p for c in out]
    if kind == 1:
        q, exp, log, addt = fk[2], fk[3], fk[4], fk[5]
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                la = log[ai]
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        out[k] = addt[out[k] * q + exp[la + log[bj]]]
        return out
    field = fk[5]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return out


def poly_divmod(a, b, fk):
    """Quotient and remainder of a by nonzero b; remainder is normalized."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    na, nb = len(a), len(b)
    if na < nb:
        return [], list(a)
    kind = fk[0]
    r = list(a)
    quo = [0] * (na - nb + 1)
    if kind == 0:
        p = fk[1]
        inv_lc = pow(b[-1], p - 2, p)
        for k in range(na - nb, -1, -1):
            c = r[k + nb - 1] % p
            if c:
                c = c * inv_lc % p
                quo[k] = c
                for i in range(nb - 1):
                    r[k + i] -= c * b[i]
        r = [c % p for c in r[: nb - 1]]
    elif kind == 1:
        q, exp, log, addt = fk[2], fk[3], fk[4], fk[5]
        qm1 = q - 1
        linv = (qm1 - log[b[-1]]) % qm1
        for k in range(na - nb, -1, -1):
            c = r[k + nb - 1]
            if c:
                c = exp[log[c] + linv]
                quo[k] = c
                lmc = log[_neg_code(c, fk)]
                for i in range(nb - 1):
                    bi = b[i]
                    if bi:
                        r[k + i] = addt[r[k + i] * q + exp[lmc + log[bi]]]
        r = r[: nb - 1]
    else:
        field = fk[5]
        inv_lc = field.inv(b[-1])
        for k in range(na - nb, -1, -1):
            c = r[k + nb - 1]
            if c:
                c = field.mul(c, inv_lc)
                quo[k] = c
                for i in range(nb - 1):
                    bi = b[i]
                    if bi:
                        r[k + i] = field.sub(r[k + i], field.mul(c, bi))
        r = r[: nb - 1]
    while r and not r[-1]:
        r.pop()
    return quo, r


def _neg_code(t, fk):
    # digit-wise negation of a table-field code
    p, q = fk[1], fk[2]
    s, mul = 0, 1
    while mul < q:
        s += -(t // mul % p) % p * mul
        mul *= p
    return s


def poly_submul(a, q, b, fk):
    """a - q * b in one pass; result normalized."""
    if not q or not b:
        return list(a)
    kind = fk[0]
    n = max(len(a), len(q) + len(b) - 1)
    if kind == 0:
        p = fk[1]
        out = list(a) + [0] * (n - len(a))
        for i, qi in enumerate(q):
            if qi:
                for j, bj in enumerate(b):
                    out[i + j] -= qi * bj
        out = [c % p for c in out]
    elif kind == 1:
        qq, exp, log, addt = fk[2], fk[3], fk[4], fk[5]
        out = list(a) + [0] * (n - len(a))
        for i, qi in enumerate(q):
            if qi:
                lq = log[_neg_code(qi, fk)]
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        out[k] = addt[out[k] * qq + exp[lq + log[bj]]]
    else:
        field = fk[5]
        out = list(a) + [0] * (n - len(a))
        for i, qi in enumerate(q):
            if qi:
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        out[k] = field.sub(out[k], field.mul(qi, bj))
    while out and not out[-1]:
        out.pop()
    return out


def poly_axpy_shift(a, b, c, k, fk):
    """a + c * x^k * b for a scalar c; result normalized."""
    if not b or not c:
        return list(a)
    kind = fk[0]
    n = max(len(a), len(b) + k)
    out = list(a) + [0] * (n - len(a))
    if kind == 0:
        p = fk[1]
        for j, bj in enumerate(b):
            if bj:
                out[k + j] = (out[k + j] + c * bj) % p
    elif kind == 1:
        q, exp, log, addt = fk[2], fk[3], fk[4], fk[5]
        lc = log[c]
        for j, bj in enumerate(b):
            if bj:
                i = k + j
                out[i] = addt[out[i] * q + exp[lc + log[bj]]]
    else:
        field = fk[5]
        for j, bj in enumerate(b):
            if bj:
                i = k + j
                out[i] = field.add(out[i], field.mul(c, bj))
    while out and not out[-1]:
        out.pop()
    return out
