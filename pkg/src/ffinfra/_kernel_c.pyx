# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels.

Mirror of ffinfra._kernel_py (same four functions, same contract; that
module's docstring defines the kernel descriptor).  Prime fields with
p < 2^31 take a pure-C path on 64-bit scratch buffers; table fields
take a typed-list path; anything else delegates to the Python kernels,
so behaviour is identical across backends by construction.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

from . import _kernel_py as _py

__all__ = ["poly_mul", "poly_divmod", "poly_axpy_shift", "poly_submul"]

DEF PMAX = 2147483648  # 2^31: products and one sum stay under 2^63


cdef long long* _ll_from_seq(seq, Py_ssize_t n) except NULL:
    cdef long long* buf = <long long*> PyMem_Malloc(n * sizeof(long long))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef inline long long _neg_code_c(long long t, long long p, long long q):
    cdef long long s = 0, mul = 1, d
    while mul < q:
        d = (t // mul) % p
        if d:
            s += (p - d) * mul
        mul *= p
    return s


def poly_mul(a, b, fk):
    """Product a*b."""
    if not a or not b:
        return []
    cdef int kind = fk[0]
    cdef Py_ssize_t na = len(a), nb = len(b), no = na + nb - 1
    cdef Py_ssize_t i, j
    cdef long long p, q, ai, bj, la
    cdef long long* av
    cdef long long* bv
    cdef long long* ov
    if kind == 0 and <long long> fk[1] < PMAX:
        p = fk[1]
        av = _ll_from_seq(a, na)
        try:
            bv = _ll_from_seq(b, nb)
        except BaseException:
            PyMem_Free(av)
            raise
        ov = <long long*> PyMem_Malloc(no * sizeof(long long))
        if ov == NULL:
            PyMem_Free(av)
            PyMem_Free(bv)
            raise MemoryError()
        try:
            for i in range(no):
                ov[i] = 0
            for i in range(na):
                ai = av[i]
                if ai:
                    for j in range(nb):
                        bj = bv[j]
                        if bj:
                            ov[i + j] = (ov[i + j] + ai * bj) % p
            return [ov[i] for i in range(no)]
        finally:
            PyMem_Free(av)
            PyMem_Free(bv)
            PyMem_Free(ov)
    if kind == 1:
        return _mul_table(a, b, fk)
    return _py.poly_mul(a, b, fk)


def _mul_table(a, b, fk):
    cdef Py_ssize_t na = len(a), nb = len(b), no = na + nb - 1
    cdef Py_ssize_t i, j, k
    cdef long long q = fk[2], la, ai, bj
    cdef list exp = fk[3], log = fk[4], addt = fk[5]
    cdef list out = [0] * no
    for i in range(na):
        ai = a[i]
        if ai:
            la = log[ai]
            for j in range(nb):
                bj = b[j]
                if bj:
                    k = i + j
                    out[k] = addt[<long long> out[k] * q +
                                  <long long> exp[la + <long long> log[bj]]]
    return out


def poly_divmod(a, b, fk):
    """Quotient and remainder of a by nonzero b; remainder normalized."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na < nb:
        return [], list(a)
    cdef int kind = fk[0]
    cdef Py_ssize_t i, k
    cdef long long p, c, bi
    cdef long long* rv
    cdef long long* bv
    cdef long long* qv
    cdef long long inv_lc
    if kind == 0 and <long long> fk[1] < PMAX:
        p = fk[1]
        inv_lc = pow(<long long> b[nb - 1], p - 2, p)
        rv = _ll_from_seq(a, na)
        try:
            bv = _ll_from_seq(b, nb)
        except BaseException:
            PyMem_Free(rv)
            raise
        qv = <long long*> PyMem_Malloc((na - nb + 1) * sizeof(long long))
        if qv == NULL:
            PyMem_Free(rv)
            PyMem_Free(bv)
            raise MemoryError()
        try:
            for k in range(na - nb, -1, -1):
                c = rv[k + nb - 1] % p
                if c:
                    c = (c * inv_lc) % p
                    qv[k] = c
                    for i in range(nb - 1):
                        bi = bv[i]
                        if bi:
                            rv[k + i] = (rv[k + i] - c * bi) % p
                            if rv[k + i] < 0:
                                rv[k + i] += p
                else:
                    qv[k] = 0
            quo = [qv[i] for i in range(na - nb + 1)]
            rem = [rv[i] % p for i in range(nb - 1)]
            while rem and not rem[len(rem) - 1]:
                rem.pop()
            return quo, rem
        finally:
            PyMem_Free(rv)
            PyMem_Free(bv)
            PyMem_Free(qv)
    if kind == 1:
        return _divmod_table(a, b, fk)
    return _py.poly_divmod(a, b, fk)


def _divmod_table(a, b, fk):
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t i, k
    cdef long long p = fk[1], q = fk[2], qm1 = q - 1
    cdef list exp = fk[3], log = fk[4], addt = fk[5]
    cdef list r = list(a)
    cdef list quo = [0] * (na - nb + 1)
    cdef long long linv = (qm1 - <long long> log[b[nb - 1]]) % qm1
    cdef long long c, lmc, bi
    for k in range(na - nb, -1, -1):
        c = r[k + nb - 1]
        if c:
            c = exp[<long long> log[c] + linv]
            quo[k] = c
            lmc = log[_neg_code_c(c, p, q)]
            for i in range(nb - 1):
                bi = b[i]
                if bi:
                    r[k + i] = addt[<long long> r[k + i] * q +
                                    <long long> exp[lmc + <long long> log[bi]]]
    del r[nb - 1:]
    while r and not r[len(r) - 1]:
        r.pop()
    return quo, r


def poly_submul(a, qpoly, b, fk):
    """a - qpoly * b in one pass; result normalized."""
    if not qpoly or not b:
        return list(a)
    cdef int kind = fk[0]
    cdef Py_ssize_t na = len(a), nq = len(qpoly), nb = len(b)
    cdef Py_ssize_t n = na if na > nq + nb - 1 else nq + nb - 1
    cdef Py_ssize_t i, j
    cdef long long p, qi, bj
    cdef long long* ov
    if kind == 0 and <long long> fk[1] < PMAX:
        p = fk[1]
        ov = <long long*> PyMem_Malloc(n * sizeof(long long))
        if ov == NULL:
            raise MemoryError()
        try:
            for i in range(na):
                ov[i] = a[i]
            for i in range(na, n):
                ov[i] = 0
            for i in range(nq):
                qi = qpoly[i]
                if qi:
                    for j in range(nb):
                        bj = b[j]
                        if bj:
                            ov[i + j] = (ov[i + j] - qi * bj) % p
                            if ov[i + j] < 0:
                                ov[i + j] += p
            while n and ov[n - 1] == 0:
                n -= 1
            return [ov[i] for i in range(n)]
        finally:
            PyMem_Free(ov)
    if kind == 1:
        return _submul_table(a, qpoly, b, fk)
    return _py.poly_submul(a, qpoly, b, fk)


def _submul_table(a, qpoly, b, fk):
    cdef Py_ssize_t na = len(a), nq = len(qpoly), nb = len(b)
    cdef Py_ssize_t n = na if na > nq + nb - 1 else nq + nb - 1
    cdef Py_ssize_t i, j, k
    cdef long long p = fk[1], q = fk[2]
    cdef list exp = fk[3], log = fk[4], addt = fk[5]
    cdef list out = list(a) + [0] * (n - na)
    cdef long long qi, bj, lq
    for i in range(nq):
        qi = qpoly[i]
        if qi:
            lq = log[_neg_code_c(qi, p, q)]
            for j in range(nb):
                bj = b[j]
                if bj:
                    k = i + j
                    out[k] = addt[<long long> out[k] * q +
                                  <long long> exp[lq + <long long> log[bj]]]
    while out and not out[len(out) - 1]:
        out.pop()
    return out


def poly_axpy_shift(a, b, c, k, fk):
    """a + c * x^k * b for a scalar c; result normalized."""
    if not b or not c:
        return list(a)
    cdef int kind = fk[0]
    cdef Py_ssize_t na = len(a), nb = len(b), kk = k
    cdef Py_ssize_t n = na if na > nb + kk else nb + kk
    cdef Py_ssize_t i, j
    cdef long long p, cc, bj
    cdef long long* ov
    if kind == 0 and <long long> fk[1] < PMAX:
        p = fk[1]
        cc = c
        ov = <long long*> PyMem_Malloc(n * sizeof(long long))
        if ov == NULL:
            raise MemoryError()
        try:
            for i in range(na):
                ov[i] = a[i]
            for i in range(na, n):
                ov[i] = 0
            for j in range(nb):
                bj = b[j]
                if bj:
                    ov[kk + j] = (ov[kk + j] + cc * bj) % p
            while n and ov[n - 1] == 0:
                n -= 1
            return [ov[i] for i in range(n)]
        finally:
            PyMem_Free(ov)
    return _py.poly_axpy_shift(a, b, c, k, fk)
