"""Finite fields F_q, q = p^e, with integer-encoded elements.

An element of F_q is represented by a single int in range(q).  For prime
fields (e == 1) the int is the residue itself.  For extension fields the
int encodes the coefficient vector of the residue polynomial in base p:
the element a_0 + a_1*T + ... + a_{e-1}*T^{e-1} (T the class of the
modulus variable) is encoded as a_0 + a_1*p + ... + a_{e-1}*p^{e-1}.

This encoding makes elements hashable, totally ordered and cheap to
serialize, and it lets the polynomial kernels treat coefficients of any
field uniformly as machine ints.

Arithmetic strategy:

* e == 1: direct modular arithmetic.
* e > 1 and q <= TABLE_LIMIT: multiplicative group log/exp tables
  (built once per field from a generator) for mul/inv/pow, and a full
  q*q addition table when q <= ADD_TABLE_LIMIT, else digit-wise addition.
* e > 1 and q > TABLE_LIMIT: digit-wise arithmetic throughout (correct
  but slow; the desk-scale fields used here never hit this path).

Field objects are immutable and cached by spec, so identical specs share
tables.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

__all__ = ["FieldSpec", "Fq", "is_prime"]

TABLE_LIMIT = 1 << 16      # build log/exp tables up to this q
ADD_TABLE_LIMIT = 2048     # build the full q*q addition table up to this q

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24, probabilistic above."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # This base set is deterministic for n < 3,317,044,064,679,887,385,961,981.
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of F_q: characteristic p, degree e, modulus over F_p.

    ``modulus`` is the ascending coefficient tuple of a monic irreducible
    degree-e polynomial over F_p; it must be None exactly when e == 1.
    """

    p: int
    e: int = 1
    modulus: tuple | None = None

    def __post_init__(self):
        if self.e == 1 and self.modulus is not None:
            raise ValueError("prime field takes no modulus")
        if self.e > 1:
            m = self.modulus
            if m is None or len(m) != self.e + 1:
                raise ValueError("extension field needs a degree-e modulus")
            if m[-1] != 1:
                raise ValueError("modulus must be monic")
            if any(not (0 <= c < self.p) for c in m):
                raise ValueError("modulus coefficients out of range")

    @property
    def q(self):
        return self.p ** self.e

    def digest(self):
        """Stable short digest identifying the field, used in serializations."""
        parts = ["ffq/1", str(self.p), str(self.e)]
        if self.modulus is not None:
            parts.append(",".join(map(str, self.modulus)))
        return hashlib.sha256("|".join(parts).encode()).digest()[:8]


def _factorize(n):
    """Trial-division factorization; adequate for the q - 1 sizes seen here."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Fq:
    """Arithmetic for F_q on integer-encoded elements (see module docstring)."""

    __slots__ = (
        "spec", "p", "e", "q", "modulus", "_exp", "_log", "_addt",
        "digest", "kernel", "_coeff_w",
    )

    _cache: dict = {}

    def __new__(cls, spec):
        if isinstance(spec, int):
            spec = FieldSpec(spec)
        inst = cls._cache.get(spec)
        if inst is not None:
            return inst
        inst = super().__new__(cls)
        inst._init(spec)
        cls._cache[spec] = inst
        return inst

    def _init(self, spec):
        if not is_prime(spec.p):
            raise ValueError(f"characteristic {spec.p} is not prime")
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.q = spec.q
        self.modulus = spec.modulus
        self.digest = spec.digest()
        self._coeff_w = max(1, (self.p - 1).bit_length() + 7 >> 3)
        self._exp = self._log = self._addt = None
        if self.e > 1:
            if not self._modulus_irreducible():
                raise ValueError("modulus is reducible over F_p")
            if self.q <= TABLE_LIMIT:
                self._build_tables()
        self.kernel = self.kernel_descriptor()

    # -- encoding helpers -------------------------------------------------

    def coeffs(self, a):
        """Base-p digit vector (length e) of element code a."""
        p = self.p
        return tuple(a // p ** i % p for i in range(self.e))

    def from_coeffs(self, cs):
        """Element code from a digit iterable (entries reduced mod p)."""
        p = self.p
        a = 0
        for i, c in enumerate(cs):
            a += (c % p) * p ** i
        return a

    def embed_int(self, n):
        """Image of the rational integer n in F_q (as a multiple of 1)."""
        return n % self.p

    # -- raw polynomial arithmetic used only during construction ----------

    def _raw_mul(self, a, b):
        """Multiply two element codes via digit vectors mod the modulus."""
        p, e = self.p, self.e
        av = list(self.coeffs(a))
        bv = list(self.coeffs(b))
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(av):
            if ai:
                for j, bj in enumerate(bv):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        m = self.modulus
        for i in range(len(prod) - 1, e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(e):
                    prod[i - e + j] = (prod[i - e + j] - c * m[j]) % p
        return self.from_coeffs(prod[:e])

    def _modulus_irreducible(self):
        """Rabin test: T^(p^e) == T mod m, and for each prime l | e the
        polynomial T^(p^(e/l)) - T is coprime to m over F_p."""
        p, e = self.p, self.e

        def frob(a, k):
            for _ in range(k):
                a = self._raw_pow(a, p)
            return a

        def fp_gcd_is_one(a_code):
            # gcd over F_p of (poly encoded by a_code) and the modulus
            a = [c for c in self.coeffs(a_code)]
            while a and a[-1] == 0:
                a.pop()
            b = list(self.modulus)
            while a:
                # b mod a
                inv_lc = pow(a[-1], p - 2, p)
                while len(b) >= len(a):
                    c = b[-1] * inv_lc % p
                    if c:
                        off = len(b) - len(a)
                        for i in range(len(a)):
                            b[off + i] = (b[off + i] - c * a[i]) % p
                    b.pop()
                    while b and b[-1] == 0:
                        b.pop()
                a, b = b, a
            return len(b) == 1  # nonzero constant

        t = self.p  # code of the element T
        if frob(t, e) != t:
            return False
        for ell in _factorize(e):
            a = frob(t, e // ell)
            # a - T as a coefficient vector, then gcd with the modulus
            diff = self.from_coeffs(
                [(x - y) % p for x, y in zip(self.coeffs(a), self.coeffs(t))])
            if diff == 0 or not fp_gcd_is_one(diff):
                return False
        return True

    def _raw_pow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            n >>= 1
        return r

    def _build_tables(self):
        q = self.q
        # find a generator of the multiplicative group
        fac = _factorize(q - 1)
        g = None
        for cand in range(2, q):
            if all(self._raw_pow(cand, (q - 1) // ell) != 1 for ell in fac):
                g = cand
                break
        if g is None:  # pragma: no cover - cannot happen for a field
            raise RuntimeError("no generator found")
        exp = [1] * (2 * (q - 1))
        log = [0] * q
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._raw_mul(acc, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log
        if q <= ADD_TABLE_LIMIT:
            p, e = self.p, self.e
            # addition is digit-wise mod p on the base-p encodings
            addt = [0] * (q * q)
            for a in range(q):
                arow = a * q
                ad = self.coeffs(a)
                for b in range(a, q):
                    s = 0
                    mul = 1
                    bd = self.coeffs(b)
                    for i in range(e):
                        s += (ad[i] + bd[i]) % p * mul
                        mul *= p
                    addt[arow + b] = s
                    addt[b * q + a] = s
            self._addt = addt

    # -- public arithmetic -------------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self._addt is not None:
            return self._addt[a * self.q + b]
        p = self.p
        s, mul = 0, 1
        for i in range(self.e):
            s += (a // mul + b // mul) % p * mul
            mul *= p
        return s

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        p = self.p
        s, mul = 0, 1
        for i in range(self.e):
            s += -(a // mul % p) % p * mul
            mul *= p
        return s

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._raw_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            la = self._log[a]
            return self._exp[(self.q - 1 - la) % (self.q - 1)]
        return self._raw_pow(a, self.q - 2)

    def pow_(self, a, n):
        if n < 0:
            return self.pow_(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 0 if n else 1
        if self._exp is not None:
            return self._exp[self._log[a] * n % (self.q - 1)]
        return self._raw_pow(a, n % (self.q - 1))

    def random(self, rng):
        return rng.randrange(self.q)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.q)

    def element_bytes(self, a):
        """Fixed-width little-endian coefficient serialization of a."""
        w = self._coeff_w
        return b"".join(c.to_bytes(w, "little") for c in self.coeffs(a))

    # kernel descriptor consumed by the polynomial backends
    def kernel_descriptor(self):
        if self.e == 1:
            return (0, self.p, self.q, None, None, None)
        if self._exp is not None and self._addt is not None:
            return (1, self.p, self.q, self._exp, self._log, self._addt)
        return (2, self.p, self.q, None, None, self)

    def __repr__(self):
        if self.e == 1:
            return f"Fq({self.p})"
        return f"Fq({self.p}^{self.e})"
