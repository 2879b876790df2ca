"""Reduced representations of divisor classes and the group operation.

A state is (ideal, t, dist): an integral HNF ideal of the finite order,
one exponent per non-distinguished infinite place, and the integer label
("distance") the walks carry.  A state is reduced when 1 is a minimal
element of its space; reduce() establishes that by picking a minimal
function mu in the space of (b, t, l) with l minimal such that the space
is nonzero, replacing b by mu*b and shifting t by mu's valuations.
Minimality is lexicographic in the absolute values at the distinguished
place first, then the remaining infinite places in order; ties between
functions with identical valuations everywhere are broken by the least
canonical serialization of the resulting ideal, which makes the reduced
state a canonical function of the divisor class and t alone.

The composition add() multiplies ideals, adds exponents and labels, and
re-reduces; neg() inverts.  Equality of group elements is equality of
(ideal, t) keys on reduced states.
"""

from __future__ import annotations

from . import boxes as BX
from . import ideals as ID
from .poly import PONE

__all__ = ["FRep", "reduce_state", "phi_inv", "identity", "add", "neg",
           "frep_key", "is_identity", "frep_to_obj", "frep_from_obj",
           "reduced_ideals", "InfraGroup"]


class FRep:
    __slots__ = ("ideal", "t", "dist")

    def __init__(self, ideal, t, dist):
        self.ideal = ideal
        self.t = tuple(t)
        self.dist = tuple(dist)

    def __eq__(self, other):
        return (isinstance(other, FRep) and self.ideal == other.ideal
                and self.t == other.t)

    def __hash__(self):
        return hash((self.ideal, self.t))

    def __repr__(self):
        return f"FRep(t={self.t}, dist={self.dist})"


def frep_key(A):
    """Canonical bytes identifying the group element (label excluded)."""
    parts = [ID.canonical_bytes(A.ideal)]
    for ti in A.t:
        parts.append(ti.to_bytes(8, "little", signed=True))
    return b"".join(parts)


def frep_to_obj(A):
    """JSON-serializable form of a state (coefficients are plain ints)."""
    return {
        "num": [[list(c) for c in row] for row in A.ideal.num],
        "den": list(A.ideal.den),
        "t": list(A.t),
        "dist": list(A.dist),
    }


def frep_from_obj(ctx, obj):
    """Rebuild a state dumped by frep_to_obj; rows are kept verbatim
    because dumps always come from canonical ideals."""
    num = tuple(tuple(tuple(c) for c in row) for row in obj["num"])
    den = tuple(obj["den"])
    return FRep(ID.FracIdeal(ctx.ok, num, den), obj["t"], obj["dist"])


def _pole_clearing(places, texp):
    out = 0
    for p, ti in zip(places, texp):
        if ti > 0:
            out = max(out, -(-ti // p.e))
    return out


def reduce_state(ctx, b, t, dist):
    """Reduced state of the class of b with infinite exponents t."""
    n = ctx.n
    if len(t) != n:
        raise ValueError("need one exponent per non-distinguished place")
    P = ctx.dist
    degP = P.deg
    g = ctx.genus
    degs = [p.deg for p in ctx.places[:-1]]
    C = ID.divisor_degree(b) + sum(ti * di for ti, di in zip(t, degs))
    # smallest l with a chance of a nonzero space, pushed up to Riemann's
    # guarantee; the true minimal l is found by the filtration below
    l0 = -(C // degP)
    lR = max(l0, -(-(g - C) // degP))
    box = BX.rr_space(ctx, b, tuple(t) + (lR,))
    if box.dim < 1:
        raise AssertionError("Riemann bound produced an empty space")
    elems = box.basis_elements()
    clear = _pole_clearing(ctx.places, tuple(t) + (lR,))
    # product formula: v_P(h) * deg P <= deg div(b) + sum t_i deg p_i
    cap = C // degP + 1
    v, stratum = BX.max_valuation_stratum(ctx, P, elems, clear, cap,
                                          fin_den=box.den)
    # product formula: deg-weighted valuations at the remaining places are
    # bounded by the finite pole budget minus what the other places claim
    vals = []
    for i, p in enumerate(ctx.places[:-1]):
        capi = (C - t[i] * p.deg - v * degP) // p.deg + 1
        vi, stratum = BX.max_valuation_stratum(ctx, p, stratum, clear,
                                               capi, fin_den=box.den)
        vals.append(vi)
    bnew = _canonical_product(ctx, b, stratum)
    tnew = tuple(ti + vi for ti, vi in zip(t, vals))
    if any(ti < 0 for ti in tnew) or bnew.den != PONE:
        raise AssertionError("reduction left the reduced domain")
    Cnew = ID.divisor_degree(bnew) + sum(ti * di
                                         for ti, di in zip(tnew, degs))
    if not 0 <= Cnew <= g + degP - 1:
        raise AssertionError("reduced state violates the degree bound")
    return FRep(bnew, tnew, dist)


def _canonical_product(ctx, b, stratum):
    """mu * b for the canonical minimal mu: all stratum members share every
    infinite valuation, so candidate ideals differ only through finite
    places; pick the least serialization over the projective span."""
    K = ctx.K
    F = K.F
    if len(stratum) == 1:
        return ID.ideal_mul(ID.principal_ideal(ctx.ok, stratum[0]), b)
    best = None
    bestkey = None
    k = len(stratum)
    # projective representatives: first nonzero coefficient equal to 1
    for lead in range(k):
        tail = k - lead - 1
        for m in range(F.q ** tail):
            coeffs = [0] * lead + [1]
            mm = m
            for _ in range(tail):
                coeffs.append(mm % F.q)
                mm //= F.q
            mu = K.zero
            for c, h in zip(coeffs, stratum):
                if c:
                    vec = tuple(tuple(F.mul(c, cc) for cc in f) if f else ()
                                for f in h[0])
                    mu = K.add(mu, (vec, h[1]))
            cand = ID.ideal_mul(ID.principal_ideal(ctx.ok, mu), b)
            key = ID.canonical_bytes(cand)
            if bestkey is None or key < bestkey:
                best, bestkey = cand, key
    return best


def phi_inv(ctx, v):
    """The reduced state at label v (the inverse of the label map on its
    image): reduce the trivial ideal with exponents v."""
    return reduce_state(ctx, ID.unit_ideal(ctx.ok), tuple(v), tuple(v))


def identity(ctx):
    return phi_inv(ctx, (0,) * ctx.n)


def add(ctx, A, B):
    """Composition: multiply ideals, add exponents and labels, re-reduce."""
    prod = ID.ideal_mul(A.ideal, B.ideal)
    t = tuple(a + b for a, b in zip(A.t, B.t))
    dist = tuple(a + b for a, b in zip(A.dist, B.dist))
    return reduce_state(ctx, prod, t, dist)


def neg(ctx, A):
    inv = ID.ideal_inv(A.ideal)
    t = tuple(-ti for ti in A.t)
    dist = tuple(-di for di in A.dist)
    return reduce_state(ctx, inv, t, dist)


def is_identity(ctx, A):
    return A == identity(ctx)


def reduced_ideals(ctx, limit=200000):
    """Every reduced integral ideal, for fields of unit rank 0.  Reduced
    ideals have divisor degree at most g + deg P - 1, so they are found
    among products of finite primes within that budget; each candidate
    is kept iff its box admits no element with positive valuation at the
    distinguished place, which is the "1 is a minimum" condition when
    there are no other infinite places.

    When deg P = 1 these are exactly the fRep states.  When deg P > 1
    several reduced ideals may generate the same state (they differ by
    an element with valuation 0 at P); use frep_elements for the state
    set itself.

    Returns the list of ideals sorted by canonical serialization."""
    if ctx.n != 0:
        raise ValueError("reduced-ideal enumeration applies to rank-0 "
                         "fields; use the label walk when n >= 1")
    from .ffield import split_prime
    from .poly import is_irreducible
    F = ctx.K.F
    maxdeg = ctx.genus + ctx.dist.deg - 1
    places = []
    for k in range(1, maxdeg + 1):
        for code in range(F.q ** k):
            coeffs = []
            c = code
            for _ in range(k):
                coeffs.append(c % F.q)
                c //= F.q
            coeffs.append(1)
            pirr = tuple(coeffs)
            if not is_irreducible(F, pirr):
                continue
            for pl in split_prime(ctx.ok, pirr):
                if pl.deg <= maxdeg:
                    places.append(pl)
    places.sort()
    out = []

    def emit(b):
        lvl = (-1,)
        if BX.rr_dim(ctx, b, lvl) == 0:
            out.append(b)

    def rec(idx, b, budget):
        if len(out) > limit:
            raise RuntimeError(f"more than {limit} reduced-ideal "
                               "candidates")
        emit(b)
        for i in range(idx, len(places)):
            d = places[i].deg
            if d > budget:
                continue
            nxt = ID.ideal_mul(b, ID.ideal_from_place(places[i]))
            rec(i, nxt, budget - d)

    rec(0, ID.unit_ideal(ctx.ok), maxdeg)
    out.sort(key=ID.canonical_bytes)
    return out


def frep_elements(ctx, limit=200000):
    """The full fRep state set for fields of unit rank 0, one canonical
    state per equivalence class of reduced ideals (two reduced ideals
    are equivalent when their quotient is generated by an element with
    valuation 0 at the distinguished place; reduce_state picks the same
    representative for every member of a class, which collapses the
    enumeration to one state per class).  The set is in bijection with
    the divisor class group modulo the class of the distinguished place,
    so its size is h * deg P where h counts degree-zero classes.

    Returns the list of states sorted by their canonical key."""
    seen = {}
    for b in reduced_ideals(ctx, limit):
        st = reduce_state(ctx, b, (), ())
        key = frep_key(st)
        if key not in seen:
            seen[key] = st
    return [seen[k] for k in sorted(seen)]


class InfraGroup:
    """The infrastructure as an abstract group for the lattice algorithms:
    states are reduced FReps, labels live in Z^n, and generators are the
    reduced states at the unit labels."""

    __slots__ = ("ctx", "_id", "_gens", "_neg_gens", "ops")

    def __init__(self, ctx):
        self.ctx = ctx
        self._id = identity(ctx)
        self._gens = {}
        self._neg_gens = {}
        self.ops = 0

    @property
    def n(self):
        return self.ctx.n

    def identity(self):
        return self._id

    def generator(self, i):
        got = self._gens.get(i)
        if got is None:
            v = [0] * self.ctx.n
            v[i] = 1
            got = phi_inv(self.ctx, v)
            self._gens[i] = got
        return got

    def neg_generator(self, i):
        got = self._neg_gens.get(i)
        if got is None:
            got = self.neg(self.generator(i))
            self._neg_gens[i] = got
        return got

    def add(self, A, B):
        self.ops += 1
        return add(self.ctx, A, B)

    def neg(self, A):
        self.ops += 1
        return neg(self.ctx, A)

    def key(self, A):
        return frep_key(A)

    def dist(self, A):
        return A.dist

    def dump_state(self, A):
        return frep_to_obj(A)

    def load_state(self, obj):
        return frep_from_obj(self.ctx, obj)

    def digest(self):
        K = self.ctx.K
        parts = [K.F.digest.hex(), str(K.d)]
        for f in K.fy:
            parts.append(",".join(map(str, f)))
        parts.append(str(self.ctx.n))
        return "|".join(parts)
