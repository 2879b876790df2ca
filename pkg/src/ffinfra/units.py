"""Unit-lattice computation by baby-step giant-step.

The label map sends Z^n onto a finite quotient Z^n / Lambda; the kernel
Lambda is computed one generator at a time.  At stage i the sublattice
Lambda_{i-1} = Lambda intersected with Z^{i-1} (coordinates of the
earlier generators) is known in HNF.  The stage finds the minimal
m_i > 0 such that m_i * e_i lands in the span of the earlier generators
modulo Lambda: baby states  b*g_i + Phi(v)  for 0 <= b < B and v in the
box prod [0, beta_j), giant states  (j*B)*g_i - Phi(w)  for w in the
stride grid prod {0, beta_j, 2*beta_j, ...}; box plus grid covers the
fundamental parallelepiped of Lambda_{i-1}, so a multiple m*g_i that
lands in the known subgroup collides in window ceil(m/B).  Every window
j rules out all m <= j*B, hence the first window with a candidate
already proves minimality once it completes.  When the current bound M
is exhausted, B doubles (M quadruples), the baby table extends in
place, and the giant scan restarts; the geometric schedule keeps total
work within a constant factor of the final scan.

Collisions only ever certify a multiple of the minimal m_i (the table
keeps the smallest baby per state, but that baby need not match the
giant's window), so the winning candidate is refined: for each prime p
dividing it, (m/p) * g_i is tested for membership in the earlier
generators' subgroup using the b = 0 slice of the baby table, and m
drops to m/p while a test succeeds.  The refined relation is verified
by an explicit identity walk before it extends the lattice.

The group is abstract: anything with n, identity(), generator(i),
neg_generator(i), add(), neg(), key(), dist(), dump_state(),
load_state() and digest() works.  ffinfra.frep provides the
function-field instance; tests also drive mock quotients.
"""

from __future__ import annotations

import json
import math
import os

from .intlat import det_int, fd_reduce, hnf_int

__all__ = ["ResourceLimit", "UnsupportedConfig", "AbstractInfra",
           "generators", "bsgs_lattice", "brute_force_lattice",
           "regulator_from_lattice"]


class ResourceLimit(RuntimeError):
    """Raised when a configured memory cap would be exceeded."""


class UnsupportedConfig(RuntimeError):
    """Raised when a computation's gate condition fails (for the lattice
    algorithms: the distinguished place must have degree 1, otherwise
    label equality does not certify group equality)."""


class AbstractInfra:
    """Z^n modulo a known relation lattice, with canonical coset labels:
    the generic-group test bed for the lattice algorithms.  States are
    the fundamental-parallelepiped representatives of their cosets, so
    key equality is group equality, exactly the interface the search
    needs."""

    __slots__ = ("L", "n", "ops")

    def __init__(self, L):
        self.L = [list(r) for r in L]
        self.n = len(self.L)
        if any(len(r) != self.n for r in self.L):
            raise ValueError("relation lattice must be square")
        if any(self.L[i][i] <= 0 for i in range(self.n)):
            raise ValueError("relation lattice must be upper-triangular "
                             "with positive pivots")
        self.ops = 0

    def _red(self, v):
        return tuple(fd_reduce(self.L, v))

    def identity(self):
        return (0,) * self.n

    def generator(self, i):
        e = [0] * self.n
        e[i] = 1
        return self._red(e)

    def neg_generator(self, i):
        e = [0] * self.n
        e[i] = -1
        return self._red(e)

    def add(self, a, b):
        self.ops += 1
        return self._red([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self._red([-x for x in a])

    def key(self, a):
        return b"".join(c.to_bytes(8, "little", signed=True) for c in a)

    def dist(self, a):
        return a

    def dump_state(self, a):
        return list(a)

    def load_state(self, obj):
        return tuple(obj)

    def digest(self):
        return "abstract|" + ";".join(",".join(map(str, r))
                                      for r in self.L)


def generators(ctx):
    """The n reduced states at the unit labels (a frep.InfraGroup is the
    usual caller-facing wrapper; this enforces the search gate)."""
    if ctx.n > 0 and ctx.dist.deg != 1:
        raise UnsupportedConfig(
            "lattice search needs a degree-1 distinguished place; this "
            f"field's has degree {ctx.dist.deg}")
    from .frep import InfraGroup
    G = InfraGroup(ctx)
    return [G.generator(i) for i in range(ctx.n)]


_ENTRY_OVERHEAD = 120  # rough dict-entry bytes beyond the key itself


def _emit(sink, event, **fields):
    if sink is not None:
        rec = {"event": event}
        rec.update(fields)
        sink(rec)


def _pow_state(G, base, k):
    """k * base by double-and-add (k >= 0)."""
    acc = None
    cur = base
    while k:
        if k & 1:
            acc = cur if acc is None else G.add(acc, cur)
        k >>= 1
        if k:
            cur = G.add(cur, cur)
    return G.identity() if acc is None else acc


def _box_walk(G, start, limits, steps):
    """Yield (state, pos) over prod_j [0, limits_j) with one group
    operation per point.  steps[j] is added whenever axis j increments;
    lower axes reset to zero for free via anchor states."""
    k = len(limits)
    pos = [0] * k
    anchors = [start] * (k + 1)
    state = start
    while True:
        yield state, pos
        j = 0
        while j < k and pos[j] + 1 >= limits[j]:
            j += 1
        if j == k:
            return
        pos[j] += 1
        for ii in range(j):
            pos[ii] = 0
        state = G.add(anchors[j], steps[j])
        for ii in range(j + 1):
            anchors[ii] = state


def _prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def _verify_relation(G, r):
    """Walk the relation vector back to the identity."""
    acc = G.identity()
    for j, c in enumerate(r):
        if c == 0:
            continue
        base = G.generator(j) if c > 0 else G.neg_generator(j)
        acc = G.add(acc, _pow_state(G, base, abs(c)))
    return G.key(acc) == G.key(G.identity())


def _stage_axes(H):
    """Baby widths (~sqrt of each pivot) and giant stride counts."""
    betas = []
    counts = []
    for j in range(len(H)):
        p = H[j][j]
        b = math.isqrt(p)
        if b * b < p:
            b += 1
        b = max(1, min(b, p))
        betas.append(b)
        counts.append(-(-p // b))
    return betas, counts


class _Stage:
    """BSGS for one generator index i over the known lattice H (i rows)."""

    def __init__(self, G, i, H, m0, mem_cap, emit, stats):
        self.G = G
        self.i = i
        self.H = H
        self.emit = emit
        self.stats = stats
        self.mem_cap = mem_cap
        self.betas, self.counts = _stage_axes(H)
        self.M = max(4, m0)
        self.B = self._b_of(self.M)
        self.table = {}
        self.mem = 0
        self.next_b = 0
        self.best = None          # (m, relation vector)
        self.giant_j = 0          # completed windows in the current scan
        self.ganchor = None
        self.gi = G.generator(i)
        self.baby_steps = [G.generator(j) for j in range(i)]
        self.giant_steps = [_pow_state(G, G.neg_generator(j), self.betas[j])
                            for j in range(i)]

    @staticmethod
    def _b_of(M):
        b = math.isqrt(M)
        if b * b < M:
            b += 1
        return max(1, b)

    def _consider(self, m, rvec):
        if m < 0:
            m = -m
            rvec = [-c for c in rvec]
        if m == 0:
            raise AssertionError("distinct cover points collided at m = 0")
        if self.best is None or m < self.best[0]:
            self.best = (m, rvec)
            _emit(self.emit, "relation_candidate", stage=self.i, m=m,
                  vector=list(rvec))

    def extend_babies(self):
        """Insert baby states for b in [next_b, B)."""
        G = self.G
        i = self.i
        if self.next_b >= self.B:
            return
        start = _pow_state(G, self.gi, self.next_b)
        for b in range(self.next_b, self.B):
            for state, pos in _box_walk(G, start, self.betas,
                                        self.baby_steps):
                key = G.key(state)
                hit = self.table.get(key)
                if hit is not None:
                    b0, v0 = hit
                    if b == b0:
                        # distinct points of one baby pass never share a
                        # state: their difference would be a lattice
                        # vector inside the fundamental box
                        raise AssertionError("baby box revisited a state")
                    rv = [pos[j] - v0[j] for j in range(i)] + [b - b0]
                    self._consider(b - b0, rv)
                    continue
                self.table[key] = (b, tuple(pos))
                self.mem += len(key) + _ENTRY_OVERHEAD
                self.stats["babies"] += 1
                if self.mem_cap is not None and self.mem > self.mem_cap:
                    raise ResourceLimit(
                        f"baby table exceeds memory cap ({self.mem} bytes)")
            if b + 1 < self.B:
                start = G.add(start, self.gi)
        self.next_b = self.B
        # giants must rescan against the enlarged table
        self.giant_j = 0
        self.ganchor = None

    def run_giants(self, ckpt_cb=None, ckpt_every=64):
        """Scan giant windows; returns the winning (m, vector) or None if
        the current bound M is exhausted."""
        G = self.G
        i = self.i
        bigstep = _pow_state(G, self.gi, self.B)
        if self.ganchor is None:
            self.giant_j = 0
            self.ganchor = G.identity()
        jmax = -(-self.M // self.B)
        while self.giant_j < jmax:
            j = self.giant_j + 1
            self.ganchor = G.add(self.ganchor, bigstep)
            for state, pos in _box_walk(G, self.ganchor, self.counts,
                                        self.giant_steps):
                self.stats["giant_steps"] += 1
                hit = self.table.get(G.key(state))
                if hit is None:
                    continue
                b0, v0 = hit
                m = j * self.B - b0
                rv = [-(pos[k] * self.betas[k] + v0[k]) for k in range(i)]
                rv.append(m)
                self._consider(m, rv)
            self.giant_j = j
            if self.best is not None and self.best[0] <= j * self.B:
                return self.best
            if ckpt_cb is not None and j % ckpt_every == 0:
                ckpt_cb(self)
                _emit(self.emit, "progress", stage=self.i, window=j,
                      table=len(self.table),
                      ops=getattr(self.G, "ops", None))
        return None

    def double(self):
        self.M *= 4
        self.B = self._b_of(self.M)
        self.stats["rebuilds"] += 1
        _emit(self.emit, "rescan", stage=self.i, M=self.M, B=self.B)

    def _member(self, mprime):
        """Relation vector if mprime * g_i lies in the subgroup of the
        earlier generators, else None.  Sound because every state of the
        baby box {Phi(v)} was inserted during the b = 0 pass, so a table
        entry with baby index 0 is exactly such a state."""
        G = self.G
        i = self.i
        s = _pow_state(G, self.gi, mprime)
        for state, pos in _box_walk(G, s, self.counts, self.giant_steps):
            self.stats["giant_steps"] += 1
            hit = self.table.get(G.key(state))
            if hit is not None and hit[0] == 0:
                v0 = hit[1]
                rv = [-(pos[k] * self.betas[k] + v0[k]) for k in range(i)]
                rv.append(mprime)
                return rv
        return None

    def refine(self):
        """Divide primes out of the candidate while the quotient still
        lands in the earlier generators' subgroup; collisions certify
        multiples of the minimal relation, this pins it exactly."""
        m, rv = self.best
        changed = True
        while changed and m > 1:
            changed = False
            for p in _prime_factors(m):
                hit = self._member(m // p)
                if hit is not None:
                    m //= p
                    rv = hit
                    _emit(self.emit, "refined", stage=self.i, m=m)
                    changed = True
                    break
        self.best = (m, rv)


def _stage_digest(G):
    dig = getattr(G, "digest", None)
    return dig() if callable(dig) else ""


def bsgs_lattice(G, m0=64, mem_cap=None, emit=None, checkpoint=None,
                 ckpt_every=64):
    """Full unit lattice of the label quotient, one generator at a time.

    Returns (H, stats): H is the n x n HNF of Lambda, stats counts work.
    `checkpoint` names a JSON file written at stage boundaries and every
    ckpt_every giant windows; an existing file resumes the run when its
    group digest matches.
    """
    n = G.n
    fctx = getattr(G, "ctx", None)
    if n > 0 and fctx is not None and fctx.dist.deg != 1:
        raise UnsupportedConfig(
            "lattice search needs a degree-1 distinguished place; this "
            f"field's has degree {fctx.dist.deg}")
    stats = {"babies": 0, "giant_steps": 0, "rebuilds": 0, "stages": []}
    H = []
    start_stage = 0
    resume = None
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            saved = json.load(fh)
        if saved.get("version") == 1 and saved.get("digest") == _stage_digest(G):
            H = [list(map(int, row)) for row in saved["H"]]
            start_stage = saved["stage"]
            stats.update({k: saved["stats"].get(k, stats[k])
                          for k in ("babies", "giant_steps", "rebuilds")})
            stats["stages"] = saved["stats"].get("stages", [])
            resume = saved if "table" in saved else None
            _emit(emit, "resume", stage=start_stage,
                  mid_stage=resume is not None)
        else:
            _emit(emit, "checkpoint_ignored", reason="digest mismatch")

    def dump(stage_obj=None, stage_idx=None):
        if not checkpoint:
            return
        payload = {
            "version": 1,
            "digest": _stage_digest(G),
            "stage": stage_idx if stage_obj is None else stage_obj.i,
            "H": H,
            "stats": stats,
        }
        if stage_obj is not None:
            payload["M"] = stage_obj.M
            payload["B"] = stage_obj.B
            payload["next_b"] = stage_obj.next_b
            payload["giant_j"] = stage_obj.giant_j
            payload["best"] = list(stage_obj.best) if stage_obj.best else None
            payload["table"] = [[k.hex(), b, list(v)]
                                for k, (b, v) in stage_obj.table.items()]
            payload["ganchor"] = (G.dump_state(stage_obj.ganchor)
                                  if stage_obj.ganchor is not None else None)
        tmp = checkpoint + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, checkpoint)

    for i in range(start_stage, n):
        st = _Stage(G, i, H, m0, mem_cap, emit, stats)
        if resume is not None and resume["stage"] == i:
            st.M = resume["M"]
            st.B = resume["B"]
            st.next_b = resume["next_b"]
            st.giant_j = resume["giant_j"]
            st.best = (tuple(resume["best"])
                       if resume.get("best") else None)
            if st.best is not None:
                st.best = (st.best[0], list(st.best[1]))
            st.table = {bytes.fromhex(k): (b, tuple(v))
                        for k, b, v in resume["table"]}
            st.mem = sum(len(k) + _ENTRY_OVERHEAD for k in st.table)
            if resume.get("ganchor") is not None:
                st.ganchor = G.load_state(resume["ganchor"])
            resume = None
        _emit(emit, "stage_start", stage=i, M=st.M, B=st.B,
              prev_det=det_int(H) if H else 1)
        try:
            while True:
                st.extend_babies()
                won = st.run_giants(ckpt_cb=lambda s: dump(stage_obj=s),
                                    ckpt_every=ckpt_every)
                if won is not None:
                    break
                st.double()
            st.refine()
        except ResourceLimit:
            dump(stage_obj=st)
            raise
        m, rvec = st.best
        if not _verify_relation(G, rvec):
            raise AssertionError("relation failed its identity walk")
        prev_det = det_int(H) if H else 1
        rows = [row + [0] for row in H] + [rvec]
        H = hnf_int(rows)[0]
        # the projection of the extended lattice onto the new coordinate
        # is m Z with kernel the previous lattice
        if len(H) != i + 1 or det_int(H) != prev_det * m:
            raise AssertionError("lattice extension lost minimality")
        stats["stages"].append({"stage": i, "m": m, "M": st.M})
        _emit(emit, "stage_done", stage=i, m=m, det=det_int(H),
              table=len(st.table), ops=getattr(G, "ops", None))
        dump(stage_idx=i + 1)
    return H, stats


def brute_force_lattice(G, limit=200000):
    """Exhaustive BFS over the label quotient; oracle for small groups.

    Returns (H, count): the relation lattice in HNF and the number of
    distinct states, which must equal det(H)."""
    n = G.n
    ident = G.identity()
    seen = {G.key(ident): (0,) * n}
    frontier = [(ident, (0,) * n)]
    rel_rows = []
    while frontier:
        nxt = []
        for state, lab in frontier:
            for j in range(n):
                st2 = G.add(state, G.generator(j))
                lab2 = lab[:j] + (lab[j] + 1,) + lab[j + 1:]
                key = G.key(st2)
                old = seen.get(key)
                if old is None:
                    if len(seen) >= limit:
                        raise ResourceLimit(
                            f"quotient exceeds {limit} states")
                    seen[key] = lab2
                    nxt.append((st2, lab2))
                else:
                    diff = [a - b for a, b in zip(lab2, old)]
                    if any(diff):
                        rel_rows.append(diff)
        frontier = nxt
    H, rank, _ = hnf_int(rel_rows)
    if rank != n:
        raise AssertionError("walk closed without a full-rank lattice")
    if det_int(H) != len(seen):
        raise AssertionError("lattice determinant disagrees with the "
                             "state count")
    return H, len(seen)


def regulator_from_lattice(ctx, H):
    """Regulator: lattice determinant times the degrees of the
    non-distinguished infinite places."""
    r = det_int(H)
    for p in ctx.places[:-1]:
        r *= p.deg
    return r
