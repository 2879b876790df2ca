"""Plain-text curve descriptions.

A curve file is line-oriented ``key = value`` text; ``#`` starts a
comment, blank lines are ignored, keys may appear once.  Keys:

  p                  base field characteristic (prime), required
  modulus            extension modulus as a monic polynomial in ``a``
                     over the prime field (omit for prime fields)
  equation           the defining polynomial F(x, y) = 0, monic of
                     degree >= 2 in y, integer/``a`` coefficients
  finite_basis       optional comma-separated integral basis of the
                     finite maximal order (elements in x, y; a single
                     ``/`` by a polynomial in x is allowed)
  infinite_basis     optional basis of the infinite maximal order, same
                     syntax
  genus              optional genus hint, validated against the
                     computed genus
  distinguished      optional index overriding the distinguished-place
                     choice (into the places sorted by degree, key)
  assume_irreducible optional true/false: vouch for irreducibility when
                     the built-in certificate fails
  name               optional label echoed in output
  seed, threads, mem_cap
                     optional run defaults, overridable on the command
                     line

Values are polynomial expressions over the integers in ``x``, ``y`` and
the extension generator ``a``, built from ``+ - * ^ ( )`` and one
optional division by a polynomial in ``x`` alone; there is no general
expression language.  parse_curve() normalizes a file into concrete
field data (coefficients reduced into the field), and build_curve()
assembles the full field context.

Syntax problems raise CurveSyntaxError and semantic problems (non-prime
p, reducible modulus, wrong basis length, genus mismatch, ...)
CurveSemanticError; both carry the offending line number.
"""

from __future__ import annotations

from .fq import FieldSpec, Fq
from .ffield import FunctionField, build_context
from .poly import PONE, is_irreducible, pdeg, pnorm

__all__ = ["CurveError", "CurveSyntaxError", "CurveSemanticError",
           "CurveSpec", "parse_curve", "build_curve"]

_KEYS = ("p", "modulus", "equation", "finite_basis", "infinite_basis",
         "genus", "distinguished", "assume_irreducible", "name", "seed",
         "threads", "mem_cap")


class CurveError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


class CurveSyntaxError(CurveError):
    pass


class CurveSemanticError(CurveError):
    pass


class CurveSpec:
    """Normalized curve description ready for build_curve."""

    __slots__ = ("name", "F", "fy", "finite_basis", "infinite_basis",
                 "genus", "distinguished", "assume_irreducible", "seed",
                 "threads", "mem_cap")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def __repr__(self):
        return (f"CurveSpec(name={self.name!r}, q={self.F.q}, "
                f"d={len(self.fy) - 1})")


# -- expression evaluation -----------------------------------------------------
#
# Values during evaluation are (terms, den): terms maps (i, j) ->
# nonzero field coefficient of x^i y^j, den is a polynomial in x.  The
# generator `a` is a coefficient-level constant.


def _tokens(text, line):
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(("int", int(text[i:j])))
            i = j
            continue
        if c in "xya":
            if i + 1 < len(text) and (text[i + 1].isalnum()
                                      or text[i + 1] == "_"):
                raise CurveSyntaxError(
                    f"unknown name starting at {text[i:i + 8]!r}", line)
            out.append(("var", c))
            i += 1
            continue
        if c in "+-*/^()":
            out.append((c, c))
            i += 1
            continue
        raise CurveSyntaxError(f"stray character {c!r}", line)
    out.append(("end", None))
    return out


class _Expr:
    """Recursive-descent evaluator over the (terms, den) domain."""

    def __init__(self, F, tokens, line, allow):
        self.F = F
        self.toks = tokens
        self.pos = 0
        self.line = line
        self.allow = allow

    def peek(self):
        return self.toks[self.pos][0]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg):
        raise CurveSyntaxError(msg, self.line)

    def parse(self):
        v = self.expr()
        if self.peek() != "end":
            self.fail(f"unexpected {self.toks[self.pos][1]!r}")
        return v

    def expr(self):
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take()[0] == "-"
        v = self.term()
        if neg:
            v = self.vneg(v)
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = self.vadd(v, self.vneg(w) if op == "-" else w)
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            w = self.factor()
            v = self.vmul(v, w) if op == "*" else self.vdiv(v, w)
        return v

    def factor(self):
        if self.peek() == "-":
            self.take()
            return self.vneg(self.factor())
        v = self.atom()
        if self.peek() == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                self.fail("exponent must be a nonnegative integer")
            v = self.vpow(v, val)
        return v

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return ({(0, 0): self.F.embed_int(val)} if val % self.F.p
                    else {}, PONE)
        if kind == "var":
            if val not in self.allow:
                self.fail(f"variable {val!r} not allowed here")
            if val == "a":
                if self.F.e == 1:
                    raise CurveSemanticError(
                        "extension generator used over a prime field",
                        self.line)
                return ({(0, 0): self.F.from_coeffs((0, 1))}, PONE)
            ij = (1, 0) if val == "x" else (0, 1)
            return ({ij: 1}, PONE)
        if kind == "(":
            v = self.expr()
            if self.take()[0] != ")":
                self.fail("unbalanced parenthesis")
            return v
        self.fail("expected a number, variable, or parenthesis")

    def vneg(self, v):
        t, den = v
        return ({ij: self.F.neg(c) for ij, c in t.items()}, den)

    def vadd(self, v, w):
        F = self.F
        (tv, dv), (tw, dw) = v, w
        if dv != dw:
            from .poly import pmul
            tv = self._scale_terms(tv, dw)
            tw = self._scale_terms(tw, dv)
            den = pmul(F, dv, dw)
        else:
            den = dv
        out = dict(tv)
        for ij, c in tw.items():
            s = F.add(out.get(ij, 0), c)
            if s:
                out[ij] = s
            else:
                out.pop(ij, None)
        return (out, den)

    def _scale_terms(self, t, mult):
        # multiply every term by the x-polynomial mult
        F = self.F
        out = {}
        for (i, j), c in t.items():
            for k, mc in enumerate(mult):
                if mc == 0:
                    continue
                ij = (i + k, j)
                s = F.add(out.get(ij, 0), F.mul(c, mc))
                if s:
                    out[ij] = s
                else:
                    out.pop(ij, None)
        return out

    def vmul(self, v, w):
        from .poly import pmul
        F = self.F
        (tv, dv), (tw, dw) = v, w
        out = {}
        for (i1, j1), c1 in tv.items():
            for (i2, j2), c2 in tw.items():
                ij = (i1 + i2, j1 + j2)
                s = F.add(out.get(ij, 0), F.mul(c1, c2))
                if s:
                    out[ij] = s
                else:
                    out.pop(ij, None)
        return (out, pmul(F, dv, dw))

    def vpow(self, v, k):
        acc = ({(0, 0): 1}, PONE)
        base = v
        while k:
            if k & 1:
                acc = self.vmul(acc, base)
            k >>= 1
            if k:
                base = self.vmul(base, base)
        return acc

    def vdiv(self, v, w):
        tw, dw = w
        if dw != PONE or any(j for (_, j) in tw):
            self.fail("division is only allowed by a polynomial in x")
        den = [0] * (1 + max((i for (i, _) in tw), default=0))
        for (i, _), c in tw.items():
            den[i] = c
        den = pnorm(den)
        if not den:
            raise CurveSemanticError("division by zero", self.line)
        from .poly import pmul
        return (v[0], pmul(self.F, v[1], den))


def _eval_expr(F, text, line, allow):
    return _Expr(F, _tokens(text, line), line, allow).parse()


def _terms_to_vec(F, terms, d):
    """Split bivariate terms into d ascending-y coefficient polynomials."""
    cols = [[] for _ in range(d)]
    for (i, j), c in terms.items():
        if j >= d:
            raise ValueError(f"y-degree {j} out of range")
        col = cols[j]
        while len(col) <= i:
            col.append(0)
        col[i] = c
    return tuple(pnorm(col) for col in cols)


# -- file parsing --------------------------------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _parse_int(raw, line, key):
    try:
        return int(raw, 0)
    except ValueError:
        raise CurveSyntaxError(f"{key} must be an integer, got {raw!r}",
                               line) from None


def parse_curve(text):
    """Parse curve-file text into a CurveSpec (see the module docstring
    for the format)."""
    seen = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise CurveSyntaxError("expected 'key = value'", lineno)
        key, _, val = body.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _KEYS:
            raise CurveSyntaxError(f"unknown key {key!r}", lineno)
        if key in seen:
            raise CurveSyntaxError(f"duplicate key {key!r}", lineno)
        if not val:
            raise CurveSyntaxError(f"empty value for {key!r}", lineno)
        seen[key] = val
        lines[key] = lineno

    if "p" not in seen:
        raise CurveSyntaxError("missing required key 'p'")
    if "equation" not in seen:
        raise CurveSyntaxError("missing required key 'equation'")

    p = _parse_int(seen["p"], lines["p"], "p")
    if not _is_prime(p):
        raise CurveSemanticError(f"p = {p} is not prime", lines["p"])

    F = _field_of(p, seen, lines)

    d_line = lines["equation"]
    terms, den = _eval_expr(F, seen["equation"], d_line, allow="xya")
    if den != PONE:
        raise CurveSemanticError("the equation may not contain division",
                                 d_line)
    d = max((j for (_, j) in terms), default=0)
    if d < 2:
        raise CurveSemanticError("equation must have y-degree >= 2",
                                 d_line)
    try:
        fy = _terms_to_vec(F, terms, d + 1)
    except ValueError as e:
        raise CurveSemanticError(str(e), d_line) from None
    if fy[d] != PONE:
        raise CurveSemanticError("equation must be monic in y", d_line)

    K = FunctionField(F, fy)

    def basis_of(key):
        if key not in seen:
            return None
        ln = lines[key]
        out = []
        for part in seen[key].split(","):
            part = part.strip()
            if not part:
                raise CurveSyntaxError(f"empty element in {key}", ln)
            t, dn = _eval_expr(F, part, ln, allow="xya")
            try:
                vec = _terms_to_vec(F, t, d)
            except ValueError as e:
                raise CurveSemanticError(f"{key}: {e}", ln) from None
            out.append(K.elt(vec, dn))
        if len(out) != d:
            raise CurveSemanticError(
                f"{key} must have exactly {d} elements, got {len(out)}",
                ln)
        return out

    fin = basis_of("finite_basis")
    inf = basis_of("infinite_basis")

    def opt_int(key, lo=None):
        if key not in seen:
            return None
        v = _parse_int(seen[key], lines[key], key)
        if lo is not None and v < lo:
            raise CurveSemanticError(f"{key} must be >= {lo}", lines[key])
        return v

    assume = False
    if "assume_irreducible" in seen:
        raw = seen["assume_irreducible"].lower()
        if raw not in ("true", "false"):
            raise CurveSyntaxError("assume_irreducible must be true or "
                                   "false", lines["assume_irreducible"])
        assume = raw == "true"

    return CurveSpec(
        name=seen.get("name"),
        F=F,
        fy=fy,
        finite_basis=fin,
        infinite_basis=inf,
        genus=opt_int("genus", 0),
        distinguished=opt_int("distinguished", 0),
        assume_irreducible=assume,
        seed=opt_int("seed", 0),
        threads=opt_int("threads", 1),
        mem_cap=opt_int("mem_cap", 1),
    )


def _field_of(p, seen, lines):
    if "modulus" not in seen:
        return Fq(p)
    ln = lines["modulus"]
    # the modulus is a univariate polynomial in `a` over the prime field;
    # evaluate it with `a` standing in the x slot of the term domain
    Fp = Fq(p)
    text = seen["modulus"].replace("a", "x")
    if "y" in text:
        raise CurveSyntaxError("modulus may only use the generator 'a'",
                               ln)
    terms, den = _eval_expr(Fp, text, ln, allow="x")
    if den != PONE:
        raise CurveSyntaxError("modulus may not contain division", ln)
    vec = _terms_to_vec(Fp, terms, 1)
    mod = vec[0]
    if pdeg(mod) < 2:
        raise CurveSemanticError("modulus must have degree >= 2", ln)
    if mod[-1] != 1:
        raise CurveSemanticError("modulus must be monic", ln)
    if not is_irreducible(Fp, mod):
        raise CurveSemanticError("modulus is reducible", ln)
    return Fq(FieldSpec(p, pdeg(mod), tuple(mod)))


def build_curve(spec):
    """Field context for a parsed CurveSpec; genus hints are verified."""
    ctx = build_context(spec.F, spec.fy,
                        finite_basis=spec.finite_basis,
                        infinite_basis=spec.infinite_basis,
                        assume_irreducible=spec.assume_irreducible,
                        distinguished=spec.distinguished)
    if spec.genus is not None and ctx.genus != spec.genus:
        raise CurveSemanticError(
            f"genus hint {spec.genus} does not match the computed genus "
            f"{ctx.genus}")
    return ctx
