"""Exact arithmetic in Z[q^{+-1}, r^{+-1}] and its fraction field Q(r, q).

A Laurent polynomial is stored as a map from exponent pairs (a, b),
meaning q^a * r^b, to nonzero arbitrary-precision integer coefficients.
The map itself is the canonical form: two polynomials are equal iff
their term maps are identical.

Fractions are kept in a canonical form (see RatFunc) so that equality of
coefficients is structural in practice; equality testing still falls back
to cross-multiplication, so correctness never depends on full reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


class PoleError(ZeroDivisionError):
    """A denominator vanished under a specialization."""


def _term_key(ab):
    # sort order for rendering: q-exponent descending, then r-exponent descending
    return (-ab[0], -ab[1])


class LaurentPoly:
    """Laurent polynomial in q and r with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for ab, c in terms.items():
                if c:
                    t[ab] = c
        self.terms = t
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(c: int) -> "LaurentPoly":
        return LaurentPoly({(0, 0): c})

    @staticmethod
    def monomial(c: int, a: int, b: int) -> "LaurentPoly":
        return LaurentPoly({(a, b): c})

    # -- basic structure ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({poly_str(self)!r})"

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for ab, c in other.terms.items():
            s = t.get(ab, 0) + c
            if s:
                t[ab] = s
            else:
                t.pop(ab, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = t
        out._hash = None
        return out

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {ab: -c for ab, c in self.terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            out = LaurentPoly.__new__(LaurentPoly)
            out.terms = {ab: c * other for ab, c in self.terms.items()}
            out._hash = None
            return out
        t: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                ab = (a1 + a2, b1 + b2)
                s = t.get(ab, 0) + c1 * c2
                if s:
                    t[ab] = s
                else:
                    del t[ab]
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = t
        out._hash = None
        return out

    __rmul__ = __mul__

    def shift(self, da: int, db: int) -> "LaurentPoly":
        """Multiply by the monomial q^da * r^db."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {(a + da, b + db): c for (a, b), c in self.terms.items()}
        out._hash = None
        return out

    def min_exponents(self):
        mq = min(a for a, _ in self.terms)
        mr = min(b for _, b in self.terms)
        return mq, mr

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = _int_gcd(g, abs(c))
            if g == 1:
                break
        return g

    def lead_sign(self) -> int:
        """Sign of the coefficient on the lexicographically largest term."""
        ab = min(self.terms, key=_term_key)
        return 1 if self.terms[ab] > 0 else -1


ZERO = LaurentPoly()
ONE = LaurentPoly.from_int(1)


# -- exact division and gcd (used only to keep fractions small) ---------


def _poly_to_rec(p: LaurentPoly):
    """Recursive form: map r-exponent -> (map q-exponent -> coefficient)."""
    rec: dict = {}
    for (a, b), c in p.terms.items():
        rec.setdefault(b, {})[a] = c
    return rec


def _rec_to_poly(rec) -> LaurentPoly:
    t = {}
    for b, qs in rec.items():
        for a, c in qs.items():
            if c:
                t[(a, b)] = c
    return LaurentPoly(t)


def _u_norm(u):
    return {a: c for a, c in u.items() if c}


def _u_mul(u, v):
    out: dict = {}
    for a, c in u.items():
        for a2, c2 in v.items():
            k = a + a2
            s = out.get(k, 0) + c * c2
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _u_sub(u, v):
    out = dict(u)
    for a, c in v.items():
        s = out.get(a, 0) - c
        if s:
            out[a] = s
        else:
            out.pop(a, None)
    return out


def _u_content(u) -> int:
    g = 0
    for c in u.values():
        g = _int_gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _u_primitive(u):
    if not u:
        return u
    m = min(u)
    g = _u_content(u)
    lead = u[max(u)]
    s = 1 if lead > 0 else -1
    return {a - m: (c // g) * s for a, c in u.items()}


def _u_gcd(u, v):
    """Primitive gcd in Z[q] of two (possibly Laurent) univariate maps."""
    u, v = _u_primitive(u), _u_primitive(v)
    while v:
        du, dv = max(u), max(v)
        if du < dv:
            u, v = v, u
            continue
        # pseudo-remainder step
        lv = v[dv]
        rem = dict(u)
        while rem and max(rem) >= dv:
            dr = max(rem)
            lr = rem[dr]
            rem = _u_sub(_u_mul(rem, {0: lv}), _u_mul(v, {dr - dv: lr}))
        u, v = v, _u_primitive(rem)
    return _u_primitive(u)


def _u_divexact(u, v):
    """Exact division in Q[q]; returns None when not exact over Q."""
    if not u:
        return {}
    quot: dict = {}
    rem = {a: Fraction(c) for a, c in u.items()}
    dv = max(v)
    lv = v[dv]
    while rem:
        dr = max(rem)
        if dr < dv:
            return None
        fac = rem[dr] / lv
        quot[dr - dv] = fac
        for a, c in v.items():
            k = a + dr - dv
            s = rem.get(k, 0) - fac * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quot


def poly_gcd(p: LaurentPoly, s: LaurentPoly) -> LaurentPoly:
    """A gcd of two Laurent polynomials, up to a unit monomial.

    Content and a primitive 2-variable subresultant-style recursion; the
    result is only used to reduce fractions, so any common divisor works.
    """
    if p.is_zero():
        return s
    if s.is_zero():
        return p
    cg = _int_gcd(p.content(), s.content())
    if p.is_monomial() or s.is_monomial():
        return LaurentPoly.from_int(cg)
    try:
        return _poly_gcd_prs(p, s, cg)
    except (ValueError, KeyError, AttributeError, TypeError):
        # gcd is an optional optimization; a common integer divisor is always safe
        return LaurentPoly.from_int(cg)


def _poly_gcd_prs(p: LaurentPoly, s: LaurentPoly, cg: int) -> LaurentPoly:
    # work with min exponents shifted away
    p = p.shift(*(-e for e in p.min_exponents()))
    s = s.shift(*(-e for e in s.min_exponents()))
    fp, fs = _poly_to_rec(p), _poly_to_rec(s)

    def r_content(rec):
        g: dict = {}
        for qs in rec.values():
            g = _u_gcd(g, qs) if g else _u_primitive(qs)
            if g == {0: 1}:
                break
        return g

    cont = _u_gcd(r_content(fp), r_content(fs))

    def r_primitive(rec, cont_rec):
        out = {}
        for b, qs in rec.items():
            quot = _u_divexact(qs, cont_rec)
            if quot is None or any(c.denominator != 1 for c in quot.values()):
                raise ValueError("content division failed")
            out[b] = {a: int(c) for a, c in quot.items()}
        return out

    def pseudo_rem(f, g):
        dg = max(g)
        lg = g[dg]
        rem = {b: dict(qs) for b, qs in f.items()}
        while rem and max(rem) >= dg:
            dr = max(rem)
            lr = rem[dr]
            new: dict = {}
            for b, qs in rem.items():
                new[b] = _u_mul(qs, lg)
            for b, qs in g.items():
                k = b + dr - dg
                new[k] = _u_sub(new.get(k, {}), _u_mul(qs, lr))
            rem = {b: _u_norm(qs) for b, qs in new.items()}
            rem = {b: qs for b, qs in rem.items() if qs}
        return rem

    fp = r_primitive(fp, r_content(fp))
    fs = r_primitive(fs, r_content(fs))
    while fs:
        if max(fp) < max(fs):
            fp, fs = fs, fp
            continue
        rem = pseudo_rem(fp, fs)
        fp, fs = fs, (r_primitive(rem, r_content(rem)) if rem else {})
    out = _rec_to_poly(fp)
    c = out.content()
    if c > 1:
        out = LaurentPoly({ab: v // c for ab, v in out.terms.items()})
    if cont and cont != {0: 1}:
        out = out * _rec_to_poly({0: cont})
    if cg != 1:
        out = out * cg
    return out


def poly_divexact(p: LaurentPoly, d: LaurentPoly):
    """Divide p by d; returns None when the division is not exact."""
    if p.is_zero():
        return ZERO
    if d.is_monomial():
        (a, b), c = next(iter(d.terms.items()))
        out = {}
        for (pa, pb), pc in p.terms.items():
            if pc % c:
                return None
            out[(pa - a, pb - b)] = pc // c
        return LaurentPoly(out)
    # long division in the lex order (q first, then r)
    rem = dict(p.terms)
    quot: dict = {}
    dlead = min(d.terms, key=_term_key)
    dc = d.terms[dlead]
    while rem:
        rlead = min(rem, key=_term_key)
        rc = rem[rlead]
        if rc % dc:
            return None
        fa = rlead[0] - dlead[0]
        fb = rlead[1] - dlead[1]
        fc = rc // dc
        quot[(fa, fb)] = fc
        for (a, b), c in d.terms.items():
            k = (a + fa, b + fb)
            s = rem.get(k, 0) - fc * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
        if rem and min(rem, key=_term_key) == rlead:
            return None
    return LaurentPoly(quot)


# -- the fraction field ----------------------------------------------


class RatFunc:
    """Element of Q(r, q) as a canonical fraction of Laurent polynomials.

    Normalization: divide out a polynomial gcd and the joint integer
    content, shift by the monomial making the denominator's minimal
    exponents zero, and fix the sign so the denominator's lexicographically
    largest term (q-exponent first, then r-exponent) is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE, _normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(r, q)")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_int(c: int) -> "RatFunc":
        return RatFunc(LaurentPoly.from_int(c), ONE, _normalized=True)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RatFunc":
        return RatFunc(p, ONE)

    @staticmethod
    def monomial(c: int, a: int, b: int) -> "RatFunc":
        return RatFunc(LaurentPoly.monomial(c, a, b), ONE, _normalized=True) if c else RF_ZERO

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        # cross-multiplication: exact even if a fraction escaped full reduction
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({ratfunc_str(self)!r})"

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFunc.from_int(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(r, q)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int):
        if k < 0:
            return RF_ONE / (self ** (-k))
        out = RF_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return ZERO, ONE
    if not den.is_monomial():
        g = poly_gcd(num, den)
        if not (g.is_monomial() and abs(next(iter(g.terms.values()))) == 1):
            n2 = poly_divexact(num, g)
            d2 = poly_divexact(den, g)
            if n2 is not None and d2 is not None:
                num, den = n2, d2
    mq, mr = den.min_exponents()
    if (mq, mr) != (0, 0):
        num = num.shift(-mq, -mr)
        den = den.shift(-mq, -mr)
    c = _int_gcd(num.content(), den.content())
    s = den.lead_sign()
    if c != 1 or s < 0:
        cs = c * s
        num = LaurentPoly({ab: v // cs for ab, v in num.terms.items()})
        den = LaurentPoly({ab: v // cs for ab, v in den.terms.items()})
    return num, den


RF_ZERO = RatFunc.from_int(0)
RF_ONE = RatFunc.from_int(1)


def q_power(a: int) -> RatFunc:
    """The Laurent monomial q^a."""
    return RatFunc.monomial(1, a, 0)


def r_power(b: int) -> RatFunc:
    """The Laurent monomial r^b."""
    return RatFunc.monomial(1, 0, b)


Q = q_power(1)
R = r_power(1)


def delta() -> RatFunc:
    """The loop value 1 + (r - r^{-1})/(q - q^{-1})."""
    return RF_ONE + (R - r_power(-1)) / (Q - q_power(-1))


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field arithmetic dispatch; division by zero raises ZeroDivisionError."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# -- the q -> -q^{-1} automorphism ------------------------------------


def flip_q_poly(p: LaurentPoly) -> LaurentPoly:
    """Apply q -> -q^{-1}, r -> r to a Laurent polynomial."""
    t = {}
    for (a, b), c in p.terms.items():
        t[(-a, b)] = -c if a % 2 else c
    return LaurentPoly(t)


def flip_q(x: RatFunc) -> RatFunc:
    """The involutive field automorphism q -> -q^{-1}, r -> r."""
    return RatFunc(flip_q_poly(x.num), flip_q_poly(x.den))


# -- specializations ---------------------------------------------------


def eval_poly(p: LaurentPoly, q0: Fraction, r0: Fraction) -> Fraction:
    total = Fraction(0)
    for (a, b), c in p.terms.items():
        total += c * q0 ** a * r0 ** b
    return total


def specialize(x: RatFunc, q0, r0) -> Fraction:
    """Exact rational value of x at a point (q0, r0) with q0, r0 nonzero."""
    q0, r0 = Fraction(q0), Fraction(r0)
    if q0 == 0 or r0 == 0:
        raise PoleError("q and r must be specialized to nonzero rationals")
    d = eval_poly(x.den, q0, r0)
    if d == 0:
        raise PoleError(
            f"denominator {poly_str(x.den)} vanishes at q={q0}, r={r0}"
        )
    return eval_poly(x.num, q0, r0) / d


def specialize_r_poly(p: LaurentPoly, l: int) -> LaurentPoly:
    """Substitute r -> -q^{2l+1}."""
    t: dict = {}
    for (a, b), c in p.terms.items():
        ab = (a + b * (2 * l + 1), 0)
        s = t.get(ab, 0) + (-c if b % 2 else c)
        if s:
            t[ab] = s
        else:
            del t[ab]
    return LaurentPoly(t)


def specialize_r(x: RatFunc, l: int) -> RatFunc:
    """Substitute r -> -q^{2l+1}, yielding a one-variable rational function in q."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    den = specialize_r_poly(x.den, l)
    if den.is_zero():
        raise PoleError(
            f"denominator {poly_str(x.den)} vanishes identically under r -> -q^{2*l+1}"
        )
    return RatFunc(specialize_r_poly(x.num, l), den)


# -- serialization ------------------------------------------------------


def _var_str(sym: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return sym
    return f"{sym}^{e}"


def poly_str(p: LaurentPoly) -> str:
    """Canonical string, terms sorted by (q-exponent desc, r-exponent desc)."""
    if p.is_zero():
        return "0"
    parts = []
    for ab in sorted(p.terms, key=_term_key):
        a, b = ab
        c = p.terms[ab]
        mono = "*".join(s for s in (_var_str("q", a), _var_str("r", b)) if s)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def ratfunc_str(x: RatFunc) -> str:
    """Canonical string form, e.g. "(q^2 - 1)/(q*r - 1)"."""
    if x.den.is_one():
        return poly_str(x.num)
    return f"({poly_str(x.num)})/({poly_str(x.den)})"


def poly_to_json(p: LaurentPoly) -> list:
    return [[a, b, c] for (a, b), c in sorted(p.terms.items(), key=lambda kv: _term_key(kv[0]))]


def poly_from_json(data) -> LaurentPoly:
    return LaurentPoly({(int(a), int(b)): int(c) for a, b, c in data})


def ratfunc_to_json(x: RatFunc) -> dict:
    return {"num": poly_to_json(x.num), "den": poly_to_json(x.den)}


def ratfunc_from_json(data) -> RatFunc:
    return RatFunc(poly_from_json(data["num"]), poly_from_json(data["den"]))
