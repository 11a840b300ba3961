"""Exact multivariate polynomial and rational-function arithmetic over Q.

Monomials are exponent tuples over a fixed variable list; polynomials are
sparse dicts monomial -> Fraction.  Everything is exact: no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable


# ---------- exponent-tuple (monomial / multidegree) helpers ----------

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True if monomial a divides monomial b (componentwise <=)."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: tuple, a: tuple) -> tuple:
    """b / a, assuming a | b."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


def mono_key(a: tuple) -> tuple:
    """Sort key: lexicographic, first variable dominant, larger is bigger."""
    return a


class Ring:
    """A polynomial ring Q[x1..xn], fixed variable names in order."""

    def __init__(self, variables: Iterable[str]):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.variables)
        self.zero_mono = (0,) * self.nvars
        self._var_index = {v: i for i, v in enumerate(self.variables)}
        self.zero = Polynomial(self, {})
        self.one = Polynomial(self, {self.zero_mono: Fraction(1)})

    def var(self, name: str) -> "Polynomial":
        i = self._var_index[name]
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: Fraction(1)})

    def monomial(self, expts: tuple, coeff=1) -> "Polynomial":
        if len(expts) != self.nvars:
            raise ValueError("wrong exponent length")
        c = Fraction(coeff)
        if c == 0:
            return self.zero
        return Polynomial(self, {tuple(expts): c})

    def const(self, c) -> "Polynomial":
        return self.monomial(self.zero_mono, c)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"Ring({', '.join(self.variables)})"


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basics --

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.ring.zero_mono: Fraction(1)}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_mono in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(self.ring.zero_mono, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_deg(m) for m in self.terms)

    def lead_mono(self) -> tuple:
        """Leading monomial w.r.t. lex (first variable dominant)."""
        if not self.terms:
            raise ValueError("zero polynomial has no lead monomial")
        return max(self.terms, key=mono_key)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_mono()]

    def multidegree(self):
        """The common exponent tuple if every term has it; None if inhomogeneous.

        A polynomial of a single term is always multihomogeneous; used for
        multigraded sanity checks."""
        monos = set(self.terms)
        if len(monos) == 1:
            return next(iter(monos))
        return None

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            elif m in terms:
                del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero
        # fast path: monomial factor
        if len(self.terms) == 1:
            (m1, c1), = self.terms.items()
            return Polynomial(self.ring, {mono_mul(m1, m2): c1 * c2
                                          for m2, c2 in other.terms.items()})
        if len(other.terms) == 1:
            return other * self
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                elif m in terms:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                return NotImplemented
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})

    def mono_shift(self, mono: tuple) -> "Polynomial":
        """Multiply by the monomial with exponent tuple `mono`."""
        return Polynomial(self.ring, {mono_mul(m, mono): c for m, c in self.terms.items()})

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except ValueError:
            return False

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Exact division; raises ValueError if `other` does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self.scale(Fraction(1) / other.constant_value())
        if other.is_monomial():
            (dm, dc), = other.terms.items()
            terms = {}
            for m, c in self.terms.items():
                if not mono_divides(dm, m):
                    raise ValueError("not divisible")
                terms[mono_div(m, dm)] = c / dc
            return Polynomial(self.ring, terms)
        rem = self
        quo_terms: dict = {}
        dlm = other.lead_mono()
        dlc = other.lead_coeff()
        while not rem.is_zero():
            rlm = rem.lead_mono()
            if not mono_divides(dlm, rlm):
                raise ValueError("not divisible")
            qm = mono_div(rlm, dlm)
            qc = rem.terms[rlm] / dlc
            quo_terms[qm] = qc
            rem = rem - other.mono_shift(qm).scale(qc)
        return Polynomial(self.ring, quo_terms)

    # -- comparisons / hashing --

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # -- display --

    def sorted_terms(self):
        """Terms in descending lex order: canonical print order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<poly {self}>"

    # -- content / primitive part --

    def rational_content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; sign follows lead."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = int_gcd(num, c.numerator)
            den = den * c.denominator // int_gcd(den, c.denominator)
        content = Fraction(num, den)
        if self.lead_coeff() < 0:
            content = -content
        return content

    def primitive(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.rational_content())


def format_mono(ring: Ring, mono: tuple) -> str:
    parts = []
    for v, e in zip(ring.variables, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        ac = -c if neg else c
        ms = format_mono(p.ring, m)
        if not ms:
            body = format_coeff(ac)
        elif ac == 1:
            body = ms
        else:
            body = f"{format_coeff(ac)}*{ms}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# ---------- multivariate gcd (primitive PRS) ----------

def _to_univar(p: Polynomial, v: int) -> dict:
    """Split p as a univariate polynomial in variable #v with Polynomial coeffs."""
    coeffs: dict = {}
    for m, c in p.terms.items():
        d = m[v]
        rest = m[:v] + (0,) + m[v + 1:]
        coeffs.setdefault(d, {})[rest] = c
    return {d: Polynomial(p.ring, t) for d, t in coeffs.items()}

def _from_univar(ring: Ring, v: int, coeffs: dict) -> Polynomial:
    terms: dict = {}
    for d, poly in coeffs.items():
        for m, c in poly.terms.items():
            terms[m[:v] + (d,) + m[v + 1:]] = c
    return Polynomial(ring, terms)


def _uni_mul_scalar(coeffs: dict, s: Polynomial) -> dict:
    return {d: p * s for d, p in coeffs.items()}


def _uni_prem(f: dict, g: dict, ring: Ring) -> dict:
    """Pseudo-remainder of univariate polys with Polynomial coefficients."""
    df = max(f) if f else -1
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        r = _uni_mul_scalar(r, lg)
        shift = dr - dg
        for d, p in g.items():
            nd = d + shift
            s = r.get(nd, ring.zero) - p * lr
            if s.is_zero():
                r.pop(nd, None)
            else:
                r[nd] = s
        r = {d: p for d, p in r.items() if not p.is_zero()}
    return r


def _uni_content(coeffs: dict, ring: Ring) -> Polynomial:
    g = ring.zero
    for p in coeffs.values():
        g = poly_gcd(g, p)
        if g.is_one():
            break
    return g


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Primitive gcd with positive lead coefficient (monic-free, integer-primitive)."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    ring = f.ring
    # pull out the common monomial factor first
    mf = mono_gcd_of_support(f)
    mg = mono_gcd_of_support(g)
    common = mono_gcd(mf, mg)
    f = Polynomial(ring, {mono_div(m, mf): c for m, c in f.terms.items()})
    g = Polynomial(ring, {mono_div(m, mg): c for m, c in g.terms.items()})
    result = _gcd_core(f.primitive(), g.primitive())
    return result.mono_shift(common).primitive()


def mono_gcd_of_support(p: Polynomial) -> tuple:
    it = iter(p.terms)
    acc = next(it)
    for m in it:
        acc = mono_gcd(acc, m)
    return acc


def _gcd_core(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_constant() or g.is_constant():
        return f.ring.one
    ring = f.ring
    used_f = [i for i in range(ring.nvars) if any(m[i] for m in f.terms)]
    used_g = [i for i in range(ring.nvars) if any(m[i] for m in g.terms)]
    common_vars = sorted(set(used_f) & set(used_g))
    if not common_vars:
        return ring.one
    v = common_vars[0]
    uf = _to_univar(f, v)
    ug = _to_univar(g, v)
    cf = _uni_content(uf, ring)
    cg = _uni_content(ug, ring)
    cont = poly_gcd(cf, cg)
    pf = {d: p.exact_div(cf) for d, p in uf.items()}
    pg = {d: p.exact_div(cg) for d, p in ug.items()}
    # primitive PRS on the primitive parts
    a, b = (pf, pg) if max(pf) >= max(pg) else (pg, pf)
    while b:
        r = _uni_prem(a, b, ring)
        if r:
            c = _uni_content(r, ring)
            r = {d: p.exact_div(c) for d, p in r.items()}
        a, b = b, r
    # a is the last nonzero pseudo-remainder; if it has degree 0 in v, the
    # gcd of the primitive parts is 1 and only the content survives
    if max(a) == 0:
        return cont.primitive()
    h = _from_univar(ring, v, a)
    hc = _uni_content(a, ring)
    h = _from_univar(ring, v, {d: p.exact_div(hc) for d, p in a.items()})
    return (h * cont).primitive()


class RationalFunction:
    """Quotient of polynomials, normalized: gcd removed, denominator primitive
    with positive lead coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, _normalized=False):
        if den is None:
            den = num.ring.one
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _rf_normalize(num, den)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def as_polynomial(self) -> Polynomial:
        if not self.den.is_one():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.ring.const(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num + other.num, None, _normalized=True)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num * other.num, None, _normalized=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def inverse(self):
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"<ratfun {self}>"


def _rf_normalize(num: Polynomial, den: Polynomial):
    if num.is_zero():
        return num, num.ring.one
    if den.is_one():
        return num, den
    if den.is_constant():
        return num.scale(1 / den.constant_value()), num.ring.one
    g = poly_gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    c = den.rational_content()
    if c != 1:
        num = num.scale(1 / c)
        den = den.scale(1 / c)
    return num, den
