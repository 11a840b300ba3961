"""Free graded-commutative algebra on homogeneous generators over a field of
rational functions.

Generators e_1 < e_2 < ... carry homological degrees (nondecreasing along the
index order).  Monomials commute up to the Koszul sign e_j e_i =
(-1)^{|e_i||e_j|} e_i e_j; in the *free* (non-strict) algebra odd generators
do not square to zero, so e.g. e1^2 is a legal monomial.  A `strict=True`
normalization kills odd squares instead (used for symmetric-algebra models).

The term order: higher homological degree wins; on equal degree, compare
exponents left to right, larger exponent at the first difference wins.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from .ring import (Polynomial, RationalFunction, Ring, mono_div, mono_divides,
                   mono_lcm, mono_mul)


class GCContext:
    """Generator data for a free graded-commutative algebra K[e]."""

    def __init__(self, ring: Ring, names, degrees, multidegrees=None):
        self.ring = ring
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        if len(self.names) != len(self.degrees):
            raise ValueError("names/degrees length mismatch")
        if any(d2 < d1 for d1, d2 in zip(self.degrees, self.degrees[1:])):
            raise ValueError("generators must be ordered by nondecreasing degree")
        self.n = len(self.names)
        self.parity = tuple(d & 1 for d in self.degrees)
        self.multidegrees = tuple(multidegrees) if multidegrees is not None else None
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self.zero_mono = (0,) * self.n
        self.zero = GCPoly(self, {})
        self.one = GCPoly(self, {self.zero_mono: RationalFunction(ring.one)})

    def index(self, name: str) -> int:
        return self._index[name]

    def gen(self, name: str) -> "GCPoly":
        i = self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.n))
        return GCPoly(self, {mono: RationalFunction(self.ring.one)})

    # -- monomial helpers --

    def mono_degree(self, mono: tuple) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def mono_total(self, mono: tuple) -> int:
        """Number of generator factors (ignoring homological degree)."""
        return sum(mono)

    def mono_multidegree(self, mono: tuple) -> tuple:
        if self.multidegrees is None:
            raise ValueError("context has no multidegrees")
        acc = self.ring.zero_mono
        for e, md in zip(mono, self.multidegrees):
            for _ in range(e):
                acc = mono_mul(acc, md)
        return acc

    def mono_sign(self, a: tuple, b: tuple) -> int:
        """Koszul sign of merging e^a * e^b into the sorted monomial e^(a+b)."""
        par = 0
        # each e_i-block of a (i odd) passes the e_j-blocks of b with j < i odd
        seen_odd_b = 0
        for i in range(self.n):
            if self.parity[i] and a[i] & 1 and seen_odd_b & 1:
                par ^= 1
            if self.parity[i] and b[i] & 1:
                seen_odd_b ^= 1
        return -1 if par else 1

    def mono_mul_signed(self, a: tuple, b: tuple, strict=False):
        """(sign, product monomial); sign 0 when strict and an odd square appears."""
        prod = mono_mul(a, b)
        if strict and any(self.parity[i] and prod[i] > 1 for i in range(self.n)):
            return 0, prod
        return self.mono_sign(a, b), prod

    def word_mono(self, indices, strict=False):
        """Normalize a product of generators given by index sequence.

        Returns (sign, exponent tuple); sign 0 when strict kills it."""
        sign = 1
        mono = self.zero_mono
        for i in indices:
            gi = tuple(1 if j == i else 0 for j in range(self.n))
            s, mono = self.mono_mul_signed(mono, gi, strict=strict)
            if s == 0:
                return 0, mono
            sign *= s
        return sign, mono

    def compare(self, a: tuple, b: tuple) -> int:
        """-1, 0, 1 for a < b, a == b, a > b in the term order."""
        if a == b:
            return 0
        da, db = self.mono_degree(a), self.mono_degree(b)
        if da != db:
            return -1 if da < db else 1
        for x, y in zip(a, b):
            if x != y:
                return -1 if x < y else 1
        return 0

    def mono_sort_key(self):
        return cmp_to_key(self.compare)

    def format_mono(self, mono: tuple) -> str:
        parts = []
        for nm, e in zip(self.names, mono):
            if e == 1:
                parts.append(nm)
            elif e > 1:
                parts.append(f"{nm}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"GCContext({', '.join(self.names)})"


def _coerce_coeff(ring: Ring, c) -> RationalFunction:
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, Polynomial):
        return RationalFunction(c)
    return RationalFunction(ring.const(c))


class GCPoly:
    """Element of K[e]: dict monomial -> RationalFunction over the base ring."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: GCContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, GCPoly):
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return GCPoly(self.ctx, terms)

    def __neg__(self):
        return GCPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GCPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GCPoly":
        c = _coerce_coeff(self.ctx.ring, c)
        if c.is_zero():
            return self.ctx.zero
        return GCPoly(self.ctx, {m: c * v for m, v in self.terms.items()})

    def term_mul_left(self, coeff, mono: tuple, strict=False) -> "GCPoly":
        """Left-multiply by the single term coeff * e^mono."""
        coeff = _coerce_coeff(self.ctx.ring, coeff)
        terms: dict = {}
        for m, c in self.terms.items():
            s, pm = self.ctx.mono_mul_signed(mono, m, strict=strict)
            if s == 0:
                continue
            v = coeff * c if s == 1 else -(coeff * c)
            prev = terms.get(pm)
            v = v if prev is None else prev + v
            if v.is_zero():
                terms.pop(pm, None)
            else:
                terms[pm] = v
        return GCPoly(self.ctx, terms)

    def __mul__(self, other):
        if not isinstance(other, GCPoly):
            if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
                return self.scale(other)
            return NotImplemented
        acc = self.ctx.zero
        for m, c in self.terms.items():
            acc = acc + other.term_mul_left(c, m)
        return acc

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            return self.scale(other)
        return NotImplemented

    def strictify(self) -> "GCPoly":
        """Drop monomials containing an odd square."""
        ctx = self.ctx
        terms = {m: c for m, c in self.terms.items()
                 if not any(ctx.parity[i] and m[i] > 1 for i in range(ctx.n))}
        return GCPoly(ctx, terms)

    def lead_mono(self) -> tuple:
        if not self.terms:
            raise ValueError("zero element has no lead monomial")
        best = None
        for m in self.terms:
            if best is None or self.ctx.compare(m, best) > 0:
                best = m
        return best

    def lead_coeff(self) -> RationalFunction:
        return self.terms[self.lead_mono()]

    def monic(self) -> "GCPoly":
        if self.is_zero():
            return self
        lc = self.lead_coeff()
        return self.scale(lc.inverse())

    def total_degree(self) -> int:
        """Max number of generator factors in a monomial (-1 for zero)."""
        if not self.terms:
            return -1
        return max(self.ctx.mono_total(m) for m in self.terms)

    def homological_degrees(self) -> set:
        return {self.ctx.mono_degree(m) for m in self.terms}

    def sorted_terms(self):
        key = self.ctx.mono_sort_key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, GCPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return format_gcpoly(self)

    def __repr__(self):
        return f"<gc {self}>"


def format_gcpoly(p: GCPoly) -> str:
    """Canonical text: terms in descending order, coefficients parenthesized
    unless they equal +-1 (e.g. `(z*u)*e2*e35 + (-v)*e6*e35`)."""
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        ms = p.ctx.format_mono(m)
        one = c.is_one()
        minus_one = (-c).is_one()
        if m == p.ctx.zero_mono:
            body = f"({c})" if not (one or minus_one) else "1"
            sign = minus_one
        elif one or minus_one:
            body = ms
            sign = minus_one
        else:
            neg = _looks_negative(c)
            cc = -c if neg else c
            body = f"({cc})*{ms}"
            sign = neg
        if i == 0:
            out.append(("-" if sign else "") + body)
        else:
            out.append(("- " if sign else "+ ") + body)
    return " ".join(out)


def _looks_negative(c: RationalFunction) -> bool:
    return not c.num.is_zero() and c.num.lead_coeff() < 0
