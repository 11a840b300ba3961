"""Multigraded free chain complexes over a polynomial ring.

A complex is a finite free R-module with homogeneous basis elements carrying
a homological degree and a multidegree (exponent tuple of a monomial of R).
Degree 0 is spanned by the unit basis element "1".  Elements are finite
R-linear combinations of basis elements; the per-multidegree components are
finite dimensional Q-vector spaces, which is where all homology happens.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from . import linalg
from .ring import (Polynomial, RationalFunction, Ring, mono_div,
                   mono_divides, mono_lcm, mono_mul)

UNIT = "1"


class ComplexError(Exception):
    pass


class BasisElement:
    __slots__ = ("name", "degree", "mdeg")

    def __init__(self, name: str, degree: int, mdeg: tuple):
        self.name = name
        self.degree = degree
        self.mdeg = mdeg

    def __repr__(self):
        return f"BasisElement({self.name}, deg={self.degree})"


class Element:
    """R-linear combination of basis elements of a fixed complex.

    Coefficient values are Polynomial or RationalFunction (they mix freely)."""

    __slots__ = ("complex", "coeffs")

    def __init__(self, complex_: "FreeComplex", coeffs: dict):
        self.complex = complex_
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, Element) or other.complex is not self.complex:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = coeffs.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = s
        return Element(self.complex, coeffs)

    def __neg__(self):
        return Element(self.complex, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Element":
        if isinstance(c, (int, Fraction)):
            c = self.complex.ring.const(c)
        if c.is_zero():
            return self.complex.zero
        return Element(self.complex, {k: c * v for k, v in self.coeffs.items()})

    def degrees(self) -> set:
        return {self.complex.basis[k].degree for k in self.coeffs}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ComplexError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_part(self, degree: int) -> "Element":
        return Element(self.complex, {
            k: v for k, v in self.coeffs.items()
            if self.complex.basis[k].degree == degree})

    def is_polynomial(self) -> bool:
        return all(not isinstance(v, RationalFunction) or v.is_polynomial()
                   for v in self.coeffs.values())

    def polynomialize(self) -> "Element":
        """Convert RationalFunction coefficients with trivial denominators."""
        out = {}
        for k, v in self.coeffs.items():
            out[k] = v.as_polynomial() if isinstance(v, RationalFunction) else v
        return Element(self.complex, out)

    def multidegree(self):
        """Common multidegree of all terms; raises if mixed."""
        mds = set()
        for k, v in self.coeffs.items():
            base = self.complex.basis[k].mdeg
            poly = v.as_polynomial() if isinstance(v, RationalFunction) else v
            for m in poly.terms:
                mds.add(mono_mul(m, base))
        if len(mds) != 1:
            raise ComplexError(f"element not multihomogeneous: {sorted(mds)}")
        return mds.pop()

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.complex is other.complex and (self - other).is_zero()

    def __str__(self):
        return self.complex.format_element(self)

    def __repr__(self):
        return f"<elt {self}>"


class FreeComplex:
    """Finite multigraded free complex with chosen homogeneous basis."""

    def __init__(self, ring: Ring, name: str = "F"):
        self.ring = ring
        self.name = name
        self.basis: dict[str, BasisElement] = {}
        self.order: list[str] = []
        self.diff: dict[str, Element] = {}
        self.add_basis(UNIT, 0, ring.zero_mono)
        self.zero = Element(self, {})

    # -- construction --

    def add_basis(self, name: str, degree: int, mdeg: tuple):
        if name in self.basis:
            raise ComplexError(f"duplicate basis element {name!r}")
        if degree < 0:
            raise ComplexError("negative homological degree")
        self.basis[name] = BasisElement(name, degree, mdeg)
        self.order.append(name)

    def set_diff(self, name: str, value: Element):
        if name not in self.basis:
            raise ComplexError(f"unknown basis element {name!r}")
        self.diff[name] = value

    # -- elements --

    def elem(self, name: str) -> Element:
        if name not in self.basis:
            raise ComplexError(f"unknown basis element {name!r}")
        return Element(self, {name: self.ring.one})

    def element(self, coeffs: dict) -> Element:
        out = {}
        for k, v in coeffs.items():
            if k not in self.basis:
                raise ComplexError(f"unknown basis element {k!r}")
            if isinstance(v, (int, Fraction)):
                v = self.ring.const(v)
            out[k] = v
        return Element(self, out)

    @property
    def one(self) -> Element:
        return self.elem(UNIT)

    def max_degree(self) -> int:
        return max(b.degree for b in self.basis.values())

    def names_in_degree(self, degree: int):
        return [n for n in self.order if self.basis[n].degree == degree]

    # -- differential --

    def d(self, x: Element) -> Element:
        acc = self.zero
        for name, coeff in x.coeffs.items():
            dn = self.diff.get(name)
            if dn is None or dn.is_zero():
                continue
            acc = acc + dn.scale(coeff)
        return acc

    # -- structural checks --

    def check(self) -> list:
        """Verify d is defined, degree -1, multidegree 0, and d^2 = 0.

        Returns a list of human-readable violation strings (empty = good)."""
        problems = []
        for name in self.order:
            b = self.basis[name]
            if b.degree == 0:
                if name in self.diff and not self.diff[name].is_zero():
                    problems.append(f"d({name}) must vanish in degree 0")
                continue
            dn = self.diff.get(name)
            if dn is None:
                problems.append(f"d({name}) is not defined")
                continue
            if dn.is_zero():
                continue
            degs = dn.degrees()
            if degs != {b.degree - 1}:
                problems.append(f"d({name}) has degrees {sorted(degs)}, expected {b.degree - 1}")
                continue
            try:
                md = dn.multidegree()
                if md != b.mdeg:
                    problems.append(f"d({name}) has multidegree {md}, expected {b.mdeg}")
            except ComplexError as e:
                problems.append(f"d({name}): {e}")
            dd = self.d(dn)
            if not dd.is_zero():
                problems.append(f"d^2({name}) = {dd} != 0")
        return problems

    # -- multidegree components --

    def mdeg_bound(self) -> tuple:
        acc = self.ring.zero_mono
        for b in self.basis.values():
            acc = mono_lcm(acc, b.mdeg)
        return acc

    def mdeg_support(self):
        """All divisors of the componentwise lcm of basis multidegrees."""
        bound = self.mdeg_bound()
        ranges = [range(e + 1) for e in bound]
        return [tuple(t) for t in iproduct(*ranges)]

    def piece_basis(self, degree: int, mdeg: tuple):
        """Q-basis of the (degree, mdeg) component: (name, cofactor) pairs
        standing for x^cofactor * e_name."""
        out = []
        for name in self.names_in_degree(degree):
            b = self.basis[name]
            if mono_divides(b.mdeg, mdeg):
                out.append((name, mono_div(mdeg, b.mdeg)))
        return out

    def element_vector(self, x: Element, degree: int, mdeg: tuple, piece=None):
        """Coordinates of the (degree, mdeg) part of x in the piece basis.

        Raises if x has terms in this degree whose multidegree-mdeg part
        cannot be expressed (cannot happen for multihomogeneous x of this
        multidegree)."""
        if piece is None:
            piece = self.piece_basis(degree, mdeg)
        index = {p: i for i, p in enumerate(piece)}
        vec = [Fraction(0)] * len(piece)
        for name, coeff in x.coeffs.items():
            b = self.basis[name]
            if b.degree != degree:
                continue
            poly = coeff.as_polynomial() if isinstance(coeff, RationalFunction) else coeff
            for m, c in poly.terms.items():
                if mono_mul(m, b.mdeg) != mdeg:
                    continue
                vec[index[(name, m)]] += c
        return vec

    def vector_element(self, vec, degree: int, mdeg: tuple, piece=None) -> Element:
        if piece is None:
            piece = self.piece_basis(degree, mdeg)
        coeffs: dict = {}
        for (name, cof), c in zip(piece, vec):
            if c:
                prev = coeffs.get(name, self.ring.zero)
                coeffs[name] = prev + self.ring.monomial(cof, c)
        return Element(self, coeffs)

    def diff_matrix(self, degree: int, mdeg: tuple):
        """Rows = images under d of the piece basis vectors, as coordinate
        vectors in the (degree-1, mdeg) piece."""
        piece = self.piece_basis(degree, mdeg)
        target = self.piece_basis(degree - 1, mdeg)
        rows = []
        for name, cof in piece:
            img = self.d(self.elem(name)).scale(self.ring.monomial(cof))
            rows.append(self.element_vector(img, degree - 1, mdeg, piece=target))
        return rows, piece, target

    def homology_dims(self, mdegs=None) -> dict:
        """dict degree -> total Q-dimension of homology over the multidegrees
        (defaults to the divisor-of-lcm support)."""
        if mdegs is None:
            mdegs = self.mdeg_support()
        maxdeg = self.max_degree()
        dims = {i: 0 for i in range(maxdeg + 1)}
        for md in mdegs:
            ranks = {}
            sizes = {}
            for i in range(maxdeg + 2):
                piece = self.piece_basis(i, md)
                sizes[i] = len(piece)
                if i == 0 or not piece:
                    ranks[i] = 0
                    continue
                rows, _, _ = self.diff_matrix(i, md)
                ranks[i] = linalg.rank(rows)
            for i in range(maxdeg + 1):
                dims[i] += sizes[i] - ranks[i] - ranks.get(i + 1, 0)
        return dims

    # -- printing --

    def format_element(self, x: Element) -> str:
        if x.is_zero():
            return "0"
        chunks = []
        first = True
        for name in self.order:
            if name not in x.coeffs:
                continue
            coeff = x.coeffs[name]
            if isinstance(coeff, RationalFunction) and coeff.is_polynomial():
                coeff = coeff.as_polynomial()
            chunks.append(_format_term(coeff, name, first))
            first = False
        return " ".join(chunks)


def _format_term(coeff, name: str, first: bool) -> str:
    if isinstance(coeff, RationalFunction):
        body = f"({coeff})"
        neg = False
    else:
        terms = coeff.sorted_terms()
        if len(terms) == 1:
            m, c = terms[0]
            neg = c < 0
            if neg:
                c = -c
            from .ring import format_coeff, format_mono
            ms = format_mono(coeff.ring, m)
            if not ms:
                body = format_coeff(c)
            elif c == 1:
                body = ms
            else:
                body = f"{format_coeff(c)}*{ms}"
        else:
            body = f"({coeff})"
            neg = False
    if name != UNIT:
        if body == "1":
            body = name
        else:
            body = f"{body}*{name}"
    if first:
        return ("-" if neg else "") + body
    return ("- " if neg else "+ ") + body
