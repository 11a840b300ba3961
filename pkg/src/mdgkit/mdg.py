"""Differential graded modules with a (possibly non-associative) multiplication.

A multiplication is stored as a table of products of basis elements, subject
to: unitality (products with "1" are implied), strict graded commutativity
(e*f = (-1)^{|e||f|} f*e and e*e = 0 for odd |e|), degree and multidegree
additivity, and the Leibniz rule.  Products absent from the table are an
*error*, not zero: tables may be deliberately partial.

On top of the table live the associator calculus: associators, alternative
identities, the associator submodule with its per-multidegree homology, the
maximal associative quotient, multiplicators of comparison maps, and homotopy
perturbation of multiplications.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from . import linalg
from .complexes import UNIT, ComplexError, Element, FreeComplex
from .ring import (Polynomial, RationalFunction, mono_div, mono_divides,
                   mono_lcm, mono_mul)


class MDGError(Exception):
    pass


class MissingProductError(MDGError):
    def __init__(self, left: str, right: str):
        super().__init__(f"product {left} * {right} is not defined in the table")
        self.pair = (left, right)


class Multiplication:
    """Table of basis products for a FreeComplex."""

    def __init__(self, complex_: FreeComplex, name: str = "mu"):
        self.complex = complex_
        self.name = name
        self.table: dict[tuple, Element] = {}
        self._pos = {n: i for i, n in enumerate(complex_.order)}

    def set_product(self, left: str, right: str, value: Element):
        cx = self.complex
        if left not in cx.basis or right not in cx.basis:
            raise MDGError(f"unknown basis element in product {left} * {right}")
        if UNIT in (left, right):
            raise MDGError("products with the unit are implied, do not store them")
        if self._pos[left] > self._pos[right]:
            sign = (-1) ** (cx.basis[left].degree * cx.basis[right].degree)
            left, right = right, left
            value = value if sign == 1 else -value
        self.table[(left, right)] = value

    def has_product(self, left: str, right: str) -> bool:
        try:
            self.product(left, right)
            return True
        except MissingProductError:
            return False

    def product(self, left: str, right: str) -> Element:
        """Product of two basis elements, with unit/commutativity/strictness
        conventions applied."""
        cx = self.complex
        if left == UNIT:
            return cx.elem(right)
        if right == UNIT:
            return cx.elem(left)
        dl = cx.basis[left].degree
        dr = cx.basis[right].degree
        if left == right and dl % 2 == 1:
            return cx.zero
        sign = 1
        if self._pos[left] > self._pos[right]:
            sign = (-1) ** (dl * dr)
            left, right = right, left
        value = self.table.get((left, right))
        if value is None:
            raise MissingProductError(left, right)
        return value if sign == 1 else -value

    def stored_pairs(self):
        return list(self.table)

    def multiply(self, x: Element, y: Element) -> Element:
        acc = self.complex.zero
        for n1, c1 in x.coeffs.items():
            for n2, c2 in y.coeffs.items():
                p = self.product(n1, n2)
                if not p.is_zero():
                    acc = acc + p.scale(c1 * c2)
        return acc

    def copy(self, name=None) -> "Multiplication":
        out = Multiplication(self.complex, name or self.name)
        out.table = dict(self.table)
        return out


class MDGAlgebra:
    """A FreeComplex together with a multiplication table."""

    def __init__(self, complex_: FreeComplex, mult: Multiplication):
        if mult.complex is not complex_:
            raise MDGError("multiplication attached to a different complex")
        self.complex = complex_
        self.mult = mult

    # -- convenience --

    @property
    def ring(self):
        return self.complex.ring

    def elem(self, name):
        return self.complex.elem(name)

    def mul(self, x: Element, y: Element) -> Element:
        return self.mult.multiply(x, y)

    def d(self, x: Element) -> Element:
        return self.complex.d(x)

    def basis_names(self, include_unit=False):
        return [n for n in self.complex.order if include_unit or n != UNIT]

    def associator(self, a: Element, b: Element, c: Element) -> Element:
        return self.mul(self.mul(a, b), c) - self.mul(a, self.mul(b, c))

    def associator_names(self, a: str, b: str, c: str) -> Element:
        return self.associator(self.elem(a), self.elem(b), self.elem(c))

    # -- axiom checking --

    def check(self) -> "AxiomReport":
        report = AxiomReport()
        report.complex_problems = self.complex.check()
        cx = self.complex
        for (l, r), value in self.mult.table.items():
            bl, br = cx.basis[l], cx.basis[r]
            if not value.is_zero():
                degs = value.degrees()
                if degs != {bl.degree + br.degree}:
                    report.degree_problems.append(
                        f"{l}*{r} lands in degrees {sorted(degs)}, expected {bl.degree + br.degree}")
                    continue
                try:
                    md = value.multidegree()
                    if md != mono_mul(bl.mdeg, br.mdeg):
                        report.mdeg_problems.append(
                            f"{l}*{r} has multidegree {md}, expected {mono_mul(bl.mdeg, br.mdeg)}")
                except ComplexError as e:
                    report.mdeg_problems.append(f"{l}*{r}: {e}")
            # Leibniz: d(l*r) = d(l)*r + (-1)^{|l|} l*d(r); needs subproducts
            try:
                lhs = cx.d(value)
                rhs = self.mul(cx.d(cx.elem(l)), cx.elem(r))
                term = self.mul(cx.elem(l), cx.d(cx.elem(r)))
                rhs = rhs + (term if bl.degree % 2 == 0 else -term)
                if not (lhs - rhs).is_zero():
                    report.leibniz_problems.append(
                        f"Leibniz fails for {l}*{r}: d(product) - expected = {lhs - rhs}")
            except MissingProductError as e:
                report.skipped_leibniz.append((f"{l}*{r}", str(e)))
        return report

    def defined_everywhere(self) -> bool:
        names = self.basis_names()
        return all(self.mult.has_product(a, b)
                   for i, a in enumerate(names) for b in names[i:])

    # -- associativity / alternativity --

    def associative_on_basis(self):
        """First non-associative basis triple as (a, b, c, associator), or None.

        Triples whose total degree exceeds the top of the complex are skipped;
        their associator vanishes for degree reasons."""
        cx = self.complex
        maxdeg = cx.max_degree()
        names = self.basis_names()
        for a in names:
            da = cx.basis[a].degree
            if da >= maxdeg:
                break
            for b in names:
                dab = da + cx.basis[b].degree
                if dab > maxdeg:
                    continue
                for c in names:
                    if dab + cx.basis[c].degree > maxdeg:
                        continue
                    v = self.associator_names(a, b, c)
                    if not v.is_zero():
                        return (a, b, c, v)
        return None

    def alternative_on_basis(self):
        """First failure of [a, x, a] = 0 (|a| even) or
        [a,x,a] = (-1)^{|x|} 2 [a,a,x] (|a| odd) over basis pairs, or None."""
        cx = self.complex
        maxdeg = cx.max_degree()
        for a in self.basis_names():
            da = cx.basis[a].degree
            for x in self.basis_names():
                if 2 * da + cx.basis[x].degree > maxdeg:
                    continue
                axa = self.associator_names(a, x, a)
                if da % 2 == 0:
                    if not axa.is_zero():
                        return (a, x, a, axa)
                else:
                    dx = cx.basis[x].degree
                    aax = self.associator_names(a, a, x).scale(2 * (-1) ** dx)
                    if not (axa - aax).is_zero():
                        return (a, x, a, axa - aax)
        return None

    # -- submodule machinery --

    def associator_submodule(self) -> "Submodule":
        cx = self.complex
        maxdeg = cx.max_degree()
        names = self.basis_names()
        gens = []
        seen = set()
        for b in names:
            db = cx.basis[b].degree
            for c in names:
                dbc = db + cx.basis[c].degree
                if dbc > maxdeg:
                    continue
                for x in names:
                    if dbc + cx.basis[x].degree > maxdeg:
                        continue
                    v = self.associator_names(b, c, x)
                    if v.is_zero():
                        continue
                    gens.append((f"[{b},{c},{x}]", v))
        sub = Submodule(self, gens)
        sub.saturate()
        return sub


class AxiomReport:
    def __init__(self):
        self.complex_problems = []
        self.degree_problems = []
        self.mdeg_problems = []
        self.leibniz_problems = []
        self.skipped_leibniz = []

    def ok(self) -> bool:
        return not (self.complex_problems or self.degree_problems
                    or self.mdeg_problems or self.leibniz_problems)

    def all_problems(self):
        return (self.complex_problems + self.degree_problems
                + self.mdeg_problems + self.leibniz_problems)

    def summary(self) -> str:
        lines = []
        for p in self.all_problems():
            lines.append(f"FAIL {p}")
        for pair, why in self.skipped_leibniz:
            lines.append(f"SKIP {pair}: {why}")
        if not lines:
            lines.append("all axioms verified")
        return "\n".join(lines)


class Submodule:
    """An MDG submodule given by homogeneous, multihomogeneous generators.

    Component at (degree, mdeg) is the Q-span of monomial shifts of the
    generators; homology is computed per multidegree."""

    def __init__(self, alg: MDGAlgebra, gens):
        self.alg = alg
        self.complex = alg.complex
        self.gens = []          # (label, Element, degree, mdeg)
        for label, v in gens:
            self.add_generator(label, v)

    def add_generator(self, label: str, v: Element):
        if v.is_zero():
            return
        self.gens.append((label, v, v.degree(), v.multidegree()))

    def degrees(self) -> set:
        return {d for _, _, d, _ in self.gens}

    def inf_degree(self):
        degs = self.degrees()
        return min(degs) if degs else None

    def sup_degree(self):
        degs = self.degrees()
        return max(degs) if degs else None

    def is_zero(self) -> bool:
        return not self.gens

    # -- linear spans --

    def span_rows(self, degree: int, mdeg: tuple, piece=None):
        cx = self.complex
        if piece is None:
            piece = cx.piece_basis(degree, mdeg)
        rows = []
        for _, v, d, m in self.gens:
            if d != degree or not mono_divides(m, mdeg):
                continue
            shifted = v.scale(cx.ring.monomial(mono_div(mdeg, m)))
            rows.append(cx.element_vector(shifted, degree, mdeg, piece=piece))
        return rows

    def contains(self, x: Element) -> bool:
        if x.is_zero():
            return True
        d = x.degree()
        m = x.multidegree()
        vec = self.complex.element_vector(x, d, m)
        return linalg.in_span(self.span_rows(d, m), vec)

    # -- closure --

    def saturate(self, max_rounds: int = 10):
        """Close under multiplication by basis elements (the differential
        closure is automatic and verified by `verify_closed`)."""
        cx = self.complex
        maxdeg = cx.max_degree()
        names = self.alg.basis_names()
        frontier = list(self.gens)
        for _ in range(max_rounds):
            new = []
            for a in names:
                da = cx.basis[a].degree
                ea = cx.elem(a)
                for label, v, d, m in frontier:
                    if da + d > maxdeg:
                        continue
                    prod = self.alg.mul(ea, v)
                    if prod.is_zero() or self.contains(prod):
                        continue
                    self.add_generator(f"{a}*{label}", prod)
                    new.append(self.gens[-1])
            if not new:
                return
            frontier = new
        raise MDGError("submodule closure did not stabilize")

    def verify_closed(self) -> list:
        """Check d-closure and basis-multiplication closure; returns violations."""
        problems = []
        cx = self.complex
        for label, v, d, m in self.gens:
            dv = cx.d(v)
            if not dv.is_zero() and not self.contains(dv):
                problems.append(f"d({label}) escapes the submodule")
        names = self.alg.basis_names()
        maxdeg = cx.max_degree()
        for a in names:
            ea = cx.elem(a)
            for label, v, d, m in self.gens:
                if cx.basis[a].degree + d > maxdeg:
                    continue
                prod = self.alg.mul(ea, v)
                if not prod.is_zero() and not self.contains(prod):
                    problems.append(f"{a}*{label} escapes the submodule")
        return problems

    # -- homology --

    def homology_dims(self, mdegs=None) -> dict:
        cx = self.complex
        if mdegs is None:
            mdegs = cx.mdeg_support()
        degs = self.degrees()
        if not degs:
            return {}
        lo, hi = min(degs), max(degs)
        dims = {i: 0 for i in range(lo, hi + 1)}
        for md in mdegs:
            rows = {i: self.span_rows(i, md) for i in range(lo, hi + 2)}
            sizes = {i: linalg.rank(rows[i]) for i in rows}
            dranks = {}
            for i in rows:
                imgs = []
                for r in rows[i]:
                    x = cx.vector_element(r, i, md)
                    dx = cx.d(x)
                    imgs.append(cx.element_vector(dx, i - 1, md))
                dranks[i] = linalg.rank(imgs)
            for i in range(lo, hi + 1):
                dims[i] += sizes[i] - dranks[i] - dranks.get(i + 1, 0)
        return dims

    def homology_class_reps(self, degree: int, mdeg: tuple):
        """Representative Elements of a basis of H_degree at this multidegree."""
        cx = self.complex
        rows = self.span_rows(degree, mdeg)
        basis_rows, _ = linalg.rref(rows)
        if not basis_rows:
            return []
        imgs = []
        for r in basis_rows:
            x = cx.vector_element(r, degree, mdeg)
            imgs.append(cx.element_vector(cx.d(x), degree - 1, mdeg))
        cycle_combos = linalg.nullspace(_transpose(imgs), len(basis_rows))
        boundary_rows = []
        for r in self.span_rows(degree + 1, mdeg):
            x = cx.vector_element(r, degree + 1, mdeg)
            boundary_rows.append(cx.element_vector(cx.d(x), degree, mdeg))
        # keep cycle representatives independent modulo the boundaries
        out = []
        acc = list(boundary_rows)
        for combo in cycle_combos:
            vec = _combine(combo, basis_rows)
            if not linalg.in_span(acc, vec):
                out.append(cx.vector_element(vec, degree, mdeg))
                acc.append(vec)
        return out

    def annihilates_homology(self, r: Polynomial, mdegs=None):
        """Does multiplication by the monomial r kill H(submodule)?

        Returns (True, None) or (False, witness description)."""
        if not r.is_monomial():
            raise MDGError("annihilator test expects a monomial")
        (rm, rc), = r.terms.items()
        cx = self.complex
        if mdegs is None:
            mdegs = cx.mdeg_support()
        degs = self.degrees()
        for md in mdegs:
            for i in sorted(degs):
                for rep in self.homology_class_reps(i, md):
                    shifted = rep.scale(r)
                    target_md = mono_mul(md, rm)
                    vec = cx.element_vector(shifted, i, target_md)
                    boundary_rows = []
                    for row in self.span_rows(i + 1, target_md):
                        x = cx.vector_element(row, i + 1, target_md)
                        boundary_rows.append(cx.element_vector(cx.d(x), i, target_md))
                    if not linalg.in_span(boundary_rows, vec):
                        return False, f"class in degree {i} survives multiplication"
        return True, None


def _transpose(rows):
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def _combine(combo, rows):
    n = len(rows[0])
    out = [Fraction(0)] * n
    for c, row in zip(combo, rows):
        if c:
            for j in range(n):
                out[j] += c * row[j]
    return out


# -- quotient by the associator submodule --

def quotient_homology_dims(alg: MDGAlgebra, sub: Submodule, mdegs=None) -> dict:
    """Homology dimensions of the quotient complex F/S in degrees >= 1 over
    the given multidegree support.  Degree 0 (the cyclic module R/I) is
    excluded: it is not finite dimensional."""
    cx = alg.complex
    if mdegs is None:
        mdegs = cx.mdeg_support()
    maxdeg = cx.max_degree()
    dims = {i: 0 for i in range(1, maxdeg + 1)}
    for md in mdegs:
        sub_rows = {i: sub.span_rows(i, md) for i in range(maxdeg + 2)}
        sub_rank = {i: linalg.rank(sub_rows[i]) for i in sub_rows}
        piece_size = {i: len(cx.piece_basis(i, md)) for i in range(maxdeg + 2)}
        dbar_rank = {}
        for i in range(1, maxdeg + 2):
            if piece_size[i] == 0:
                dbar_rank[i] = 0
                continue
            rows, _, _ = cx.diff_matrix(i, md)
            stacked = rows + sub_rows[i - 1]
            dbar_rank[i] = linalg.rank(stacked) - sub_rank[i - 1]
        for i in range(1, maxdeg + 1):
            qdim = piece_size[i] - sub_rank[i]
            dims[i] += qdim - dbar_rank[i] - dbar_rank.get(i + 1, 0)
    return dims


# -- chain maps and multiplicators --

class ChainMap:
    """Map between complexes, given on basis elements, extended R-linearly.
    The unit maps to the unit unless overridden."""

    def __init__(self, source: FreeComplex, target: FreeComplex, name="phi"):
        self.source = source
        self.target = target
        self.name = name
        self.images: dict[str, Element] = {}

    def set_image(self, name: str, value: Element):
        if name not in self.source.basis:
            raise MDGError(f"unknown source basis element {name!r}")
        self.images[name] = value

    def image(self, name: str) -> Element:
        if name == UNIT and name not in self.images:
            return self.target.one
        if name not in self.images:
            raise MDGError(f"map {self.name} has no value on {name!r}")
        return self.images[name]

    def apply(self, x: Element) -> Element:
        acc = self.target.zero
        for name, coeff in x.coeffs.items():
            img = self.image(name)
            if not img.is_zero():
                acc = acc + img.scale(coeff)
        return acc

    def check_chain_map(self) -> list:
        problems = []
        for name in self.source.order:
            if name == UNIT:
                continue
            lhs = self.apply(self.source.d(self.source.elem(name)))
            rhs = self.target.d(self.image(name))
            if not (lhs - rhs).is_zero():
                problems.append(f"{self.name} fails to commute with d at {name}")
        return problems

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target is not self.source:
            raise MDGError("composition mismatch")
        out = ChainMap(other.source, self.target, f"{self.name}.{other.name}")
        for name in other.source.order:
            out.set_image(name, self.apply(other.image(name)))
        return out


def multiplicator(phi: ChainMap, src: MDGAlgebra, dst: MDGAlgebra,
                  a: Element, x: Element) -> Element:
    """[a, x]_phi = phi(a * x) - phi(a) * phi(x) for unital phi: src -> dst."""
    return phi.apply(src.mul(a, x)) - dst.mul(phi.apply(a), phi.apply(x))


def two_multiplicator(phi: ChainMap, src: MDGAlgebra, dst: MDGAlgebra,
                      a1: Element, a2: Element, x: Element) -> Element:
    """[a1, a2, x]_phi = phi([a1,a2,x]) - [a1,a2,phi(x)] where the target
    associator uses the src-module structure through phi."""
    first = phi.apply(src.associator(a1, a2, x))
    fa1, fa2, fx = phi.apply(a1), phi.apply(a2), phi.apply(x)
    second = dst.mul(phi.apply(src.mul(a1, a2)), fx) - dst.mul(fa1, dst.mul(fa2, fx))
    return first - second


def is_multiplicative(phi: ChainMap, src: MDGAlgebra, dst: MDGAlgebra):
    """First basis pair with nonzero multiplicator, or None."""
    for a in src.complex.order:
        for x in src.complex.order:
            if UNIT in (a, x):
                continue
            v = multiplicator(phi, src, dst, src.elem(a), src.elem(x))
            if not v.is_zero():
                return (a, x, v)
    return None


# -- homotopies and perturbation --

class Homotopy:
    """Degree +1 map F (x) F -> F given on basis pairs; absent pairs are 0."""

    def __init__(self, complex_: FreeComplex, name="h"):
        self.complex = complex_
        self.name = name
        self.table: dict[tuple, Element] = {}

    def set_value(self, left: str, right: str, value: Element):
        if left not in self.complex.basis or right not in self.complex.basis:
            raise MDGError(f"unknown basis element in homotopy pair {left}|{right}")
        self.table[(left, right)] = value

    def pair_value(self, left: str, right: str) -> Element:
        return self.table.get((left, right), self.complex.zero)

    def apply_pair(self, x: Element, y: Element) -> Element:
        acc = self.complex.zero
        for n1, c1 in x.coeffs.items():
            for n2, c2 in y.coeffs.items():
                v = self.pair_value(n1, n2)
                if not v.is_zero():
                    acc = acc + v.scale(c1 * c2)
        return acc

    def apply_d_tensor(self, xn: str, yn: str) -> Element:
        """h(d(x (x) y)) = h(dx, y) + (-1)^{|x|} h(x, dy) on basis elements."""
        cx = self.complex
        dx = cx.d(cx.elem(xn))
        dy = cx.d(cx.elem(yn))
        acc = self.apply_pair(dx, cx.elem(yn))
        term = self.apply_pair(cx.elem(xn), dy)
        if cx.basis[xn].degree % 2 == 1:
            term = -term
        return acc + term


def perturb_multiplication(alg: MDGAlgebra, h: Homotopy, name=None) -> Multiplication:
    """mu_h = mu + d h + h d on basis pairs: a new multiplication table."""
    cx = alg.complex
    out = Multiplication(cx, name or f"{alg.mult.name}_h")
    names = alg.basis_names()
    for i, a in enumerate(names):
        for b in names[i:]:
            if a == b and cx.basis[a].degree % 2 == 1:
                continue
            try:
                base = alg.mult.product(a, b)
            except MissingProductError:
                continue
            val = base + cx.d(h.pair_value(a, b)) + h.apply_d_tensor(a, b)
            out.set_product(a, b, val)
    return out
