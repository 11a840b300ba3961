"""Buchberger engine for the free graded-commutative algebra K[e].

The generators of interest are the pair relations f_ij = e_i e_j - e_i*e_j
attached to a multiplication table on a free complex.  Because K[e] is
quasi-commutative (distinct generators commute up to a sign and there are no
lower-order correction terms), Buchberger's algorithm carries over from the
commutative case.  The coprime-lead product criterion does NOT carry over
verbatim: a generator commutes with itself with sign +1 rather than the parity
sign, so two polynomials whose tails share an odd generator need not commute
up to a uniform sign and their S-polynomial can leave a square behind (a
2*[a,a,x]-type term).  The refined criterion used here skips a pair only when
the leads are coprime, both polynomials are parity-homogeneous, and no odd
generator occurs in both polynomials; under those hypotheses f*g = +-g*f holds
exactly and the classical telescoping proof applies.

The associativity certificate: complete {f_ij} to a Groebner basis; the table
is associative exactly when no basis element has a lead monomial of total
degree 1 (a single generator).  Those degree-1 elements are the obstruction
witnesses; monomials of total degree 2 that survive reduction mark products
the table does not define yet.
"""

from __future__ import annotations

from heapq import heappop, heappush

from .complexes import UNIT, ComplexError, Element, FreeComplex
from .gcalg import GCContext, GCPoly
from .mdg import MDGAlgebra, MDGError, MissingProductError
from .ring import RationalFunction, mono_div, mono_divides, mono_lcm

__all__ = [
    "GBElement", "GBasis", "ReductionTrace", "associativity_certificate",
    "buchberger", "context_for", "element_to_gc", "gc_to_element",
    "mult_ideal", "normal_form", "spoly",
]


def context_for(cx: FreeComplex) -> GCContext:
    """The free algebra on the complex's basis (unit excluded), ordered by
    homological degree with declaration order breaking ties."""
    names = [n for n in cx.order if n != UNIT]
    names.sort(key=lambda n: cx.basis[n].degree)      # stable
    return GCContext(cx.ring, names,
                     [cx.basis[n].degree for n in names],
                     [cx.basis[n].mdeg for n in names])


def element_to_gc(ctx: GCContext, x: Element) -> GCPoly:
    """View a complex element (an R-combination of basis elements) inside
    K[e] as a polynomial of total degree <= 1."""
    terms = {}
    for name, coeff in x.coeffs.items():
        if name == UNIT:
            mono = ctx.zero_mono
        else:
            i = ctx.index(name)
            mono = tuple(1 if j == i else 0 for j in range(ctx.n))
        if not isinstance(coeff, RationalFunction):
            coeff = RationalFunction(coeff)
        terms[mono] = coeff
    return GCPoly(ctx, terms)


def gc_to_element(cx: FreeComplex, p: GCPoly) -> Element:
    """Inverse of element_to_gc; raises if p has a monomial of total degree > 1."""
    coeffs: dict = {}
    for mono, coeff in p.terms.items():
        total = p.ctx.mono_total(mono)
        if total > 1:
            raise ComplexError(
                f"{p.ctx.format_mono(mono)} is not linear in the generators")
        if total == 0:
            name = UNIT
        else:
            name = p.ctx.names[next(i for i, e in enumerate(mono) if e)]
        prev = coeffs.get(name)
        coeffs[name] = coeff if prev is None else prev + coeff
    return Element(cx, {k: v for k, v in coeffs.items() if not v.is_zero()})


def pair_relation(ctx: GCContext, alg: MDGAlgebra, a: str, b: str) -> GCPoly:
    """The relation (word e_a e_b) - (table product a*b) in K[e]."""
    sign, mono = ctx.word_mono([ctx.index(a), ctx.index(b)])
    lead = GCPoly(ctx, {mono: RationalFunction(alg.ring.const(sign))})
    return lead - element_to_gc(ctx, alg.mul(alg.elem(a), alg.elem(b)))


def mult_ideal(alg: MDGAlgebra, ctx: GCContext = None):
    """(context, generators): f_ij = e_i e_j - e_i*e_j for every pair i <= j
    the table defines (odd squares are implied zero, so f_ii = e_i^2 there).
    Pairs with no stored product are skipped (partial-table exploration)."""
    cx = alg.complex
    if ctx is None:
        ctx = context_for(cx)
    gens = []
    for i, a in enumerate(ctx.names):
        for b in ctx.names[i:]:
            try:
                value = alg.mult.product(a, b)
            except MissingProductError:
                continue
            sign, mono = ctx.word_mono([ctx.index(a), ctx.index(b)])
            lead = GCPoly(ctx, {mono: RationalFunction(cx.ring.const(sign))})
            gens.append(lead - element_to_gc(ctx, value))
    return ctx, gens


def spoly(f: GCPoly, g: GCPoly) -> GCPoly:
    """Left S-polynomial: cofactor monomials lift both leads to their lcm and
    the scalar is chosen so the lead terms cancel exactly."""
    a, b = f.lead_mono(), g.lead_mono()
    gamma = mono_lcm(a, b)
    u = f.term_mul_left(1, mono_div(gamma, a))
    v = g.term_mul_left(1, mono_div(gamma, b))
    return u - v.scale(u.terms[gamma] * v.terms[gamma].inverse())


class ReductionTrace:
    """Audit trail of a reduction: f = sum_k c_k * e^(m_k) * basis[i_k] + NF.

    Steps are (basis index, cofactor monomial, coefficient)."""

    __slots__ = ("steps", "normal_form")

    def __init__(self):
        self.steps = []
        self.normal_form = None

    def replay(self, f: GCPoly, basis) -> GCPoly:
        """Recompute the normal form from the recorded steps."""
        acc = f
        for idx, mono, coeff in self.steps:
            acc = acc - _basis_poly(basis, idx).term_mul_left(coeff, mono)
        return acc


def _basis_poly(basis, idx) -> GCPoly:
    g = basis[idx]
    return g.poly if isinstance(g, GBElement) else g


def normal_form(f: GCPoly, basis, mode: str = "full"):
    """(normal form, trace) of f under left reduction by the basis.

    mode "full": no monomial of the result is divisible by a basis lead;
    mode "lead": stop at the first irreducible lead monomial."""
    ctx = f.ctx
    leads = [(_basis_poly(basis, i).lead_mono(), i) for i in range(len(basis))
             if not _basis_poly(basis, i).is_zero()]
    trace = ReductionTrace()
    remainder = ctx.zero
    work = f
    while not work.is_zero():
        m = work.lead_mono()
        reducer = next((i for lm, i in leads if mono_divides(lm, m)), None)
        if reducer is None:
            if mode == "lead":
                remainder = remainder + work
                break
            remainder = remainder + GCPoly(ctx, {m: work.terms[m]})
            work = work - GCPoly(ctx, {m: work.terms[m]})
            continue
        g = _basis_poly(basis, reducer)
        cof = mono_div(m, g.lead_mono())
        t = g.term_mul_left(1, cof)
        c = work.terms[m] * t.terms[m].inverse()
        work = work - t.scale(c)
        trace.steps.append((reducer, cof, c))
    trace.normal_form = remainder
    return remainder, trace


class GBElement:
    __slots__ = ("poly", "provenance")

    def __init__(self, poly: GCPoly, provenance: str):
        self.poly = poly
        self.provenance = provenance    # "input" | "derived"

    def __repr__(self):
        return f"GBElement({self.poly}, {self.provenance})"


class GBasis:
    """Confluent basis with provenance-tagged, monic elements."""

    def __init__(self, ctx: GCContext, elements):
        self.ctx = ctx
        self.elements = list(elements)

    def polys(self):
        return [e.poly for e in self.elements]

    def reduce(self, f: GCPoly, mode: str = "full"):
        return normal_form(f, self.polys(), mode=mode)

    def contains_poly(self, f: GCPoly) -> bool:
        return self.reduce(f)[0].is_zero()

    def linear_elements(self):
        """Elements whose lead monomial is a single generator."""
        return [e for e in self.elements
                if self.ctx.mono_total(e.poly.lead_mono()) == 1]

    def __len__(self):
        return len(self.elements)


def _pair_key(ctx: GCContext, a: tuple, b: tuple):
    gamma = mono_lcm(a, b)
    return (ctx.mono_degree(gamma), gamma)


def buchberger(ctx: GCContext, generators, provenance: str = "input",
               use_product_criterion: bool = True,
               interreduce: bool = True, max_pairs: int = 200000) -> GBasis:
    """Complete the generators to a confluent basis.

    Pair selection: smallest lcm in the term order first.  A pair is skipped
    only when the leads are coprime, both elements are parity-homogeneous and
    they share no odd generator in any term; see the module docstring for why
    the plain coprime-lead criterion is unsound here."""
    elements = []
    profiles = []   # (odd generator support, parity or None) per element

    def profile(p: GCPoly):
        ctx_ = p.ctx
        odd = frozenset(i for mono in p.terms for i, e in enumerate(mono)
                        if e and ctx_.parity[i])
        parities = {ctx_.mono_degree(m) & 1 for m in p.terms}
        return odd, (parities.pop() if len(parities) == 1 else None)

    def append(poly, prov):
        elements.append(GBElement(poly, prov))
        profiles.append(profile(poly))

    for g in generators:
        if not g.is_zero():
            append(g.monic(), provenance)
    queue = []
    counter = 0

    def skip(i, j):
        if not _coprime(elements[i].poly.lead_mono(),
                        elements[j].poly.lead_mono()):
            return False
        (odd_i, par_i), (odd_j, par_j) = profiles[i], profiles[j]
        return par_i is not None and par_j is not None and not (odd_i & odd_j)

    def push_pairs(new_index):
        nonlocal counter
        lm_new = elements[new_index].poly.lead_mono()
        for i in range(new_index):
            lm_i = elements[i].poly.lead_mono()
            if use_product_criterion and skip(i, new_index):
                continue
            counter += 1
            heappush(queue, (_pair_key(ctx, lm_i, lm_new), counter,
                             i, new_index))

    for k in range(len(elements)):
        push_pairs(k)

    processed = 0
    while queue:
        processed += 1
        if processed > max_pairs:
            raise RuntimeError("pair limit exceeded; basis may not terminate")
        _, _, i, j = heappop(queue)
        s = spoly(elements[i].poly, elements[j].poly)
        if s.is_zero():
            continue
        nf, _ = normal_form(s, [e.poly for e in elements])
        if nf.is_zero():
            continue
        append(nf.monic(), "derived")
        push_pairs(len(elements) - 1)

    if interreduce:
        elements = _interreduce(ctx, elements)
    return GBasis(ctx, elements)


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _interreduce(ctx: GCContext, elements):
    # drop elements whose lead is divisible by another lead, then tail-reduce
    kept = []
    for i, e in enumerate(elements):
        lm = e.poly.lead_mono()
        redundant = any(
            j != i and mono_divides(elements[j].poly.lead_mono(), lm)
            and (elements[j].poly.lead_mono() != lm or j < i)
            for j in range(len(elements)))
        if not redundant:
            kept.append(e)
    out = []
    for i, e in enumerate(kept):
        others = [k.poly for j, k in enumerate(kept) if j != i]
        nf, _ = normal_form(e.poly, others)
        if not nf.is_zero():
            out.append(GBElement(nf.monic(), e.provenance))
    return out


class CertificateReport:
    """Outcome of the associativity certificate."""

    def __init__(self, associative, witnesses, undefined_pairs, basis: GBasis):
        self.associative = associative
        self.witnesses = witnesses            # GCPoly list, lead total degree 1
        self.undefined_pairs = undefined_pairs  # [(name, name)]
        self.basis = basis

    def summary(self) -> str:
        if self.associative and not self.undefined_pairs:
            return "associative"
        lines = []
        if not self.associative:
            lines.append(f"not associative: {len(self.witnesses)} witness(es)")
            lines += [f"  {w}" for w in self.witnesses]
        if self.undefined_pairs:
            lines.append("undefined products: " + ", ".join(
                f"{a}*{b}" for a, b in self.undefined_pairs))
        return "\n".join(lines) if lines else "associative"


def associativity_certificate(alg: MDGAlgebra) -> CertificateReport:
    """Run Buchberger on the pair relations of the table.  The table is
    associative iff no completed basis element has a single-generator lead;
    pair monomials that stay irreducible mark products the table leaves
    undefined (reported separately, not as non-associativity)."""
    ctx, gens = mult_ideal(alg)
    basis = buchberger(ctx, gens)
    witnesses = [e.poly for e in basis.linear_elements()]
    undefined = []
    for i, a in enumerate(ctx.names):
        for b in ctx.names[i:]:
            sign, mono = ctx.word_mono([ctx.index(a), ctx.index(b)])
            nf, _ = basis.reduce(GCPoly(
                ctx, {mono: RationalFunction(ctx.ring.one)}))
            if any(ctx.mono_total(m) > 1 for m in nf.terms):
                undefined.append((a, b))
    return CertificateReport(not witnesses, witnesses, undefined, basis)
