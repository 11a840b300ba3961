"""The symmetric DG algebra of a complex centered at the base ring.

On a free complex with positive-degree basis e_1, ..., e_n the underlying
graded algebra is the strict graded-commutative polynomial algebra on the
basis (odd generators square to zero, even ones do not), bigraded by
homological degree i and total degree m (number of generator factors).  The
differential of the complex extends by the Leibniz rule,

    d(a_1 ... a_m) = sum_j (-1)^(|a_1|+...+|a_(j-1)|) a_1 ... d(a_j) ... a_m,

and splits as d = d_keep + d_drop where d_keep preserves total degree (it
collects the terms where d(a_j) stays in positive degree) and d_drop lowers
it by one (the terms where a degree-1 factor differentiates into the base
ring).  Both squares vanish and the two parts anticommute.

The model is truncated: only total degrees <= N are represented, which is
enough for the quotient presentations and splitting certificates computed
here, since d never raises total degree.

A multiplication on the complex induces the ideal generated by the pair
relations e_i e_j - e_i*e_j; the degree-<=1 part of that ideal recovers the
span of the multiplicators of the inclusion (equivalently, the smallest
subcomplex witnessing the failure of associativity), and when the
multiplication is associative, normal forms against the relation ideal split
the inclusion of the complex into its symmetric algebra.

The total-degree-<=n part is also realized as the fixed subspace of the
signed permutation action on n-fold tensors, with mutually inverse
homogenize/dehomogenize chain maps; homotopies of chain maps extend to
homotopies of their tensor powers by signed symmetrization.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial

from .complexes import UNIT, Element, FreeComplex
from .gcalg import GCContext, GCPoly
from .groebner import (GBasis, buchberger, context_for, element_to_gc,
                       mult_ideal)
from .mdg import ChainMap, MDGAlgebra
from .ring import RationalFunction

__all__ = [
    "GradedMap", "SplitWitness", "SymDGAlgebra", "SymError", "Tensor",
    "build_sym", "dehomogenize", "homogenize", "multiplication_relations",
    "presentation_check", "split_witness", "sym_homotopy", "tensor_power_map",
    "ump_extension",
]


class SymError(Exception):
    pass


# ---------------------------------------------------------------------------
# the truncated symmetric DG algebra
# ---------------------------------------------------------------------------

class SymDGAlgebra:
    """Strict graded-commutative algebra on the positive part of a free
    complex, truncated at total degree N, with the extended differential."""

    def __init__(self, complex_: FreeComplex, truncation: int = 4):
        if truncation < 1:
            raise SymError("truncation must be at least 1")
        self.complex = complex_
        self.N = truncation
        self.ctx = context_for(complex_)
        self._diff_words = self._differential_words()

    def _differential_words(self):
        """index -> list of (coefficient, generator index or None for the
        unit) describing d of each generator."""
        cx = self.complex
        out = []
        for name in self.ctx.names:
            dval = cx.d(cx.elem(name))
            entries = []
            for nm, coeff in dval.coeffs.items():
                entries.append((coeff, None if nm == UNIT
                                else self.ctx.index(nm)))
            out.append(entries)
        return out

    # -- elements --

    def gen(self, name: str) -> GCPoly:
        return self.ctx.gen(name)

    def mono_poly(self, mono: tuple) -> GCPoly:
        return GCPoly(self.ctx, {mono: RationalFunction(self.ctx.ring.one)})

    def include(self, x: Element) -> GCPoly:
        """The inclusion of the complex as the total-degree-<=1 part."""
        return element_to_gc(self.ctx, x)

    def mul(self, p: GCPoly, q: GCPoly) -> GCPoly:
        """Strict product; raises when the result leaves the truncation."""
        acc = self.ctx.zero
        for m, c in p.terms.items():
            for m2, c2 in q.terms.items():
                s, pm = self.ctx.mono_mul_signed(m, m2, strict=True)
                if s == 0:
                    continue
                if self.ctx.mono_total(pm) > self.N:
                    raise SymError(
                        f"product leaves the total-degree-{self.N} truncation")
                acc = acc + GCPoly(self.ctx, {pm: c * c2 * s})
        return acc

    # -- enumeration --

    def monomials(self, total=None, degree=None):
        """Strict monomials within the truncation, optionally filtered by
        total degree and/or homological degree."""
        ctx = self.ctx
        totals = [total] if total is not None else range(self.N + 1)
        out = []
        for m in totals:
            for combo in combinations_with_replacement(range(ctx.n), m):
                mono = [0] * ctx.n
                ok = True
                for i in combo:
                    mono[i] += 1
                    if ctx.parity[i] and mono[i] > 1:
                        ok = False
                        break
                if not ok:
                    continue
                mono = tuple(mono)
                if degree is not None and ctx.mono_degree(mono) != degree:
                    continue
                out.append(mono)
        return out

    def dims(self) -> dict:
        """(homological degree, total degree) -> number of monomials."""
        table: dict = {}
        for mono in self.monomials():
            key = (self.ctx.mono_degree(mono), self.ctx.mono_total(mono))
            table[key] = table.get(key, 0) + 1
        return table

    def component_names(self, degree: int, total: int):
        return [self.ctx.format_mono(m)
                for m in self.monomials(total=total, degree=degree)]

    # -- the differential and its bigraded parts --

    def _diff_split(self, p: GCPoly):
        """(total-degree-keeping part, total-degree-dropping part) of d(p)."""
        ctx = self.ctx
        keep, drop = ctx.zero, ctx.zero
        for mono, coeff in p.terms.items():
            word = [i for i in range(ctx.n) for _ in range(mono[i])]
            prefix = 0
            for j, gi in enumerate(word):
                sign = -1 if prefix & 1 else 1
                rest = word[:j] + word[j + 1:]
                for dcoeff, target in self._diff_words[gi]:
                    new_word = rest if target is None else (
                        word[:j] + [target] + word[j + 1:])
                    s, new_mono = ctx.word_mono(new_word, strict=True)
                    if s == 0:
                        continue
                    term = GCPoly(ctx, {new_mono: coeff * dcoeff * (s * sign)})
                    if target is None:
                        drop = drop + term
                    else:
                        keep = keep + term
                prefix += ctx.degrees[gi]
        return keep, drop

    def d(self, p: GCPoly) -> GCPoly:
        keep, drop = self._diff_split(p)
        return keep + drop

    def d_keep(self, p: GCPoly) -> GCPoly:
        """The component of d preserving total degree."""
        return self._diff_split(p)[0]

    def d_drop(self, p: GCPoly) -> GCPoly:
        """The component of d lowering total degree by one."""
        return self._diff_split(p)[1]

    # -- axioms --

    def check(self) -> list:
        """Violations of d^2 = 0, of the bigraded split (both component
        squares vanish and the components anticommute), and of the Leibniz
        rule for the product, over all monomials in the truncation."""
        problems = []
        ctx = self.ctx
        monos = self.monomials()
        for mono in monos:
            p = self.mono_poly(mono)
            keep, drop = self._diff_split(p)
            if not self.d(keep + drop).is_zero():
                problems.append(f"d^2 != 0 at {ctx.format_mono(mono)}")
            if not self.d_keep(keep).is_zero():
                problems.append(
                    f"degree-keeping part does not square to zero at "
                    f"{ctx.format_mono(mono)}")
            if not self.d_drop(drop).is_zero():
                problems.append(
                    f"degree-dropping part does not square to zero at "
                    f"{ctx.format_mono(mono)}")
            if not (self.d_keep(drop) + self.d_drop(keep)).is_zero():
                problems.append(
                    f"the two parts of d do not anticommute at "
                    f"{ctx.format_mono(mono)}")
            total = ctx.mono_total(mono)
            for t2 in range(1, self.N - total + 1):
                for m2 in self.monomials(total=t2):
                    q = self.mono_poly(m2)
                    s, _ = ctx.mono_mul_signed(mono, m2, strict=True)
                    if s == 0:
                        continue
                    deg = ctx.mono_degree(mono)
                    lhs = self.d(self.mul(p, q))
                    rhs = self.mul(self.d(p), q) + \
                        self.mul(p, self.d(q)).scale(-1 if deg & 1 else 1)
                    if not (lhs - rhs).is_zero():
                        problems.append(
                            f"Leibniz fails at {ctx.format_mono(mono)} * "
                            f"{ctx.format_mono(m2)}")
        return problems


def build_sym(source, truncation: int = 4) -> SymDGAlgebra:
    """The truncated symmetric DG algebra of a free complex (an algebra's
    underlying complex is accepted too)."""
    cx = source.complex if isinstance(source, MDGAlgebra) else source
    return SymDGAlgebra(cx, truncation)


def multiplication_relations(sym: SymDGAlgebra, alg: MDGAlgebra):
    """The pair relations e_i e_j - e_i*e_j of the table, expressed in the
    symmetric algebra's generator context."""
    if alg.complex is not sym.complex:
        raise SymError("the algebra does not live on the underlying complex")
    _, gens = mult_ideal(alg, ctx=sym.ctx)
    return gens


# ---------------------------------------------------------------------------
# linear part of the relation ideal vs. the associator span
# ---------------------------------------------------------------------------

def _rank_over_field(rows):
    """Row rank of a list of dict-rows with RationalFunction entries."""
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        row = work.pop()
        pivot = next(iter(row))
        rank += 1
        inv = row[pivot].inverse()
        row = {k: v * inv for k, v in row.items()}
        reduced = []
        for other in work:
            if pivot in other:
                c = other[pivot]
                combined = dict(other)
                for k, v in row.items():
                    cur = combined.get(k)
                    cur = -(c * v) if cur is None else cur - c * v
                    if cur.is_zero():
                        combined.pop(k, None)
                    else:
                        combined[k] = cur
                other = combined
            if other:
                reduced.append(other)
        work = reduced
    return rank


class PresentationReport:
    """Per homological degree, over the fraction field: the dimension of the
    linear part of the relation ideal against the dimension of the associator
    submodule span.  The two agree exactly when the linear part of the ideal
    is the subcomplex generated by the multiplicators of the inclusion."""

    def __init__(self, components, basis: GBasis):
        self.components = components      # degree -> (ideal dim, span dim)
        self.basis = basis

    def ok(self) -> bool:
        return all(a == b for a, b in self.components.values())

    def summary(self) -> str:
        lines = [f"degree {i}: linear ideal part {a}, generated subcomplex "
                 f"{b}" + ("" if a == b else "  <-- MISMATCH")
                 for i, (a, b) in sorted(self.components.items())]
        return "\n".join(lines) if lines else "zero in all degrees"


def presentation_check(alg: MDGAlgebra, degrees=None) -> PresentationReport:
    """Compare, degree by degree over the fraction field, the linear part of
    the pair-relation ideal with the span of the associator submodule of the
    multiplication.  Both are computed independently: the former by reducing
    the span of each basis element against a completed relation basis and
    taking the kernel, the latter by closing the associators under the module
    action and taking ranks."""
    if not alg.defined_everywhere():
        raise SymError("the comparison needs a total multiplication table")
    ctx, gens = mult_ideal(alg)
    basis = buchberger(ctx, gens)
    cx = alg.complex
    if degrees is None:
        degrees = sorted(range(1, cx.max_degree() + 1))
    sub = alg.associator_submodule()
    components = {}
    for i in degrees:
        names = [n for n in ctx.names if cx.basis[n].degree == i]
        if not names:
            continue
        # kernel of the reduction map on the degree-i span of the basis
        rows = []
        for n in names:
            nf, _ = basis.reduce(ctx.gen(n))
            rows.append({m: c for m, c in nf.terms.items()})
        ideal_dim = len(names) - _rank_over_field(rows)
        span = [{nm: _as_rf(c) for nm, c in v.coeffs.items()}
                for _, v, d, _ in sub.gens if d == i]
        span_dim = _rank_over_field(span)
        if ideal_dim or span_dim:
            components[i] = (ideal_dim, span_dim)
    return PresentationReport(components, basis)


def _as_rf(c, ring=None):
    if isinstance(c, RationalFunction):
        return c
    if isinstance(c, (int, Fraction)):
        if ring is None:
            raise SymError("scalar coefficient needs a ring")
        return RationalFunction(ring.const(c))
    return RationalFunction(c)


# ---------------------------------------------------------------------------
# splitting the inclusion for an associative table
# ---------------------------------------------------------------------------

class SplitWitness:
    """theta on monomials of total degree 2..N: theta(m) = m - NF(m) lies in
    the relation ideal and projects back to m, so it splits the projection of
    the symmetric algebra onto its total-degree->=2 part."""

    def __init__(self, sym: SymDGAlgebra, basis: GBasis, table: dict):
        self.sym = sym
        self.basis = basis
        self.table = table                # monomial -> GCPoly

    def apply(self, p: GCPoly) -> GCPoly:
        acc = self.sym.ctx.zero
        for mono, coeff in p.terms.items():
            if self.sym.ctx.mono_total(mono) < 2:
                continue
            acc = acc + self.table[mono].scale(coeff)
        return acc


def split_witness(alg: MDGAlgebra, truncation: int = 2) -> SplitWitness:
    """Build the splitting for an associative, everywhere-defined table;
    raises when a normal form fails to be linear (which certifies that no
    such splitting through the relation ideal exists)."""
    sym = build_sym(alg.complex, truncation)
    gens = multiplication_relations(sym, alg)
    basis = buchberger(sym.ctx, gens)
    if basis.linear_elements():
        raise SymError(
            "the relation ideal meets the linear part: the table is not "
            "associative, so the inclusion does not split through the ideal")
    table = {}
    for total in range(2, truncation + 1):
        for mono in sym.monomials(total=total):
            p = sym.mono_poly(mono)
            nf, _ = basis.reduce(p)
            if any(sym.ctx.mono_total(m) > 1 for m in nf.terms):
                raise SymError(
                    f"normal form of {sym.ctx.format_mono(mono)} is not "
                    "linear: the table is not associative and total, so the "
                    "inclusion does not split through the relation ideal")
            theta = p - nf
            if not basis.reduce(theta)[0].is_zero():
                raise SymError("splitting value escapes the relation ideal")
            table[mono] = theta
    return SplitWitness(sym, basis, table)


# ---------------------------------------------------------------------------
# tensor powers, homogenization, and symmetrized homotopies
# ---------------------------------------------------------------------------

class Tensor:
    """Element of the n-fold tensor power of a free complex: a linear
    combination of slot tuples of basis names (the unit allowed)."""

    __slots__ = ("complex", "n", "terms")

    def __init__(self, complex_: FreeComplex, n: int, terms: dict = None):
        self.complex = complex_
        self.n = n
        self.terms = terms or {}

    def is_zero(self) -> bool:
        return not self.terms

    def _slot_degree(self, name: str) -> int:
        return 0 if name == UNIT else self.complex.basis[name].degree

    def add_term(self, key: tuple, coeff):
        coeff = _as_rf(coeff, self.complex.ring)
        prev = self.terms.get(key)
        coeff = coeff if prev is None else prev + coeff
        if coeff.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = coeff

    def __add__(self, other):
        out = Tensor(self.complex, self.n, dict(self.terms))
        for k, c in other.terms.items():
            out.add_term(k, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _as_rf(c, self.complex.ring)
        if c.is_zero():
            return Tensor(self.complex, self.n)
        return Tensor(self.complex, self.n,
                      {k: v * c for k, v in self.terms.items()})

    def permute(self, sigma) -> "Tensor":
        """Apply the signed permutation action: slot j of the result is slot
        sigma[j] of the input, with the sign counting odd-odd inversions."""
        out = Tensor(self.complex, self.n)
        for key, coeff in self.terms.items():
            new_key = tuple(key[sigma[j]] for j in range(self.n))
            sign = 1
            for a in range(self.n):
                for b in range(a + 1, self.n):
                    if sigma[a] > sigma[b] and \
                            self._slot_degree(key[sigma[a]]) & 1 and \
                            self._slot_degree(key[sigma[b]]) & 1:
                        sign = -sign
            out.add_term(new_key, coeff * sign)
        return out

    def symmetrize(self) -> "Tensor":
        out = Tensor(self.complex, self.n)
        scale = Fraction(1, factorial(self.n))
        for sigma in permutations(range(self.n)):
            p = self.permute(sigma)
            for k, c in p.terms.items():
                out.add_term(k, c * scale)
        return out

    def is_symmetric(self) -> bool:
        return all((self.permute(s) - self).is_zero()
                   for s in permutations(range(self.n)))

    def d(self) -> "Tensor":
        cx = self.complex
        out = Tensor(cx, self.n)
        for key, coeff in self.terms.items():
            prefix = 0
            for j, name in enumerate(key):
                if name != UNIT:
                    dval = cx.d(cx.elem(name))
                    sign = -1 if prefix & 1 else 1
                    for nm, c in dval.coeffs.items():
                        out.add_term(key[:j] + (nm,) + key[j + 1:],
                                     coeff * c * sign)
                prefix += self._slot_degree(name)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in sorted(self.terms.items()):
            parts.append(f"({coeff})*{'@'.join(key)}")
        return " + ".join(parts)

    __repr__ = __str__


def homogenize(sym: SymDGAlgebra, p: GCPoly, n: int) -> Tensor:
    """The symmetric tensor of length n representing an element of total
    degree <= n: each monomial is padded with units and symmetrized."""
    if p.total_degree() > n:
        raise SymError("element does not fit in the requested tensor power")
    ctx = sym.ctx
    out = Tensor(sym.complex, n)
    for mono, coeff in p.terms.items():
        word = [ctx.names[i] for i in range(ctx.n) for _ in range(mono[i])]
        key = (UNIT,) * (n - len(word)) + tuple(word)
        out.add_term(key, coeff)
    return out.symmetrize()


def dehomogenize(sym: SymDGAlgebra, t: Tensor) -> GCPoly:
    """Multiply the slots out; inverse to homogenization on symmetric
    tensors."""
    ctx = sym.ctx
    acc = ctx.zero
    for key, coeff in t.terms.items():
        indices = [ctx.index(nm) for nm in key if nm != UNIT]
        s, mono = ctx.word_mono(indices, strict=True)
        if s == 0:
            continue
        acc = acc + GCPoly(ctx, {mono: coeff * s})
    return acc


class GradedMap:
    """Homogeneous linear map between complexes of a fixed degree shift,
    given on basis names."""

    def __init__(self, source: FreeComplex, target: FreeComplex,
                 degree: int, images: dict = None, name: str = "h"):
        self.source = source
        self.target = target
        self.degree = degree
        self.name = name
        self.images = dict(images or {})

    @classmethod
    def from_chain_map(cls, phi: ChainMap) -> "GradedMap":
        images = {n: phi.image(n) for n in phi.source.order}
        return cls(phi.source, phi.target, 0, images, phi.name)

    def image(self, name: str) -> Element:
        if name in self.images:
            return self.images[name]
        if name == UNIT and self.degree == 0:
            return self.target.one
        return self.target.zero

    def apply(self, x: Element) -> Element:
        acc = self.target.zero
        for name, coeff in x.coeffs.items():
            acc = acc + self.image(name).scale(coeff)
        return acc

    def is_homotopy_between(self, phi: ChainMap, psi: ChainMap) -> bool:
        """d h + h d = phi - psi on every basis element."""
        if self.degree != 1:
            return False
        src, dst = self.source, self.target
        for n in src.order:
            lhs = dst.d(self.image(n)) + self.apply(src.d(src.elem(n)))
            rhs = phi.image(n) - psi.image(n)
            if not (lhs - rhs).is_zero():
                return False
        return True


def tensor_power_map(maps, t: Tensor, target: FreeComplex) -> Tensor:
    """Apply one homogeneous map per slot, with the sign each map of odd
    degree picks up passing the slots to its left."""
    n = t.n
    if len(maps) != n:
        raise SymError("need one map per tensor slot")
    out = Tensor(target, n)
    for key, coeff in t.terms.items():
        results = [(coeff, ())]
        prefix = 0
        for j, g in enumerate(maps):
            sign = -1 if (g.degree & 1) and (prefix & 1) else 1
            img = g.image(key[j])
            expanded = []
            for c, partial in results:
                for nm, c2 in img.coeffs.items():
                    expanded.append((c * c2 * sign, partial + (nm,)))
            results = expanded
            prefix += t._slot_degree(key[j])
        for c, full in results:
            out.add_term(full, c)
    return out


class SymHomotopy:
    """Signed-symmetrized homotopy between tensor powers of two homotopic
    chain maps: conjugating the telescope by every permutation and averaging
    gives a homotopy from phi^n to psi^n that preserves symmetric tensors."""

    def __init__(self, phi: ChainMap, psi: ChainMap, h: GradedMap, n: int):
        if n < 1:
            raise SymError("tensor power must be at least 1")
        if h.degree != 1:
            raise SymError("a homotopy must raise degree by 1")
        if not h.is_homotopy_between(phi, psi):
            raise SymError("d h + h d differs from phi - psi")
        self.phi = GradedMap.from_chain_map(phi)
        self.psi = GradedMap.from_chain_map(psi)
        self.h = h
        self.n = n
        self.source = phi.source
        self.target = phi.target

    def _telescope(self, t: Tensor) -> Tensor:
        acc = Tensor(self.target, self.n)
        for k in range(self.n):
            maps = [self.phi] * (self.n - k - 1) + [self.h] + [self.psi] * k
            acc = acc + tensor_power_map(maps, t, self.target)
        return acc

    def apply(self, t: Tensor) -> Tensor:
        if t.n != self.n:
            raise SymError("tensor length mismatch")
        acc = Tensor(self.target, self.n)
        scale = Fraction(1, factorial(self.n))
        for sigma in permutations(range(self.n)):
            inverse = [0] * self.n
            for j, v in enumerate(sigma):
                inverse[v] = j
            moved = self._telescope(t.permute(tuple(inverse)))
            acc = acc + moved.permute(sigma).scale(scale)
        return acc

    def endpoint(self, t: Tensor, which: str) -> Tensor:
        g = self.phi if which == "phi" else self.psi
        return tensor_power_map([g] * self.n, t, self.target)


def sym_homotopy(phi: ChainMap, psi: ChainMap, h: GradedMap,
                 n: int) -> SymHomotopy:
    return SymHomotopy(phi, psi, h, n)


# ---------------------------------------------------------------------------
# the universal multiplicative extension to an associative target
# ---------------------------------------------------------------------------

def ump_extension(sym: SymDGAlgebra, phi: ChainMap, target: MDGAlgebra):
    """The multiplicative extension of a chain map out of the underlying
    complex to an associative algebra: products of generators map to
    left-nested products of their images.  Returns a callable on elements of
    the symmetric algebra."""
    if phi.target is not target.complex:
        raise SymError("the chain map does not land in the target algebra")
    ctx = sym.ctx

    def extend(p: GCPoly) -> Element:
        acc = target.complex.zero
        for mono, coeff in p.terms.items():
            word = [ctx.names[i] for i in range(ctx.n)
                    for _ in range(mono[i])]
            if not word:
                value = target.complex.one
            else:
                value = phi.image(word[0])
                for nm in word[1:]:
                    value = target.mul(value, phi.image(nm))
            acc = acc + value.scale(coeff)
        return acc

    return extend
