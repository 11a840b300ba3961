"""Command-line driver for the toolkit.

Exit codes: 0 for success (or a mathematically positive answer such as
"associative"), 1 for a mathematically negative answer (a nonzero
obstruction, a failed axiom), 2 for input errors (unreadable files, syntax
errors, unknown names).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .complexes import UNIT, ComplexError, FreeComplex
from .constructions import mapping_cone_extension, taylor_algebra
from .groebner import (associativity_certificate, buchberger, context_for,
                       mult_ideal)
from .mdg import (Homotopy, MDGAlgebra, MDGError, is_multiplicative,
                  perturb_multiplication, quotient_homology_dims)
from .parser import (Document, DocumentError, format_document, parse_element,
                     parse_gcpoly)
from .ring import Polynomial, Ring, mono_divides
from .symdg import SymError, build_sym

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

GRAMMAR = """\
document grammar:
  ring x, y, ...;
  complex F {
    basis <degree>: <name> mdeg(<ints>), ...;
    d <name> = <element expression>;
  }
  mult mu on F { <name>*<name> = <element expression>; ... }
  map phi: F -> G { <name> = <element expression>; ... }
  homotopy h on F { <name>|<name> = <element expression>; ... }
"""


class CLIError(Exception):
    pass


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _load(args) -> Document:
    from .parser import parse_document
    try:
        with open(args.document, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CLIError(f"cannot read {args.document}: {e}")
    return parse_document(text)


def _algebra(doc: Document, args) -> MDGAlgebra:
    name = getattr(args, "mult", None)
    return doc.algebra(name)


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _dims_str(dims: dict) -> str:
    return ", ".join(f"H_{i}={d}" for i, d in sorted(dims.items()))


def _parse_scalar(doc: Document, text: str) -> Polynomial:
    """A polynomial in the ring variables, via the element grammar."""
    scratch = FreeComplex(doc.ring, "_scratch")
    v = parse_element(text, scratch)
    coeff = v.coeffs.get(UNIT)
    if coeff is None or set(v.coeffs) != {UNIT}:
        raise CLIError(f"{text!r} is not a scalar polynomial")
    return coeff.as_polynomial() if hasattr(coeff, "as_polynomial") else coeff


def _parse_modulus(doc: Document, text: str):
    """Comma-separated monomials generating a monomial ideal."""
    monos = []
    for part in text.split(","):
        p = _parse_scalar(doc, part.strip())
        if not p.is_monomial():
            raise CLIError(f"modulus generator {part.strip()!r} is not a "
                           "monomial")
        (m, _), = p.terms.items()
        monos.append(m)
    return monos


def _mod_ideal(p, ring, monos):
    """Drop the monomials of p lying in the monomial ideal."""
    if hasattr(p, "as_polynomial"):
        p = p.as_polynomial()
    kept = {m: c for m, c in p.terms.items()
            if not any(mono_divides(g, m) for g in monos)}
    return Polynomial(ring, kept)


def _reduce_element_mod(v, monos):
    cx = v.complex
    out = cx.zero
    for name, coeff in v.coeffs.items():
        r = _mod_ideal(coeff, cx.ring, monos)
        if not r.is_zero():
            out = out + cx.elem(name).scale(r)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    doc = _load(args)
    problems = []
    for name, cx in doc.complexes.items():
        problems += [f"{name}: {p}" for p in cx.check()]
    for name in doc.mults:
        rep = doc.algebra(name).check()
        problems += [f"{name}: {p}" for p in rep.all_problems()]
    ok = not problems
    _emit(args, {"command": "check", "status": "ok" if ok else "fail",
                 "problems": problems},
          "all checks passed" if ok else "\n".join(problems))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_assoc(args) -> int:
    doc = _load(args)
    alg = _algebra(doc, args)
    if args.triple:
        names = [s.strip() for s in args.triple.split(",")]
        if len(names) != 3:
            raise CLIError("--triple expects three comma-separated names")
        v = alg.associator_names(*names)
        payload = {"command": "assoc", "triple": names,
                   "associator": str(v)}
        text = str(v)
        nonzero = not v.is_zero()
        if args.modulus:
            monos = _parse_modulus(doc, args.modulus)
            reduced = _reduce_element_mod(v, monos)
            payload["modulo"] = str(reduced)
            text += f"\nmodulo ({args.modulus}): {reduced}"
            nonzero = not reduced.is_zero()
        _emit(args, payload, text)
        return EXIT_NEGATIVE if nonzero else EXIT_OK
    hit = alg.associative_on_basis()
    if hit is None:
        _emit(args, {"command": "assoc", "status": "associative"},
              "associative on all basis triples")
        return EXIT_OK
    a, b, c, v = hit
    _emit(args, {"command": "assoc", "status": "not associative",
                 "witness": [a, b, c], "associator": str(v)},
          f"not associative: [{a},{b},{c}] = {v}")
    return EXIT_NEGATIVE


def cmd_alt(args) -> int:
    doc = _load(args)
    alg = _algebra(doc, args)
    hit = alg.alternative_on_basis()
    if hit is None:
        _emit(args, {"command": "alt", "status": "alternative"},
              "alternative on all basis pairs")
        return EXIT_OK
    a, x, _, v = hit
    _emit(args, {"command": "alt", "status": "not alternative",
                 "witness": [a, x], "associator": str(v)},
          f"not alternative: [{a},{x},{a}] = {v}")
    return EXIT_NEGATIVE


def cmd_submodule(args) -> int:
    doc = _load(args)
    alg = _algebra(doc, args)
    sub = alg.associator_submodule()
    dims = sub.homology_dims()
    payload = {"command": "submodule", "generators": len(sub.gens),
               "inf_degree": sub.inf_degree(), "sup_degree": sub.sup_degree(),
               "homology": {str(i): d for i, d in dims.items()}}
    text = (f"generators: {len(sub.gens)}\n"
            f"degrees: {sub.inf_degree()}..{sub.sup_degree()}\n"
            f"homology: {_dims_str(dims)}")
    if sub.is_zero():
        text = "the associator submodule is zero"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_homology(args) -> int:
    doc = _load(args)
    if doc.mults:
        cx = doc.algebra(next(iter(doc.mults))).complex
    else:
        cx = doc.sole_complex()
    dims = cx.homology_dims()
    _emit(args, {"command": "homology",
                 "dims": {str(i): d for i, d in dims.items()}},
          _dims_str(dims))
    return EXIT_OK


def cmd_quotient(args) -> int:
    doc = _load(args)
    alg = _algebra(doc, args)
    sub = alg.associator_submodule()
    dims = quotient_homology_dims(alg, sub)
    _emit(args, {"command": "quotient",
                 "dims": {str(i): d for i, d in dims.items()}},
          _dims_str(dims))
    return EXIT_OK


def cmd_gb(args) -> int:
    doc = _load(args)
    alg = _algebra(doc, args)
    if args.emit_script:
        print(_export_script(alg))
        return EXIT_OK
    report = associativity_certificate(alg)
    payload = {"command": "gb", "basis_size": len(report.basis),
               "associative": report.associative,
               "witnesses": [str(w) for w in report.witnesses],
               "undefined": [f"{a}*{b}" for a, b in report.undefined_pairs]}
    text = f"basis size: {len(report.basis)}\n{report.summary()}"
    _emit(args, payload, text)
    return EXIT_OK if report.associative else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    if not args.expr:
        raise CLIError("reduce needs --expr")
    doc = _load(args)
    alg = _algebra(doc, args)
    ctx, gens = mult_ideal(alg)
    basis = buchberger(ctx, gens)
    f = parse_gcpoly(args.expr, ctx)
    nf, _ = basis.reduce(f)
    _emit(args, {"command": "reduce", "expr": args.expr,
                 "normal_form": str(nf)}, str(nf))
    return EXIT_OK


def cmd_taylor(args) -> int:
    if not args.ring or not args.ideal:
        raise CLIError("taylor needs --ring and --ideal")
    ring = Ring([v.strip() for v in args.ring.split(",")])
    doc = Document()
    doc.ring = ring
    monos = []
    for part in args.ideal.split(","):
        scratch = FreeComplex(ring, "_scratch")
        v = parse_element(part.strip(), scratch)
        coeff = v.coeffs.get(UNIT)
        if coeff is None or set(v.coeffs) != {UNIT}:
            raise CLIError(f"{part.strip()!r} is not a monomial")
        monos.append(coeff.as_polynomial()
                     if hasattr(coeff, "as_polynomial") else coeff)
    alg = taylor_algebra(ring, monos, name="T")
    doc.complexes["T"] = alg.complex
    doc.mults["mu"] = alg.mult
    doc.mult_complex["mu"] = "T"
    print(format_document(doc), end="")
    return EXIT_OK


def cmd_cone(args) -> int:
    if not args.expr:
        raise CLIError("cone needs --expr with the adjoined differential")
    doc = _load(args)
    alg = _algebra(doc, args)
    r = _parse_scalar(doc, args.expr)
    cone = mapping_cone_extension(alg, r, prefix=args.prefix)
    out = Document()
    out.ring = doc.ring
    name = "".join(ch if ch.isalnum() or ch == "_" else "_"
                   for ch in cone.complex.name)
    cone.complex.name = name
    out.complexes[name] = cone.complex
    out.mults["mu"] = cone.mult
    out.mult_complex["mu"] = name
    print(format_document(out), end="")
    return EXIT_OK


def cmd_sym(args) -> int:
    doc = _load(args)
    if doc.mults:
        cx = doc.algebra(next(iter(doc.mults))).complex
    else:
        cx = doc.sole_complex()
    S = build_sym(cx, args.truncate)
    problems = S.check()
    dims = S.dims()
    lines = [f"S_{i}^{m}: dim {d}" for (i, m), d in sorted(dims.items())]
    if problems:
        lines += [f"FAIL {p}" for p in problems]
    _emit(args, {"command": "sym", "truncation": S.N,
                 "dims": {f"{i},{m}": d for (i, m), d in sorted(dims.items())},
                 "problems": problems}, "\n".join(lines))
    return EXIT_OK if not problems else EXIT_NEGATIVE


def cmd_transport(args) -> int:
    from .constructions import check_splitting, transport_multiplication
    doc = _load(args)
    pair = _find_splitting(doc)
    if pair is None:
        raise CLIError("document needs maps iota: X -> Y and pi: Y -> X "
                       "with pi iota = id")
    iota, pi = pair
    problems = check_splitting(iota, pi)
    if problems:
        _emit(args, {"command": "transport", "status": "fail",
                     "problems": problems}, "\n".join(problems))
        return EXIT_NEGATIVE
    source_alg = None
    for name, mult in doc.mults.items():
        if doc.complexes[doc.mult_complex[name]] is iota.target:
            source_alg = MDGAlgebra(iota.target, mult)
            break
    if source_alg is None:
        raise CLIError("no multiplication table on the big complex")
    mult = transport_multiplication(iota.source, source_alg, iota, pi)
    existing = None
    for name, m in doc.mults.items():
        if doc.complexes[doc.mult_complex[name]] is iota.source:
            existing = m
            break
    lines = []
    status = "transported"
    if existing is not None:
        diffs = [f"{a}*{b}" for (a, b) in mult.stored_pairs()
                 if not (mult.product(a, b)
                         - existing.product(a, b)).is_zero()]
        status = "matches" if not diffs else "differs"
        lines.append(f"transported table {status} the stored table"
                     + (f" at {', '.join(diffs)}" if diffs else ""))
    else:
        cx = iota.source
        for a, b in mult.stored_pairs():
            lines.append(f"{a}*{b} = {cx.format_element(mult.product(a, b))}")
    _emit(args, {"command": "transport", "status": status,
                 "products": len(mult.table)}, "\n".join(lines))
    return EXIT_OK if status in ("transported", "matches") else EXIT_NEGATIVE


def _find_splitting(doc: Document):
    for n1, phi in doc.maps.items():
        for n2, psi in doc.maps.items():
            if phi.target is psi.source and psi.target is phi.source \
                    and phi.source is not phi.target:
                return phi, psi
    return None


def cmd_perturb(args) -> int:
    doc = _load(args)
    alg = _algebra(doc, args)
    h = _random_homotopy(alg, args.seed)
    mult = perturb_multiplication(alg, h)
    algh = MDGAlgebra(alg.complex, mult)
    rep = algh.check()
    core_ok = not (rep.complex_problems or rep.degree_problems
                   or rep.leibniz_problems)
    payload = {"command": "perturb", "seed": args.seed,
               "chain_map_and_leibniz": core_ok,
               "multigrading_respected": not rep.mdeg_problems}
    text = (f"seed {args.seed}: chain-map/degree/Leibniz "
            f"{'ok' if core_ok else 'FAIL'}; multigrading "
            f"{'respected' if not rep.mdeg_problems else 'not respected'}")
    _emit(args, payload, text)
    return EXIT_OK if core_ok else EXIT_NEGATIVE


def _random_homotopy(alg: MDGAlgebra, seed: int, entries: int = 8) -> Homotopy:
    """A graded-symmetric degree +1 pairing vanishing on odd diagonals, with
    small random polynomial values landing in the right degrees."""
    cx = alg.complex
    rng = random.Random(seed)
    h = Homotopy(cx, f"h{seed}")
    names = alg.basis_names()
    maxdeg = cx.max_degree()
    tries = 0
    while len(h.table) < 2 * entries and tries < 200:
        tries += 1
        a = rng.choice(names)
        b = rng.choice(names)
        da, db = cx.basis[a].degree, cx.basis[b].degree
        if a == b and da % 2 == 1:
            continue
        if (a, b) in h.table or da + db + 1 > maxdeg:
            continue
        targets = cx.names_in_degree(da + db + 1)
        if not targets:
            continue
        t = rng.choice(targets)
        mono = tuple(rng.randint(0, 1) for _ in cx.ring.variables)
        value = cx.elem(t).scale(cx.ring.monomial(mono,
                                                  Fraction(rng.randint(1, 3))))
        h.set_value(a, b, value)
        sign = 1 if (da * db) % 2 == 0 else -1
        if a != b:
            h.set_value(b, a, value.scale(sign))
    return h


# ---------------------------------------------------------------------------
# the emit-only exporter
# ---------------------------------------------------------------------------

def _export_script(alg: MDGAlgebra) -> str:
    """A Singular session computing the same completed basis; emitted for
    cross-checking only, never parsed back."""
    ctx, gens = mult_ideal(alg)
    weights = ",".join(str(d) for d in ctx.degrees)
    names = ",".join(ctx.names)
    ring_vars = ",".join(alg.ring.variables)
    n = ctx.n
    lines = [
        'LIB "ncalg.lib";',
        f"intvec V = {weights};",
        f"ring A = (0,{ring_vars}), ({names}), Wp(V);",
        f"matrix C[{n}][{n}]; matrix D[{n}][{n}]; int i; int j;",
        f"for (i=1; i<={n}; i++) {{ for (j=1; j<={n}; j++) "
        "{ C[i,j] = (-1)^(V[i]*V[j]); } }",
        "ncalgebra(C, D);",
        "ideal I;",
    ]
    for g in gens:
        lines.append(f"I = I + ({g});")
    lines += ["option(redSB);", "ideal G = std(I);", "G;"]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="mdg",
        description="Exact computations with multiplications on free "
                    "resolutions.",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, needs_doc=True, help=None):
        p = sub.add_parser(name, help=help)
        if needs_doc:
            p.add_argument("document", help=".mdg input file")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report")
        p.add_argument("--mult", help="multiplication block to use")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, help="verify complex and algebra axioms")
    p = add("assoc", cmd_assoc, help="associativity of the table")
    p.add_argument("--triple", help="a,b,c: print this associator")
    p.add_argument("--modulus",
                   help="comma-separated monomials; also reduce modulo them")
    add("alt", cmd_alt, help="the alternative property on basis pairs")
    add("submodule", cmd_submodule,
        help="the subcomplex generated by the associators")
    add("homology", cmd_homology, help="homology dimensions of the complex")
    add("quotient", cmd_quotient,
        help="homology of the maximal associative quotient")
    p = add("gb", cmd_gb, help="complete the pair relations to a basis")
    p.add_argument("--emit-script", action="store_true",
                   help="print an external CAS session instead (emit-only)")
    p = add("reduce", cmd_reduce, help="normal form against the completed "
            "pair relations")
    p.add_argument("--expr", help="expression in the generators")
    p = add("taylor", cmd_taylor, needs_doc=False,
            help="emit the Taylor algebra of a monomial ideal")
    p.add_argument("--ring", help="comma-separated variable names")
    p.add_argument("--ideal", help="comma-separated monomial generators")
    p = add("cone", cmd_cone, help="adjoin an exterior generator e, d(e)=r")
    p.add_argument("--expr", help="the ring element r")
    p.add_argument("--prefix", default="E",
                   help="name prefix for the adjoined part")
    p = add("sym", cmd_sym, help="the truncated symmetric DG algebra")
    p.add_argument("--truncate", type=int, default=4,
                   help="total-degree truncation (default 4)")
    add("transport", cmd_transport,
        help="pull a multiplication along a splitting in the document")
    p = add("perturb", cmd_perturb, help="perturb the table by a random "
            "homotopy and re-check the axioms")
    p.add_argument("--seed", type=int, default=0)
    return top


def run_command(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_INPUT
    try:
        return args.func(args)
    except (CLIError, DocumentError, ComplexError, MDGError,
            SymError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command())
