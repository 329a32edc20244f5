"""Command-line front end: ``compute``, ``specialize``, ``words`` and ``verify``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import verify
from .involution import InvolutionSpace
from .nilhecke import brute_polynomial, build_product
from .permgroup import GroupKind, NotInGroupError, SignedPermutation, _check_member, coxeter_length
from .polyring import PolyRing, SoundnessError, SparsePoly
from .words import WordKind, hecke_words, reduced_words

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SEMANTIC, EXIT_SOUNDNESS = 0, 1, 2, 3, 4

TYPES = ("A", "B", "C", "D", "invol", "fpf")
FORMS = ("words", "product", "factored", "pipedream")
SUITES = ("macdonald", "typeA", "typeC", "typeD", "groth", "products", "bcratio", "involution", "all")


class UsageError(Exception):
    pass


class SemanticError(Exception):
    pass


def _parse_perm(text: str) -> SignedPermutation:
    try:
        return SignedPermutation.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _default_floor(kind: str) -> int:
    return 1 if kind in ("A", "invol", "fpf") else 0


def _group_family(kind: str) -> str:
    return {"A": "A", "B": "BC", "C": "BC", "D": "D"}.get(kind, "A")


def _rank(args, perm: SignedPermutation) -> int:
    n = args.n if args.n is not None else len(perm)
    if n < 1:
        raise UsageError("--n must be positive")
    return n


# --- compute -----------------------------------------------------------------------

def _restrict(poly: SparsePoly, xdeg: int | None) -> SparsePoly:
    if xdeg is None:
        return poly
    return SparsePoly(PolyRing(poly.ring.lo, poly.ring.hi, xdeg, poly.ring.beta_cap), poly.terms)


def compute_polynomial(args) -> SparsePoly:
    perm = _parse_perm(args.perm)
    n = _rank(args, perm)
    groth = args.family == "grothendieck"
    beta = (verify.DEFAULT_BETA_CAP if args.beta is None else args.beta) if groth else 0
    form = args.form
    if args.type in ("invol", "fpf"):
        space = InvolutionSpace(args.type, n)
        try:
            z = space.normalize(perm)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None
        form = form or "pipedream"
        cap = beta if groth else 0
        if form == "pipedream":
            # the pipe-dream sum is finite, so it is exact unless a cap is asked for
            cap = args.beta if groth else 0
            poly = space.inv_grothendieck(z, "pipedream", cap)
        elif form == "words":
            poly = space.inv_grothendieck(z, "wordsum", cap)
        elif form == "product":
            # coefficient of m_z in m_start·G(x)
            ring = space.ring(cap)
            poly = space.start_times_grothendieck(ring).get(z, ring.zero())
        else:
            raise UsageError(f"form {form!r} is not available for involutions")
        return _restrict(poly, args.xdeg)

    kind = GroupKind(_group_family(args.type), n) if not (args.type == "D" and n < 2) else None
    if kind is None:
        raise SemanticError("type D needs n >= 2")
    try:
        perm = _check_member(kind, perm)
    except NotInGroupError as exc:
        raise SemanticError(str(exc)) from None
    floor = args.floor if args.floor is not None else _default_floor(args.type)
    form = form or "words"
    if form == "pipedream":
        raise UsageError("pipedream form is only available for --type invol or fpf")
    if form == "words":
        family = {"A": "Agroth" if groth else ("A" if floor >= 1 else "Abackstable")}.get(args.type)
        if family is None:
            family = args.type + ("groth" if groth else "")
        poly = brute_polynomial(family, perm, floor, beta, n=n)
        return _restrict(poly, args.xdeg)
    if floor > 0 and args.type != "A":
        raise UsageError("product forms need --floor <= 0")
    flavor = "id" if groth else "nil"
    build_floor = min(floor, 0)
    e = build_product(args.type, flavor, n, build_floor, "definitional" if form == "product" else "factored",
                      beta_cap=beta if groth else None)
    poly = e.support.get(perm)
    ring = PolyRing(build_floor, max(n - 1, build_floor), None, beta if groth else 0)
    poly = poly if poly is not None else ring.zero()
    if floor >= 1:
        poly = poly.keep_min_index_above(0)
    if form == "factored":
        # only the trusted monomials of a truncated factored product are meaningful
        poly = poly.keep_min_index_above(n - 1 + build_floor)
    return _restrict(poly, args.xdeg)


def cmd_compute(args) -> int:
    poly = compute_polynomial(args)
    if args.out == "json":
        print(json.dumps(poly.to_json(), sort_keys=True))
    else:
        print(poly)
    return EXIT_OK


# --- specialize ----------------------------------------------------------------------

def _spec_family(args) -> str:
    if args.type in ("invol", "fpf"):
        raise SemanticError("principal specializations are defined for types A, B, C and D")
    groth = args.family == "grothendieck"
    return args.type + ("groth" if groth else "")


def cmd_specialize(args) -> int:
    family = _spec_family(args)
    perm = _parse_perm(args.perm)
    n = _rank(args, perm)
    if family.startswith("D") and n < 2:
        raise SemanticError("type D needs n >= 2")
    spec = verify.FAMILIES[family]
    kind = spec.alphabet.group(n)
    try:
        perm = _check_member(kind, perm)
    except NotInGroupError as exc:
        raise SemanticError(str(exc)) from None
    beta = (verify.DEFAULT_BETA_CAP if args.beta is None else args.beta) if spec.grothendieck else 0
    cutoff = args.cutoff
    if cutoff is None:
        nums = verify.rhs_numerators(family, perm, n, beta)
        top = verify._rhs_top(spec, coxeter_length(kind, perm), nums)
        cutoff = (top or 0) - (verify.DEFAULT_DEPTH - 1)
    method = "words" if args.form == "words" else "product"
    out = {}
    if args.side in ("lhs", "both"):
        out["lhs"] = verify.lhs_series(family, perm, n, cutoff, beta, args.floor, method)
    if args.side in ("rhs", "both"):
        out["rhs"] = verify.rhs_series(family, perm, n, cutoff, beta)
    verdict = None
    diff = []
    if args.side == "both":
        diff = out["lhs"].diff(out["rhs"], cutoff, beta)
        verdict = "pass" if not diff else "fail"
    if args.out == "json":
        payload = {side: s.to_json() for side, s in out.items()}
        if verdict:
            payload["verdict"] = verdict
            payload["diff"] = [{"exponent": e, "beta": b, "lhs": str(x), "rhs": str(y)} for e, b, x, y in diff[:1]]
        print(json.dumps(payload, sort_keys=True))
    else:
        for side, series in out.items():
            print(f"[{side}]")
            for line in series.format_lines(cutoff):
                print(line)
        if verdict:
            print(f"verdict: {verdict}")
            for e, b, x, y in diff[:1]:
                print(f"first difference at q^{e} beta^{b}: lhs={x} rhs={y}")
    return EXIT_OK if verdict in (None, "pass") else EXIT_FAIL


# --- words ---------------------------------------------------------------------------

_WORD_TYPES = {"A": "A", "B": "B±", "C": "C±", "Cpos": "C≥0", "D": "D±", "Dprimed": "Dprimed"}


def cmd_words(args) -> int:
    perm = _parse_perm(args.perm)
    n = _rank(args, perm)
    if args.type in ("invol", "fpf"):
        space = InvolutionSpace(args.type, n)
        try:
            found = space.inv_hecke_words(space.normalize(perm), args.extra)
        except ValueError as exc:
            raise SemanticError(str(exc)) from None
    else:
        alphabet = WordKind.from_name(_WORD_TYPES[args.type])
        if alphabet.group_family == "D" and n < 2:
            raise SemanticError("type D needs n >= 2")
        try:
            if args.extra:
                found = hecke_words(alphabet, n, perm, args.extra)
            else:
                found = reduced_words(alphabet, n, perm)
        except NotInGroupError as exc:
            raise SemanticError(str(exc)) from None
    rendered = sorted((len(w), str(w)) for w in found)
    if args.out == "json":
        print(json.dumps([s for _, s in rendered]))
    else:
        for _, s in rendered:
            print(s)
    return EXIT_OK


# --- verify --------------------------------------------------------------------------

PRODUCT_FLOORS = {("A", "nil"): -6, ("A", "id"): -5, "nil": -5, "id": -4}


def product_floor(family: str, flavor: str) -> int:
    if family == "A":
        return PRODUCT_FLOORS[("A", flavor)]
    return PRODUCT_FLOORS[flavor]


def run_suite(suite: str, n: int | None, depth: int, beta: int, slow: bool) -> list[verify.Report]:
    n_a = n if n is not None else (5 if slow else 4)
    n_bc = n if n is not None else (4 if slow else 3)
    n_groth = n if n is not None else 3
    n_inv = n if n is not None else 4
    reports: list[verify.Report] = []
    wanted = SUITES[:-1] if suite == "all" else (suite,)
    for name in wanted:
        if name == "macdonald":
            reports.append(verify.check_macdonald_finite(n_a))
        elif name == "typeA":
            reports.append(verify.sweep_specialization("A", n_a, 0, depth))
        elif name == "typeC":
            reports.append(verify.sweep_specialization("C", n_bc, 0, depth))
            reports.append(verify.sweep_specialization("B", n_bc, 0, depth))
        elif name == "typeD":
            reports.append(verify.sweep_specialization("D", n_bc, 0, depth))
        elif name == "groth":
            reports.append(verify.sweep_specialization("Agroth", n_a, beta, depth))
            for family in ("Bgroth", "Cgroth", "Dgroth"):
                reports.append(verify.sweep_specialization(family, n_groth, beta, depth))
        elif name == "products":
            for flavor in ("nil", "id"):
                reports.append(verify.check_product_forms("A", flavor, n_a, product_floor("A", flavor), beta))
                rank = n_bc if flavor == "nil" else n_groth
                for family in ("B", "C", "D"):
                    reports.append(verify.check_product_forms(family, flavor, rank, product_floor(family, flavor), beta))
        elif name == "bcratio":
            reports.append(verify.check_bc_ratio(n_bc))
        elif name == "involution":
            for flavor in ("invol", "fpf"):
                reports.extend(verify.check_involution(n_inv, flavor, beta))
    return reports


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.n, args.cutoff, args.beta, args.slow)
    for report in reports:
        print(report.dumps() if args.out == "json" else report.text())
    ok = all(r.passed for r in reports)
    if args.out != "json":
        print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return EXIT_OK if ok else EXIT_FAIL


# --- parser --------------------------------------------------------------------------

def _nat(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text}")
    return value


def _add_compute_flags(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=("schubert", "grothendieck"), default="schubert")
    p.add_argument("--type", choices=TYPES, required=True)
    p.add_argument("--perm", required=True, help='signed window images, e.g. "2,-1,3"')
    p.add_argument("--n", type=int, help="rank (default: window size of --perm)")
    p.add_argument("--floor", type=int, help="lowest variable index (default 1 for A/invol/fpf, 0 for B/C/D)")
    p.add_argument("--xdeg", type=_nat, help="cap on total x-degree")
    p.add_argument("--beta", type=_nat, help="cap on β-degree for Grothendieck families (default 2; pipe dreams are exact)")
    p.add_argument("--form", choices=FORMS)
    p.add_argument("--out", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="classical-schubert",
                                     description="Schubert and Grothendieck polynomials of classical types.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print a polynomial")
    _add_compute_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("specialize", help="principal specialization x_i -> q^(i-1)")
    _add_compute_flags(p)
    p.add_argument("--side", choices=("lhs", "rhs", "both"), default="both")
    p.add_argument("--cutoff", type=int, help="lowest q-exponent to report (default: 25 below the top)")
    p.set_defaults(func=cmd_specialize)

    p = sub.add_parser("words", help="list reduced, Hecke or involution Hecke words")
    p.add_argument("--type", choices=tuple(_WORD_TYPES) + ("invol", "fpf"), required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--extra", type=_nat, default=0, help="allow words this much longer than reduced")
    p.add_argument("--out", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("verify", help="run identity checks")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--n", type=int, help="rank for every suite (default: per-suite desk scale)")
    p.add_argument("--cutoff", type=_nat, default=verify.DEFAULT_DEPTH,
                   help="number of q-exponents compared below each series' top")
    p.add_argument("--beta", type=_nat, default=verify.DEFAULT_BETA_CAP)
    p.add_argument("--slow", action="store_true", help="larger ranks")
    p.add_argument("--out", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_perm(argv: Sequence[str]) -> list[str]:
    # signed windows such as -1,2 would otherwise be read as options
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token == "--perm":
            value = next(it, None)
            out.append(token if value is None else f"--perm={value}")
        else:
            out.append(token)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_perm(sys.argv[1:] if argv is None else argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SoundnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOUNDNESS
    except (SemanticError, NotInGroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except verify.PrecisionError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
