"""
Executable checks of the principal-specialization identities and their supporting algebra.

Each checker returns a :class:`Report`.  Series comparisons are made only on
exponents where the left side is provably exact; when that range cannot reach
the requested cutoff the verdict is ``inconclusive`` rather than ``fail``.

The right sides are assembled per word length p.  For a fixed p all words share
the denominator ``Π_{k<=p} (q^{dk} - 1)``, so their numerators are summed first
(with :func:`~.words.weighted_decoration_sum` handling signs and primes) and
expanded once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .involution import InvolutionSpace, check_commute_lemma, check_prop_iS
from .nilhecke import brute_polynomial, build_product, coefficient_of, specialized_product
from .permgroup import (
    GroupKind,
    SignedPermutation,
    _check_member,
    coxeter_length,
    ell_zero,
    elements,
)
from .polyring import LaurentSeries, SoundnessError, expand_fraction, finite_specialize_q
from .words import (
    Letter,
    WordKind,
    bc_order_key,
    compat_key,
    d_order_key,
    hecke_label_words,
    reduced_label_words,
    statistic,
    weighted_decoration_sum,
)

__all__ = [
    "FAMILIES",
    "PrecisionError",
    "Report",
    "check_bc_coefficients",
    "check_bc_ratio",
    "check_involution",
    "check_macdonald_finite",
    "check_product_forms",
    "check_specialization",
    "lhs_series",
    "rhs_series",
    "sweep_specialization",
]

DEFAULT_DEPTH = 25
DEFAULT_BETA_CAP = 2


class PrecisionError(RuntimeError):
    """The stored precision of a specialized product could not reach a requested cutoff."""


@dataclass
class Report:
    check: str
    params: dict
    verdict: str
    diff: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)
    summary: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict,
            "diff": self.diff,
            "bounds": self.bounds,
            "summary": self.summary,
        }

    def text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.verdict.upper():12s} {self.check} {params}"
        if self.summary:
            line += f" :: {self.summary}"
        return line

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# --- q-polynomial helpers ------------------------------------------------------

def _pmul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _q_integer(a: int) -> dict[int, int]:
    """[a]_q = 1 + q + ... + q^{a-1}."""
    return {k: 1 for k in range(a)}


def _q_factorial(p: int) -> dict[int, int]:
    out = {0: 1}
    for k in range(1, p + 1):
        out = _pmul(out, _q_integer(k))
    return out


def check_macdonald_finite(n: int) -> Report:
    """``[p]_q!·S_w(1, q, ..., q^{n-1}) = Σ_a [a_1]_q⋯[a_p]_q q^{comaj(a)}`` for all w in S_n."""
    kind = GroupKind("A", n)
    failures = []
    count = 0
    for w in elements(kind):
        count += 1
        p = coxeter_length(kind, w)
        lhs = _pmul(_q_factorial(p), finite_specialize_q(brute_polynomial("A", w, 1, n=n)))
        rhs: dict[int, int] = {}
        for word in reduced_label_words(kind, w):
            term = {statistic(word, "comaj"): 1}
            for a in word:
                term = _pmul(term, _q_integer(a))
            for e, c in term.items():
                rhs[e] = rhs.get(e, 0) + c
        rhs = {e: c for e, c in rhs.items() if c}
        if lhs != rhs:
            e = max(k for k in set(lhs) | set(rhs) if lhs.get(k, 0) != rhs.get(k, 0))
            failures.append({"w": str(w), "exponent": e, "lhs": lhs.get(e, 0), "rhs": rhs.get(e, 0)})
    return Report("macdonald", {"n": n}, _verdict(not failures), failures[:1],
                  summary=f"{count} permutations, {len(failures)} mismatches")


# --- right-hand sides ------------------------------------------------------------

@dataclass(frozen=True)
class _RhsSpec:
    alphabet: WordKind
    grothendieck: bool
    weight: Callable[[Letter], dict[int, int]]
    order: Callable
    scale: int  # ascent weight; the denominators are Π (q^{scale·k} - 1)
    product_family: str


def _plain_sum(x: Letter) -> dict[int, int]:
    return {x.value: 1}


def _plus_one(x: Letter) -> dict[int, int]:
    return {0: 2} if x.value == 0 else {x.value: 1, 0: 1}


def _sigma_bc(x: Letter) -> dict[int, int]:
    return {x.value if x.value > 0 else 0: 1}


def _d_schubert(x: Letter) -> dict[int, int]:
    shift = 1 if x.value > 0 else 0
    return {abs(x.value) + shift: 1, shift: 1}


def _d_grothendieck(x: Letter) -> dict[int, int]:
    shift = 1 if x.value > 0 else 0
    return {(0 if x.is_primed else abs(x.value)) + shift: 1}


FAMILIES: dict[str, _RhsSpec] = {
    "A": _RhsSpec(WordKind.A, False, _plain_sum, compat_key, 1, "A"),
    "Agroth": _RhsSpec(WordKind.A, True, _plain_sum, compat_key, 1, "A"),
    "B": _RhsSpec(WordKind.B, False, _sigma_bc, bc_order_key, 1, "B"),
    "Bgroth": _RhsSpec(WordKind.B, True, _sigma_bc, bc_order_key, 1, "B"),
    "C": _RhsSpec(WordKind.CPOS, False, _plus_one, compat_key, 1, "C"),
    "Cgroth": _RhsSpec(WordKind.C, True, _sigma_bc, bc_order_key, 1, "C"),
    "D": _RhsSpec(WordKind.D, False, _d_schubert, d_order_key, 2, "D"),
    "Dgroth": _RhsSpec(WordKind.DPRIMED, True, _d_grothendieck, d_order_key, 2, "D"),
}


def _family(name: str) -> _RhsSpec:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None


def _beta_cap(spec: _RhsSpec, beta_cap: int) -> int:
    return beta_cap if spec.grothendieck else 0


def rhs_numerators(family: str, w: SignedPermutation, n: int, beta_cap: int) -> dict[int, dict[int, int]]:
    """``{extra: numerator}``: summed word weights of length ``ℓ(w) + extra``."""
    spec = _family(family)
    kind = spec.alphabet.group(n)
    w = _check_member(kind, w)
    out = {}
    for extra in range(_beta_cap(spec, beta_cap) + 1):
        total: dict[int, int] = {}
        for labels in hecke_label_words(kind, w, extra):
            for e, c in weighted_decoration_sum(labels, spec.alphabet, spec.weight, spec.order, spec.scale).items():
                total[e] = total.get(e, 0) + c
        total = {e: c for e, c in total.items() if c}
        if total:
            out[extra] = total
    return out


def _rhs_from_numerators(spec: _RhsSpec, length: int, numerators: dict, cutoff: int, beta_cap: int) -> LaurentSeries:
    total = LaurentSeries({}, None, beta_cap)
    for extra, num in numerators.items():
        p = length + extra
        part = expand_fraction({(e, extra): c for e, c in num.items()}, [spec.scale * k for k in range(1, p + 1)],
                               cutoff, beta_cap)
        total = total + part
    return total.truncate(cutoff)


def _rhs_top(spec: _RhsSpec, length: int, numerators: dict) -> int | None:
    # all numerator coefficients are positive, so nothing cancels at the top
    tops = []
    for extra, num in numerators.items():
        p = length + extra
        tops.append(max(num) - spec.scale * p * (p + 1) // 2)
    return max(tops, default=None)


def rhs_series(family: str, w: SignedPermutation, n: int, cutoff: int, beta_cap: int = 0) -> LaurentSeries:
    """The word-sum side of the specialization identity, exact down to ``cutoff``."""
    spec = _family(family)
    kind = spec.alphabet.group(n)
    bcap = _beta_cap(spec, beta_cap)
    nums = rhs_numerators(family, w, n, bcap)
    return _rhs_from_numerators(spec, coxeter_length(kind, w), nums, cutoff, bcap)


# --- left-hand sides -------------------------------------------------------------

def _lhs_bound(floor: int, degree: int, n: int) -> int | None:
    # exponent from which stages below `floor` cannot contribute
    if degree <= 0:
        return None
    return floor + (degree - 1) * max(n - 2, 0)


def auto_floor(cutoff: int, degree: int, n: int) -> int:
    """Largest window floor whose soundness bound reaches ``cutoff``."""
    return min(0, cutoff - max(degree - 1, 0) * max(n - 2, 0))


def _lhs_products(family: str, n: int, beta_cap: int, cutoffs: dict[SignedPermutation, int],
                  floor: int) -> dict[SignedPermutation, LaurentSeries]:
    """Specialized coefficients of the product, each exact down to its target cutoff."""
    spec = _family(family)
    kind = spec.alphabet.group(n)
    bcap = _beta_cap(spec, beta_cap)
    flavor = "id" if spec.grothendieck else "nil"
    top_degree = max(coxeter_length(kind, w) for w in cutoffs) + bcap
    lowest = min(cutoffs.values())
    slack = (top_degree + 2) * max(n - 2, 0) + 2
    for _ in range(6):
        storage = lowest - slack
        product = specialized_product(spec.product_family, flavor, n, floor, bcap, storage)
        out = {}
        short = False
        for w, target in cutoffs.items():
            c = product.support.get(w, LaurentSeries({}, None, bcap))
            bound = _lhs_bound(floor, coxeter_length(kind, w) + bcap, n)
            cutoff = max(x for x in (c.cutoff, bound, target) if x is not None)
            if cutoff > target:
                short = True
                break
            out[w] = LaurentSeries(c.terms, target if (c.cutoff is not None or bound is not None) else None, bcap)
        if not short:
            return out
        slack *= 2
    raise PrecisionError("could not reach the requested cutoff with the stored precision")


def lhs_series(family: str, w: SignedPermutation, n: int, cutoff: int, beta_cap: int = 0,
               window_floor: int | None = None, method: str = "product") -> LaurentSeries:
    """Principal specialization of the polynomial side, exact down to ``cutoff``.

    ``product`` specializes the generating product factor by factor;
    ``words`` sums compatible sequences word by word.  An explicit
    ``window_floor`` whose soundness bound lies above ``cutoff`` is refused.
    """
    spec = _family(family)
    kind = spec.alphabet.group(n)
    w = _check_member(kind, w)
    bcap = _beta_cap(spec, beta_cap)
    degree = coxeter_length(kind, w) + bcap
    if window_floor is None:
        window_floor = auto_floor(cutoff, degree, n)
    bound = _lhs_bound(window_floor, degree, n)
    if bound is not None and cutoff < bound:
        raise SoundnessError(cutoff, bound)
    if method == "product":
        return _lhs_products(family, n, bcap, {w: cutoff}, window_floor)[w]
    if method != "words":
        raise ValueError(f"unknown method {method!r}; expected product or words")
    from .nilhecke import brute_specialization

    brute_family = {"A": "Abackstable", "Agroth": "Agroth"}.get(family, family)
    series = brute_specialization(brute_family, w, window_floor, bcap, n)
    return LaurentSeries(series.terms, cutoff if bound is not None else None, bcap).truncate(cutoff)


def _compare(lhs: LaurentSeries, rhs: LaurentSeries, cutoff: int, beta_cap: int) -> list:
    return [
        {"exponent": e, "beta": b, "lhs": str(x), "rhs": str(y)}
        for e, b, x, y in lhs.diff(rhs, cutoff, beta_cap)
    ]


def check_specialization(family: str, w: SignedPermutation, n: int, cutoff: int | None = None,
                         beta_cap: int = DEFAULT_BETA_CAP, window_floor: int | None = None,
                         method: str = "product") -> Report:
    spec = _family(family)
    kind = spec.alphabet.group(n)
    w = _check_member(kind, w)
    bcap = _beta_cap(spec, beta_cap)
    length = coxeter_length(kind, w)
    nums = rhs_numerators(family, w, n, bcap)
    if cutoff is None:
        cutoff = (_rhs_top(spec, length, nums) or 0) - (DEFAULT_DEPTH - 1)
    params = {"family": family, "n": n, "w": str(w), "beta_cap": bcap}
    try:
        lhs = lhs_series(family, w, n, cutoff, bcap, window_floor, method)
    except PrecisionError as exc:
        return Report("specialization", params, "inconclusive", bounds={"cutoff": cutoff}, summary=str(exc))
    rhs = _rhs_from_numerators(spec, length, nums, cutoff, bcap)
    diff = _compare(lhs, rhs, cutoff, bcap)
    return Report("specialization", params, _verdict(not diff), diff[:1], {"cutoff": cutoff},
                  f"compared exponents >= {cutoff}")


def sweep_specialization(family: str, n: int, beta_cap: int = DEFAULT_BETA_CAP, depth: int = DEFAULT_DEPTH,
                         perms: Iterable[SignedPermutation] | None = None) -> Report:
    """Compare both sides for every group element on at least ``depth`` exponents."""
    spec = _family(family)
    params = {"family": family, "n": n, "beta_cap": _beta_cap(spec, beta_cap), "depth": depth}
    if spec.alphabet.group_family == "D" and n < 2:
        return Report("specialization-sweep", params, "pass", summary="type D needs n >= 2; nothing to check")
    kind = spec.alphabet.group(n)
    bcap = _beta_cap(spec, beta_cap)
    perms = list(elements(kind) if perms is None else (_check_member(kind, w) for w in perms))
    lengths = {w: coxeter_length(kind, w) for w in perms}
    nums = {w: rhs_numerators(family, w, n, bcap) for w in perms}
    cutoffs = {w: (_rhs_top(spec, lengths[w], nums[w]) or 0) - (depth - 1) for w in perms}
    degree = max(lengths.values()) + bcap
    floor = auto_floor(min(cutoffs.values()), degree, n)
    bounds = {"window_floor": floor, "lowest_cutoff": min(cutoffs.values())}
    try:
        lhs = _lhs_products(family, n, bcap, cutoffs, floor)
    except PrecisionError as exc:
        return Report("specialization-sweep", params, "inconclusive", bounds=bounds, summary=str(exc))
    failures = []
    for w in perms:
        rhs = _rhs_from_numerators(spec, lengths[w], nums[w], cutoffs[w], bcap)
        diff = _compare(lhs[w], rhs, cutoffs[w], bcap)
        if diff:
            failures.append({"w": str(w), **diff[0]})
    return Report("specialization-sweep", params, _verdict(not failures), failures[:1], bounds,
                  f"{len(perms)} elements, {depth} exponents each, {len(failures)} mismatches")


# --- product forms ---------------------------------------------------------------

def check_product_forms(family: str, flavor: str, n: int, window_floor: int, beta_cap: int = DEFAULT_BETA_CAP) -> Report:
    """Definitional vs. factored product on monomials with every index above ``n - 1 + window_floor``."""
    product_family = "A" if family in ("A", "Abackstable") else family
    params = {"family": family, "flavor": flavor, "n": n, "window_floor": window_floor}
    if product_family == "D" and n < 2:
        return Report("product-forms", params, "pass", summary="type D needs n >= 2; nothing to check")
    bcap = beta_cap if flavor == "id" else 0
    if flavor == "id":
        params["beta_cap"] = bcap
    trusted = n - 1 + window_floor
    a = build_product(product_family, flavor, n, window_floor, "definitional", beta_cap=bcap)
    b = build_product(product_family, flavor, n, window_floor, "factored", beta_cap=bcap)
    failures = []
    for w in elements(a.kind):
        pa = a.support.get(w)
        pb = b.support.get(w)
        ra = pa.keep_min_index_above(trusted) if pa is not None else None
        rb = pb.keep_min_index_above(trusted) if pb is not None else None
        if (ra is None or ra.is_zero()) and (rb is None or rb.is_zero()):
            continue
        if ra is None or rb is None or not ra == rb:
            failures.append({"w": str(w), "definitional": str(ra), "factored": str(rb)})
    return Report("product-forms", params, _verdict(not failures), failures[:1], {"trusted_above": trusted},
                  f"{len(failures)} mismatching coefficients")


def check_bc_ratio(n: int, window_floor: int = -2) -> Report:
    """``S^C_w = 2^{ℓ_0(w)}·S^B_w`` for every w, on the window ``[window_floor, n-1]``."""
    b = build_product("B", "nil", n, window_floor)
    c = build_product("C", "nil", n, window_floor)
    failures = []
    for w in elements(b.kind):
        pb, pc = b.support.get(w), c.support.get(w)
        scaled = pb * (2 ** ell_zero(w)) if pb is not None else None
        if (scaled is None) != (pc is None) or (scaled is not None and not scaled == pc):
            failures.append({"w": str(w), "C": str(pc), "2^l0 B": str(scaled)})
    return Report("bc-ratio", {"n": n, "window_floor": window_floor}, _verdict(not failures), failures[:1],
                  summary=f"{len(failures)} mismatches")


# --- involutions -----------------------------------------------------------------

def check_involution(n: int, flavor: str, beta_cap: int = DEFAULT_BETA_CAP) -> list[Report]:
    params = {"n": n, "flavor": flavor, "beta_cap": beta_cap}
    if flavor == "fpf" and n % 2:
        return [Report("involution", params, "pass", summary="odd rank: fixed-point-free formulas not stated")]
    space = InvolutionSpace(flavor, n)
    reports = []
    mismatch = []
    atom_problems = []
    for z in space.basis:
        dreams = space.inv_grothendieck(z, "pipedream", beta_cap)
        words = space.inv_grothendieck(z, "wordsum", beta_cap)
        if not dreams == words:
            mismatch.append({"z": str(z), "pipedream": str(dreams), "wordsum": str(words)})
        atoms = space.atoms_partition_defect(z, beta_cap)
        atom_sum = _atom_sum(space, z, beta_cap)
        if not atom_sum == dreams:
            atoms = atoms + [f"atom sum differs: {atom_sum}"]
        if atoms:
            atom_problems.append({"z": str(z), "problems": atoms})
    reports.append(Report("pipe-dream-formula", params, _verdict(not mismatch), mismatch[:1],
                          summary=f"{len(space.basis)} basis elements, {len(mismatch)} mismatches"))
    reports.append(Report("hecke-atoms", params, _verdict(not atom_problems), atom_problems[:1],
                          summary=f"{len(atom_problems)} elements with partition defects"))
    diff = check_prop_iS(n, flavor)
    reports.append(Report("staircase-product", {"n": n, "flavor": flavor}, _verdict(not diff), diff[:1]))
    if flavor == "invol":
        lemma = {i: check_commute_lemma(n, i) for i in range(1, n)}
        bad = [{"i": i, "diff": d[:1]} for i, d in lemma.items() if d]
        reports.append(Report("commute-lemma", {"n": n}, _verdict(not bad), bad[:1],
                              summary=f"indices 1..{n - 1}"))
    return reports


def _atom_sum(space: InvolutionSpace, z: SignedPermutation, beta_cap: int):
    ell = space.ell_hat(z)
    ring = space.ring(beta_cap)
    total = ring.zero()
    for w in space.hecke_atoms(z):
        k = coxeter_length(space.group, w) - ell
        if k > beta_cap:
            continue
        g = brute_polynomial("Agroth", w, 1, beta_cap - k, n=space.n).reembed(ring)
        for _ in range(k):
            g = g.mul_beta()
        total = total + g
    return total


def check_bc_coefficients(n: int, window_floor: int) -> Report:
    """Definitional products against the word-sum definitions, every element of W^BC_n and W^D_n."""
    failures = []
    for family in ("B", "C", "D"):
        if family == "D" and n < 2:
            continue
        e = build_product(family, "nil", n, window_floor)
        for w in elements(e.kind):
            brute = brute_polynomial(family, w, window_floor, n=n)
            built = coefficient_of(e, w)
            if built is None:
                ok = brute.is_zero()
            else:
                ok = built.reembed(brute.ring).terms == brute.terms
            if not ok:
                failures.append({"family": family, "w": str(w)})
    return Report("product-vs-words", {"n": n, "window_floor": window_floor}, _verdict(not failures),
                  failures[:1])
