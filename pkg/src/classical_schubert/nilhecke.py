"""
Nil-Coxeter and id-Coxeter algebras over polynomial (or series) coefficients.

An :class:`AlgebraElement` is a finite map ``w -> coefficient``.  Coefficients
may be :class:`~.polyring.SparsePoly` or :class:`~.polyring.LaurentSeries`;
anything with ``+``, ``*``, ``mul_beta`` and ``is_zero`` works.

The generating products are described once, as lists of *factors*
``(label, variable indices)``: the factor stands for ``h_label(x_{v1} ⊕ x_{v2} ⊕ ...)``.
In the nil flavor the ⊕ collapses to an ordinary sum, so the C-factor
``h_0(x)h_0(x)`` becomes ``h_0(2x)``.  Realizing the same factor list with
polynomial or with specialized coefficients keeps the two in lockstep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .permgroup import (
    GroupKind,
    SignedPermutation,
    _check_member,
    canonical_label,
    coxeter_length,
    elements,
    identity,
    is_descent,
    reduced_word,
    right_multiply,
)
from .polyring import LaurentSeries, PolyRing, SparsePoly
from .words import (
    WordKind,
    compat_key,
    compatible_sequences,
    decorate,
    hecke_label_words,
)

__all__ = [
    "AlgebraElement",
    "FLAVORS",
    "PRODUCT_FAMILIES",
    "basis_product",
    "brute_polynomial",
    "brute_specialization",
    "build_product",
    "coefficient_of",
    "h_multiply",
    "product_factors",
    "realize_factors",
    "specialized_product",
]

FLAVORS = ("nil", "id")
PRODUCT_FAMILIES = ("A", "B", "C", "D")
_GROUP_OF = {"A": "A", "B": "BC", "C": "BC", "D": "D"}

Factor = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class AlgebraElement:
    kind: GroupKind
    flavor: str
    support: Mapping[SignedPermutation, object]
    # monomials whose variables all have index > trusted_above are exact
    trusted_above: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}; expected one of {FLAVORS}")

    @classmethod
    def one(cls, kind: GroupKind, flavor: str, one) -> AlgebraElement:
        return cls(kind, flavor, {identity(kind): one})

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same_algebra(self, other)
        out = dict(self.support)
        for w, c in other.support.items():
            out[w] = out[w] + c if w in out else c
        return AlgebraElement(self.kind, self.flavor, _prune(out))

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        _same_algebra(self, other)
        out: dict = {}
        for u, a in self.support.items():
            for v, b in other.support.items():
                prod = basis_product(self.kind, self.flavor, u, v)
                if prod is None:
                    continue
                w, k = prod
                term = a * b
                for _ in range(k):
                    term = term.mul_beta()
                out[w] = out[w] + term if w in out else term
        return AlgebraElement(self.kind, self.flavor, _prune(out))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if (self.kind, self.flavor) != (other.kind, other.flavor):
            return False
        keys = set(self.support) | set(other.support)
        for w in keys:
            a, b = self.support.get(w), other.support.get(w)
            if a is None or b is None:
                if not (a if a is not None else b).is_zero():
                    return False
            elif not a == b:
                return False
        return True

    __hash__ = None

    def map_coefficients(self, f: Callable) -> AlgebraElement:
        return AlgebraElement(self.kind, self.flavor, _prune({w: f(c) for w, c in self.support.items()}),
                              self.trusted_above)


def _same_algebra(a: AlgebraElement, b: AlgebraElement):
    if (a.kind, a.flavor) != (b.kind, b.flavor):
        raise ValueError(f"cannot combine elements of {a.kind}/{a.flavor} and {b.kind}/{b.flavor}")


def _prune(support: dict) -> dict:
    return {w: c for w, c in support.items() if not c.is_zero()}


def basis_product(kind: GroupKind, flavor: str, u: SignedPermutation, v: SignedPermutation):
    """``π_u π_v`` (or ``u_u u_v``) as ``(w, β-power)``, or ``None`` when it vanishes."""
    w, k = u, 0
    for label in reduced_word(kind, v):
        if is_descent(w, label):
            if flavor == "nil":
                return None
            k += 1
        else:
            w = right_multiply(w, label)
    return w, k


def h_multiply(e: AlgebraElement, label: int, coeff) -> AlgebraElement:
    """``e · (1 + coeff·π_label)`` under the flavor's multiplication rule."""
    g = canonical_label(e.kind, label)
    out = dict(e.support)
    for w, c in e.support.items():
        term = c * coeff
        if not is_descent(w, g):
            key = right_multiply(w, g)
        elif e.flavor == "id":
            key = w
            term = term.mul_beta()
        else:
            continue
        out[key] = out[key] + term if key in out else term
    return AlgebraElement(e.kind, e.flavor, _prune(out), e.trusted_above)


def coefficient_of(e: AlgebraElement, w: SignedPermutation, zero=None):
    """Coefficient of ``π_w``; ``zero`` is returned when ``w`` is not in the support."""
    w = _check_member(e.kind, w)
    return e.support.get(w, zero)


# --- generating products -----------------------------------------------------

def _stage_labels(family: str, n: int) -> list[int]:
    down = list(range(n - 1, 0, -1))
    if family == "A":
        return down
    up = list(range(1, n))
    if family == "B":
        return down + [0] + up
    if family == "C":
        return down + [0, 0] + up
    # D(x) = h_{n-1}..h_1 h_{-1} h_{-2}..h_{-n+1}, with -i aliasing i for i >= 2
    return down + [-1] + list(range(2, n))


def product_factors(family: str, form: str, n: int, window_floor: int) -> list[Factor]:
    """The truncated generating product as an ordered list of ``(label, variables)``.

    ``definitional`` starts its stage product at ``x_{window_floor}`` and then
    appends ``A_1(x_1) ⋯ A_{n-1}(x_{n-1})``.  ``factored`` starts the j-indexed
    product at ``j = window_floor``.  For family A the generators of index
    ``<= 0`` are left out; they cannot reach a permutation of S_n.
    """
    if family not in PRODUCT_FAMILIES:
        raise ValueError(f"unknown product family {family!r}; expected one of {PRODUCT_FAMILIES}")
    if window_floor > 0:
        raise ValueError("window_floor must be <= 0")
    out: list[Factor] = []
    if form == "definitional":
        stage = _stage_labels(family, n)
        for i in range(window_floor, 1):
            if family == "C":
                # h_0(x)h_0(x) is a single factor h_0(x ⊕ x)
                k = stage.index(0)
                labels = stage[:k] + [None] + stage[k + 2:]
                out += [(0, (i, i)) if g is None else (g, (i,)) for g in labels]
            else:
                out += [(g, (i,)) for g in stage]
        for i in range(1, n):
            out += [(g, (i,)) for g in range(n - 1, i - 1, -1)]
        return out
    if form != "factored":
        raise ValueError(f"unknown product form {form!r}; expected definitional or factored")
    if family == "D":
        for k in range(window_floor, 1):
            for i in range(1, n):
                label = i if k % 2 == 0 else (-1 if i == 1 else i)
                out.append((label, (i + k, k)))
        return out
    for j in range(window_floor, 1):
        if family == "A":
            out += [(i, (i + j,)) for i in range(1, n)]
        elif family == "B":
            out.append((0, (j,)))
            out += [(i, (i + j, j)) for i in range(1, n)]
        else:
            out += [(i, (i + j, j)) for i in range(0, n)]
    return out


def realize_factors(factors: Iterable[Factor], flavor: str, variable: Callable[[int], object],
                    zero_at_or_below: int | None = None) -> list[tuple[int, object]]:
    """Turn ``(label, variables)`` into ``(label, coefficient)``.

    Variables with index ``<= zero_at_or_below`` are set to zero; this is a
    ring map, so it commutes with forming the product.
    """
    out = []
    for label, idxs in factors:
        if zero_at_or_below is not None:
            idxs = tuple(v for v in idxs if v > zero_at_or_below)
        if not idxs:
            continue
        coeff = variable(idxs[0])
        for v in idxs[1:]:
            y = variable(v)
            coeff = coeff + y if flavor == "nil" else coeff + y + (coeff * y).mul_beta()
        out.append((label, coeff))
    return out


def _kind_for(family: str, n: int) -> GroupKind:
    return GroupKind(_GROUP_OF[family], n)


def build_product(family: str, flavor: str, n: int, window_floor: int, form: str = "definitional",
                  xdeg_cap: int | None = None, beta_cap: int | None = None,
                  zero_at_or_below: int | None = None) -> AlgebraElement:
    """Evaluate a truncated generating product with polynomial coefficients.

    The nil flavor yields Schubert series, the id flavor Grothendieck series.
    Monomials with every variable index above ``n - 1 + window_floor`` agree
    with the untruncated product in both forms.
    """
    kind = _kind_for(family, n)
    if flavor == "nil":
        beta_cap = 0
    ring = PolyRing(window_floor, max(n - 1, window_floor), xdeg_cap, beta_cap)
    factors = realize_factors(product_factors(family, form, n, window_floor), flavor, ring.x, zero_at_or_below)
    e = AlgebraElement(kind, flavor, {identity(kind): ring.one()}, n - 1 + window_floor)
    for label, coeff in factors:
        e = h_multiply(e, label, coeff)
    return e


def specialized_product(family: str, flavor: str, n: int, window_floor: int, beta_cap: int,
                        storage_cutoff: int, form: str = "definitional") -> AlgebraElement:
    """The product with every ``x_i`` replaced by ``q^{i-1}``.

    Coefficients are truncated at ``storage_cutoff`` after each factor; each
    resulting series carries the cutoff down to which it is still exact.  The
    caller still has to account for the stages below ``window_floor``.
    """
    kind = _kind_for(family, n)
    bcap = 0 if flavor == "nil" else beta_cap

    def variable(i: int) -> LaurentSeries:
        return LaurentSeries.monomial(i - 1, beta_cap=bcap)

    factors = realize_factors(product_factors(family, form, n, window_floor), flavor, variable)
    e = AlgebraElement(kind, flavor, {identity(kind): LaurentSeries.monomial(0, beta_cap=bcap)})
    for label, coeff in factors:
        e = h_multiply(e, label, coeff.truncate(storage_cutoff))
        e = e.map_coefficients(lambda c: c.truncate(storage_cutoff))
    return e


# --- word-sum definitions ------------------------------------------------------

BRUTE_FAMILIES = {
    # family: (word alphabet, β allowed, positive sequences only)
    "A": (WordKind.A, False, True),
    "Abackstable": (WordKind.A, False, False),
    "Agroth": (WordKind.A, True, False),
    "Agrothendieck": (WordKind.A, True, False),
    "B": (WordKind.B, False, False),
    "C": (WordKind.C, False, False),
    "D": (WordKind.D, False, False),
    "Bgroth": (WordKind.B, True, False),
    "Cgroth": (WordKind.C, True, False),
    "Dgroth": (WordKind.D, True, False),
}


def _brute_setup(family: str, w: SignedPermutation, n: int | None, beta_cap: int):
    if family not in BRUTE_FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(BRUTE_FAMILIES)}")
    alphabet, groth, positive = BRUTE_FAMILIES[family]
    if not groth and beta_cap:
        raise ValueError(f"family {family} is a Schubert family; beta_cap must be 0")
    n = n if n is not None else max(len(w), 2 if alphabet.group_family == "D" else 1)
    kind = alphabet.group(n)
    w = _check_member(kind, w)
    return alphabet, kind, w, positive, n


def brute_polynomial(family: str, w: SignedPermutation, window_floor: int, beta_cap: int = 0,
                     n: int | None = None) -> SparsePoly:
    """Sum over (Hecke) words and compatible sequences with entries ``>= window_floor``.

    ``A`` is the ordinary Schubert polynomial (entries forced positive);
    ``Agroth`` with a positive floor gives the ordinary Grothendieck polynomial.
    """
    alphabet, kind, w, positive, n = _brute_setup(family, w, n, beta_cap)
    floor = max(window_floor, 1) if positive else window_floor
    ring = PolyRing(min(floor, 1), max(n - 1, 1), None, beta_cap)
    terms: dict = {}
    size = ring.size
    for extra in range(beta_cap + 1):
        for labels in hecke_label_words(kind, w, extra):
            for word in decorate(labels, alphabet):
                for seq in compatible_sequences(word, floor):
                    exps = [0] * size
                    for i in seq:
                        exps[i - ring.lo] += 1
                    key = (extra, tuple(exps))
                    terms[key] = terms.get(key, 0) + 1
    return SparsePoly(ring, terms)


def _sequence_series(keys: Sequence[int], caps: Sequence[int], floor: int) -> dict[int, int]:
    # Σ_i q^{Σ(i_j - 1)} over compatible sequences, as an exact Laurent polynomial
    p = len(keys)
    if p == 0:
        return {0: 1}
    # state[v] = polynomial for sequences ending at value v
    state = {v: {v - 1: 1} for v in range(floor, caps[0] + 1)}
    for j in range(1, p):
        strict = keys[j - 1] <= keys[j]
        new = {}
        running: dict[int, int] = {}
        prev_values = sorted(state)
        idx = 0
        for v in range(floor, caps[j] + 1):
            # admit predecessors u <= v (weak) or u < v (strict)
            while idx < len(prev_values) and (prev_values[idx] < v or (not strict and prev_values[idx] == v)):
                for e, c in state[prev_values[idx]].items():
                    running[e] = running.get(e, 0) + c
                idx += 1
            if running:
                new[v] = {e + v - 1: c for e, c in running.items() if c}
        state = new
    total: dict[int, int] = {}
    for poly in state.values():
        for e, c in poly.items():
            total[e] = total.get(e, 0) + c
    return {e: c for e, c in total.items() if c}


def brute_specialization(family: str, w: SignedPermutation, window_floor: int, beta_cap: int = 0,
                         n: int | None = None) -> LaurentSeries:
    """Principal specialization of :func:`brute_polynomial`, summed word by word.

    A dynamic program over the last sequence entry replaces the enumeration
    of sequences, which makes low floors affordable.  Exact for exponents
    ``>= window_floor + (P-1)(n-2)`` with ``P = ℓ(w) + beta_cap``.
    """
    alphabet, kind, w, positive, n = _brute_setup(family, w, n, beta_cap)
    floor = max(window_floor, 1) if positive else window_floor
    terms: dict = {}
    for extra in range(beta_cap + 1):
        for labels in hecke_label_words(kind, w, extra):
            for word in decorate(labels, alphabet):
                keys = [compat_key(x) for x in word]
                caps = [k // 2 if k > 0 else 0 for k in keys]
                for e, c in _sequence_series(keys, caps, floor).items():
                    terms[(e, extra)] = terms.get((e, extra), 0) + c
    degree = coxeter_length(kind, w) + beta_cap
    if positive or degree == 0:
        return LaurentSeries(terms, None, beta_cap)
    return LaurentSeries(terms, floor + (degree - 1) * max(n - 2, 0), beta_cap)



def all_coefficients(e: AlgebraElement, zero) -> dict[SignedPermutation, object]:
    """Coefficient of every group element (``zero`` where unsupported)."""
    return {w: e.support.get(w, zero) for w in elements(e.kind)}
