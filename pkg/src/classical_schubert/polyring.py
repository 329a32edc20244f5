"""
Exact polynomials in x_i (i in a window) and β, and truncated Laurent series in q.

:class:`SparsePoly` values live in a :class:`PolyRing`, which fixes the
variable window ``[lo, hi]`` and optional truncation caps on total x-degree
and on β-degree.  Truncation is part of the ring: products never resurrect
terms beyond a cap, so two polynomials with different caps are never equal.

:class:`LaurentSeries` stores coefficients in Z[β] for q-exponents down to a
``cutoff``.  Below the cutoff nothing is claimed.  Every arithmetic operation
recomputes the cutoff so that a stored coefficient is always exact: for a
product the unknown tail of one factor can reach up to ``cutoff + top`` of
the other.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentSeries",
    "PolyRing",
    "SoundnessError",
    "SparsePoly",
    "expand_fraction",
    "expand_rational",
    "finite_specialize_q",
    "principal_specialize",
    "soundness_bound",
]


class SoundnessError(ValueError):
    """A requested cutoff lies below the range where a truncated computation is exact."""

    def __init__(self, requested: int, bound: int):
        super().__init__(f"cutoff {requested} is below the soundness bound {bound}")
        self.requested = requested
        self.bound = bound


@dataclass(frozen=True)
class PolyRing:
    lo: int
    hi: int
    xdeg_cap: int | None = None
    beta_cap: int | None = None

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty variable window [{self.lo}, {self.hi}]")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def zero(self) -> SparsePoly:
        return SparsePoly(self, {})

    def const(self, c: int) -> SparsePoly:
        return SparsePoly(self, {(0, (0,) * self.size): c} if c else {})

    def one(self) -> SparsePoly:
        return self.const(1)

    def x(self, i: int) -> SparsePoly:
        if not self.lo <= i <= self.hi:
            raise ValueError(f"variable x_{i} lies outside the window [{self.lo}, {self.hi}]")
        exps = [0] * self.size
        exps[i - self.lo] = 1
        return SparsePoly(self, {(0, tuple(exps)): 1})

    def beta(self) -> SparsePoly:
        return SparsePoly(self, {(1, (0,) * self.size): 1})

    def monomial(self, exponents: Mapping[int, int], coeff: int = 1, beta: int = 0) -> SparsePoly:
        exps = [0] * self.size
        for i, e in exponents.items():
            i = int(i)
            if not self.lo <= i <= self.hi:
                raise ValueError(f"variable x_{i} lies outside the window [{self.lo}, {self.hi}]")
            exps[i - self.lo] = int(e)
        return SparsePoly(self, {(beta, tuple(exps)): coeff})

    def hull(self, other: PolyRing) -> PolyRing:
        return PolyRing(
            min(self.lo, other.lo),
            max(self.hi, other.hi),
            _min_cap(self.xdeg_cap, other.xdeg_cap),
            _min_cap(self.beta_cap, other.beta_cap),
        )


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _beta_str(b: int) -> str:
    return "" if b == 0 else ("beta" if b == 1 else f"beta^{b}")


class SparsePoly:
    """Polynomial with integer coefficients; terms keyed by ``(β-exponent, exponent vector)``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, tuple[int, ...]], int]):
        self.ring = ring
        xcap, bcap = ring.xdeg_cap, ring.beta_cap
        self.terms = {
            key: c
            for key, c in terms.items()
            if c and (bcap is None or key[0] <= bcap) and (xcap is None or sum(key[1]) <= xcap)
        }

    # -- construction helpers ------------------------------------------------

    def _new(self, terms) -> SparsePoly:
        return SparsePoly(self.ring, terms)

    def reembed(self, ring: PolyRing) -> SparsePoly:
        if ring == self.ring:
            return self
        out = {}
        for (b, exps), c in self.terms.items():
            new = [0] * ring.size
            for offset, e in enumerate(exps):
                if e:
                    i = self.ring.lo + offset
                    if not ring.lo <= i <= ring.hi:
                        raise ValueError(f"variable x_{i} lies outside the window [{ring.lo}, {ring.hi}]")
                    new[i - ring.lo] = e
            out[(b, tuple(new))] = c
        return SparsePoly(ring, out)

    def _coerce(self, other) -> tuple[SparsePoly, SparsePoly]:
        if isinstance(other, int):
            return self, self.ring.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented, NotImplemented
        if other.ring == self.ring:
            return self, other
        ring = self.ring.hull(other.ring)
        return self.reembed(ring), other.reembed(ring)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a.terms)
        for key, c in b.terms.items():
            out[key] = out.get(key, 0) + c
        return SparsePoly(a.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new({k: c * other for k, c in self.terms.items()})
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        ring = a.ring
        xcap, bcap = ring.xdeg_cap, ring.beta_cap
        right = [(bb, eb, sum(eb), cb) for (bb, eb), cb in b.terms.items()]
        out: dict = {}
        add = operator.add
        for (ba, ea), ca in a.terms.items():
            da = sum(ea)
            for bb, eb, db, cb in right:
                beta = ba + bb
                if bcap is not None and beta > bcap:
                    continue
                if xcap is not None and da + db > xcap:
                    continue
                key = (beta, tuple(map(add, ea, eb)))
                out[key] = out.get(key, 0) + ca * cb
        return SparsePoly(ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def oplus(self, other) -> SparsePoly:
        """``x ⊕ y = x + y + βxy``."""
        a, b = self._coerce(other)
        return a + b + a.ring.beta() * a * b

    def mul_beta(self) -> SparsePoly:
        return self._new({(b + 1, e): c for (b, e), c in self.terms.items()})

    # -- comparison ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        if (self.ring.xdeg_cap, self.ring.beta_cap) != (other.ring.xdeg_cap, other.ring.beta_cap):
            return False
        a, b = self._coerce(other)
        return a.terms == b.terms

    __hash__ = None

    # -- inspection ----------------------------------------------------------

    def _sparse(self, exps: tuple[int, ...]) -> dict[int, int]:
        lo = self.ring.lo
        return {lo + k: e for k, e in enumerate(exps) if e}

    def iter_terms(self) -> Iterator[tuple[int, int, dict[int, int]]]:
        """``(coeff, beta, {index: exponent})`` in canonical order."""
        rows = [(b, tuple(sorted(self._sparse(e).items())), c) for (b, e), c in self.terms.items()]
        rows.sort()
        for b, pairs, c in rows:
            yield c, b, dict(pairs)

    def coefficient(self, exponents: Mapping[int, int], beta: int = 0) -> int:
        exps = [0] * self.ring.size
        for i, e in exponents.items():
            if not self.ring.lo <= i <= self.ring.hi:
                return 0
            exps[i - self.ring.lo] = e
        return self.terms.get((beta, tuple(exps)), 0)

    def degree(self) -> int:
        return max((sum(e) for _, e in self.terms), default=0)

    def beta_degree(self) -> int:
        return max((b for b, _ in self.terms), default=0)

    def beta_part(self, k: int) -> SparsePoly:
        """The coefficient of β^k, as a β-free polynomial."""
        return self._new({(0, e): c for (b, e), c in self.terms.items() if b == k})

    def truncate_beta(self, cap: int) -> SparsePoly:
        return self._new({(b, e): c for (b, e), c in self.terms.items() if b <= cap})

    def variables(self) -> set[int]:
        lo = self.ring.lo
        return {lo + k for _, e in self.terms for k, x in enumerate(e) if x}

    def keep_min_index_above(self, m: int) -> SparsePoly:
        """Terms whose variables all have index ``> m`` (constants included)."""
        cut = m - self.ring.lo + 1
        if cut <= 0:
            return self
        return self._new({(b, e): c for (b, e), c in self.terms.items() if not any(e[:cut])})

    def set_zero(self, indices: Iterable[int]) -> SparsePoly:
        offsets = [i - self.ring.lo for i in indices if self.ring.lo <= i <= self.ring.hi]
        return self._new({(b, e): c for (b, e), c in self.terms.items() if not any(e[k] for k in offsets)})

    def swap_variables(self, i: int, j: int) -> SparsePoly:
        a, b = i - self.ring.lo, j - self.ring.lo
        out = {}
        for (beta, e), c in self.terms.items():
            e = list(e)
            e[a], e[b] = e[b], e[a]
            out[(beta, tuple(e))] = c
        return self._new(out)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "window": [self.ring.lo, self.ring.hi],
            "xdeg_cap": self.ring.xdeg_cap,
            "beta_cap": self.ring.beta_cap,
            "terms": [
                {"coeff": str(c), "beta": b, "x": {str(i): e for i, e in x.items()}}
                for c, b, x in self.iter_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> SparsePoly:
        lo, hi = data["window"]
        ring = PolyRing(lo, hi, data.get("xdeg_cap"), data.get("beta_cap"))
        out = ring.zero()
        for term in data["terms"]:
            out = out + ring.monomial({int(i): e for i, e in term["x"].items()}, int(term["coeff"]), term["beta"])
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, b, x in self.iter_terms():
            factors = [_beta_str(b)] if b else []
            factors += [f"x[{i}]" if e == 1 else f"x[{i}]^{e}" for i, e in x.items()]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = f"{abs(c)}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"SparsePoly({self})"


# ---------------------------------------------------------------------------


class LaurentSeries:
    """Series in q with coefficients in Z[β]; exact for exponents ``>= cutoff``.

    ``cutoff=None`` marks an exact (finitely supported) value.  Terms are keyed
    by ``(q_exponent, beta_exponent)``.
    """

    __slots__ = ("terms", "cutoff", "beta_cap")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None, cutoff: int | None = None,
                 beta_cap: int | None = None):
        terms = terms or {}
        self.cutoff = cutoff
        self.beta_cap = beta_cap
        self.terms = {
            (e, b): c
            for (e, b), c in terms.items()
            if c and (cutoff is None or e >= cutoff) and (beta_cap is None or b <= beta_cap)
        }

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, beta: int = 0, beta_cap: int | None = None) -> LaurentSeries:
        return cls({(exponent, beta): coeff}, None, beta_cap)

    @classmethod
    def from_poly(cls, poly: Mapping[int, int], beta_cap: int | None = None) -> LaurentSeries:
        return cls({(e, 0): c for e, c in poly.items()}, None, beta_cap)

    @property
    def exact(self) -> bool:
        return self.cutoff is None

    @property
    def top(self) -> int | None:
        return max((e for e, _ in self.terms), default=None)

    def _effective_top(self) -> int | None:
        # highest exponent that may carry a nonzero coefficient, known or not
        top = self.top
        if self.cutoff is None:
            return top
        return self.cutoff - 1 if top is None else max(top, self.cutoff - 1)

    def coefficient(self, exponent: int, beta: int = 0) -> int:
        if self.cutoff is not None and exponent < self.cutoff:
            raise ValueError(f"coefficient of q^{exponent} is below the cutoff {self.cutoff}")
        return self.terms.get((exponent, beta), 0)

    def coeffs(self) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = {}
        for (e, b), c in self.terms.items():
            out.setdefault(e, {})[b] = c
        return out

    def is_zero(self) -> bool:
        return not self.terms and self.cutoff is None

    # -- arithmetic ----------------------------------------------------------

    def _beta_cap_with(self, other: LaurentSeries):
        return _min_cap(self.beta_cap, other.beta_cap)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentSeries.monomial(0, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        cutoff = _max_cutoff(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return LaurentSeries(out, cutoff, self._beta_cap_with(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({k: -c for k, c in self.terms.items()}, self.cutoff, self.beta_cap)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentSeries({k: c * other for k, c in self.terms.items()}, self.cutoff, self.beta_cap)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        bcap = self._beta_cap_with(other)
        # an exact zero annihilates everything, including unknown tails
        if (self.exact and not self.terms) or (other.exact and not other.terms):
            return LaurentSeries({}, None, bcap)
        cutoff = None
        if self.cutoff is not None:
            cutoff = self.cutoff + other._effective_top()
        if other.cutoff is not None:
            cutoff = _max_cutoff(cutoff, other.cutoff + self._effective_top())
        out: dict = {}
        right = list(other.terms.items())
        for (ea, ba), ca in self.terms.items():
            for (eb, bb), cb in right:
                b = ba + bb
                if bcap is not None and b > bcap:
                    continue
                e = ea + eb
                if cutoff is not None and e < cutoff:
                    continue
                out[(e, b)] = out.get((e, b), 0) + ca * cb
        return LaurentSeries(out, cutoff, bcap)

    __rmul__ = __mul__

    def mul_beta(self) -> LaurentSeries:
        return LaurentSeries({(e, b + 1): c for (e, b), c in self.terms.items()}, self.cutoff, self.beta_cap)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by q^k."""
        cutoff = None if self.cutoff is None else self.cutoff + k
        return LaurentSeries({(e + k, b): c for (e, b), c in self.terms.items()}, cutoff, self.beta_cap)

    def truncate(self, cutoff: int) -> LaurentSeries:
        """Forget exponents below ``cutoff`` (keeps the value exact if nothing was dropped)."""
        dropped = any(e < cutoff for e, _ in self.terms)
        if self.cutoff is None and not dropped:
            return self
        return LaurentSeries(self.terms, _max_cutoff(self.cutoff, cutoff), self.beta_cap)

    def beta_part(self, k: int) -> LaurentSeries:
        return LaurentSeries({(e, 0): c for (e, b), c in self.terms.items() if b == k}, self.cutoff)

    # -- comparison ----------------------------------------------------------

    def diff(self, other: LaurentSeries, cutoff: int, beta_cap: int | None = None) -> list[tuple[int, int, int, int]]:
        """Differing ``(exponent, β-degree, self, other)`` at exponents ``>= cutoff``, top down."""
        for s in (self, other):
            if s.cutoff is not None and cutoff < s.cutoff:
                raise SoundnessError(cutoff, s.cutoff)
        keys = {k for k in self.terms if k[0] >= cutoff} | {k for k in other.terms if k[0] >= cutoff}
        if beta_cap is not None:
            keys = {k for k in keys if k[1] <= beta_cap}
        rows = []
        for e, b in sorted(keys, key=lambda k: (-k[0], k[1])):
            a, c = self.terms.get((e, b), 0), other.terms.get((e, b), 0)
            if a != c:
                rows.append((e, b, a, c))
        return rows

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.terms, self.cutoff, self.beta_cap) == (other.terms, other.cutoff, other.beta_cap)

    __hash__ = None

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        coeffs = self.coeffs()
        return {
            "top": self.top,
            "cutoff": self.cutoff,
            "coeffs": {
                str(e): [{"coeff": str(c), "beta": b} for b, c in sorted(coeffs[e].items())]
                for e in sorted(coeffs, reverse=True)
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LaurentSeries:
        terms = {}
        for e, row in data["coeffs"].items():
            for term in row:
                terms[(int(e), int(term["beta"]))] = int(term["coeff"])
        return cls(terms, data.get("cutoff"))

    def format_lines(self, down_to: int | None = None) -> list[str]:
        """One ``q^e: coefficient`` line per exponent from the top down."""
        top = self.top
        if top is None:
            return ["0"] if self.cutoff is None else [f"0 (exact down to q^{self.cutoff})"]
        low = down_to if down_to is not None else (self.cutoff if self.cutoff is not None else min(e for e, _ in self.terms))
        coeffs = self.coeffs()
        lines = []
        for e in range(top, low - 1, -1):
            row = coeffs.get(e, {})
            lines.append(f"q^{e}: {_zbeta_str(row)}")
        return lines

    def __repr__(self):
        body = ", ".join(f"q^{e}{'*' + _beta_str(b) if b else ''}:{c}" for (e, b), c in sorted(self.terms.items(), reverse=True))
        return f"LaurentSeries({{{body}}}, cutoff={self.cutoff})"


def _zbeta_str(row: Mapping[int, int]) -> str:
    if not row:
        return "0"
    parts = []
    for b, c in sorted(row.items()):
        if b == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*{_beta_str(b)}")
    return " + ".join(parts).replace("+ -", "- ")


def _max_cutoff(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


# ---------------------------------------------------------------------------


def expand_fraction(numerator: Mapping, minus_factors: Iterable[int], cutoff: int,
                    beta_cap: int | None = None) -> LaurentSeries:
    """Expand ``numerator / Π (q^p - 1)`` in powers of q^{-1}, exactly down to ``cutoff``.

    ``numerator`` maps q-exponents (or ``(q, β)`` pairs) to integers.  Each
    ``1/(q^p - 1) = q^{-p} + q^{-2p} + ...`` is applied with the recurrence
    ``S(e) = f(e + p) + S(e + p)``.
    """
    terms: dict[int, dict[int, int]] = {}
    for key, c in numerator.items():
        e, b = key if isinstance(key, tuple) else (key, 0)
        if c:
            terms.setdefault(b, {})
            terms[b][e] = terms[b].get(e, 0) + c
    minus_factors = list(minus_factors)
    if not minus_factors:
        flat = {(e, b): c for b, row in terms.items() for e, c in row.items()}
        return LaurentSeries(flat, None, beta_cap).truncate(cutoff)
    out = {}
    for b, row in terms.items():
        current = row
        for p in minus_factors:
            if p <= 0:
                raise ValueError("denominator factors q^p - 1 need p >= 1")
            if not current:
                break
            top = max(current) - p
            series: dict[int, int] = {}
            for e in range(top, cutoff - 1, -1):
                s = current.get(e + p, 0) + series.get(e + p, 0)
                if s:
                    series[e] = s
            current = series
        for e, c in current.items():
            out[(e, b)] = c
    return LaurentSeries(out, cutoff, beta_cap)


def expand_rational(c: int, plus_factors: Iterable[int], minus_factors: Iterable[int], cutoff: int) -> LaurentSeries:
    """``q^c · Π (q^a + 1) / Π (q^p - 1)`` as a Laurent series in q^{-1}, exact down to ``cutoff``."""
    numerator = {c: 1}
    for a in plus_factors:
        nxt: dict[int, int] = {}
        for e, k in numerator.items():
            nxt[e + a] = nxt.get(e + a, 0) + k
            nxt[e] = nxt.get(e, 0) + k
        numerator = nxt
    return expand_fraction(numerator, minus_factors, cutoff)


def soundness_bound(p: SparsePoly, degree_bound: int | None = None) -> int:
    """Lowest q-exponent at which the specialization of a window-truncated ``p`` is exact.

    A monomial dropped by the window contains some x_i with i < lo and at most
    ``P - 1`` further variables, each contributing at most q^{hi-1}.
    """
    lo, hi = p.ring.lo, p.ring.hi
    if degree_bound is None:
        degree_bound = p.ring.xdeg_cap if p.ring.xdeg_cap is not None else p.degree()
    if degree_bound <= 0:
        return lo
    return lo + (degree_bound - 1) * max(hi - 1, 0)


def principal_specialize(p: SparsePoly, cutoff: int | None = None, *, exact: bool = False,
                         degree_bound: int | None = None) -> LaurentSeries:
    """Substitute ``x_i -> q^{i-1}``; β passes through into the coefficients.

    Unless ``exact`` is set, ``p`` is treated as the window truncation of a
    series in variables below the window, and the returned cutoff is raised
    to :func:`soundness_bound`.
    """
    lo = p.ring.lo
    terms: dict[tuple[int, int], int] = {}
    for (b, exps), c in p.terms.items():
        e = sum((lo + k - 1) * x for k, x in enumerate(exps) if x)
        terms[(e, b)] = terms.get((e, b), 0) + c
    series_cutoff = cutoff
    if not exact:
        series_cutoff = _max_cutoff(cutoff, soundness_bound(p, degree_bound))
    return LaurentSeries(terms, series_cutoff, p.ring.beta_cap)


def finite_specialize_q(p: SparsePoly) -> dict[int, int]:
    """``x_i -> q^{i-1}`` for a β-free polynomial in positive-index variables."""
    if any(i <= 0 for i in p.variables()):
        raise ValueError("finite specialization needs positive-index variables only")
    if p.beta_degree() > 0:
        raise ValueError("finite specialization expects a β-free polynomial")
    series = principal_specialize(p, exact=True)
    return {e: c for (e, _), c in series.terms.items()}
