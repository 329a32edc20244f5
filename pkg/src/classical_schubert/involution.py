"""
Involution modules over the id-Coxeter algebra of S_n and their Grothendieck polynomials.

Basis elements ``m_z`` are indexed by involutions ``z`` of S_n (flavor
``invol``) or by conjugates ``w^{-1}·1^FPF·w`` (flavor ``fpf``).  Both are
stored as window images ``(z(1), ..., z(N))``; for ``fpf`` the window size N is
n rounded up to an even number, and outside it z agrees with 1^FPF.

>>> space = InvolutionSpace("invol", 4)
>>> z = SignedPermutation((1, 4, 3, 2))
>>> space.ell_hat(z)
2
>>> sorted(str(d) for d in space.pipe_dreams(z))
['[(2,1),(2,2),(3,1)]', '[(2,1),(2,2)]', '[(2,1),(3,1)]']
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .nilhecke import AlgebraElement, h_multiply
from .permgroup import GroupKind, SignedPermutation, coxeter_length, elements, reduced_word
from .polyring import PolyRing, SparsePoly
from .words import Letter, LetterWord, WordKind, compatible_sequences, hecke_label_words

__all__ = [
    "InvolutionSpace",
    "ModuleElement",
    "PipeDream",
    "check_commute_lemma",
    "check_prop_iS",
    "fpf_identity",
]

FLAVORS = ("invol", "fpf")


def fpf_identity(size: int) -> SignedPermutation:
    """1^FPF on the window [1, size] (size even): i -> i - (-1)^i."""
    return SignedPermutation._raw(i - (-1) ** i for i in range(1, size + 1))


def _swap_positions(z: Sequence[int], i: int) -> list[int]:
    images = list(z)
    images[i - 1], images[i] = images[i], images[i - 1]
    return images


def _conjugate(z: Sequence[int], i: int) -> SignedPermutation:
    # s_i z s_i: swap the positions i, i+1 and relabel the values i <-> i+1
    swap = {i: i + 1, i + 1: i}
    return SignedPermutation._raw(swap.get(v, v) for v in _swap_positions(z, i))


@dataclass(frozen=True)
class PipeDream:
    positions: frozenset[tuple[int, int]]
    flavor: str
    n: int

    def reading_order(self) -> list[tuple[int, int]]:
        return sorted(self.positions, key=lambda c: (c[0], -c[1]))

    def word(self) -> tuple[int, ...]:
        return tuple(i + j - 1 for i, j in self.reading_order())

    def __len__(self):
        return len(self.positions)

    def __str__(self):
        return "[" + ",".join(f"({i},{j})" for i, j in sorted(self.positions)) + "]"


ModuleElement = Mapping[SignedPermutation, SparsePoly]


class InvolutionSpace:
    """The basis ``{m_z}`` of one of the two modules, for a fixed rank n."""

    def __init__(self, flavor: str, n: int):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
        if n < 1:
            raise ValueError("rank must be at least 1")
        self.flavor = flavor
        self.n = n
        self.size = n if flavor == "invol" or n % 2 == 0 else n + 1
        self.group = GroupKind("A", n)

    def __repr__(self):
        return f"InvolutionSpace({self.flavor!r}, {self.n})"

    # -- basis ---------------------------------------------------------------

    @cached_property
    def start(self) -> SignedPermutation:
        if self.flavor == "invol":
            return SignedPermutation._raw(range(1, self.size + 1))
        return fpf_identity(self.size)

    def from_permutation(self, w: SignedPermutation) -> SignedPermutation:
        """``w^{-1}·1^FPF·w`` (fpf) for ``w`` in S_n."""
        w = w.extend(self.size) if len(w) < self.size else w
        start = self.start
        inv = w.inverse()
        return SignedPermutation._raw(inv(start(w(i))) for i in range(1, self.size + 1))

    @cached_property
    def basis(self) -> tuple[SignedPermutation, ...]:
        if self.flavor == "invol":
            found = {w for w in elements(self.group) if all(w[w[i] - 1] == i + 1 for i in range(self.n))}
        else:
            found = {self.from_permutation(w) for w in elements(self.group)}
        return tuple(sorted(found))

    def normalize(self, z: SignedPermutation) -> SignedPermutation:
        if len(z) < self.size:
            tail = fpf_identity(self.size)[len(z):] if self.flavor == "fpf" else range(len(z) + 1, self.size + 1)
            z = SignedPermutation._raw(tuple(z) + tuple(tail))
        if z not in set(self.basis):
            raise ValueError(f"{z} is not a basis element of the {self.flavor} module for n={self.n}")
        return z

    # -- action --------------------------------------------------------------

    def act(self, z: SignedPermutation, i: int):
        """``m_z·π_i`` as ``(z', β-increment)``, or ``None`` for zero."""
        if not 1 <= i < self.n:
            raise ValueError(f"letter {i} outside 1..{self.n - 1}")
        a, b = z[i - 1], z[i]
        if a < b:
            if self.flavor == "invol" and a == i and b == i + 1:
                # z commutes with s_i; z s_i
                return SignedPermutation._raw(_swap_positions(z, i)), 0
            return _conjugate(z, i), 0
        if self.flavor == "fpf" and a == i + 1 and b == i:
            return None
        return z, 1

    def apply_word(self, word: Iterable[int], z: SignedPermutation | None = None):
        """Act letter by letter from ``z`` (default: the start element)."""
        state = self.start if z is None else z
        power = 0
        for letter in word:
            step = self.act(state, getattr(letter, "value", letter))
            if step is None:
                return None
            state, inc = step
            power += inc
        return state, power

    # -- words ---------------------------------------------------------------

    @cached_property
    def _distances(self) -> dict[SignedPermutation, int]:
        dist = {self.start: 0}
        queue = deque([self.start])
        while queue:
            z = queue.popleft()
            for i in range(1, self.n):
                step = self.act(z, i)
                if step is not None and step[0] not in dist:
                    dist[step[0]] = dist[z] + 1
                    queue.append(step[0])
        return dist

    def ell_hat(self, z: SignedPermutation) -> int:
        z = self.normalize(z)
        try:
            return self._distances[z]
        except KeyError:
            raise ValueError(f"{z} is not reachable from the start element") from None

    def inv_hecke_label_words(self, z: SignedPermutation, max_extra: int) -> tuple[tuple[int, ...], ...]:
        z = self.normalize(z)
        limit = self.ell_hat(z) + max_extra
        dist = self._distances
        out = []

        def extend(state, prefix):
            if state == z:
                out.append(tuple(prefix))
            if len(prefix) == limit:
                return
            for i in range(1, self.n):
                step = self.act(state, i)
                # the module action never lowers ℓ̂, so prune hopeless branches
                if step is None or dist[step[0]] > limit:
                    continue
                prefix.append(i)
                extend(step[0], prefix)
                prefix.pop()

        extend(self.start, [])
        return tuple(sorted(out))

    def inv_hecke_words(self, z: SignedPermutation, max_extra: int) -> frozenset[LetterWord]:
        return frozenset(
            LetterWord(tuple(Letter(a) for a in word), WordKind.A)
            for word in self.inv_hecke_label_words(z, max_extra)
        )

    def hecke_atoms(self, z: SignedPermutation) -> frozenset[SignedPermutation]:
        """Permutations w with ``m_start·π_w ∈ β^k·m_z``, tested on one reduced word each."""
        z = self.normalize(z)
        out = set()
        for w in elements(self.group):
            result = self.apply_word(reduced_word(self.group, w))
            if result is not None and result[0] == z:
                out.add(w)
        return frozenset(out)

    def atoms_partition_defect(self, z: SignedPermutation, max_extra: int) -> list[str]:
        """Compare InvHecke(z) with the union of Hecke(w) over atoms, up to the length bound."""
        z = self.normalize(z)
        ell = self.ell_hat(z)
        limit = ell + max_extra
        words = set(self.inv_hecke_label_words(z, max_extra))
        seen: dict[tuple[int, ...], SignedPermutation] = {}
        problems = []
        for w in sorted(self.hecke_atoms(z)):
            lw = coxeter_length(self.group, w)
            for extra in range(0, limit - lw + 1):
                for word in hecke_label_words(self.group, w, extra):
                    if word in seen:
                        problems.append(f"word {word} lies in Hecke({seen[word]}) and Hecke({w})")
                    seen[word] = w
        if set(seen) != words:
            missing = sorted(words - set(seen))[:3]
            extra_words = sorted(set(seen) - words)[:3]
            problems.append(f"union mismatch: missing {missing}, unexpected {extra_words}")
        return problems

    # -- pipe dreams ---------------------------------------------------------

    @cached_property
    def cells(self) -> tuple[tuple[int, int], ...]:
        strict = self.flavor == "fpf"
        cells = [
            (i, j)
            for i in range(1, self.n)
            for j in range(1, i + 1)
            if (j < i or not strict) and i + j - 1 <= self.n - 1
        ]
        return tuple(sorted(cells, key=lambda c: (c[0], -c[1])))

    def pipe_dreams(self, z: SignedPermutation) -> frozenset[PipeDream]:
        """Subsets of the staircase whose reading word drives the start element to ``z``."""
        z = self.normalize(z)
        self._check_fpf_parity()
        cells = self.cells
        out = []

        def extend(k, state, chosen):
            if k == len(cells):
                if state == z:
                    out.append(PipeDream(frozenset(chosen), self.flavor, self.n))
                return
            extend(k + 1, state, chosen)
            i, j = cells[k]
            step = self.act(state, i + j - 1)
            if step is not None:
                chosen.append(cells[k])
                extend(k + 1, step[0], chosen)
                chosen.pop()

        extend(0, self.start, [])
        return frozenset(out)

    def _check_fpf_parity(self):
        if self.flavor == "fpf" and self.n % 2:
            raise ValueError("the fixed-point-free formulas need an even rank n")

    # -- polynomials ---------------------------------------------------------

    def ring(self, beta_cap: int | None = None) -> PolyRing:
        return PolyRing(1, max(self.n - 1, 1), None, beta_cap)

    def cell_variable(self, ring: PolyRing, i: int, j: int) -> SparsePoly:
        return ring.x(i) if i == j else ring.x(i).oplus(ring.x(j))

    def inv_grothendieck(self, z: SignedPermutation, method: str = "pipedream",
                         beta_cap: int | None = None) -> SparsePoly:
        """Involution Grothendieck polynomial of ``z``.

        ``pipedream`` is exact (pass ``beta_cap`` to truncate); ``wordsum`` sums
        over involution Hecke words of length at most ``ℓ̂(z) + beta_cap``.
        """
        z = self.normalize(z)
        self._check_fpf_parity()
        ell = self.ell_hat(z)
        ring = self.ring(beta_cap)
        if method == "pipedream":
            total = ring.zero()
            for dream in self.pipe_dreams(z):
                term = ring.one()
                for i, j in dream.positions:
                    term = term * self.cell_variable(ring, i, j)
                for _ in range(len(dream) - ell):
                    term = term.mul_beta()
                total = total + term
            return total
        if method != "wordsum":
            raise ValueError(f"unknown method {method!r}; expected pipedream or wordsum")
        if beta_cap is None:
            raise ValueError("the wordsum method needs a beta_cap")
        terms: dict = {}
        for word in self.inv_hecke_label_words(z, beta_cap):
            extra = len(word) - ell
            for seq in compatible_sequences(word, 1):
                exps = [0] * ring.size
                for i in seq:
                    exps[i - ring.lo] += 1
                key = (extra, tuple(exps))
                terms[key] = terms.get(key, 0) + 1
        return SparsePoly(ring, terms)

    # -- module-valued products ----------------------------------------------

    def h_act(self, m: ModuleElement, i: int, coeff: SparsePoly) -> dict:
        """``m · (1 + coeff·π_i)``."""
        out = dict(m)
        for z, c in m.items():
            step = self.act(z, i)
            if step is None:
                continue
            target, inc = step
            term = c * coeff
            if inc:
                term = term.mul_beta()
            out[target] = out[target] + term if target in out else term
        return {z: c for z, c in out.items() if not c.is_zero()}

    def start_times_grothendieck(self, ring: PolyRing) -> dict:
        """``m_start · A_1(x_1) A_2(x_2) ⋯ A_{n-1}(x_{n-1})``."""
        m = {self.start: ring.one()}
        for i in range(1, self.n):
            for g in range(self.n - 1, i - 1, -1):
                m = self.h_act(m, g, ring.x(i))
        return m

    def staircase_product(self, ring: PolyRing) -> dict:
        """``m_start`` times the double product over staircase cells in reading order."""
        self._check_fpf_parity()
        m = {self.start: ring.one()}
        for i, j in self.cells:
            m = self.h_act(m, i + j - 1, self.cell_variable(ring, i, j))
        return m


def _module_diff(a: Mapping, b: Mapping) -> list[str]:
    out = []
    for z in sorted(set(a) | set(b)):
        pa, pb = a.get(z), b.get(z)
        if pa is None or pb is None or not pa == pb:
            out.append(f"m_{z}: {pa if pa is not None else 0} != {pb if pb is not None else 0}")
    return out


def check_prop_iS(n: int, flavor: str) -> list[str]:
    """Differences between ``m_start·G`` and the staircase product (empty list on success)."""
    space = InvolutionSpace(flavor, n)
    ring = space.ring()
    return _module_diff(space.start_times_grothendieck(ring), space.staircase_product(ring))


def check_commute_lemma(n: int, i: int) -> list[str]:
    """Compare both sides of the commutation identity in the id-Coxeter algebra of S_n.

    Left: ``Ã_i(y) A_i(x_i) ⋯ A_{n-1}(x_{n-1})``; right:
    ``Π_{j=i+1}^{n-1} A_j(x_{j-1}) · Π_{j=i}^{n-1} h_j(x_j ⊕ y)``.  The fresh
    variable y is represented by x_0.
    """
    if not 1 <= i < n:
        raise ValueError(f"index {i} outside 1..{n - 1}")
    kind = GroupKind("A", n)
    ring = PolyRing(0, max(n - 1, 1))
    y = ring.x(0)
    left = AlgebraElement.one(kind, "id", ring.one())
    for g in range(i, n):
        left = h_multiply(left, g, y)
    for k in range(i, n):
        for g in range(n - 1, k - 1, -1):
            left = h_multiply(left, g, ring.x(k))
    right = AlgebraElement.one(kind, "id", ring.one())
    for j in range(i + 1, n):
        for g in range(n - 1, j - 1, -1):
            right = h_multiply(right, g, ring.x(j - 1))
    for j in range(i, n):
        right = h_multiply(right, j, ring.x(j).oplus(y))
    return _module_diff(left.support, right.support)


def random_word(rng, n: int, length: int) -> list[int]:
    return [rng.randrange(1, n) for _ in range(length)]


def braid_moves(word: Sequence[int]) -> Iterable[list[int]]:
    """All words one commutation or braid move away from ``word``."""
    w = list(word)
    for k in range(len(w) - 1):
        if abs(w[k] - w[k + 1]) > 1:
            yield w[:k] + [w[k + 1], w[k]] + w[k + 2:]
    for k in range(len(w) - 2):
        a, b, c = w[k:k + 3]
        if a == c and abs(a - b) == 1:
            yield w[:k] + [b, a, b] + w[k + 3:]


def all_words(n: int, length: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(1, n), repeat=length)
