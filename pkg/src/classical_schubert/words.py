"""
Words over the typed alphabets used by Schubert calculus in classical types.

Enumeration happens at the level of *label words* (sequences of canonical
generator labels, see :mod:`permgroup`).  A label word is then decorated into
letters of a particular alphabet:

==========  ============================================  ==================
alphabet    letters                                       decoration of a label
==========  ============================================  ==================
A           1..n-1                                        none
C≥0         0..n-1                                        none
B±          -(n-1)..n-1                                   k -> ±k, 0 -> 0
C±          -(n-1)..-1, -0, 0, 1..n-1                     k -> ±k, 0 -> 0 or -0
D±          ±1..±(n-1)                                    k>=2 -> ±k; ±1 fixed
Dprimed     D± letters, each optionally primed            D± choice x prime
==========  ============================================  ==================

Every decoration of a valid label word is valid, since the aliases
(t_{-i} = t_i, π_{-0} = π_0, primes erased) never change the product.

Three different total orders are in play and are kept separate:

* the *compatibility* order (integers, with -0 between -1 and 0), used for
  bounded compatible sequences and for ``comaj``;
* the *BC* order ``-0 < 0 < -1 < 1 < -2 < 2 < ...`` used by ``comaj_BC``;
* the *D* order ``-1' < -1 < -2' < -2 < ... < 1' < 1 < 2' < ...`` used by
  ``comaj_D`` (on unprimed words it restricts to ``-1 < -2 < ... < 1 < 2``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .permgroup import (
    GroupKind,
    SignedPermutation,
    _check_member,
    canonical_label,
    coxeter_length,
    demazure_product,
    generator_labels,
    is_descent,
    right_multiply,
)

__all__ = [
    "Letter",
    "LetterWord",
    "Marker",
    "WordKind",
    "bc_order_key",
    "compat_key",
    "compatible_sequences",
    "d_order_key",
    "decorate",
    "hecke_label_words",
    "hecke_words",
    "letter_options",
    "parse_word",
    "reduced_label_words",
    "reduced_words",
    "statistic",
    "weighted_decoration_sum",
]


class Marker(enum.Enum):
    PLAIN = "plain"
    MINUS_ZERO = "minus-zero"
    PRIMED = "primed"


@dataclass(frozen=True)
class Letter:
    value: int
    marker: Marker = Marker.PLAIN

    def __post_init__(self):
        if self.marker is Marker.MINUS_ZERO and self.value != 0:
            raise ValueError("the minus-zero marker only applies to the value 0")
        if self.marker is Marker.PRIMED and self.value == 0:
            raise ValueError("0 cannot be primed")

    @classmethod
    def parse(cls, text: str) -> Letter:
        text = text.strip()
        if text == "-0":
            return cls(0, Marker.MINUS_ZERO)
        if text.endswith("'"):
            return cls(int(text[:-1]), Marker.PRIMED)
        return cls(int(text))

    @property
    def is_primed(self) -> bool:
        return self.marker is Marker.PRIMED

    @property
    def is_minus_zero(self) -> bool:
        return self.marker is Marker.MINUS_ZERO

    def is_negative(self) -> bool:
        return self.value < 0 or self.is_minus_zero

    def unprimed(self) -> Letter:
        return Letter(self.value) if self.is_primed else self

    def __str__(self):
        if self.is_minus_zero:
            return "-0"
        return f"{self.value}'" if self.is_primed else str(self.value)


class WordKind(enum.Enum):
    A = "A"
    B = "B±"
    C = "C±"
    CPOS = "C≥0"
    D = "D±"
    DPRIMED = "Dprimed"

    @property
    def group_family(self) -> str:
        if self is WordKind.A:
            return "A"
        if self in (WordKind.D, WordKind.DPRIMED):
            return "D"
        return "BC"

    def group(self, n: int) -> GroupKind:
        return GroupKind(self.group_family, n)

    @classmethod
    def from_name(cls, name: str) -> WordKind:
        aliases = {
            "A": cls.A,
            "B": cls.B, "B±": cls.B, "Bpm": cls.B,
            "C": cls.C, "C±": cls.C, "Cpm": cls.C,
            "Cpos": cls.CPOS, "C≥0": cls.CPOS, "C>=0": cls.CPOS,
            "D": cls.D, "D±": cls.D, "Dpm": cls.D,
            "Dprimed": cls.DPRIMED,
        }
        try:
            return aliases[name]
        except KeyError:
            raise ValueError(f"unknown word kind {name!r}; expected one of {sorted(aliases)}") from None


def _letter_allowed(kind: WordKind, letter: Letter) -> bool:
    if letter.is_primed and kind is not WordKind.DPRIMED:
        return False
    if letter.is_minus_zero and kind is not WordKind.C:
        return False
    if kind is WordKind.A:
        return letter.value >= 1
    if kind is WordKind.CPOS:
        return letter.value >= 0 and not letter.is_minus_zero
    if kind in (WordKind.D, WordKind.DPRIMED):
        return letter.value != 0
    return True


@dataclass(frozen=True)
class LetterWord:
    letters: tuple[Letter, ...]
    alphabet: WordKind

    def __post_init__(self):
        for letter in self.letters:
            if not _letter_allowed(self.alphabet, letter):
                raise ValueError(f"letter {letter} is not in the {self.alphabet.value} alphabet")

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(letter.value for letter in self.letters)

    def __str__(self):
        return ",".join(str(letter) for letter in self.letters)


def parse_word(text: str, alphabet: WordKind | str) -> LetterWord:
    if isinstance(alphabet, str):
        alphabet = WordKind.from_name(alphabet)
    text = text.strip()
    letters = tuple(Letter.parse(part) for part in text.split(",")) if text else ()
    return LetterWord(letters, alphabet)


def _as_letters(word) -> tuple[Letter, ...]:
    if isinstance(word, LetterWord):
        return word.letters
    return tuple(x if isinstance(x, Letter) else Letter(int(x)) for x in word)


# --- orders ---------------------------------------------------------------

def compat_key(letter: Letter) -> int:
    """Twice the position of the letter in the integer order; -0 sits at -1.

    Primes are ignored here: compatible sequences only ever see unprimed words.
    """
    return -1 if letter.is_minus_zero else 2 * letter.value


def bc_order_key(letter: Letter) -> tuple[int, int]:
    return abs(letter.value), 0 if letter.is_negative() else 1


def d_order_key(letter: Letter) -> tuple[int, int, int]:
    return 1 if letter.value > 0 else 0, abs(letter.value), 0 if letter.is_primed else 1


# --- label words ----------------------------------------------------------

@lru_cache(maxsize=None)
def _hecke_exact(kind: GroupKind, w: SignedPermutation, extra: int) -> tuple[tuple[int, ...], ...]:
    # words whose Demazure product is w with exactly `extra` non-increasing steps;
    # the last letter g must be a right descent of w and the prefix has product w·g
    # (length step) or w (absorbed step)
    if extra < 0:
        return ()
    if not any(is_descent(w, g) for g in generator_labels(kind)):
        return ((),) if extra == 0 else ()
    out = []
    for g in generator_labels(kind):
        if not is_descent(w, g):
            continue
        for prefix in _hecke_exact(kind, right_multiply(w, g), extra):
            out.append(prefix + (g,))
        for prefix in _hecke_exact(kind, w, extra - 1):
            out.append(prefix + (g,))
    out.sort()
    return tuple(out)


def reduced_label_words(kind: GroupKind, w: SignedPermutation) -> tuple[tuple[int, ...], ...]:
    """All reduced words of ``w`` as canonical generator labels (sorted)."""
    return _hecke_exact(kind, _check_member(kind, w), 0)


def hecke_label_words(kind: GroupKind, w: SignedPermutation, extra: int) -> tuple[tuple[int, ...], ...]:
    """Label words of length ``ℓ(w) + extra`` with Demazure product ``w``."""
    return _hecke_exact(kind, _check_member(kind, w), extra)


# --- decorations ----------------------------------------------------------

_MINUS_ZERO = Letter(0, Marker.MINUS_ZERO)


def letter_options(alphabet: WordKind, label: int) -> tuple[Letter, ...]:
    """The letters of ``alphabet`` that name the generator with canonical ``label``."""
    if alphabet in (WordKind.A, WordKind.CPOS):
        return (Letter(label),)
    if alphabet is WordKind.B:
        return (Letter(0),) if label == 0 else (Letter(label), Letter(-label))
    if alphabet is WordKind.C:
        return (Letter(0), _MINUS_ZERO) if label == 0 else (Letter(label), Letter(-label))
    base = (Letter(label),) if abs(label) == 1 else (Letter(label), Letter(-label))
    if alphabet is WordKind.D:
        return base
    return tuple(x for b in base for x in (b, Letter(b.value, Marker.PRIMED)))


def decorate(label_word: Sequence[int], alphabet: WordKind) -> Iterable[LetterWord]:
    for letters in itertools.product(*(letter_options(alphabet, g) for g in label_word)):
        yield LetterWord(letters, alphabet)


def _label_kind_check(alphabet: WordKind, n: int, w: SignedPermutation) -> GroupKind:
    kind = alphabet.group(n)
    _check_member(kind, w)
    return kind


def reduced_words(alphabet: WordKind | str, n: int, w: SignedPermutation) -> frozenset[LetterWord]:
    if isinstance(alphabet, str):
        alphabet = WordKind.from_name(alphabet)
    kind = _label_kind_check(alphabet, n, w)
    labels = reduced_label_words(kind, w)
    if alphabet is WordKind.CPOS:
        # C≥0 words are the C± words without negative letters: exactly the label words
        return frozenset(LetterWord(tuple(Letter(g) for g in a), alphabet) for a in labels)
    return frozenset(x for a in labels for x in decorate(a, alphabet))


def hecke_words(alphabet: WordKind | str, n: int, w: SignedPermutation, max_extra: int) -> frozenset[LetterWord]:
    """Decorated words of length at most ``ℓ(w) + max_extra`` with Demazure product ``w``."""
    if isinstance(alphabet, str):
        alphabet = WordKind.from_name(alphabet)
    kind = _label_kind_check(alphabet, n, w)
    out = set()
    for extra in range(max_extra + 1):
        for a in hecke_label_words(kind, w, extra):
            out.update(decorate(a, alphabet))
    return frozenset(out)


# --- compatible sequences -------------------------------------------------

def compatible_sequences(word, min_index: int) -> frozenset[tuple[int, ...]]:
    """Bounded compatible sequences of ``word`` with every entry ``>= min_index``.

    ``i_j < i_{j+1}`` whenever ``a_j <= a_{j+1}``, and ``i_j <= a_j`` whenever
    ``i_j > 0``.  Comparisons use the compatibility order.
    """
    letters = _as_letters(word)
    keys = [compat_key(x) for x in letters]
    # largest admissible entry at each position: a_j if a_j is a positive integer, else 0
    caps = [max(k // 2, 0) if k > 0 else 0 for k in keys]
    p = len(letters)
    out = []
    seq = [0] * p

    def extend(j: int, lo: int):
        if j == p:
            out.append(tuple(seq))
            return
        for v in range(lo, caps[j] + 1):
            seq[j] = v
            nxt = v + 1 if j + 1 < p and keys[j] <= keys[j + 1] else v
            extend(j + 1, nxt)

    extend(0, min_index)
    return frozenset(out)


# --- statistics -----------------------------------------------------------

_STATS_FOR = {
    "comaj": (WordKind.A, WordKind.CPOS, WordKind.B, WordKind.C),
    "sum": (WordKind.A, WordKind.CPOS, WordKind.B, WordKind.C),
    "comaj_BC": (WordKind.B, WordKind.C, WordKind.CPOS),
    "sigma_BC": (WordKind.B, WordKind.C, WordKind.CPOS),
    "comaj_D": (WordKind.D, WordKind.DPRIMED),
    "sigma_D": (WordKind.D, WordKind.DPRIMED),
}


def _ascent_positions(letters: Sequence[Letter], key: Callable) -> list[int]:
    return [i for i in range(1, len(letters)) if key(letters[i - 1]) < key(letters[i])]


def statistic(word, which: str, alphabet: WordKind | None = None) -> int:
    """Word statistics: ``comaj``, ``sum``, ``comaj_BC``, ``sigma_BC``, ``comaj_D``, ``sigma_D``.

    ``comaj_D`` counts letters in {1', 1, 2', 2, ...} plus twice each ascent
    position in the D order, which covers both the unprimed and primed forms.
    """
    if which not in _STATS_FOR:
        raise ValueError(f"unknown statistic {which!r}; expected one of {sorted(_STATS_FOR)}")
    if isinstance(word, LetterWord):
        alphabet = word.alphabet
    letters = _as_letters(word)
    if alphabet is not None and alphabet not in _STATS_FOR[which]:
        raise ValueError(f"statistic {which} is not defined on the {alphabet.value} alphabet")
    if which == "comaj":
        return sum(_ascent_positions(letters, compat_key))
    if which == "sum":
        return sum(x.value for x in letters)
    if which == "comaj_BC":
        return sum(_ascent_positions(letters, bc_order_key))
    if which == "sigma_BC":
        return sum(x.value for x in letters if x.value > 0 and not x.is_primed)
    if which == "comaj_D":
        positives = sum(1 for x in letters if x.value > 0)
        return positives + 2 * sum(_ascent_positions(letters, d_order_key))
    return sum(abs(x.value) for x in letters if not x.is_primed)


# --- generating sums over decorations -------------------------------------

def _poly_mul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _poly_add_into(acc: dict[int, int], a: Mapping[int, int], shift: int = 0):
    for e, c in a.items():
        acc[e + shift] = acc.get(e + shift, 0) + c


def weighted_decoration_sum(
    label_word: Sequence[int],
    alphabet: WordKind,
    letter_weight: Callable[[Letter], Mapping[int, int]],
    order_key: Callable[[Letter], object],
    ascent_scale: int = 1,
) -> dict[int, int]:
    """``Σ_a Π_j weight(a_j) · q^{scale · Σ_{a_i ≺ a_{i+1}} i}`` over all decorations ``a``.

    Computed by a left-to-right transfer over the last chosen letter; the
    result is a polynomial in q as ``{exponent: coefficient}``.
    """
    if not label_word:
        return {0: 1}
    options = [letter_options(alphabet, g) for g in label_word]
    state = {x: dict(letter_weight(x)) for x in options[0]}
    for pos in range(1, len(label_word)):
        new_state = {}
        for y in options[pos]:
            acc: dict[int, int] = {}
            for x, poly in state.items():
                shift = ascent_scale * pos if order_key(x) < order_key(y) else 0
                _poly_add_into(acc, poly, shift)
            new_state[y] = _poly_mul(acc, letter_weight(y))
        state = new_state
    total: dict[int, int] = {}
    for poly in state.values():
        _poly_add_into(total, poly)
    return {e: c for e, c in total.items() if c}


def label_of(alphabet: WordKind, n: int, letter: Letter) -> int:
    return canonical_label(alphabet.group(n), letter.value)


def word_length_check(alphabet: WordKind, n: int, w: SignedPermutation, word: LetterWord) -> bool:
    """True when ``word`` is a reduced word of ``w``."""
    kind = alphabet.group(n)
    product, extra = demazure_product(kind, word)
    return extra == 0 and product == _check_member(kind, w) and len(word) == coxeter_length(kind, w)
