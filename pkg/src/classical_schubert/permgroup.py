"""
Signed permutations and the finite Coxeter groups S_n, W^BC_n and W^D_n.

A signed permutation is stored as the tuple of its images (w(1), ..., w(N)).
The rest of the map is implied: w(-i) = -w(i), w(0) = 0 and w(i) = i for
|i| > N.  All three groups share this representation; membership is a
property of the images, not a tag carried by the value.

Generator labels:

* type A: ``s_i`` for ``1 <= i < n``
* type BC: ``t_0`` (sign change at 1) and ``t_i`` for ``1 <= i < n``;
  the label ``-i`` is an alias of ``i``
* type D: ``r_{-1} = (1,-2)(-1,2)`` and ``r_i = t_i`` for ``1 <= i < n``;
  the label ``-i`` aliases ``i`` only for ``i >= 2``

>>> w = SignedPermutation.parse("-2,-1")
>>> coxeter_length(GroupKind("BC", 2), w)
3
>>> demazure_product(GroupKind("BC", 2), [0, 1, 0, 0])
(SignedPermutation((-2, -1)), 1)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "GroupKind",
    "NotInGroupError",
    "SignedPermutation",
    "canonical_label",
    "coxeter_length",
    "demazure_product",
    "elements",
    "ell_zero",
    "generator",
    "generator_labels",
    "identity",
    "is_descent",
    "is_member",
    "multiply",
    "reduced_word",
    "right_multiply",
    "star",
]

FAMILIES = ("A", "BC", "D")


class NotInGroupError(ValueError):
    """A permutation or generator label does not belong to the requested group."""


@dataclass(frozen=True)
class GroupKind:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError("rank must be at least 1")
        if self.family == "D" and self.n < 2:
            raise ValueError("type D requires rank n >= 2")

    def __str__(self):
        return f"{self.family}{self.n}"


class SignedPermutation(tuple):
    """Window images ``(w(1), ..., w(N))`` of a signed permutation of Z.

    Equality is tuple equality, so two values only compare equal when they
    use the same window size.  Use :meth:`extend` to move between windows.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(int(v) for v in images)
        if any(v == 0 for v in images):
            raise ValueError("images must be nonzero integers")
        if sorted(abs(v) for v in images) != list(range(1, len(images) + 1)):
            raise ValueError(f"images {images} do not have distinct absolute values 1..{len(images)}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> SignedPermutation:
        # trusted constructor for hot paths
        return tuple.__new__(cls, images)

    @classmethod
    def parse(cls, text: str) -> SignedPermutation:
        text = text.strip()
        if not text:
            return cls(())
        try:
            images = [int(part) for part in text.replace(" ", "").split(",")]
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation {text!r}: {exc}") from None
        return cls(images)

    @property
    def window_size(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        if i == 0:
            return 0
        if abs(i) > len(self):
            return i
        v = tuple.__getitem__(self, abs(i) - 1)
        return v if i > 0 else -v

    def extend(self, size: int) -> SignedPermutation:
        if size < len(self):
            raise ValueError("cannot shrink a window")
        return SignedPermutation._raw(tuple(self) + tuple(range(len(self) + 1, size + 1)))

    def inverse(self) -> SignedPermutation:
        out = [0] * len(self)
        for i, v in enumerate(self, start=1):
            out[abs(v) - 1] = i if v > 0 else -i
        return SignedPermutation._raw(out)

    def negative_count(self) -> int:
        return sum(1 for v in self if v < 0)

    def __repr__(self):
        return f"SignedPermutation({tuple(self)!r})"

    def __str__(self):
        return ",".join(str(v) for v in self)


def multiply(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    """The composition ``a∘b`` (apply ``b`` first) on the larger of the two windows."""
    size = max(len(a), len(b))
    return SignedPermutation._raw(tuple(a(b(i)) for i in range(1, size + 1)))


def identity(kind: GroupKind) -> SignedPermutation:
    return SignedPermutation._raw(range(1, kind.n + 1))


def generator_labels(kind: GroupKind) -> tuple[int, ...]:
    """Canonical labels of the simple generators, in a fixed order."""
    if kind.family == "A":
        return tuple(range(1, kind.n))
    if kind.family == "BC":
        return tuple(range(0, kind.n))
    return (-1,) + tuple(range(1, kind.n))


def canonical_label(kind: GroupKind, label: int) -> int:
    """Resolve an alias (``-i`` for ``i``) to the canonical generator label."""
    n = kind.n
    if kind.family == "A":
        if 1 <= label < n:
            return label
        raise NotInGroupError(f"type A generator index must lie in 1..{n - 1}, got {label}")
    if kind.family == "BC":
        if abs(label) < n:
            return abs(label)
        raise NotInGroupError(f"type BC generator index must lie in -{n - 1}..{n - 1}, got {label}")
    if label == -1:
        return -1
    if 1 <= abs(label) < n:
        return abs(label)
    raise NotInGroupError(
        f"type D generator index must be -1 or lie in 1..{n - 1} (with -i aliasing i for i >= 2), got {label}"
    )


def right_multiply(w: SignedPermutation, label: int) -> SignedPermutation:
    """``w·g`` for a canonical generator label ``g`` (0 is t_0, -1 is r_{-1})."""
    images = list(w)
    if label >= 1:
        images[label - 1], images[label] = images[label], images[label - 1]
    elif label == 0:
        images[0] = -images[0]
    else:
        images[0], images[1] = -images[1], -images[0]
    return SignedPermutation._raw(images)


def is_descent(w: SignedPermutation, label: int) -> bool:
    """Whether ``ℓ(w·g) < ℓ(w)`` for the canonical generator label ``g``."""
    if label >= 1:
        return w[label - 1] > w[label]
    if label == 0:
        return w[0] < 0
    return w[0] + w[1] < 0


def generator(kind: GroupKind, index: int) -> SignedPermutation:
    return right_multiply(identity(kind), canonical_label(kind, index))


def is_member(kind: GroupKind, w: SignedPermutation) -> bool:
    if len(w) > kind.n and any(w[i - 1] != i for i in range(kind.n + 1, len(w) + 1)):
        return False
    if kind.family == "A":
        return all(v > 0 for v in w)
    if kind.family == "D":
        return w.negative_count() % 2 == 0
    return True


def _check_member(kind: GroupKind, w: SignedPermutation) -> SignedPermutation:
    if not is_member(kind, w):
        raise NotInGroupError(f"{w} is not an element of {kind}")
    if len(w) < kind.n:
        w = w.extend(kind.n)
    elif len(w) > kind.n:
        w = SignedPermutation._raw(w[: kind.n])
    return w


def _first_descent(kind: GroupKind, w: SignedPermutation):
    for label in generator_labels(kind):
        if is_descent(w, label):
            return label
    return None


def coxeter_length(kind: GroupKind, w: SignedPermutation) -> int:
    """Length by repeatedly stripping a right descent."""
    w = _check_member(kind, w)
    length = 0
    label = _first_descent(kind, w)
    while label is not None:
        w = right_multiply(w, label)
        length += 1
        label = _first_descent(kind, w)
    return length


def reduced_word(kind: GroupKind, w: SignedPermutation) -> tuple[int, ...]:
    """One reduced word (canonical labels), built from right descents."""
    w = _check_member(kind, w)
    word = []
    label = _first_descent(kind, w)
    while label is not None:
        word.append(label)
        w = right_multiply(w, label)
        label = _first_descent(kind, w)
    return tuple(reversed(word))


def _letter_label(kind: GroupKind, letter) -> int:
    # accepts plain ints or objects carrying a `.value` (primes and -0 erased)
    value = getattr(letter, "value", letter)
    return canonical_label(kind, value)


def demazure_product(kind: GroupKind, word: Iterable) -> tuple[SignedPermutation, int]:
    """Return ``(w, k)`` with ``π_{a_1}⋯π_{a_N} = β^k π_w`` in the id-Coxeter algebra."""
    w = identity(kind)
    extra = 0
    for letter in word:
        label = _letter_label(kind, letter)
        if is_descent(w, label):
            extra += 1
        else:
            w = right_multiply(w, label)
    return w, extra


def ell_zero(w: SignedPermutation) -> int:
    """Number of positive i with w(i) < 0."""
    return w.negative_count()


def star(w: SignedPermutation) -> SignedPermutation:
    """Diagram automorphism of W^D_n swapping r_1 and r_{-1}: conjugation by t_0."""
    if w.negative_count() % 2:
        raise NotInGroupError(f"{w} is not an element of a type D group")
    if not w:
        return w
    t0 = right_multiply(SignedPermutation._raw(range(1, len(w) + 1)), 0)
    return multiply(t0, multiply(w, t0))


def elements(kind: GroupKind) -> Iterator[SignedPermutation]:
    """All group elements, each once, in a deterministic order."""
    n = kind.n
    for perm in itertools.permutations(range(1, n + 1)):
        if kind.family == "A":
            yield SignedPermutation._raw(perm)
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if kind.family == "D" and signs.count(-1) % 2:
                continue
            yield SignedPermutation._raw(s * v for s, v in zip(signs, perm))
