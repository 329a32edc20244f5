import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classical_schubert.permgroup import (
    GroupKind,
    NotInGroupError,
    SignedPermutation,
    coxeter_length,
    demazure_product,
    ell_zero,
    elements,
    generator,
    generator_labels,
    identity,
    is_member,
    multiply,
    reduced_word,
    star,
)

SP = SignedPermutation


def brute_length(kind, w):
    # breadth-first search over generator words, independent of descent scanning
    start = identity(kind)
    target = w.extend(kind.n)
    seen = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            if u == target:
                return seen[u]
            for g in generator_labels(kind):
                v = multiply(u, generator(kind, g))
                if v not in seen:
                    seen[v] = seen[u] + 1
                    nxt.append(v)
        frontier = nxt
    raise AssertionError("unreachable")


class TestBasics:
    def test_identity(self):
        assert identity(GroupKind("A", 3)) == SP((1, 2, 3))
        assert identity(GroupKind("BC", 2)) == SP((1, 2))
        assert identity(GroupKind("D", 4)) == SP((1, 2, 3, 4))
        assert coxeter_length(GroupKind("D", 4), identity(GroupKind("D", 4))) == 0

    def test_generators(self):
        assert generator(GroupKind("BC", 3), 0) == SP((-1, 2, 3))
        assert generator(GroupKind("D", 3), -1) == SP((-2, -1, 3))
        assert generator(GroupKind("A", 3), 1) == SP((2, 1, 3))
        assert generator(GroupKind("BC", 3), -2) == generator(GroupKind("BC", 3), 2)
        assert generator(GroupKind("D", 3), -2) == generator(GroupKind("D", 3), 2)

    @pytest.mark.parametrize("kind,label", [(GroupKind("A", 3), 0), (GroupKind("A", 3), 3),
                                            (GroupKind("BC", 2), 2), (GroupKind("D", 3), 0)])
    def test_invalid_generator(self, kind, label):
        with pytest.raises(ValueError):
            generator(kind, label)

    def test_parse_and_text(self):
        w = SP.parse("2,-1,3")
        assert (w(1), w(2), w(3), w(-1), w(7)) == (2, -1, 3, -2, 7)
        assert str(w) == "2,-1,3"
        with pytest.raises(ValueError):
            SP.parse("1,1")
        with pytest.raises(ValueError):
            SP.parse("1,3")

    def test_rank_guard(self):
        with pytest.raises(ValueError):
            GroupKind("D", 1)
        with pytest.raises(ValueError):
            GroupKind("A", 0)

    def test_membership(self):
        assert not is_member(GroupKind("A", 2), SP((-1, 2)))
        assert not is_member(GroupKind("D", 2), SP((-1, 2)))
        assert is_member(GroupKind("D", 2), SP((-1, -2)))
        with pytest.raises(NotInGroupError):
            coxeter_length(GroupKind("D", 3), SP((-1, 2, 3)))


class TestProducts:
    def test_generator_squares(self):
        kind = GroupKind("A", 3)
        s1 = generator(kind, 1)
        assert multiply(s1, s1) == identity(kind)
        w = SP((3, 1, 2))
        assert multiply(identity(kind), w) == w

    def test_bc_braid(self):
        kind = GroupKind("BC", 2)
        t0, t1 = generator(kind, 0), generator(kind, 1)
        left = multiply(multiply(t1, t0), multiply(t1, t0))
        right = multiply(multiply(t0, t1), multiply(t0, t1))
        assert left == right
        # and by hand: t0 t1 t0 t1 sends 1 -> -1, 2 -> -2
        assert left == SP((-1, -2))

    def test_composition_order(self):
        a, b = SP((2, 1, 3)), SP((1, 3, 2))
        ab = multiply(a, b)
        assert all(ab(i) == a(b(i)) for i in (1, 2, 3))

    def test_demazure_examples(self):
        assert demazure_product(GroupKind("A", 2), ()) == (SP((1, 2)), 0)
        assert demazure_product(GroupKind("A", 2), (1, 1)) == (SP((2, 1)), 1)
        assert demazure_product(GroupKind("BC", 2), (0, 1, 0)) == (SP((-2, -1)), 0)


class TestLength:
    def test_examples(self):
        assert coxeter_length(GroupKind("BC", 2), SP((-2, -1))) == 3
        assert coxeter_length(GroupKind("D", 4), SP((-1, 2, 3, -4))) == 6

    @pytest.mark.parametrize("kind", [GroupKind("A", 4), GroupKind("BC", 3), GroupKind("D", 3), GroupKind("D", 4)])
    def test_against_bfs(self, kind):
        for w in elements(kind):
            assert coxeter_length(kind, w) == brute_length(kind, w)

    @pytest.mark.parametrize("kind", [GroupKind("A", 4), GroupKind("BC", 3), GroupKind("D", 4)])
    def test_reduced_word_multiplies_back(self, kind):
        for w in elements(kind):
            word = reduced_word(kind, w)
            assert len(word) == coxeter_length(kind, w)
            assert demazure_product(kind, word) == (w, 0)


class TestElements:
    @pytest.mark.parametrize("family,n,count", [("A", 3, 6), ("BC", 2, 8), ("D", 3, 24), ("A", 4, 24),
                                                ("BC", 3, 48), ("D", 4, 192)])
    def test_counts(self, family, n, count):
        found = list(elements(GroupKind(family, n)))
        assert len(found) == count == len(set(found))

    def test_ell_zero(self):
        assert ell_zero(SP((1, 2))) == 0
        assert ell_zero(SP((-2, -1))) == 2
        assert ell_zero(SP((-1, 2))) == 1
        for w in elements(GroupKind("BC", 3)):
            assert 0 <= ell_zero(w) <= 3


class TestStar:
    def test_examples(self):
        kind = GroupKind("D", 3)
        assert star(generator(kind, 1)) == generator(kind, -1)
        assert star(generator(kind, 2)) == generator(kind, 2)
        assert star(identity(kind)) == identity(kind)

    def test_automorphism(self):
        kind = GroupKind("D", 3)
        group = list(elements(kind))
        for u, v in itertools.product(group, repeat=2):
            assert star(multiply(u, v)) == multiply(star(u), star(v))
        assert all(star(star(w)) == w for w in group)
        assert all(coxeter_length(kind, star(w)) == coxeter_length(kind, w) for w in group)

    def test_rejects_non_d(self):
        with pytest.raises(NotInGroupError):
            star(SP((-1, 2)))


def _labels(family, n):
    return st.sampled_from(generator_labels(GroupKind(family, n)))


@pytest.mark.parametrize("family,n", [("A", 4), ("BC", 3), ("D", 4)])
def test_demazure_associative(family, n):
    kind = GroupKind(family, n)
    words = st.lists(_labels(family, n), max_size=7)

    @settings(max_examples=150, deadline=None)
    @given(words, words)
    def check(a, b):
        u, i = demazure_product(kind, a)
        v, j = demazure_product(kind, b)
        # fold v onto u by a reduced word of v
        w, k = demazure_product(kind, tuple(reduced_word(kind, u)) + tuple(reduced_word(kind, v)))
        assert demazure_product(kind, tuple(a) + tuple(b)) == (w, i + j + k)
        assert k == len(reduced_word(kind, u)) + len(reduced_word(kind, v)) - coxeter_length(kind, w)

    check()
