import itertools
import random

import pytest

from classical_schubert.involution import (
    InvolutionSpace,
    all_words,
    braid_moves,
    check_commute_lemma,
    check_prop_iS,
    fpf_identity,
    random_word,
)
from classical_schubert.permgroup import GroupKind, SignedPermutation, generator, identity, multiply

SP = SignedPermutation
Y = SP((1, 4, 3, 2))      # (2,4) in I_4
Z_FPF = SP((4, 3, 2, 1))  # w^{-1} 1^FPF w for w = s_2 s_3


def label_words(space, z, extra):
    return set(space.inv_hecke_label_words(z, extra))


class TestAction:
    def test_invol_cases(self):
        space = InvolutionSpace("invol", 4)
        s2 = SP((1, 3, 2, 4))
        assert space.act(space.start, 2) == (s2, 0)
        assert space.act(s2, 2) == (s2, 1)
        # non-commuting ascent conjugates
        assert space.act(s2, 1) == (SP((3, 2, 1, 4)), 0)

    def test_fpf_zero_case(self):
        space = InvolutionSpace("fpf", 4)
        assert space.start == fpf_identity(4) == SP((2, 1, 4, 3))
        assert space.act(space.start, 1) is None

    def test_letter_range(self):
        with pytest.raises(ValueError):
            InvolutionSpace("invol", 3).act(SP((1, 2, 3)), 3)

    def test_fpf_from_permutation(self):
        space = InvolutionSpace("fpf", 4)
        w = multiply(generator(GroupKind("A", 4), 2), generator(GroupKind("A", 4), 3))
        assert space.from_permutation(w) == Z_FPF


class TestWords:
    def test_examples(self):
        invol, fpf = InvolutionSpace("invol", 4), InvolutionSpace("fpf", 4)
        assert label_words(invol, Y, 0) == {(2, 3), (3, 2)}
        assert label_words(fpf, Z_FPF, 0) == {(2, 1), (2, 3)}
        assert label_words(invol, invol.start, 0) == {()}
        assert invol.ell_hat(Y) == fpf.ell_hat(Z_FPF) == 2
        assert invol.ell_hat(invol.start) == 0

    def test_invol_characterization(self):
        # every word on {2,3} using both letters, and nothing else
        space = InvolutionSpace("invol", 4)
        expected = {w for k in range(5) for w in itertools.product((2, 3), repeat=k) if set(w) == {2, 3}}
        assert label_words(space, Y, 2) == expected

    def test_fpf_characterization(self):
        # a run of 2s then a nonempty word on {1,3}; π_2² = βπ_2 forces the repeated 2s
        space = InvolutionSpace("fpf", 4)
        expected = {(2,) * j + w for j in range(1, 4) for k in range(1, 5 - j)
                    for w in itertools.product((1, 3), repeat=k)}
        found = label_words(space, Z_FPF, 2)
        assert found == expected
        assert {w for w in found if w.count(2) == 1} == {
            (2,) + w for k in range(1, 4) for w in itertools.product((1, 3), repeat=k)}

    @pytest.mark.parametrize("flavor", ["invol", "fpf"])
    def test_against_exhaustive_scan(self, flavor):
        space = InvolutionSpace(flavor, 4)
        for z in space.basis:
            limit = space.ell_hat(z) + 1
            brute = set()
            for k in range(limit + 1):
                for word in all_words(4, k):
                    result = space.apply_word(word)
                    if result is not None and result[0] == z:
                        brute.add(word)
            assert label_words(space, z, 1) == brute

    def test_text_words(self):
        space = InvolutionSpace("fpf", 4)
        assert sorted(str(w) for w in space.inv_hecke_words(Z_FPF, 0)) == ["2,1", "2,3"]


class TestAtoms:
    def test_examples(self):
        space = InvolutionSpace("invol", 4)
        kind = GroupKind("A", 4)
        s2, s3 = generator(kind, 2), generator(kind, 3)
        atoms = space.hecke_atoms(Y)
        assert {multiply(s2, s3), multiply(s3, s2)} <= atoms
        assert space.hecke_atoms(space.start) == {identity(kind)}

    @pytest.mark.parametrize("flavor", ["invol", "fpf"])
    def test_partition(self, flavor):
        space = InvolutionSpace(flavor, 4)
        for z in space.basis:
            assert space.atoms_partition_defect(z, 2) == []


class TestPipeDreams:
    def test_example_dreams(self):
        space = InvolutionSpace("invol", 4)
        dreams = {frozenset(d.positions) for d in space.pipe_dreams(Y)}
        assert dreams == {frozenset({(2, 1), (2, 2)}), frozenset({(2, 1), (3, 1)}),
                          frozenset({(2, 1), (2, 2), (3, 1)})}
        fpf = InvolutionSpace("fpf", 4)
        assert [str(d) for d in fpf.pipe_dreams(Z_FPF)] == ["[(2,1),(3,1)]"]
        assert [str(d) for d in space.pipe_dreams(space.start)] == ["[]"]

    def test_cells(self):
        assert InvolutionSpace("invol", 4).cells == ((1, 1), (2, 2), (2, 1), (3, 1))
        assert InvolutionSpace("fpf", 4).cells == ((2, 1), (3, 1))

    def test_reading_word(self):
        space = InvolutionSpace("invol", 4)
        assert sorted(d.word() for d in space.pipe_dreams(Y)) == [(2, 3), (3, 2), (3, 2, 3)]
        for d in space.pipe_dreams(Y):
            assert space.apply_word(d.word())[0] == Y

    def test_odd_fpf_refused(self):
        space = InvolutionSpace("fpf", 3)
        with pytest.raises(ValueError):
            space.pipe_dreams(space.start)
        with pytest.raises(ValueError):
            space.inv_grothendieck(space.start)


class TestPolynomials:
    def test_example_polynomials(self):
        space = InvolutionSpace("invol", 4)
        ring = space.ring()
        x1, x2, x3 = ring.x(1), ring.x(2), ring.x(3)
        b = ring.beta()
        expected = x2.oplus(x1) * x2 + x2.oplus(x1) * x3.oplus(x1) + b * x2.oplus(x1) * x2 * x3.oplus(x1)
        assert space.inv_grothendieck(Y) == expected
        fpf = InvolutionSpace("fpf", 4)
        assert fpf.inv_grothendieck(Z_FPF) == x2.oplus(x1) * x3.oplus(x1)
        assert str(space.inv_grothendieck(space.start)) == "1"

    @pytest.mark.parametrize("flavor", ["invol", "fpf"])
    def test_pipe_dreams_match_word_sums(self, flavor):
        space = InvolutionSpace(flavor, 4)
        for z in space.basis:
            exact = space.inv_grothendieck(z, "pipedream", 2)
            assert exact == space.inv_grothendieck(z, "wordsum", 2)

    @pytest.mark.parametrize("flavor", ["invol", "fpf"])
    def test_beta_zero_slice(self, flavor):
        space = InvolutionSpace(flavor, 4)
        for z in space.basis:
            assert space.inv_grothendieck(z, "pipedream", 0) == space.inv_grothendieck(z, "wordsum", 0)

    def test_wordsum_needs_cap(self):
        with pytest.raises(ValueError):
            InvolutionSpace("invol", 3).inv_grothendieck(SP((2, 1, 3)), "wordsum")


class TestIdentities:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_commute_lemma(self, n):
        for i in range(1, n):
            assert check_commute_lemma(n, i) == []

    @pytest.mark.parametrize("n,flavor", [(2, "invol"), (3, "invol"), (4, "invol"), (2, "fpf"), (4, "fpf")])
    def test_prop_is(self, n, flavor):
        assert check_prop_iS(n, flavor) == []

    def test_prop_is_fpf_odd(self):
        with pytest.raises(ValueError):
            check_prop_iS(3, "fpf")


@pytest.mark.parametrize("flavor", ["invol", "fpf"])
def test_action_well_defined(flavor):
    # braid and commutation moves keep the result; doubling a letter adds one β
    rng = random.Random(20261018)
    space = InvolutionSpace(flavor, 4)
    for _ in range(1000):
        word = random_word(rng, 4, rng.randrange(0, 9))
        base = space.apply_word(word)
        for moved in braid_moves(word):
            assert space.apply_word(moved) == base
        if word:
            k = rng.randrange(len(word))
            doubled = word[:k + 1] + word[k:]
            result = space.apply_word(doubled)
            assert result == (None if base is None else (base[0], base[1] + 1))
