"""Letters, words, the free-group action, and the relation suite."""

import random

import pytest
from hypothesis import given, settings

from conftest import braid_words, random_word
from ewb import (
    BraidWord,
    FormatError,
    FreeWord,
    Letter,
    LetterKind,
    closable,
    compose,
    format_word_file,
    parse_word,
    parse_word_file,
    permutation_cycles,
    presentation_relations,
    rho,
    sigma,
    sigma_inv,
    tau,
    to_automorphism,
    underlying_permutation,
    verify_relations,
    wen_parity,
    word,
    words_equal,
)


class TestLetters:
    def test_tokens(self):
        assert sigma(1).token() == "s1"
        assert sigma_inv(3).token() == "S3"
        assert rho(2).token() == "r2"
        assert tau(4).token() == "t4"

    def test_inverses(self):
        assert sigma(1).inverse() == sigma_inv(1)
        assert sigma_inv(2).inverse() == sigma(2)
        assert rho(1).inverse() == rho(1)  # involution
        assert tau(3).inverse() == tau(3)

    def test_index_must_be_positive(self):
        with pytest.raises(ValueError):
            Letter(LetterKind.SIGMA_POS, 0)


class TestWords:
    def test_bounds(self):
        word(3, sigma(2), rho(1), tau(3))  # all admissible
        with pytest.raises(ValueError):
            word(2, sigma(2))  # needs positions 2 and 3
        with pytest.raises(ValueError):
            word(2, tau(3))
        with pytest.raises(ValueError):
            BraidWord(0, ())

    def test_algebra(self):
        w = word(3, sigma(1), tau(2))
        assert len(w) == 2
        assert w.inverse().tokens() == "t2 S1"
        assert w.rotated(1).tokens() == "t2 s1"
        assert w.rotated(0) == w and w.rotated(2) == w
        assert (w * w.inverse()).tokens() == "s1 t2 t2 S1"
        with pytest.raises(ValueError):
            compose(w, word(2, sigma(1)))

    def test_inverse_is_group_inverse(self):
        w = word(4, sigma(1), rho(3), tau(2), sigma_inv(2))
        assert words_equal(w * w.inverse(), word(4))


class TestWordFiles:
    def test_round_trip(self):
        w = word(3, sigma(1), sigma_inv(2), rho(1), tau(3))
        assert parse_word_file(format_word_file(w)) == w
        assert parse_word_file("strands 3\n\n") == word(3)

    def test_parse_word(self):
        assert parse_word("s1 S2 r1 t3", 3) == word(3, sigma(1), sigma_inv(2), rho(1), tau(3))
        with pytest.raises(ValueError):
            parse_word("x1", 2)
        with pytest.raises(ValueError):
            parse_word("s12x", 2)

    def test_errors_carry_line_numbers(self):
        with pytest.raises(FormatError) as err:
            parse_word_file("")
        assert err.value.line == 1
        with pytest.raises(FormatError) as err:
            parse_word_file("strands 0\n")
        assert err.value.line == 1
        with pytest.raises(FormatError) as err:
            parse_word_file("strands 2\ns1 q7\n")
        assert err.value.line == 2
        with pytest.raises(FormatError) as err:
            parse_word_file("strands 2\ns1\ns1\n")
        assert err.value.line == 3

    @settings(max_examples=60, deadline=None)
    @given(braid_words())
    def test_format_parse_identity(self, w):
        assert parse_word_file(format_word_file(w)) == w


class TestAction:
    def test_generator_images(self):
        assert to_automorphism(word(2, sigma(1))).images == (
            FreeWord((1, 2, -1)),
            FreeWord((1,)),
        )
        assert to_automorphism(word(2, sigma_inv(1))).images == (
            FreeWord((2,)),
            FreeWord((-2, 1, 2)),
        )
        assert to_automorphism(word(2, rho(1))).images == (
            FreeWord((2,)),
            FreeWord((1,)),
        )
        assert to_automorphism(word(2, tau(1))).images == (
            FreeWord((-1,)),
            FreeWord((2,)),
        )

    def test_composition_is_left_to_right(self):
        assert to_automorphism(word(2, sigma(1), rho(1))).images == (
            FreeWord((2, 1, -2)),
            FreeWord((2,)),
        )
        assert to_automorphism(word(2, rho(1), sigma(1))).images == (
            FreeWord((1,)),
            FreeWord((1, 2, -1)),
        )

    @settings(max_examples=40, deadline=None)
    @given(braid_words(max_strands=4, max_length=6), braid_words(max_strands=4, max_length=6))
    def test_action_is_a_homomorphism(self, a, b):
        if a.strands != b.strands:
            b = BraidWord(a.strands, ())
        lhs = to_automorphism(compose(a, b))
        rhs = to_automorphism(a).then(to_automorphism(b))
        assert lhs == rhs

    @settings(max_examples=40, deadline=None)
    @given(braid_words(max_strands=5, max_length=8))
    def test_images_are_conjugates_of_generators(self, w):
        aut = to_automorphism(w)
        perm = underlying_permutation(w)
        for strand, image in enumerate(aut.images, start=1):
            parts = image.conjugate_parts()
            assert parts is not None
            _, target, _ = parts
            assert perm[strand - 1] == target


class TestWordsEqual:
    def test_relations_hold(self):
        assert words_equal(word(3, sigma(1), sigma(2), sigma(1)),
                           word(3, sigma(2), sigma(1), sigma(2)))
        assert words_equal(word(3, rho(2), rho(1), sigma(2)),
                           word(3, sigma(1), rho(2), rho(1)))
        assert words_equal(word(2, tau(2), sigma(1)),
                           word(2, rho(1), sigma_inv(1), rho(1), tau(1)))

    def test_distinguishes(self):
        assert not words_equal(word(2, sigma(1)), word(2, sigma_inv(1)))
        assert not words_equal(word(2, sigma(1)), word(2, rho(1)))
        with pytest.raises(ValueError):
            words_equal(word(2, sigma(1)), word(3, sigma(1)))

    @settings(max_examples=40, deadline=None)
    @given(braid_words(max_strands=4, max_length=8))
    def test_rotation_is_prefix_conjugation(self, w):
        if not w.letters:
            return
        k = len(w.letters) // 2 or 1
        prefix = BraidWord(w.strands, w.letters[:k])
        assert words_equal(w.rotated(k), compose(compose(prefix.inverse(), w), prefix))


class TestStrandData:
    def test_permutation(self):
        assert underlying_permutation(word(3, sigma(1), sigma(2))) == (3, 1, 2)
        assert underlying_permutation(word(2, rho(1))) == (2, 1)
        assert underlying_permutation(word(2, tau(1), tau(2))) == (1, 2)

    def test_cycles_and_parity(self):
        assert permutation_cycles(word(2, sigma(1))) == [(1, 2)]
        assert permutation_cycles(word(3)) == [(1,), (2,), (3,)]
        assert wen_parity(word(2, tau(1), tau(2), sigma(1))) == (0,)
        assert wen_parity(word(1, tau(1))) == (1,)

    def test_closable(self):
        assert closable(word(2, tau(1), tau(2), sigma(1)))
        assert not closable(word(1, tau(1)))
        assert not closable(word(2, tau(1)))
        assert closable(word(2, tau(1), rho(1), tau(1)))


class TestRelationSuite:
    def test_every_instance_up_to_four_strands(self):
        checked, failures = verify_relations(4)
        assert failures == []
        assert checked == 70

    def test_families_present(self):
        labels = {label.split(" ")[0] for label, _, _ in presentation_relations(6)}
        assert labels == {
            "sigma-commute", "sigma-braid", "rho-commute", "rho-braid",
            "rho-involution", "rho-sigma-commute", "mixed-braid-rrs",
            "mixed-braid-ssr", "tau-commute", "tau-involution",
            "sigma-tau-commute", "rho-tau-commute", "wen-through-rho",
            "wen-through-sigma", "wen-flip-sigma",
        }

    def test_small_degrees(self):
        # one strand admits only the wen involution
        labels = [label for label, _, _ in presentation_relations(1)]
        assert labels == ["tau-involution 1"]
        checked, failures = verify_relations(2)
        assert failures == [] and checked > 0


def test_random_words_round_trip_through_text():
    rng = random.Random(99)
    for _ in range(50):
        w = random_word(rng, rng.randint(1, 6), rng.randint(0, 12))
        assert parse_word_file(format_word_file(w)) == w
