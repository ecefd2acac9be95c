"""Tests for free-group words."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torus_tool.words import (
    Basis,
    BasisMismatchError,
    Word,
    WordError,
    cyclic_key,
    cyclic_reduce,
    format_word,
    is_conjugate,
    parse_word,
    reduced_words,
    rename_letters,
    words_up_to,
)

from strategies import XYZ, words

XY = Basis.of("x y")


def w(text, basis=XYZ):
    return parse_word(text, basis)


class TestParsing:
    def test_free_reduction_on_parse(self):
        assert w("x x^-1 y") == w("y")
        assert format_word(w("x^2 x^-1 y y")) == "x y^2"

    def test_identity_formats_empty(self):
        assert format_word(w("")) == ""
        assert str(w("x x^-1")) == "1"

    @pytest.mark.parametrize("text", ["x^", "x^0", "2x", "x^a", "x-1"])
    def test_malformed_tokens(self, text):
        with pytest.raises(WordError):
            w(text)

    def test_unknown_letter(self):
        with pytest.raises(WordError, match="Unknown letter"):
            w("q")

    def test_stable_letter_reserved(self):
        with pytest.raises(WordError):
            Basis.of("x t")
        assert 't' in Basis.presentation("x t")

    def test_duplicate_letters(self):
        with pytest.raises(WordError):
            Basis.of("x x")

    def test_basis_mismatch(self):
        with pytest.raises(BasisMismatchError):
            w("x") * w("x", XY)


class TestGroupLaws:
    @given(words(), words(), words())
    def test_associative(self, u, v, s):
        assert (u * v) * s == u * (v * s)

    @given(words())
    def test_inverse(self, u):
        assert (u * ~u).is_identity()
        assert (~u * u).is_identity()
        assert ~~u == u

    @given(words())
    def test_reduced(self, u):
        tokens = u.tokens()
        assert all(a ^ 1 != b for a, b in zip(tokens, tokens[1:]))

    @given(words())
    def test_text_form_is_exact(self, u):
        assert parse_word(format_word(u), XYZ) == u

    @given(words(max_syllables=4), st.integers(-3, 3), st.integers(-3, 3))
    def test_powers_add(self, u, a, b):
        assert u ** a * u ** b == u ** (a + b)

    def test_power_of_conjugate(self):
        u = w("x y x^-1")
        assert u ** 3 == w("x y^3 x^-1")
        assert u ** -2 == w("x y^-2 x^-1")


class TestConjugacy:
    @given(words())
    def test_cyclic_reduce(self, u):
        core, conjugator = cyclic_reduce(u)
        assert conjugator * core * ~conjugator == u
        tokens = core.tokens()
        assert len(tokens) < 2 or tokens[0] ^ 1 != tokens[-1]

    @given(words(), words(max_syllables=4))
    def test_conjugates_detected(self, u, g):
        assert is_conjugate(g * u * ~g, u)

    @given(words(), words(max_syllables=4))
    def test_key_is_class_invariant(self, u, g):
        assert cyclic_key(g * u * ~g) == cyclic_key(u)
        assert cyclic_key(~u) == cyclic_key(u)

    def test_not_conjugate(self):
        assert not is_conjugate(w("x y"), w("x y^-1"))
        assert not is_conjugate(w("x"), w("x^2"))

    def test_agrees_with_search_oracle(self):
        """Compare against an explicit search for a conjugator on all short words."""
        small = list(words_up_to(XY, 4))
        conjugators = list(words_up_to(XY, 6))
        for u in small:
            conjugates = {g * u * ~g for g in conjugators}
            for v in small:
                assert is_conjugate(u, v) == (v in conjugates), (u, v)


class TestEnumeration:
    @pytest.mark.parametrize("length", [1, 2, 3, 4])
    def test_counts(self, length):
        found = list(reduced_words(XY, length))
        assert len(found) == 4 * 3 ** (length - 1)
        assert len(set(found)) == len(found)
        assert all(u.length == length for u in found)

    def test_shortlex_order(self):
        tokens = [u.tokens() for u in words_up_to(XY, 3)]
        assert tokens == sorted(tokens, key=lambda t: (len(t), t))
        assert tokens[0] == ()

    def test_first_token_partition(self):
        parts = [list(reduced_words(XY, 3, first=code)) for code in range(4)]
        assert sum(parts, []) == list(reduced_words(XY, 3))


def test_rename_letters():
    target = Basis.of("p q x y")
    moved = rename_letters(w("x y^-1", XY), {'x': 'p', 'y': 'q'}, target)
    assert moved == parse_word("p q^-1", target)
    assert rename_letters(w("x", XY), {}, target) == parse_word("x", target)
