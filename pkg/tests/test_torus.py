"""Tests for mapping-torus normal forms."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torus_tool.morphisms import GroupMorphism, MorphismError, apply
from torus_tool.torus import (
    MappingTorus,
    TorusElement,
    atom_anchors,
    evaluate_word,
    torus_eval,
    torus_inverse,
    torus_mul,
    torus_power,
)
from torus_tool.words import STABLE_LETTER, WordError, parse_word, words_up_to

from strategies import XYZ, words


def elements():
    return st.builds(TorusElement, words(max_syllables=5), st.integers(-3, 3))


@given(elements(), elements(), elements())
def test_multiplication_associative(g, h, k):
    M = MappingTorus(GroupMorphism.from_images(XYZ, ['y', 'z', 'x y'], inverse=['z x^-1', 'x', 'y']))
    assert torus_mul(M, torus_mul(M, g, h), k) == torus_mul(M, g, torus_mul(M, h, k))


@given(elements())
def test_inverse_and_powers(g):
    M = MappingTorus(GroupMorphism.from_images(XYZ, ['y', 'z', 'x y'], inverse=['z x^-1', 'x', 'y']))
    assert torus_mul(M, g, torus_inverse(M, g)).is_identity()
    assert torus_power(M, g, 3) == torus_mul(M, g, torus_mul(M, g, g))
    assert torus_power(M, g, -2) == torus_inverse(M, torus_power(M, g, 2))
    assert torus_power(M, g, 0).is_identity()


def test_conjugation_by_stable_letter(alpha_torus):
    assert torus_eval("t x t^-1", alpha_torus) == alpha_torus.element("y")
    assert torus_eval("t^-1 y t", alpha_torus) == alpha_torus.element("x")
    assert torus_eval("t z", alpha_torus) == alpha_torus.element("x y", 1)
    assert str(torus_eval("x t^2", alpha_torus)) == "(x, 2)"


def test_mul_formula(alpha_torus):
    M = alpha_torus
    g, h = M.element("x", 2), M.element("y", -1)
    # (u, a)(v, b) = (u phi^a(v), a + b)
    assert torus_mul(M, g, h) == M.element("x x y", 1)


def _rewrite(word, phi, phi_inverse):
    """Push every ``t`` to the right with ``t x = phi(x) t`` and ``t^-1 x = phi^-1(x) t^-1``."""
    letters = []
    for letter, exponent in word.syllables:
        name = word.basis.letters[letter]
        step = 1 if exponent > 0 else -1
        letters.extend([(name, step)] * abs(exponent))
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            (a, e), (b, f) = letters[i], letters[i + 1]
            if a == STABLE_LETTER and b != STABLE_LETTER:
                morphism = phi if e > 0 else phi_inverse
                image = apply(morphism, parse_word(b, phi.basis) ** f)
                moved = [(phi.basis.letters[index], 1 if x > 0 else -1)
                         for index, x in image.syllables for _ in range(abs(x))]
                letters[i:i + 2] = moved + [(a, e)]
                changed = True
                break
    u = parse_word(' '.join(f"{n}^{e}" for n, e in letters if n != STABLE_LETTER), phi.basis)
    return TorusElement(u, sum(e for n, e in letters if n == STABLE_LETTER))


def test_normal_form_matches_rewriting(swap_torus):
    M = swap_torus
    for word in words_up_to(M.alphabet, 6):
        assert torus_eval(word, M) == _rewrite(word, M.phi, M.phi_inverse), word


def test_evaluate_word_uses_anchors(swap_torus):
    M = swap_torus
    anchors = atom_anchors(M)
    word = parse_word("t x t^-1", M.alphabet)
    assert evaluate_word(word, anchors, M) == M.element("y")
    with pytest.raises(WordError, match="no anchor"):
        evaluate_word(word, {'x': anchors['x']}, M)


def test_invalid_witness_rejected():
    phi = GroupMorphism.from_images(XYZ, ['y', 'z', 'x y'], inverse=['x', 'y', 'z'])
    with pytest.raises(MorphismError):
        MappingTorus(phi)


def test_alphabet_appends_stable_letter(alpha_torus):
    assert alpha_torus.alphabet.letters == ('x', 'y', 'z', 't')
