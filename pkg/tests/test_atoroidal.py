"""Tests for atoroidality scans and one-letter extensions."""

import itertools

import pytest
from hypothesis import given, settings

from torus_tool.atoroidal import (
    Verdict,
    check_splitex_abelian,
    check_splitex_direct,
    extend_by_letter,
    is_orbit_representative,
    minimal_period,
    toroidal_scan,
    twisted_product,
)
from torus_tool.intlinalg import identity_matrix, mat_power, mat_sum_powers, matvec
from torus_tool.morphisms import MissingInverseWitness, abelianization_matrix, apply, power, verify_automorphism
from torus_tool.words import Basis, WordError, cyclic_key, parse_word, words_up_to

from strategies import automorphisms, words

XY = Basis.of("x y")


def w(text, phi):
    return parse_word(text, phi.basis)


class TestScan:
    def test_swap_obstructions(self, swap):
        report = toroidal_scan(swap, max_len=2, max_power=2)
        found = [(str(o.w), o.power) for o in report.obstructions]
        assert found == [('x', 2), ('y', 2), ('x^2', 2), ('x y', 1), ('x y^-1', 2), ('y^2', 2)]
        assert report.toroidal
        assert report.header() == "scanned len<=2 powers<=2"
        assert report.lines()[1] == "w=x M=2"

    def test_matches_naive_search(self, swap):
        """Each class of length <= 3 fixed by a power <= 3, found by explicit conjugator search."""
        conjugators = list(words_up_to(swap.basis, 4))
        expected = {}
        for u in words_up_to(swap.basis, 3):
            if u.is_identity():
                continue
            image = u
            for exponent in range(1, 4):
                image = apply(swap, image)
                if any(g * image * ~g == u for g in conjugators):
                    assert expected.setdefault(cyclic_key(u), exponent) == exponent, u
                    break
        report = toroidal_scan(swap, max_len=3, max_power=3)
        assert {o.key: o.power for o in report.obstructions} == expected
        assert all(minimal_period(swap, o.w, 3) == o.power for o in report.obstructions)

    def test_alpha_is_clean(self, alpha):
        report = toroidal_scan(alpha, max_len=6, max_power=6, workers=4)
        assert report.obstructions == []
        assert not report.toroidal
        assert report.words_examined == sum(6 * 5 ** (n - 1) for n in range(1, 7))
        assert report.as_dict()['obstructions'] == []

    def test_counts_do_not_depend_on_workers(self, swap):
        one = toroidal_scan(swap, 3, 2, workers=1)
        many = toroidal_scan(swap, 3, 2, workers=4)
        assert one.as_dict() == many.as_dict()

    def test_bad_bounds(self, swap):
        with pytest.raises(ValueError):
            toroidal_scan(swap, max_len=2, max_power=0)
        assert toroidal_scan(swap, max_len=0, max_power=1).words_examined == 0

    def test_orbit_representatives(self, swap):
        assert is_orbit_representative(w("x y", swap))
        assert not is_orbit_representative(w("y x", swap))
        assert not is_orbit_representative(w("x^-1", swap))
        assert not is_orbit_representative(w("x y x^-1", swap))

    def test_minimal_period(self, swap, alpha):
        assert minimal_period(swap, w("x", swap), 4) == 2
        assert minimal_period(swap, w("x y", swap), 4) == 1
        assert minimal_period(alpha, w("x", alpha), 6) == 0


class TestExtension:
    def test_extend_by_letter(self, alpha3):
        psi = extend_by_letter(alpha3, w("x", alpha3))
        assert psi.basis.letters == ('x', 'y', 'z', 'a')
        assert str(psi.image('a')) == "a x"
        assert verify_automorphism(psi)
        assert str(psi.image('x')) == "x y"

    def test_name_clash(self, alpha3):
        with pytest.raises(WordError):
            extend_by_letter(alpha3, w("x", alpha3), name='y')

    def test_needs_witness(self, alpha3):
        with pytest.raises(MissingInverseWitness):
            extend_by_letter(alpha3.without_witness(), w("x", alpha3))

    def test_twisted_product(self, alpha):
        assert str(twisted_product(alpha, w("x", alpha), 3)) == "x y z"
        assert twisted_product(alpha, w("x", alpha), 0).is_identity()


class TestTwistedEquation:
    def test_direct_search_solves_cube_at_first_power(self, alpha3):
        solution = check_splitex_direct(alpha3, w("x", alpha3), k_max=4, v_len_max=4)
        assert solution is not None
        assert (solution.k, str(solution.v)) == (1, "x z^-1")
        v = solution.v
        assert twisted_product(alpha3, w("x", alpha3), 1) == v * apply(alpha3, ~v) == w("x", alpha3)

    def test_direct_search_finds_solution(self, swap):
        # w = x y^-1 = v phi(v^-1) with v = x
        solution = check_splitex_direct(swap, w("x y^-1", swap), k_max=2, v_len_max=2)
        assert solution is not None
        assert solution.k == 1
        v = solution.v
        assert twisted_product(swap, w("x y^-1", swap), 1) == v * apply(swap, ~v)

    def test_obstructed_rules_out_direct_witness(self, swap):
        verdicts = check_splitex_abelian(swap, w("x", swap), k_max=3)
        assert [v.verdict for v in verdicts] == [Verdict.OBSTRUCTED] * 3
        assert check_splitex_direct(swap, w("x", swap), k_max=3, v_len_max=5) is None

    @settings(max_examples=25)
    @given(automorphisms(XY), words(XY, max_syllables=3))
    def test_obstructed_verdicts_hold_for_short_words(self, phi, target):
        candidates = list(words_up_to(XY, 5))
        for verdict in check_splitex_abelian(phi, target, k_max=3):
            if verdict.verdict is not Verdict.OBSTRUCTED:
                continue
            product = twisted_product(phi, target, verdict.k)
            phi_k = power(phi, verdict.k)
            assert all(v * apply(phi_k, ~v) != product for v in candidates), verdict.k

    def test_abelian_verdicts_match_lattice_search(self, alpha3):
        """Cross-check every verdict against a brute-force search for y in a box."""
        target_word = w("x", alpha3)
        A = abelianization_matrix(alpha3)
        verdicts = check_splitex_abelian(alpha3, target_word, k_max=20)
        assert [v.k for v in verdicts] == list(range(1, 21))
        for verdict in verdicts[:4]:
            lattice = identity_matrix(3) - mat_power(A, verdict.k)
            target = matvec(mat_sum_powers(A, verdict.k), target_word.exponent_vector())
            box = itertools.product(range(-6, 7), repeat=3)
            in_box = any(matvec(lattice, list(y)) == target for y in box)
            if in_box:
                assert verdict.verdict is Verdict.INCONCLUSIVE
        for verdict in verdicts:
            assert verdict.verdict is Verdict.INCONCLUSIVE
            lattice = identity_matrix(3) - mat_power(A, verdict.k)
            target = matvec(mat_sum_powers(A, verdict.k), target_word.exponent_vector())
            assert matvec(lattice, verdict.solution) == target

    def test_abelian_obstruction(self, swap):
        # I - A^k only reaches vectors with coordinate sum 0, S_k [x] has sum k
        verdicts = check_splitex_abelian(swap, w("x", swap), k_max=3)
        assert [v.verdict for v in verdicts] == [Verdict.OBSTRUCTED, Verdict.OBSTRUCTED, Verdict.OBSTRUCTED]
        assert str(verdicts[0]) == "k=1 OBSTRUCTED"
