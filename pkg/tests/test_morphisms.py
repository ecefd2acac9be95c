"""Tests for morphisms and automorphism files."""

import pytest
from hypothesis import given

from torus_tool.intlinalg import characteristic_polynomial, format_matrix
from torus_tool.morphisms import (
    AutomorphismFileError,
    GroupMorphism,
    MissingInverseWitness,
    abelianization_matrix,
    apply,
    compose,
    dump_automorphism,
    free_product,
    identity_morphism,
    inverse,
    load_automorphism,
    parse_automorphism,
    power,
    preserves_factor,
    restricts_to,
    verify_automorphism,
)
from torus_tool.words import Basis, parse_word

from strategies import XYZ, automorphisms, words


def test_bundled_alpha(alpha):
    assert alpha.basis == XYZ
    assert str(alpha) == "x -> y, y -> z, z -> x y"
    assert verify_automorphism(alpha)


@given(words(), words())
def test_homomorphism(u, v):
    phi = GroupMorphism.from_images(XYZ, {'x': 'y', 'y': 'z', 'z': 'x y'})
    assert apply(phi, u * v) == apply(phi, u) * apply(phi, v)
    assert apply(phi, ~u) == ~apply(phi, u)


@given(automorphisms())
def test_random_automorphisms_are_verified(phi):
    assert verify_automorphism(phi)
    assert verify_automorphism(inverse(phi))


@given(automorphisms(), words())
def test_inverse_undoes(phi, u):
    assert apply(inverse(phi), apply(phi, u)) == u
    assert apply(power(phi, -2), apply(power(phi, 2), u)) == u


def test_bad_witness_detected():
    phi = GroupMorphism.from_images(XYZ, ['y', 'z', 'x y'], inverse=['z', 'x', 'y'])
    assert not verify_automorphism(phi)


def test_missing_witness_raises():
    phi = GroupMorphism.from_images(XYZ, ['y', 'z', 'x y'])
    with pytest.raises(MissingInverseWitness):
        verify_automorphism(phi)
    with pytest.raises(MissingInverseWitness):
        inverse(phi)


def test_power_matches_cube(alpha, alpha3):
    assert power(alpha, 3).images == alpha3.images
    assert verify_automorphism(power(alpha, 3))
    assert power(alpha, 0) == identity_morphism(XYZ)


def test_compose_order(alpha):
    phi = GroupMorphism.from_images(XYZ, ['y', 'x', 'z'], inverse=['y', 'x', 'z'])
    # alpha after phi: x -> alpha(y) = z
    assert compose(alpha, phi).image('x') == parse_word("z", XYZ)
    assert verify_automorphism(compose(alpha, phi))


def test_abelianization_and_charpoly(alpha):
    A = abelianization_matrix(alpha)
    assert format_matrix(A) == "0 0 1\n1 0 1\n0 1 0"
    assert characteristic_polynomial(A) == [1, 0, -1, -1]


def test_factor_checks(swap):
    assert restricts_to(swap, ['x', 'y'])
    assert not restricts_to(swap, ['x'])
    assert preserves_factor(swap, ['x', 'y'])


def test_free_product(alpha):
    basis = Basis.of("p q")
    flip = GroupMorphism.from_images(basis, ['q', 'p'], inverse=['q', 'p'])
    psi = free_product(alpha, flip)
    assert psi.basis.letters == ('x', 'y', 'z', 'p', 'q')
    assert verify_automorphism(psi)
    assert str(psi.image('p')) == 'q'


class TestFiles:
    def test_dump_is_reloadable(self, alpha, tmp_path):
        path = tmp_path / 'alpha.aut'
        path.write_text(dump_automorphism(alpha), encoding='utf-8')
        loaded = load_automorphism(path)
        assert loaded == alpha

    def test_identity_images(self):
        phi = parse_automorphism("[basis]\nletters = x\n\n[images]\nx = 1\n")
        assert phi.image('x').is_identity()
        assert not phi.has_witness

    def test_missing_sections(self):
        with pytest.raises(AutomorphismFileError, match="basis"):
            parse_automorphism("[images]\nx = x\n")
        with pytest.raises(AutomorphismFileError, match="images"):
            parse_automorphism("[basis]\nletters = x\n")

    def test_unknown_letter(self):
        with pytest.raises(AutomorphismFileError, match="Unknown letter"):
            parse_automorphism("[basis]\nletters = x y\n\n[images]\nx = z\ny = x\n")

    def test_missing_image(self):
        with pytest.raises(AutomorphismFileError, match="No image"):
            parse_automorphism("[basis]\nletters = x y\n\n[images]\nx = y\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_automorphism(tmp_path / 'absent.aut')
