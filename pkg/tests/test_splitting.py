"""Tests for certificates, template verification and splitting emission."""

import pytest

from torus_tool.intlinalg import CokernelInvariants
from torus_tool.morphisms import GroupMorphism
from torus_tool.splitting import (
    INESSENTIAL,
    CaseA,
    CaseB,
    CaseD,
    CaseE,
    CertificateError,
    SplittingKind,
    build_b_generators,
    check_splitting,
    congruence_data,
    describe_anchors,
    description_presentation,
    dump_certificate,
    edge_labels,
    emit_splitting,
    expected_b_image,
    format_description,
    general_amalgam_s,
    modular_inverse,
    parse_certificate_text,
    verify_batch,
    verify_certificate,
)
from torus_tool.torus import MappingTorus, h1_invariants, standard_presentation
from torus_tool.words import Basis


def accepted(phi, cert):
    result = verify_certificate(phi, cert)
    assert result.accepted, str(result)
    return result.witnesses


def emitted(phi, cert):
    M = MappingTorus(phi)
    desc = emit_splitting(M, cert, accepted(phi, cert))
    assert check_splitting(desc, M) == []
    assert h1_invariants(description_presentation(desc, M)) == h1_invariants(standard_presentation(M))
    return desc


class TestCertificates:
    def test_bundled(self, bundled_pair):
        _, cert = bundled_pair('swap.aut', 'swap_case_d.cert')
        assert cert == CaseD(loop_letters=(), n=2, k=1, v_letters=(), w_blocks=(('x',), ('y',)))
        _, cert = bundled_pair('case_e.aut', 'case_e.cert')
        assert (cert.m, cert.n, cert.k, cert.q) == (2, 3, 1, 1)
        assert cert.first_loop == 4 and cert.last_loop == 5

    @pytest.mark.parametrize("name", ['case_a.cert', 'case_b.cert', 'case_e.cert', 'swap_case_d.cert'])
    def test_dump_is_reparsed(self, data_dir, name):
        cert = parse_certificate_text((data_dir / name).read_text(encoding='utf-8'))
        assert parse_certificate_text(dump_certificate(cert)) == cert

    def test_unknown_case(self):
        with pytest.raises(CertificateError, match="exactly one"):
            parse_certificate_text("[case]\nC\n")

    def test_missing_block(self):
        with pytest.raises(CertificateError, match="B1"):
            parse_certificate_text("[case]\nB\n\n[params]\nm = 2\nk = 1\n\n[blocks]\nB0 = p\n")

    def test_case_e_arithmetic(self):
        with pytest.raises(CertificateError, match="n = 1 mod m"):
            CaseE(loop_letters=(), m=3, n=5, k=1, v_blocks=((),) * 3, w_blocks=((),) * 5).check_params()
        with pytest.raises(CertificateError, match="coprime"):
            CaseE(loop_letters=(), m=2, n=4, k=1, v_blocks=((),) * 2, w_blocks=((),) * 4).check_params()

    def test_unequal_blocks(self):
        with pytest.raises(CertificateError, match="equal sizes"):
            CaseB(loop_letters=('a1',), m=2, k=1, vertex_blocks=(('p',), ('q', 'r'))).check_params()

    def test_basis_partition(self, swap):
        with pytest.raises(CertificateError, match="not covered"):
            verify_certificate(swap, CaseA(loop_letters=('x',)))
        with pytest.raises(CertificateError, match="outside the basis"):
            verify_certificate(swap, CaseA(loop_letters=('x', 'y', 'z')))
        with pytest.raises(CertificateError, match="more than once"):
            verify_certificate(swap, CaseA(loop_letters=('x', 'y'), v_letters=('x',)))


class TestVerifier:
    def test_swap_case_d(self, bundled_pair):
        phi, cert = bundled_pair('swap.aut', 'swap_case_d.cert')
        assert str(accepted(phi, cert)) == "v = 1, w = 1"

    def test_case_a(self, bundled_pair):
        witnesses = accepted(*bundled_pair('case_a.aut', 'case_a.cert'))
        assert witnesses.as_dict() == {'v': 'q', 'w': 'p'}

    def test_case_b(self, bundled_pair):
        witnesses = accepted(*bundled_pair('case_b.aut', 'case_b.cert'))
        assert witnesses.as_dict() == {'v': 'p', 'w': '1', 'a': 'a1'}

    def test_case_e(self, bundled_pair):
        witnesses = accepted(*bundled_pair('case_e.aut', 'case_e.cert'))
        assert witnesses.as_dict() == {'v': '1', 'w': '1', 'a': 'a4', 'x': 'a5^-1 a4^-1'}

    def test_first_failed_clause(self, swap, alpha):
        result = verify_certificate(swap, CaseA(loop_letters=('y',), v_letters=('x',)))
        assert (result.clause, result.letter, result.word) == ('A.factor', 'x', 'y')
        result = verify_certificate(alpha, CaseA(loop_letters=('x', 'y', 'z')))
        assert (result.clause, result.letter, result.word) == ('A.last', 'z', 'x y')
        assert str(result) == "clause A.last failed at z: x y"

    def test_last_loop_with_inverted_marker(self):
        phi = GroupMorphism.from_images(Basis.of("p q a0 a1"), ['q', 'p', 'a1', 'p a0^-1 q'],
                                        inverse=['q', 'p', 'p a1^-1 q', 'a0'])
        result = verify_certificate(phi, CaseA(loop_letters=('a0', 'a1'), v_letters=('p', 'q')))
        assert (result.clause, result.letter, result.word) == ('A.last', 'a1', 'p a0^-1 q')

    def test_shift_clause(self, alpha):
        cert = CaseD(loop_letters=(), n=3, k=1, w_blocks=(('x',), ('z',), ('y',)))
        result = verify_certificate(alpha, cert)
        assert (result.clause, result.letter) == ('D.shift', 'x')

    def test_broken_witness(self, swap):
        broken = GroupMorphism(swap.basis, swap.images, GroupMorphism.from_images(swap.basis, ['x', 'y']))
        result = verify_certificate(broken, CaseD(loop_letters=(), n=2, k=1, w_blocks=(('x',), ('y',))))
        assert result.clause == 'automorphism'

    def test_batch_keeps_order(self, bundled_pair, swap):
        items = [bundled_pair('case_a.aut', 'case_a.cert'),
                 (swap, CaseA(loop_letters=('y',), v_letters=('x',))),
                 bundled_pair('swap.aut', 'swap_case_d.cert')]
        assert [r.accepted for r in verify_batch(items, workers=2)] == [True, False, True]


class TestEmitter:
    def test_swap_inessential_amalgam(self, bundled_pair):
        desc = emitted(*bundled_pair('swap.aut', 'swap_case_d.cert'))
        assert format_description(desc) == "⟨x, s | s x s^-1 = x⟩ *_{s ~ t^2} ⟨t⟩"
        assert desc.kind is SplittingKind.AMALGAM
        assert desc.tag == INESSENTIAL
        assert describe_anchors(desc) == ["s := t^2"]
        phi, _ = bundled_pair('swap.aut', 'swap_case_d.cert')
        assert h1_invariants(standard_presentation(MappingTorus(phi))) == CokernelInvariants(2, ())

    def test_case_a_hnn(self, bundled_pair):
        desc = emitted(*bundled_pair('case_a.aut', 'case_a.cert'))
        assert format_description(desc) == "⟨p, q, t | t p t^-1 = q, t q t^-1 = p⟩ *_{p^-1 t^2 ~ q t^2}"
        assert (desc.kind, desc.stable_letter, desc.stable_exponent) == (SplittingKind.HNN, 'a0', -1)
        assert describe_anchors(desc) == ["stable letter a0: a0^-1 (p^-1 t^2) a0 = q t^2"]

    def test_case_b_hnn(self, bundled_pair):
        desc = emitted(*bundled_pair('case_b.aut', 'case_b.cert'))
        assert format_description(desc) == "⟨p, s | s p s^-1 = p⟩ *_{s ~ p s}"
        assert describe_anchors(desc) == ["s := a1 t^2", "stable letter t: t (s) t^-1 = p s"]
        assert str(desc.witnesses['a1']) == "s t^-2"

    def test_case_e_amalgam(self, bundled_pair):
        desc = emitted(*bundled_pair('case_e.aut', 'case_e.cert'))
        assert format_description(desc) == "⟨r⟩ *_{r^3 ~ s^2} ⟨s⟩"
        assert describe_anchors(desc) == ["r := a4^-1 t^2", "s := t a4^-1 t^2"]
        assert desc.tag == ''

    def test_wrong_witnesses_are_flagged(self, bundled_pair):
        phi, cert = bundled_pair('case_a.aut', 'case_a.cert')
        M = MappingTorus(phi)
        witnesses = accepted(phi, cert)
        wrong = type(witnesses)(v=witnesses.w, w=witnesses.v)
        violations = check_splitting(emit_splitting(M, cert, wrong), M)
        assert [v.kind for v in violations] == ['edge']


class TestArithmetic:
    def test_modular_inverse(self):
        assert modular_inverse(3, 7) == 5
        with pytest.raises(CertificateError):
            modular_inverse(2, 4)

    def test_congruence_data(self):
        assert congruence_data(8, 3) == (3, 3, False)
        assert congruence_data(7, 3) == (2, 2, True)
        assert congruence_data(5, 4) == (1, 1, True)
        assert congruence_data(7, 2) == (3, 3, True)
        assert congruence_data(5, 3) == (2, 2, False)
        with pytest.raises(CertificateError):
            congruence_data(6, 4)

    @pytest.mark.parametrize("m, r", [(5, 2), (8, 3), (7, 4), (9, 2), (3, 2), (2, 3)])
    def test_orientation_follows_sign(self, m, r):
        s, d, inverted = congruence_data(m, r)
        assert (r * s) % m == ((m - 1) if inverted else 1) % m
        assert d == min(s, m - s)

    def test_edge_labels(self):
        assert [edge_labels(5, 2, j) for j in range(3)] == [(0, 2), (2, 4), (4, 1)]
        assert edge_labels(8, 3, 1) == (3, 6)
        with pytest.raises(CertificateError, match="coprime"):
            edge_labels(6, 4, 1)

    def test_general_amalgam(self):
        assert general_amalgam_s(5, 3) == 2
        assert general_amalgam_s(7, 3) == 5
        with pytest.raises(CertificateError, match="qm \\+ 1"):
            general_amalgam_s(3, 4)

    def test_b_generators(self):
        basis = Basis.of("a1 a2 a3")
        cert = CaseB(loop_letters=('a1', 'a2', 'a3'), m=2, k=2, vertex_blocks=((), ()))
        b = build_b_generators(cert, basis)
        assert [str(u) for u in b] == ['a1', 'a2 a1', 'a3 a2 a1']
        v = b[0] ** 0
        assert str(expected_b_image(b, v, cert, 0)) == 'a2 a1'
        assert str(expected_b_image(b, v, cert, 1)) == 'a1^-1 a3 a2 a1'
        assert str(expected_b_image(b, v, cert, 2)) == 'a3 a2 a1'
