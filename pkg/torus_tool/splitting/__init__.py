"""Splitting certificates, template verification and splitting emission."""

from .arithmetic import (
    CongruenceData,
    build_b_generators,
    congruence_data,
    edge_labels,
    expected_b_image,
    general_amalgam_s,
    modular_inverse,
)
from .certificate import (
    CASES,
    CaseA,
    CaseB,
    CaseD,
    CaseE,
    CertificateError,
    SplittingCertificate,
    dump_certificate,
    load_certificate,
    parse_certificate_text,
    save_certificate,
)
from .emitter import (
    INESSENTIAL,
    SplittingDescription,
    SplittingKind,
    SplittingViolation,
    VertexGroup,
    check_splitting,
    describe_anchors,
    description_anchors,
    description_presentation,
    emit_splitting,
    format_description,
    generation_witnesses,
)
from .synthesis import mutate_instance, random_factor_automorphism, random_word, synthesize_instance
from .verifier import (
    Accept,
    Reject,
    VerificationResult,
    WitnessSet,
    case_e_conjugator,
    verify_batch,
    verify_certificate,
)

__all__ = [
    'Accept',
    'CASES',
    'CaseA',
    'CaseB',
    'CaseD',
    'CaseE',
    'CertificateError',
    'CongruenceData',
    'INESSENTIAL',
    'Reject',
    'SplittingCertificate',
    'SplittingDescription',
    'SplittingKind',
    'SplittingViolation',
    'VerificationResult',
    'VertexGroup',
    'WitnessSet',
    'build_b_generators',
    'case_e_conjugator',
    'check_splitting',
    'congruence_data',
    'describe_anchors',
    'description_anchors',
    'description_presentation',
    'dump_certificate',
    'edge_labels',
    'emit_splitting',
    'expected_b_image',
    'format_description',
    'general_amalgam_s',
    'generation_witnesses',
    'load_certificate',
    'modular_inverse',
    'mutate_instance',
    'parse_certificate_text',
    'random_factor_automorphism',
    'random_word',
    'save_certificate',
    'synthesize_instance',
    'verify_batch',
    'verify_certificate',
]
