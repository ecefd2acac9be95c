"""Mapping tori, anchored presentations and Tietze replays."""

from .presentation import (
    AddGenerator,
    AddRelator,
    AnchoredPresentation,
    AnchorViolation,
    Certificate,
    CertificateTerm,
    RemoveGenerator,
    RemoveRelator,
    TietzeError,
    TietzeMove,
    apply_tietze_move,
    certificate_product,
    check_anchor,
    format_presentation,
    h1_invariants,
    presentation_h1,
    relation_matrix,
    standard_presentation,
    to_alphabet,
)
from .script import (
    ReplayReport,
    ReplayStep,
    ScriptError,
    TietzeScript,
    load_script,
    parse_certificate,
    parse_script,
    replay_script,
)
from .torus import (
    MappingTorus,
    TorusElement,
    atom_anchors,
    evaluate_word,
    torus_eval,
    torus_inverse,
    torus_mul,
    torus_power,
)

__all__ = [
    'AddGenerator',
    'AddRelator',
    'AnchoredPresentation',
    'AnchorViolation',
    'Certificate',
    'CertificateTerm',
    'MappingTorus',
    'RemoveGenerator',
    'RemoveRelator',
    'ReplayReport',
    'ReplayStep',
    'ScriptError',
    'TietzeError',
    'TietzeMove',
    'TietzeScript',
    'TorusElement',
    'apply_tietze_move',
    'atom_anchors',
    'certificate_product',
    'check_anchor',
    'evaluate_word',
    'format_presentation',
    'h1_invariants',
    'load_script',
    'parse_certificate',
    'parse_script',
    'presentation_h1',
    'relation_matrix',
    'replay_script',
    'standard_presentation',
    'to_alphabet',
    'torus_eval',
    'torus_inverse',
    'torus_mul',
    'torus_power',
]
