"""Free-group morphisms and automorphism files."""

from .loader import (
    AutomorphismFileError,
    dump_automorphism,
    load_automorphism,
    new_parser,
    parse_automorphism,
    save_automorphism,
)
from .morphism import (
    GroupMorphism,
    MissingInverseWitness,
    MorphismError,
    abelianization_matrix,
    apply,
    apply_all,
    compose,
    free_product,
    identity_morphism,
    inverse,
    power,
    preserves_factor,
    restricts_to,
    substitution,
    verify_automorphism,
)

__all__ = [
    'AutomorphismFileError',
    'GroupMorphism',
    'MissingInverseWitness',
    'MorphismError',
    'abelianization_matrix',
    'apply',
    'apply_all',
    'compose',
    'dump_automorphism',
    'free_product',
    'identity_morphism',
    'inverse',
    'load_automorphism',
    'new_parser',
    'parse_automorphism',
    'power',
    'preserves_factor',
    'restricts_to',
    'save_automorphism',
    'substitution',
    'verify_automorphism',
]
