"""Anchored presentations of a mapping torus and their Tietze moves.

An anchored presentation carries an evaluation of every generator into
``M_phi`` and, for each F-letter and ``t``, a word over the current
generators expressing it. Every move keeps both checkable with
:func:`check_anchor`.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Tuple, Union

from torus_tool.intlinalg import CokernelInvariants, IntMatrix, cokernel_invariants, int_matrix
from torus_tool.morphisms import apply, substitution
from torus_tool.words import (
    STABLE_LETTER,
    Basis,
    Word,
    WordError,
    format_word,
    parse_word,
    rename_letters,
)

from .torus import MappingTorus, TorusElement, atom_anchors, evaluate_word

logger = logging.getLogger(__name__)


class TietzeError(ValueError):
    """Raised when a Tietze move is rejected."""


@dataclass(frozen=True)
class AnchorViolation:
    kind: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} {self.subject}: {self.detail}"


@dataclass(frozen=True)
class CertificateTerm:
    """``conjugator . r_index^exponent . conjugator^-1``."""

    index: int
    exponent: int = 1
    conjugator: str = ''

    def __str__(self) -> str:
        ref = f"r{self.index}" + ('^-1' if self.exponent < 0 else '')
        return f"{self.conjugator} : {ref}" if self.conjugator else ref


Certificate = Tuple[CertificateTerm, ...]


def format_certificate(certificate: Optional[Certificate]) -> str:
    if certificate is None:
        return 'anchor'
    return ' ; '.join(str(term) for term in certificate)


@dataclass(frozen=True)
class AddGenerator:
    name: str
    definition: str

    def __str__(self) -> str:
        return f"addgen {self.name} := {self.definition}"


@dataclass(frozen=True)
class RemoveGenerator:
    name: str
    relator_index: int

    def __str__(self) -> str:
        return f"delgen {self.name} via {self.relator_index}"


@dataclass(frozen=True)
class AddRelator:
    """``certificate=None`` selects anchored mode."""

    relator: str
    certificate: Optional[Certificate] = None

    def __str__(self) -> str:
        return f"addrel {self.relator} by {format_certificate(self.certificate)}"


@dataclass(frozen=True)
class RemoveRelator:
    index: int
    certificate: Certificate = ()

    def __str__(self) -> str:
        return f"delrel {self.index} by {format_certificate(self.certificate)}"


TietzeMove = Union[AddGenerator, RemoveGenerator, AddRelator, RemoveRelator]


def move_mode(move: TietzeMove) -> str:
    if isinstance(move, AddGenerator):
        return 'definition'
    if isinstance(move, RemoveGenerator):
        return 'substitution'
    if isinstance(move, AddRelator) and move.certificate is None:
        return 'anchored'
    return 'certified'


@dataclass(frozen=True)
class AnchoredPresentation:
    torus: MappingTorus
    alphabet: Basis
    relators: Tuple[Word, ...]
    anchors: Mapping[str, TorusElement] = field(hash=False)
    witnesses: Mapping[str, Word] = field(hash=False)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.alphabet.letters

    def parse(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def evaluate(self, word: Union[Word, str]) -> TorusElement:
        if isinstance(word, str):
            word = self.parse(word)
        return evaluate_word(word, self.anchors, self.torus)

    def __str__(self) -> str:
        return format_presentation(self.generators, self.relators)


def format_presentation(generators, relators) -> str:
    rels = ', '.join(format_word(r) or '1' for r in relators)
    return f"⟨{', '.join(generators)} | {rels}⟩"


def to_alphabet(u: Word, alphabet: Basis) -> Word:
    return rename_letters(u, {}, alphabet)


def standard_presentation(M: MappingTorus) -> AnchoredPresentation:
    """``<x_1..x_b, t | t x_i t^-1 phi(x_i)^-1>`` with identity anchors."""
    alphabet = M.alphabet
    t = Word.letter(alphabet, STABLE_LETTER)
    relators = []
    for name, image in zip(M.basis, M.phi.images):
        x = Word.letter(alphabet, name)
        relators.append(t * x * ~t * ~to_alphabet(image, alphabet))
    witnesses = {name: Word.letter(alphabet, name) for name in alphabet}
    return AnchoredPresentation(M, alphabet, tuple(relators), atom_anchors(M), witnesses)


def certificate_product(p: AnchoredPresentation, certificate: Certificate) -> Word:
    result = Word.identity(p.alphabet)
    for term in certificate:
        if not 0 <= term.index < len(p.relators):
            raise TietzeError(f"Certificate references r{term.index}, presentation has {len(p.relators)} relators")
        conjugator = p.parse(term.conjugator)
        result = result * conjugator * (p.relators[term.index] ** term.exponent) * ~conjugator
    return result


def _add_generator(p: AnchoredPresentation, move: AddGenerator) -> AnchoredPresentation:
    if move.name in p.alphabet:
        raise TietzeError(f"Generator {move.name!r} already present")
    definition = p.parse(move.definition)
    try:
        alphabet = p.alphabet.extend(Basis.presentation([move.name]))
    except WordError as e:
        raise TietzeError(str(e))
    anchors = dict(p.anchors)
    anchors[move.name] = p.evaluate(definition)
    relators = tuple(to_alphabet(r, alphabet) for r in p.relators)
    relators += (Word.letter(alphabet, move.name) * ~to_alphabet(definition, alphabet),)
    witnesses = {key: to_alphabet(w, alphabet) for key, w in p.witnesses.items()}
    return AnchoredPresentation(p.torus, alphabet, relators, anchors, witnesses)


def _solve_for(relator: Word, name: str) -> Word:
    """Solve ``relator = 1`` for a letter occurring exactly once with exponent +-1."""
    index = relator.basis.index(name)
    positions = [i for i, (letter, _) in enumerate(relator.syllables) if letter == index]
    if len(positions) != 1 or abs(relator.syllables[positions[0]][1]) != 1:
        raise TietzeError(f"Relator {format_word(relator)} does not define {name} (needs one occurrence, exponent +-1)")
    i = positions[0]
    before = Word(relator.basis, relator.syllables[:i])
    after = Word(relator.basis, relator.syllables[i + 1:])
    if relator.syllables[i][1] == 1:
        return ~before * ~after
    return after * before


def _remove_generator(p: AnchoredPresentation, move: RemoveGenerator) -> AnchoredPresentation:
    if move.name not in p.alphabet:
        raise TietzeError(f"Unknown generator {move.name!r}")
    if not 0 <= move.relator_index < len(p.relators):
        raise TietzeError(f"No relator r{move.relator_index}")
    expression = _solve_for(p.relators[move.relator_index], move.name)
    substitute = substitution(p.alphabet, {move.name: expression})
    alphabet = Basis.presentation([g for g in p.generators if g != move.name])

    def rewrite(u: Word) -> Word:
        return to_alphabet(apply(substitute, u), alphabet)

    relators = tuple(rewrite(r) for i, r in enumerate(p.relators) if i != move.relator_index)
    anchors = {key: value for key, value in p.anchors.items() if key != move.name}
    witnesses = {key: rewrite(w) for key, w in p.witnesses.items()}
    return AnchoredPresentation(p.torus, alphabet, relators, anchors, witnesses)


def _add_relator(p: AnchoredPresentation, move: AddRelator) -> AnchoredPresentation:
    relator = p.parse(move.relator)
    if move.certificate is None:
        value = p.evaluate(relator)
        if not value.is_identity():
            raise TietzeError(f"Anchor violation: {format_word(relator)} evaluates to {value}")
    else:
        derived = certificate_product(p, move.certificate)
        if derived != relator:
            raise TietzeError(f"Certificate reduces to {format_word(derived) or '1'}, "
                              f"not {format_word(relator) or '1'}")
    return AnchoredPresentation(p.torus, p.alphabet, p.relators + (relator,), p.anchors, p.witnesses)


def _remove_relator(p: AnchoredPresentation, move: RemoveRelator) -> AnchoredPresentation:
    if not 0 <= move.index < len(p.relators):
        raise TietzeError(f"No relator r{move.index}")
    if any(term.index == move.index for term in move.certificate):
        raise TietzeError(f"Certificate for r{move.index} uses r{move.index} itself")
    derived = certificate_product(p, move.certificate)
    if derived != p.relators[move.index]:
        raise TietzeError(f"Certificate reduces to {format_word(derived) or '1'}, "
                          f"not r{move.index} = {format_word(p.relators[move.index])}")
    relators = tuple(r for i, r in enumerate(p.relators) if i != move.index)
    return AnchoredPresentation(p.torus, p.alphabet, relators, p.anchors, p.witnesses)


def apply_tietze_move(p: AnchoredPresentation, move: TietzeMove) -> AnchoredPresentation:
    try:
        if isinstance(move, AddGenerator):
            return _add_generator(p, move)
        if isinstance(move, RemoveGenerator):
            return _remove_generator(p, move)
        if isinstance(move, AddRelator):
            return _add_relator(p, move)
        if isinstance(move, RemoveRelator):
            return _remove_relator(p, move)
    except WordError as e:
        raise TietzeError(f"{move}: {e}")
    raise TietzeError(f"Unsupported move: {move!r}")


def _expected_value(p: AnchoredPresentation, key: str) -> TorusElement:
    if key == STABLE_LETTER:
        return p.torus.stable()
    return TorusElement(Word.letter(p.torus.basis, key), 0)


def check_anchor(p: AnchoredPresentation) -> List[AnchorViolation]:
    """Every relator must evaluate to 1 and every witness to the element it names."""
    violations = []
    for name in p.generators:
        if name not in p.anchors:
            violations.append(AnchorViolation('anchor', name, 'generator has no anchor'))
    if violations:
        return violations
    for i, relator in enumerate(p.relators):
        value = p.evaluate(relator)
        if not value.is_identity():
            violations.append(AnchorViolation('relator', f"r{i}", f"{format_word(relator)} evaluates to {value}"))
    for key, witness in p.witnesses.items():
        value = p.evaluate(witness)
        expected = _expected_value(p, key)
        if value != expected:
            violations.append(AnchorViolation('witness', key, f"{format_word(witness) or '1'} evaluates to "
                                                              f"{value}, expected {expected}"))
    return violations


def relation_matrix(generators, relators) -> IntMatrix:
    """Generators x relators matrix of exponent sums."""
    columns = [r.exponent_vector() for r in relators]
    return int_matrix([[column[i] for column in columns] for i in range(len(generators))], cols=len(relators))


def presentation_h1(generators, relators) -> CokernelInvariants:
    return cokernel_invariants(relation_matrix(generators, relators))


def h1_invariants(p: AnchoredPresentation) -> CokernelInvariants:
    """Abelian invariants of the presented group."""
    return presentation_h1(p.generators, p.relators)
