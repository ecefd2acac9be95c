"""Materialize an accepted template as an explicit splitting of ``M_phi``.

A description lists its vertex groups as a factor ``F_S`` plus one
conjugating letter with relations ``c y c^-1 = (word in F_S)``, the edge
identification, and the anchors that send every new letter into ``M_phi``.
Generation witnesses express each F-letter and ``t`` over the description's
generators, so :func:`check_splitting` can confirm the displayed groups
really present ``M_phi`` rather than a subgroup.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from torus_tool.torus import (
    AnchoredPresentation,
    MappingTorus,
    TorusElement,
    atom_anchors,
    evaluate_word,
    to_alphabet,
    torus_eval,
)
from torus_tool.utils.helpers import fresh_name
from torus_tool.words import STABLE_LETTER, Basis, Word, WordError, format_word, uses_only

from .certificate import CaseA, CaseB, CaseD, CaseE, CertificateError, SplittingCertificate
from .verifier import WitnessSet

logger = logging.getLogger(__name__)

INESSENTIAL = 'inessential'


class SplittingKind(str, Enum):
    HNN = 'HNN'
    AMALGAM = 'amalgam'


@dataclass(frozen=True)
class VertexGroup:
    """``<factor, conjugator | conjugator y conjugator^-1 = rhs(y)>``."""

    factor: Tuple[str, ...]
    conjugator: str
    relations: Tuple[Tuple[Word, Word], ...]

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.factor + (self.conjugator,)

    def __str__(self) -> str:
        if not self.relations:
            return f"⟨{', '.join(self.generators)}⟩"
        rels = ', '.join(f"{lhs} = {rhs}" for lhs, rhs in self.relations)
        return f"⟨{', '.join(self.generators)} | {rels}⟩"


@dataclass(frozen=True)
class SplittingDescription:
    """An HNN extension (one vertex) or amalgam (two vertices) over an infinite cyclic edge.

    For an HNN extension the edge relation is
    ``stable^sigma * left * stable^-sigma = right``; for an amalgam it is
    ``left = right`` with ``left`` in the first vertex group.
    """

    case: str
    kind: SplittingKind
    alphabet: Basis
    vertices: Tuple[VertexGroup, ...]
    edge: Tuple[Word, Word]
    definitions: Mapping[str, Word] = field(default_factory=dict, hash=False)
    witnesses: Mapping[str, Word] = field(default_factory=dict, hash=False)
    stable_letter: Optional[str] = None
    stable_exponent: int = 1
    tag: str = ''

    def edge_relation(self) -> Tuple[Word, Word]:
        left, right = self.edge
        if self.kind is SplittingKind.HNN:
            e = Word.letter(self.alphabet, self.stable_letter, self.stable_exponent)
            left = e * left * ~e
        return left, right


@dataclass(frozen=True)
class SplittingViolation:
    kind: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} {self.subject}: {self.detail}"


def _embed(u: Word, alphabet: Basis) -> Word:
    try:
        return to_alphabet(u, alphabet)
    except WordError as e:
        raise CertificateError(f"Cannot express {format_word(u) or '1'} over the splitting generators: {e}")


def _conjugation_relations(M: MappingTorus, alphabet: Basis, conjugator: str, value: TorusElement,
                           block: Sequence[str]) -> Tuple[Tuple[Word, Word], ...]:
    c = Word.letter(alphabet, conjugator)
    relations = []
    for name in block:
        image = M.mul(M.mul(value, TorusElement(Word.letter(M.basis, name), 0)), M.inverse(value))
        if image.n != 0 or not uses_only(image.u, block):
            raise CertificateError(f"{conjugator} {name} {conjugator}^-1 = {image} leaves the vertex factor")
        relations.append((c * Word.letter(alphabet, name) * ~c, _embed(image.u, alphabet)))
    return tuple(relations)


def _express(u: Word, known: Mapping[str, Word], alphabet: Basis) -> Word:
    result = Word.identity(alphabet)
    for letter, exponent in u.syllables:
        result = result * known[u.basis.letters[letter]] ** exponent
    return result


def _solve_occurrence(image: Word, name: str, known: Mapping[str, Word]) -> Optional[Tuple[Word, int, Word]]:
    index = image.basis.index(name)
    positions = [i for i, (letter, _) in enumerate(image.syllables) if letter == index]
    if len(positions) != 1 or abs(image.syllables[positions[0]][1]) != 1:
        return None
    i = positions[0]
    before = Word(image.basis, image.syllables[:i])
    after = Word(image.basis, image.syllables[i + 1:])
    if not (before.letters_used() | after.letters_used()) <= set(known):
        return None
    return before, image.syllables[i][1], after


def _derive(M: MappingTorus, alphabet: Basis, known: Dict[str, Word], name: str) -> Optional[Word]:
    T = known[STABLE_LETTER]
    image = M.phi.image(name)
    if image.letters_used() <= set(known):
        return ~T * _express(image, known, alphabet) * T
    preimage = M.phi_inverse.image(name)
    if preimage.letters_used() <= set(known):
        return T * _express(preimage, known, alphabet) * ~T
    for other in M.basis:
        if other not in known:
            continue
        solved = _solve_occurrence(M.phi.image(other), name, known)
        if solved is None:
            continue
        before, exponent, after = solved
        value = (~_express(before, known, alphabet) * T * known[other] * ~T
                 * ~_express(after, known, alphabet))
        return value if exponent == 1 else ~value
    return None


def generation_witnesses(M: MappingTorus, alphabet: Basis, seeds: Mapping[str, Word]) -> Dict[str, Word]:
    """Express F-letters and ``t`` over ``alphabet`` by closing ``seeds`` under ``t x t^-1 = phi(x)``.

    Letters shared with ``M.alphabet`` are their own witnesses. Letters that
    cannot be reached are left out; :func:`check_splitting` reports them.
    """
    known: Dict[str, Word] = {name: Word.letter(alphabet, name) for name in alphabet if name in M.alphabet}
    known.update(seeds)
    if STABLE_LETTER not in known:
        raise CertificateError("Generation witnesses need an expression for t")
    pending = [name for name in M.basis if name not in known]
    progress = True
    while pending and progress:
        progress = False
        for name in list(pending):
            expression = _derive(M, alphabet, known, name)
            if expression is not None:
                known[name] = expression
                pending.remove(name)
                progress = True
    if pending:
        logger.warning(f"No generation witness found for {' '.join(pending)}")
    return {name: known[name] for name in M.alphabet if name in known}


def _torus_word(M: MappingTorus, *parts: Tuple[str, int]) -> Word:
    result = Word.identity(M.alphabet)
    for name, exponent in parts:
        result = result * Word.letter(M.alphabet, name, exponent)
    return result


def _emit_a(M: MappingTorus, cert: CaseA, ws: WitnessSet) -> SplittingDescription:
    a0 = cert.loop(0)
    alphabet = Basis.presentation(cert.v_letters + (STABLE_LETTER, a0))
    vertex = VertexGroup(cert.v_letters, STABLE_LETTER,
                         _conjugation_relations(M, alphabet, STABLE_LETTER, M.stable(), cert.v_letters))
    tk = Word.letter(alphabet, STABLE_LETTER, cert.k)
    edge = (~_embed(ws.w, alphabet) * tk, _embed(ws.v, alphabet) * tk)
    witnesses = generation_witnesses(M, alphabet, {})
    return SplittingDescription('A', SplittingKind.HNN, alphabet, (vertex,), edge, {}, witnesses,
                                stable_letter=a0, stable_exponent=-1)


def _emit_b(M: MappingTorus, cert: CaseB, ws: WitnessSet) -> SplittingDescription:
    m, k = cert.m, cert.k
    block = cert.vertex_blocks[0]
    s = fresh_name('s', M.alphabet.letters)
    alphabet = Basis.presentation(block + (s, STABLE_LETTER))
    definition = _torus_word(M, (cert.loop(m - 1), 1), (STABLE_LETTER, m))
    vertex = VertexGroup(block, s, _conjugation_relations(M, alphabet, s, torus_eval(definition, M), block))
    sk = Word.letter(alphabet, s, k)
    edge = (sk, _embed(ws.v, alphabet) * sk)
    seeds = {cert.loop(m - 1): Word.letter(alphabet, s) * Word.letter(alphabet, STABLE_LETTER, -m)}
    witnesses = generation_witnesses(M, alphabet, seeds)
    return SplittingDescription('B', SplittingKind.HNN, alphabet, (vertex,), edge, {s: definition}, witnesses,
                                stable_letter=STABLE_LETTER, stable_exponent=1)


def _emit_d(M: MappingTorus, cert: CaseD, ws: WitnessSet) -> SplittingDescription:
    n, k = cert.n, cert.k
    block = cert.w_blocks[0]
    s = fresh_name('s', M.alphabet.letters)
    alphabet = Basis.presentation(block + (s,) + cert.v_letters + (STABLE_LETTER,))
    if k > 1:
        definition = _torus_word(M, (cert.loop(n), 1), (STABLE_LETTER, n))
    else:
        definition = _torus_word(M, (STABLE_LETTER, n))
    w_side = VertexGroup(block, s, _conjugation_relations(M, alphabet, s, torus_eval(definition, M), block))
    v_side = VertexGroup(cert.v_letters, STABLE_LETTER,
                         _conjugation_relations(M, alphabet, STABLE_LETTER, M.stable(), cert.v_letters))
    edge = (~_embed(ws.w, alphabet) * Word.letter(alphabet, s, k),
            _embed(ws.v, alphabet) * Word.letter(alphabet, STABLE_LETTER, n * k))
    seeds = {}
    if k > 1:
        seeds[cert.loop(n)] = Word.letter(alphabet, s) * Word.letter(alphabet, STABLE_LETTER, -n)
    witnesses = generation_witnesses(M, alphabet, seeds)
    # <t> with edge t^(nk), nk >= 2, is not maximal cyclic
    tag = INESSENTIAL if not cert.v_letters and n * k >= 2 else ''
    return SplittingDescription('D', SplittingKind.AMALGAM, alphabet, (w_side, v_side), edge, {s: definition},
                                witnesses, tag=tag)


def _emit_e(M: MappingTorus, cert: CaseE, ws: WitnessSet) -> SplittingDescription:
    m, n, k, q = cert.m, cert.n, cert.k, cert.q
    v_block, w_block = cert.v_blocks[0], cert.w_blocks[0]
    r = fresh_name('r', M.alphabet.letters)
    s = fresh_name('s', M.alphabet.letters + (r,))
    alphabet = Basis.presentation(v_block + (r,) + w_block + (s,))
    r_definition = _torus_word(M, (cert.loop(cert.first_loop), -1), (STABLE_LETTER, m))
    s_definition = _torus_word(M, (STABLE_LETTER, 1)) * r_definition ** q
    v_side = VertexGroup(v_block, r, _conjugation_relations(M, alphabet, r, torus_eval(r_definition, M), v_block))
    w_side = VertexGroup(w_block, s, _conjugation_relations(M, alphabet, s, torus_eval(s_definition, M), w_block))
    edge = (_embed(ws.v, alphabet) * Word.letter(alphabet, r, k * n),
            ~_embed(ws.w, alphabet) * Word.letter(alphabet, s, k * m))
    t_word = Word.letter(alphabet, s) * Word.letter(alphabet, r, -q)
    seeds = {STABLE_LETTER: t_word, cert.loop(cert.first_loop): t_word ** m * Word.letter(alphabet, r, -1)}
    witnesses = generation_witnesses(M, alphabet, seeds)
    return SplittingDescription('E', SplittingKind.AMALGAM, alphabet, (v_side, w_side), edge,
                                {r: r_definition, s: s_definition}, witnesses)


_EMITTERS = {CaseA: _emit_a, CaseB: _emit_b, CaseD: _emit_d, CaseE: _emit_e}


def emit_splitting(phi, cert: SplittingCertificate, witnesses: WitnessSet) -> SplittingDescription:
    """Build the splitting displayed by the case template of an accepted certificate.

    Args:
        phi: The automorphism (a ``GroupMorphism``) or its ``MappingTorus``.
        cert: Certificate accepted by :func:`verify_certificate`.
        witnesses: The witnesses it returned.
    """
    M = phi if isinstance(phi, MappingTorus) else MappingTorus(phi)
    description = _EMITTERS[type(cert)](M, cert, witnesses)
    logger.debug(f"Emitted case {cert.tag} splitting: {format_description(description)}")
    return description


def description_anchors(desc: SplittingDescription, M: MappingTorus) -> Dict[str, TorusElement]:
    atoms = atom_anchors(M)
    anchors = {}
    for name in desc.alphabet:
        if name in desc.definitions:
            anchors[name] = torus_eval(desc.definitions[name], M)
        elif name in atoms:
            anchors[name] = atoms[name]
    return anchors


def check_splitting(desc: SplittingDescription, M: MappingTorus) -> List[SplittingViolation]:
    """Evaluate every relation, the edge identification and the generation witnesses in ``M_phi``.

    Returns:
        Violations found; an empty list means the description is valid.
    """
    violations: List[SplittingViolation] = []
    anchors = description_anchors(desc, M)
    for name in desc.alphabet:
        if name not in anchors:
            violations.append(SplittingViolation('anchor', name, 'generator has no anchor'))
    if violations:
        return violations

    def value(word: Word) -> TorusElement:
        return evaluate_word(word, anchors, M)

    for vertex in desc.vertices:
        for lhs, rhs in vertex.relations:
            subject = f"{lhs} = {rhs}"
            if not uses_only(rhs, vertex.factor):
                violations.append(SplittingViolation('vertex', subject, 'right side leaves the vertex factor'))
            left, right = value(lhs), value(rhs)
            if left != right:
                violations.append(SplittingViolation('vertex', subject, f"{left} != {right}"))

    left, right = desc.edge
    subject = f"{left} ~ {right}"
    if not uses_only(left, desc.vertices[0].generators) or not uses_only(right, desc.vertices[-1].generators):
        violations.append(SplittingViolation('edge', subject, 'edge words leave their vertex groups'))
    lhs, rhs = desc.edge_relation()
    if value(lhs) != value(rhs):
        violations.append(SplittingViolation('edge', subject, f"{value(lhs)} != {value(rhs)}"))

    atoms = atom_anchors(M)
    for name in M.alphabet:
        if name not in desc.witnesses:
            violations.append(SplittingViolation('witness', name, 'no generation witness'))
            continue
        found = value(desc.witnesses[name])
        if found != atoms[name]:
            violations.append(SplittingViolation('witness', name, f"evaluates to {found}, expected {atoms[name]}"))

    for violation in violations:
        logger.debug(f"Case {desc.case} splitting: {violation}")
    return violations


def description_presentation(desc: SplittingDescription, M: MappingTorus) -> AnchoredPresentation:
    """The finite presentation the description displays, anchored in ``M_phi``."""
    relators = [lhs * ~rhs for vertex in desc.vertices for lhs, rhs in vertex.relations]
    lhs, rhs = desc.edge_relation()
    relators.append(lhs * ~rhs)
    return AnchoredPresentation(M, desc.alphabet, tuple(relators), description_anchors(desc, M),
                                dict(desc.witnesses))


def format_description(desc: SplittingDescription) -> str:
    """One-line display: ``G *_{L ~ R}`` or ``A *_{L ~ R} B``."""
    left, right = desc.edge
    joint = f"*_{{{left} ~ {right}}}"
    if desc.kind is SplittingKind.HNN:
        return f"{desc.vertices[0]} {joint}"
    return f"{desc.vertices[0]} {joint} {desc.vertices[1]}"


def describe_anchors(desc: SplittingDescription) -> List[str]:
    lines = [f"{name} := {word}" for name, word in desc.definitions.items()]
    if desc.kind is SplittingKind.HNN:
        e = Word.letter(desc.alphabet, desc.stable_letter, desc.stable_exponent)
        left, right = desc.edge
        lines.append(f"stable letter {desc.stable_letter}: {e} ({left}) {~e} = {right}")
    return lines
