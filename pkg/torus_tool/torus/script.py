"""Tietze replay scripts.

One directive per line, ``#`` starts a comment::

    automorphism swap.aut
    addgen s := t^2
    addrel s x s^-1 x^-1 by r2 ; t : r0 ; r1 ; x : r2^-1
    delgen y via 0
    delrel 0 by r1^-1 ; r2 ; x : r1
    expect generators x t s
    expect relators s t^-2 ; s x s^-1 x^-1

Certificates are ``;``-separated terms ``[conjugator :] r<i>[^-1]`` with
relators numbered from 0, or the keyword ``anchor`` (``addrel`` only) to
check the relator in ``M_phi``.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from tqdm import tqdm

from torus_tool.intlinalg import CokernelInvariants
from torus_tool.morphisms import GroupMorphism, load_automorphism
from torus_tool.words import format_word

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
    check_anchor,
    h1_invariants,
    move_mode,
    standard_presentation,
)
from .torus import MappingTorus

logger = logging.getLogger(__name__)

_REF_PATTERN = re.compile(r'^r(\d+)(\^-1)?$')


class ScriptError(ValueError):
    """Raised for malformed Tietze scripts."""


@dataclass
class TietzeScript:
    automorphism_path: Optional[Path] = None
    moves: List[Tuple[int, TietzeMove]] = field(default_factory=list)
    expected_generators: Optional[Tuple[str, ...]] = None
    expected_relators: Optional[Tuple[str, ...]] = None
    source: str = '<string>'


@dataclass(frozen=True)
class ReplayStep:
    line: int
    move: str
    mode: str
    violations: Tuple[AnchorViolation, ...]
    h1: CokernelInvariants
    presentation: str


@dataclass
class ReplayReport:
    initial: str
    initial_h1: CokernelInvariants
    steps: List[ReplayStep] = field(default_factory=list)
    final: Optional[AnchoredPresentation] = None
    error: Optional[str] = None
    final_matches: Optional[bool] = None

    @property
    def h1_constant(self) -> bool:
        return all(step.h1 == self.initial_h1 for step in self.steps)

    @property
    def ok(self) -> bool:
        return (self.error is None and self.h1_constant and self.final_matches is not False
                and not any(step.violations for step in self.steps))


def parse_certificate(text: str) -> Optional[Certificate]:
    text = text.strip()
    if text == 'anchor':
        return None
    terms = []
    for chunk in filter(None, (part.strip() for part in text.split(';'))):
        conjugator, _, ref = chunk.rpartition(':')
        match = _REF_PATTERN.match(ref.strip())
        if not match:
            raise ScriptError(f"Malformed certificate term {chunk!r}")
        terms.append(CertificateTerm(int(match.group(1)), -1 if match.group(2) else 1, conjugator.strip()))
    return tuple(terms)


def _parse_line(line: str) -> Union[TietzeMove, Tuple[str, str]]:
    keyword, _, rest = line.partition(' ')
    rest = rest.strip()
    if keyword == 'addgen':
        name, sep, definition = rest.partition(':=')
        if not sep:
            raise ScriptError("addgen needs 'name := word'")
        return AddGenerator(name.strip(), definition.strip())
    if keyword == 'delgen':
        match = re.match(r'^(\S+)\s+via\s+(\d+)$', rest)
        if not match:
            raise ScriptError("delgen needs 'name via <relator index>'")
        return RemoveGenerator(match.group(1), int(match.group(2)))
    if keyword == 'addrel':
        word, sep, certificate = rest.partition(' by ')
        if not sep:
            raise ScriptError("addrel needs 'word by <certificate>'")
        return AddRelator(word.strip(), parse_certificate(certificate))
    if keyword == 'delrel':
        match = re.match(r'^(\d+)\s+by(?:\s+(.*))?$', rest)
        if not match:
            raise ScriptError("delrel needs '<index> by <certificate>'")
        certificate = parse_certificate(match.group(2) or '')
        if certificate is None:
            raise ScriptError("delrel needs a derivation certificate")
        return RemoveRelator(int(match.group(1)), certificate)
    if keyword in ('automorphism', 'expect'):
        return keyword, rest
    raise ScriptError(f"Unknown directive {keyword!r}")


def parse_script(text: str, source: str = '<string>', base_dir: Optional[Path] = None) -> TietzeScript:
    script = TietzeScript(source=source)
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            parsed = _parse_line(line)
        except ScriptError as e:
            raise ScriptError(f"{source}:{number}: {e}")
        if isinstance(parsed, tuple):
            keyword, rest = parsed
            if keyword == 'automorphism':
                path = Path(rest)
                script.automorphism_path = path if path.is_absolute() or base_dir is None else base_dir / path
            elif rest.startswith('generators'):
                script.expected_generators = tuple(rest[len('generators'):].split())
            elif rest.startswith('relators'):
                script.expected_relators = tuple(part.strip() for part in rest[len('relators'):].split(';'))
            else:
                raise ScriptError(f"{source}:{number}: expect needs 'generators' or 'relators'")
        else:
            script.moves.append((number, parsed))
    return script


def load_script(path: Union[str, Path]) -> TietzeScript:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Tietze script not found: {path}")
    return parse_script(path.read_text(encoding='utf-8'), source=str(path), base_dir=path.parent)


def _final_matches(script: TietzeScript, final: AnchoredPresentation) -> Optional[bool]:
    if script.expected_generators is None and script.expected_relators is None:
        return None
    matches = True
    if script.expected_generators is not None:
        matches &= tuple(final.generators) == script.expected_generators
    if script.expected_relators is not None:
        try:
            expected = {format_word(final.parse(text)) for text in script.expected_relators}
        except ValueError:
            return False
        matches &= expected == {format_word(r) for r in final.relators}
        matches &= len(script.expected_relators) == len(final.relators)
    return matches


def replay_script(script: TietzeScript, phi: Optional[GroupMorphism] = None,
                  show_progress: bool = False) -> ReplayReport:
    """Apply every move, checking anchors and H1 after each one."""
    if phi is None:
        if script.automorphism_path is None:
            raise ScriptError(f"{script.source}: no automorphism directive")
        phi = load_automorphism(script.automorphism_path)
    M = MappingTorus(phi)
    presentation = standard_presentation(M)
    report = ReplayReport(initial=str(presentation), initial_h1=h1_invariants(presentation))
    logger.info(f"Replaying {len(script.moves)} moves from {script.source}")

    for number, move in tqdm(script.moves, desc="Tietze moves", disable=not show_progress):
        try:
            presentation = apply_tietze_move(presentation, move)
        except TietzeError as e:
            report.error = f"line {number}: {e}"
            logger.error(f"Move rejected at line {number}: {e}")
            break
        violations = tuple(check_anchor(presentation))
        step = ReplayStep(number, str(move), move_mode(move), violations, h1_invariants(presentation),
                          str(presentation))
        report.steps.append(step)
        for violation in violations:
            logger.warning(f"line {number}: {violation}")

    report.final = presentation
    if report.error is None:
        report.final_matches = _final_matches(script, presentation)
    return report
