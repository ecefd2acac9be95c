"""Template verification: does ``phi`` have the exact form a certificate claims?

Each case walks its template clause by clause and stops at the first failure,
reporting the clause id, the letter whose image failed and the reduced word
that was found. Accepted certificates yield the witness words the emitter
needs.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from torus_tool.morphisms import GroupMorphism, MissingInverseWitness, apply, restricts_to, verify_automorphism
from torus_tool.words import Basis, Word, format_word, uses_only

from .certificate import CaseA, CaseB, CaseD, CaseE, SplittingCertificate, check_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessSet:
    """Words extracted from an accepted template; ``a`` and ``x`` only where the case has them."""

    v: Word
    w: Word
    a: Optional[Word] = None
    x: Optional[Word] = None

    def as_dict(self) -> dict:
        out = {'v': format_word(self.v) or '1', 'w': format_word(self.w) or '1'}
        if self.a is not None:
            out['a'] = format_word(self.a) or '1'
        if self.x is not None:
            out['x'] = format_word(self.x) or '1'
        return out

    def __str__(self) -> str:
        return ', '.join(f"{key} = {value}" for key, value in self.as_dict().items())


@dataclass(frozen=True)
class Accept:
    witnesses: WitnessSet
    accepted: bool = True


@dataclass(frozen=True)
class Reject:
    clause: str
    letter: str
    word: str
    accepted: bool = False

    def __str__(self) -> str:
        return f"clause {self.clause} failed at {self.letter or '-'}: {self.word or '1'}"


VerificationResult = Union[Accept, Reject]


class _Rejected(Exception):
    def __init__(self, clause: str, letter: str, word: Union[Word, str]):
        text = word if isinstance(word, str) else format_word(word)
        super().__init__(clause)
        self.result = Reject(clause, letter, text)


def _letter(basis: Basis, name: str) -> Word:
    return Word.letter(basis, name)


def _check_factor(phi: GroupMorphism, letters: Sequence[str], clause: str) -> None:
    """``phi(F_S) = F_S`` checked through both ``phi`` and its witness."""
    for morphism, suffix in ((phi, ''), (phi.inverse_witness, '_inverse')):
        if restricts_to(morphism, letters):
            continue
        for name in letters:
            if not uses_only(morphism.image(name), letters):
                raise _Rejected(clause + suffix, name, morphism.image(name))


def _check_shift(phi: GroupMorphism, blocks: Sequence[Sequence[str]], clause: str) -> None:
    """``phi(B_i)`` must be a ``B_{i+1}``-word for every block but the last."""
    for current, following in zip(blocks, blocks[1:]):
        for name in current:
            image = phi.image(name)
            if not uses_only(image, following):
                raise _Rejected(clause, name, image)


def _check_wrap(phi: GroupMorphism, last: Sequence[str], target: Sequence[str], left: Word, right: Word,
                clause: str) -> None:
    for name in last:
        conjugated = left * phi.image(name) * right
        if not uses_only(conjugated, target):
            raise _Rejected(clause, name, conjugated)


def _expect(phi: GroupMorphism, name: str, expected: Word, clause: str) -> None:
    image = phi.image(name)
    if image != expected:
        raise _Rejected(clause, name, f"{format_word(image) or '1'} (expected {format_word(expected) or '1'})")


def _split_marker(word: Word, marker: str) -> Optional[Tuple[Word, Word]]:
    """``word = before * marker * after`` with ``marker`` occurring once, exponent +1."""
    index = word.basis.index(marker)
    positions = [i for i, (letter, _) in enumerate(word.syllables) if letter == index]
    if len(positions) != 1 or word.syllables[positions[0]][1] != 1:
        return None
    i = positions[0]
    return Word(word.basis, word.syllables[:i]), Word(word.basis, word.syllables[i + 1:])


def _split_prefix(word: Word, prefix_letters: Sequence[str], suffix_letters: Sequence[str]
                  ) -> Optional[Tuple[Word, Word]]:
    """Split a reduced word into a maximal ``prefix_letters`` part and a ``suffix_letters`` rest."""
    prefix = set(prefix_letters)
    cut = 0
    while cut < len(word.syllables) and word.basis.letters[word.syllables[cut][0]] in prefix:
        cut += 1
    head = Word(word.basis, word.syllables[:cut])
    tail = Word(word.basis, word.syllables[cut:])
    if not uses_only(tail, suffix_letters):
        return None
    return head, tail


def _verify_a(phi: GroupMorphism, cert: CaseA) -> WitnessSet:
    basis = phi.basis
    _check_factor(phi, cert.v_letters, 'A.factor')
    for i in range(cert.k - 1):
        _expect(phi, cert.loop(i), _letter(basis, cert.loop(i + 1)), 'A.shift')
    last = cert.loop(cert.k - 1)
    image = phi.image(last)
    split = _split_marker(image, cert.loop(0))
    if split is None or not all(uses_only(part, cert.v_letters) for part in split):
        raise _Rejected('A.last', last, image)
    w, v = split
    return WitnessSet(v=v, w=w)


def _verify_b(phi: GroupMorphism, cert: CaseB) -> WitnessSet:
    basis = phi.basis
    m, k = cert.m, cert.k
    blocks = cert.vertex_blocks
    a = cert.loop_word(basis, m - 1)
    _check_shift(phi, blocks, 'B.shift')
    _check_wrap(phi, blocks[m - 1], blocks[0], a, ~a, 'B.wrap')
    for i in range(m - 1, k * m - 1):
        following = cert.loop_word(basis, i + 1)
        residue = i % m
        if residue < m - 2:
            expected = following
        elif residue == m - 2:
            expected = ~a * following
        else:
            expected = following * a
        _expect(phi, cert.loop(i), expected, 'B.loop')
    last = cert.loop(k * m - 1)
    v = phi.image(last) * ~a
    if not uses_only(v, blocks[0]):
        raise _Rejected('B.last', last, phi.image(last))
    return WitnessSet(v=v, w=Word.identity(basis), a=a)


def _verify_d(phi: GroupMorphism, cert: CaseD) -> WitnessSet:
    basis = phi.basis
    n, k = cert.n, cert.k
    blocks = cert.w_blocks
    _check_factor(phi, cert.v_letters, 'D.factor')
    _check_shift(phi, blocks, 'D.shift')
    c = cert.loop_word(basis, n) if k > 1 else Word.identity(basis)
    _check_wrap(phi, blocks[n - 1], blocks[0], c, ~c, 'D.wrap')
    if k == 1:
        return WitnessSet(v=Word.identity(basis), w=Word.identity(basis))
    for i in range(n, k * n - 1):
        _expect(phi, cert.loop(i), cert.loop_word(basis, i + 1), 'D.loop')
    last = cert.loop(k * n - 1)
    spine = Word.identity(basis)
    for j in range(1, k):
        spine = spine * cert.loop_word(basis, j * n)
    split = _split_prefix(spine * phi.image(last), blocks[0], cert.v_letters)
    if split is None:
        raise _Rejected('D.last', last, phi.image(last))
    w, v = split
    return WitnessSet(v=v, w=w)


def case_e_conjugator(phi: GroupMorphism, cert: CaseE) -> Word:
    """``x = phi(a^-1) phi^{m+1}(a^-1) ... phi^{(q-1)m+1}(a^-1)`` with ``a = a_{n+m-1}``, ``q = n // m``."""
    a_inv = ~cert.loop_word(phi.basis, cert.first_loop)
    term = apply(phi, a_inv)
    x = term
    for _ in range(cert.q - 1):
        for _ in range(cert.m):
            term = apply(phi, term)
        x = x * term
    return x


def _verify_e(phi: GroupMorphism, cert: CaseE) -> WitnessSet:
    basis = phi.basis
    m, n = cert.m, cert.n
    a = cert.loop_word(basis, cert.first_loop)
    _check_shift(phi, cert.v_blocks, 'E.shift_V')
    _check_wrap(phi, cert.v_blocks[m - 1], cert.v_blocks[0], ~a, a, 'E.wrap_V')
    _check_shift(phi, cert.w_blocks, 'E.shift_W')
    x = case_e_conjugator(phi, cert)
    _check_wrap(phi, cert.w_blocks[n - 1], cert.w_blocks[0], x, ~x, 'E.wrap_W')
    last_index = cert.last_loop
    for i in range(cert.first_loop, last_index):
        following = cert.loop_word(basis, i + 1)
        if i % m == m - 1:
            expected = following * ~a
        elif (i - n) % m == m - 1:
            expected = a * following
        else:
            expected = following
        _expect(phi, cert.loop(i), expected, 'E.loop')
    last = cert.loop(last_index)
    spine = Word.identity(basis)
    for j in range(2, cert.k * m):
        spine = spine * cert.loop_word(basis, j * n)
    split = _split_prefix(spine * phi.image(last) * a, cert.w_blocks[0], cert.v_blocks[0])
    if split is None:
        raise _Rejected('E.last', last, phi.image(last))
    w, v = split
    return WitnessSet(v=v, w=w, a=a, x=x)


_CHECKERS = {CaseA: _verify_a, CaseB: _verify_b, CaseD: _verify_d, CaseE: _verify_e}


def verify_certificate(phi: GroupMorphism, cert: SplittingCertificate) -> VerificationResult:
    """Check ``phi`` against the template of ``cert``.

    Args:
        phi: automorphism with an inverse witness.
        cert: adapted-basis certificate; its letters must partition ``phi.basis``.

    Returns:
        ``Accept`` with the extracted witnesses, or ``Reject`` naming the first
        failed clause.

    Raises:
        CertificateError: if the certificate does not fit the basis.
        MissingInverseWitness: if ``phi`` carries no inverse witness.
    """
    check_basis(cert, phi.basis)
    if not phi.has_witness:
        raise MissingInverseWitness("Certificate verification needs an automorphism with an inverse witness")
    if not verify_automorphism(phi):
        return Reject('automorphism', '', 'inverse witness does not invert phi')
    try:
        witnesses = _CHECKERS[type(cert)](phi, cert)
    except _Rejected as e:
        logger.debug(f"Case {cert.tag} rejected: {e.result}")
        return e.result
    logger.debug(f"Case {cert.tag} accepted: {witnesses}")
    return Accept(witnesses)


def verify_batch(items: Iterable[Tuple[GroupMorphism, SplittingCertificate]], workers: int = 4,
                 show_progress: bool = False) -> List[VerificationResult]:
    """Verify many certificates in parallel; results follow input order."""
    items = list(items)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = list(tqdm(executor.map(lambda item: verify_certificate(*item), items),
                            total=len(items), desc="Verifying", disable=not show_progress))
    accepted = sum(1 for result in results if result.accepted)
    logger.info(f"Verified {len(items)} certificates: {accepted} accepted")
    return results
