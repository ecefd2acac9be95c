"""Splitting certificates: the adapted basis each case template is read against.

Certificate files use the same line-based sections as automorphism files::

    [case]
    D

    [params]
    n = 2
    k = 1

    [blocks]
    B0 = x
    B1 = y

``[V] letters`` lists the invariant factor (cases A and D). Case E lists its
``m`` V-blocks as ``[V] B0 = ...``. ``[blocks]`` holds the B blocks of case B
and the W blocks of cases D and E. ``[loops] letters`` lists the loop letters
in index order, starting at the first index the case uses.
"""

import configparser
import logging
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import ClassVar, Dict, List, Tuple, Union

from torus_tool.morphisms import new_parser
from torus_tool.words import Basis, Word, WordError

logger = logging.getLogger(__name__)

Block = Tuple[str, ...]


class CertificateError(ValueError):
    """Raised for malformed certificates or certificates that do not fit the basis."""


def _letters(text: str) -> Block:
    return tuple((text or '').split())


@dataclass(frozen=True)
class _LoopedCase:
    """Shared loop-letter indexing: ``loop(i)`` is ``a_i``."""

    loop_letters: Block

    @property
    def first_loop(self) -> int:
        raise NotImplementedError

    def loop(self, i: int) -> str:
        offset = i - self.first_loop
        if not 0 <= offset < len(self.loop_letters):
            raise CertificateError(f"Loop index {i} outside a_{self.first_loop}..a_{self.first_loop + len(self.loop_letters) - 1}")
        return self.loop_letters[offset]

    def loop_word(self, basis: Basis, i: int) -> Word:
        return Word.letter(basis, self.loop(i))

    def blocks_listed(self) -> List[Block]:
        raise NotImplementedError

    def expected_loops(self) -> int:
        raise NotImplementedError

    def check_params(self) -> None:
        pass

    def letters(self) -> Tuple[str, ...]:
        out: List[str] = []
        for block in self.blocks_listed():
            out.extend(block)
        return tuple(out) + self.loop_letters

    def validate(self, basis: Basis) -> None:
        """Arithmetic side conditions, block sizes and an exact partition of ``basis``."""
        self.check_params()
        if len(self.loop_letters) != self.expected_loops():
            raise CertificateError(f"Case {self.tag} expects {self.expected_loops()} loop letters, "
                                   f"got {len(self.loop_letters)}")
        listed = self.letters()
        seen = set()
        for name in listed:
            if name in seen:
                raise CertificateError(f"Letter {name!r} listed more than once")
            seen.add(name)
        missing = [name for name in basis if name not in seen]
        if missing:
            raise CertificateError(f"Basis letters not covered by the certificate: {' '.join(missing)}")
        extra = [name for name in listed if name not in basis]
        if extra:
            raise CertificateError(f"Certificate letters outside the basis: {' '.join(extra)}")


@dataclass(frozen=True)
class CaseA(_LoopedCase):
    """HNN extension, elliptic: ``F = F_V * <a_0..a_{k-1}>``."""

    v_letters: Block = ()
    tag: ClassVar[str] = 'A'

    @property
    def k(self) -> int:
        return len(self.loop_letters)

    @property
    def first_loop(self) -> int:
        return 0

    def blocks_listed(self) -> List[Block]:
        return [self.v_letters]

    def expected_loops(self) -> int:
        return self.k

    def check_params(self) -> None:
        if self.k < 1:
            raise CertificateError("Case A needs k >= 1 loop letters")


@dataclass(frozen=True)
class CaseB(_LoopedCase):
    """HNN extension, hyperbolic at distance one: blocks ``B_0..B_{m-1}``, loops ``a_{m-1}..a_{km-1}``."""

    m: int = 2
    k: int = 1
    vertex_blocks: Tuple[Block, ...] = ()
    tag: ClassVar[str] = 'B'

    @property
    def first_loop(self) -> int:
        return self.m - 1

    def blocks_listed(self) -> List[Block]:
        return list(self.vertex_blocks)

    def expected_loops(self) -> int:
        return (self.k - 1) * self.m + 1

    def check_params(self) -> None:
        if self.m < 2 or self.k < 1:
            raise CertificateError(f"Case B needs m >= 2 and k >= 1 (m={self.m}, k={self.k})")
        if len(self.vertex_blocks) != self.m:
            raise CertificateError(f"Case B expects {self.m} blocks, got {len(self.vertex_blocks)}")
        _same_sizes(self.vertex_blocks, 'B')


@dataclass(frozen=True)
class CaseD(_LoopedCase):
    """Amalgam, elliptic: ``F_V`` plus W blocks ``B_0..B_{n-1}``, loops ``a_n..a_{kn-1}``."""

    n: int = 1
    k: int = 1
    v_letters: Block = ()
    w_blocks: Tuple[Block, ...] = ()
    tag: ClassVar[str] = 'D'

    @property
    def first_loop(self) -> int:
        return self.n

    def blocks_listed(self) -> List[Block]:
        return [self.v_letters] + list(self.w_blocks)

    def expected_loops(self) -> int:
        return (self.k - 1) * self.n

    def check_params(self) -> None:
        if self.n < 1 or self.k < 1:
            raise CertificateError(f"Case D needs n >= 1 and k >= 1 (n={self.n}, k={self.k})")
        if len(self.w_blocks) != self.n:
            raise CertificateError(f"Case D expects {self.n} W blocks, got {len(self.w_blocks)}")
        _same_sizes(self.w_blocks, 'W')


@dataclass(frozen=True)
class CaseE(_LoopedCase):
    """Amalgam with ``n = 1 mod m``: ``m`` V blocks, ``n`` W blocks, loops ``a_{n+m-1}..a_{kmn-1}``."""

    m: int = 2
    n: int = 3
    k: int = 1
    v_blocks: Tuple[Block, ...] = ()
    w_blocks: Tuple[Block, ...] = ()
    tag: ClassVar[str] = 'E'

    @property
    def first_loop(self) -> int:
        return self.n + self.m - 1

    @property
    def last_loop(self) -> int:
        return self.k * self.m * self.n - 1

    @property
    def q(self) -> int:
        return self.n // self.m

    def blocks_listed(self) -> List[Block]:
        return list(self.v_blocks) + list(self.w_blocks)

    def expected_loops(self) -> int:
        return self.last_loop - self.first_loop + 1

    def check_params(self) -> None:
        if self.k < 1 or self.m < 2 or not self.m < self.n:
            raise CertificateError(f"Case E needs 2 <= m < n and k >= 1 (m={self.m}, n={self.n}, k={self.k})")
        if gcd(self.m, self.n) != 1:
            raise CertificateError(f"Case E needs coprime m and n (m={self.m}, n={self.n})")
        if self.n % self.m != 1:
            raise CertificateError(f"Case E needs n = 1 mod m (m={self.m}, n={self.n})")
        if len(self.v_blocks) != self.m or len(self.w_blocks) != self.n:
            raise CertificateError(f"Case E expects {self.m} V blocks and {self.n} W blocks, "
                                   f"got {len(self.v_blocks)} and {len(self.w_blocks)}")
        _same_sizes(self.v_blocks, 'V')
        _same_sizes(self.w_blocks, 'W')


SplittingCertificate = Union[CaseA, CaseB, CaseD, CaseE]

CASES = {cls.tag: cls for cls in (CaseA, CaseB, CaseD, CaseE)}


def _same_sizes(blocks: Tuple[Block, ...], label: str) -> None:
    sizes = {len(block) for block in blocks}
    if len(sizes) > 1:
        raise CertificateError(f"{label} blocks must have equal sizes, got {sorted(len(b) for b in blocks)}")


def _int_param(parser: configparser.ConfigParser, name: str, source: str) -> int:
    try:
        return parser.getint('params', name)
    except (configparser.Error, ValueError) as e:
        raise CertificateError(f"{source}: [params] {name}: {e}")


def _read_blocks(parser: configparser.ConfigParser, section: str, count: int, source: str) -> Tuple[Block, ...]:
    if not parser.has_section(section):
        raise CertificateError(f"{source}: missing [{section}] section")
    blocks = []
    for i in range(count):
        if not parser.has_option(section, f"B{i}"):
            raise CertificateError(f"{source}: missing [{section}] B{i}")
        blocks.append(_letters(parser.get(section, f"B{i}")))
    return tuple(blocks)


def _read_letters(parser: configparser.ConfigParser, section: str) -> Block:
    if parser.has_option(section, 'letters'):
        return _letters(parser.get(section, 'letters'))
    return ()


def parse_certificate_text(text: str, source: str = '<string>') -> SplittingCertificate:
    parser = new_parser(allow_no_value=True)
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise CertificateError(f"{source}: {e}")
    if not parser.has_section('case'):
        raise CertificateError(f"{source}: missing [case] section")
    tags = [key.strip() for key, _ in parser.items('case')]
    if len(tags) != 1 or tags[0] not in CASES:
        raise CertificateError(f"{source}: [case] must name exactly one of {' '.join(CASES)}")
    tag = tags[0]
    loops = _read_letters(parser, 'loops')

    if tag == 'A':
        cert = CaseA(loop_letters=loops, v_letters=_read_letters(parser, 'V'))
    elif tag == 'B':
        m, k = _int_param(parser, 'm', source), _int_param(parser, 'k', source)
        cert = CaseB(loop_letters=loops, m=m, k=k, vertex_blocks=_read_blocks(parser, 'blocks', m, source))
    elif tag == 'D':
        n, k = _int_param(parser, 'n', source), _int_param(parser, 'k', source)
        cert = CaseD(loop_letters=loops, n=n, k=k, v_letters=_read_letters(parser, 'V'),
                     w_blocks=_read_blocks(parser, 'blocks', n, source))
    else:
        m, n, k = (_int_param(parser, name, source) for name in ('m', 'n', 'k'))
        cert = CaseE(loop_letters=loops, m=m, n=n, k=k, v_blocks=_read_blocks(parser, 'V', m, source),
                     w_blocks=_read_blocks(parser, 'blocks', n, source))

    if tag == 'A' and parser.has_option('params', 'k') and _int_param(parser, 'k', source) != cert.k:
        raise CertificateError(f"{source}: [params] k disagrees with the {cert.k} loop letters")
    try:
        cert.check_params()
    except CertificateError as e:
        raise CertificateError(f"{source}: {e}")
    logger.debug(f"Loaded case {tag} certificate from {source}")
    return cert


def load_certificate(path: Union[str, Path]) -> SplittingCertificate:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Certificate file not found: {path}")
    return parse_certificate_text(path.read_text(encoding='utf-8'), source=str(path))


def _block_lines(blocks: Tuple[Block, ...]) -> List[str]:
    return [f"B{i} = {' '.join(block)}".rstrip() for i, block in enumerate(blocks)]


def dump_certificate(cert: SplittingCertificate) -> str:
    lines = ['[case]', cert.tag, '', '[params]']
    params: Dict[str, int] = {}
    if isinstance(cert, CaseA):
        params['k'] = cert.k
    elif isinstance(cert, CaseB):
        params.update(m=cert.m, k=cert.k)
    elif isinstance(cert, CaseD):
        params.update(n=cert.n, k=cert.k)
    else:
        params.update(m=cert.m, n=cert.n, k=cert.k)
    lines.extend(f"{name} = {value}" for name, value in params.items())

    if isinstance(cert, (CaseA, CaseD)):
        lines.extend(['', '[V]', f"letters = {' '.join(cert.v_letters)}".rstrip()])
    elif isinstance(cert, CaseE):
        lines.extend(['', '[V]'] + _block_lines(cert.v_blocks))
    if isinstance(cert, CaseB):
        lines.extend(['', '[blocks]'] + _block_lines(cert.vertex_blocks))
    elif isinstance(cert, (CaseD, CaseE)):
        lines.extend(['', '[blocks]'] + _block_lines(cert.w_blocks))
    lines.extend(['', '[loops]', f"letters = {' '.join(cert.loop_letters)}".rstrip()])
    return '\n'.join(lines) + '\n'


def save_certificate(cert: SplittingCertificate, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_certificate(cert), encoding='utf-8')
    logger.info(f"Wrote case {cert.tag} certificate to {path}")


def check_basis(cert: SplittingCertificate, basis: Basis) -> None:
    """Validate ``cert`` against ``basis``, converting word errors to certificate errors."""
    try:
        cert.validate(basis)
    except WordError as e:
        raise CertificateError(str(e))
