"""Free-group words over a named basis.

Words are stored run-length encoded as ``(letter index, exponent)`` syllables
and are always freely reduced, so structural equality is group equality.
"""

import re
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)

STABLE_LETTER = 't'

_NAME_PATTERN = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
_TOKEN_PATTERN = re.compile(r'^([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$')

Syllable = Tuple[int, int]


class WordError(ValueError):
    """Raised for malformed words or letters outside a basis."""


class BasisMismatchError(WordError):
    """Raised when two words over different bases are combined."""


@dataclass(frozen=True)
class Basis:
    """Ordered list of distinct generator names.

    Free-group bases never contain the stable letter ``t``; presentation
    alphabets (which mix F-letters, ``t`` and new letters) are built with
    :meth:`presentation`.
    """

    letters: Tuple[str, ...]
    allow_stable: bool = False

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, 'letters', letters)
        for name in letters:
            if not _NAME_PATTERN.match(name):
                raise WordError(f"Invalid generator name: {name!r}")
            if name == STABLE_LETTER and not self.allow_stable:
                raise WordError(f"Generator name '{STABLE_LETTER}' is reserved for the stable letter")
        if len(set(letters)) != len(letters):
            raise WordError(f"Generator names must be distinct: {' '.join(letters)}")

    @classmethod
    def of(cls, letters) -> 'Basis':
        """Build a free-group basis from a sequence or a whitespace-separated string."""
        if isinstance(letters, str):
            letters = letters.split()
        return cls(tuple(letters))

    @classmethod
    def presentation(cls, letters) -> 'Basis':
        """Build an alphabet for presentation words (``t`` allowed)."""
        if isinstance(letters, str):
            letters = letters.split()
        return cls(tuple(letters), allow_stable=True)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.letters)}

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise WordError(f"Unknown letter {name!r} (basis: {' '.join(self.letters) or 'empty'})")

    def __contains__(self, name) -> bool:
        return name in self._positions

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def rank(self) -> int:
        return len(self.letters)

    def extend(self, other: 'Basis') -> 'Basis':
        """Concatenate two bases; names must not collide."""
        clash = set(self.letters) & set(other.letters)
        if clash:
            raise WordError(f"Letter names collide: {' '.join(sorted(clash))}")
        return Basis(self.letters + other.letters, self.allow_stable or other.allow_stable)

    def __str__(self) -> str:
        return ' '.join(self.letters)


def _free_reduce(syllables: Iterable[Syllable]) -> Tuple[Syllable, ...]:
    stack: List[Syllable] = []
    for letter, exponent in syllables:
        if exponent == 0:
            continue
        if stack and stack[-1][0] == letter:
            merged = stack[-1][1] + exponent
            stack.pop()
            if merged:
                stack.append((letter, merged))
        else:
            stack.append((letter, exponent))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; the empty syllable tuple is the identity."""

    basis: Basis
    syllables: Tuple[Syllable, ...] = field(default=())

    def __post_init__(self):
        syllables = tuple((int(letter), int(exponent)) for letter, exponent in self.syllables)
        for letter, _ in syllables:
            if not 0 <= letter < len(self.basis):
                raise WordError(f"Letter index {letter} outside basis of rank {len(self.basis)}")
        object.__setattr__(self, 'syllables', _free_reduce(syllables))

    @classmethod
    def identity(cls, basis: Basis) -> 'Word':
        return cls(basis)

    @classmethod
    def letter(cls, basis: Basis, name: str, exponent: int = 1) -> 'Word':
        return cls(basis, ((basis.index(name), exponent),))

    @classmethod
    def from_tokens(cls, basis: Basis, tokens: Iterable[int]) -> 'Word':
        """Build a word from token codes ``2*index + (0 for x, 1 for x^-1)``."""
        return cls(basis, tuple((code // 2, -1 if code % 2 else 1) for code in tokens))

    def tokens(self) -> Tuple[int, ...]:
        """Letter-by-letter expansion as token codes."""
        out: List[int] = []
        for letter, exponent in self.syllables:
            code = 2 * letter + (1 if exponent < 0 else 0)
            out.extend([code] * abs(exponent))
        return tuple(out)

    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def length(self) -> int:
        return sum(abs(exponent) for _, exponent in self.syllables)

    def __len__(self) -> int:
        return self.length

    def letters_used(self) -> Set[str]:
        return {self.basis.letters[letter] for letter, _ in self.syllables}

    def exponent_sum(self, name: str) -> int:
        index = self.basis.index(name)
        return sum(exponent for letter, exponent in self.syllables if letter == index)

    def exponent_vector(self) -> List[int]:
        vector = [0] * len(self.basis)
        for letter, exponent in self.syllables:
            vector[letter] += exponent
        return vector

    def __mul__(self, other: 'Word') -> 'Word':
        return concat(self, other)

    def __invert__(self) -> 'Word':
        return invert(self)

    def __pow__(self, n: int) -> 'Word':
        return word_power(self, n)

    def __str__(self) -> str:
        return format_word(self) or '1'


def _check_same_basis(u: Word, v: Word) -> None:
    if u.basis != v.basis:
        raise BasisMismatchError(f"Basis mismatch: ({u.basis}) vs ({v.basis})")


def parse_word(text: str, basis: Basis) -> Word:
    """Parse whitespace-separated ``name`` / ``name^<int>`` tokens.

    >>> str(parse_word("x x^-1 y", Basis.of("x y")))
    'y'
    """
    syllables: List[Syllable] = []
    for token in text.split():
        match = _TOKEN_PATTERN.match(token)
        if not match:
            raise WordError(f"Malformed token {token!r}")
        name, exponent_text = match.groups()
        exponent = int(exponent_text) if exponent_text is not None else 1
        if exponent == 0:
            raise WordError(f"Zero exponent in token {token!r}")
        syllables.append((basis.index(name), exponent))
    return Word(basis, tuple(syllables))


def format_word(u: Word) -> str:
    """Bit-exact text form; the identity formats as the empty string."""
    parts = []
    for letter, exponent in u.syllables:
        name = u.basis.letters[letter]
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
    return ' '.join(parts)


def concat(u: Word, v: Word) -> Word:
    _check_same_basis(u, v)
    return Word(u.basis, u.syllables + v.syllables)


def invert(u: Word) -> Word:
    return Word(u.basis, tuple((letter, -exponent) for letter, exponent in reversed(u.syllables)))


def word_power(u: Word, n: int) -> Word:
    if n < 0:
        return word_power(invert(u), -n)
    if n == 0 or u.is_identity():
        return Word.identity(u.basis)
    if len(u.syllables) == 1:
        letter, exponent = u.syllables[0]
        return Word(u.basis, ((letter, exponent * n),))
    core, conjugator = cyclic_reduce(u)
    return concat(concat(conjugator, Word(u.basis, core.syllables * n)), invert(conjugator))


def product(words: Iterable[Word], basis: Basis) -> Word:
    """Left-to-right product of ``words`` (identity when empty)."""
    syllables: List[Syllable] = []
    for w in words:
        if w.basis != basis:
            raise BasisMismatchError(f"Basis mismatch: ({w.basis}) vs ({basis})")
        syllables.extend(w.syllables)
    return Word(basis, tuple(syllables))


def cyclic_reduce(u: Word) -> Tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``u = conjugator * core * conjugator^-1``."""
    syllables = list(u.syllables)
    prefix: List[Syllable] = []
    while (len(syllables) >= 2 and syllables[0][0] == syllables[-1][0]
           and (syllables[0][1] > 0) != (syllables[-1][1] > 0)):
        letter, first = syllables[0]
        last = syllables[-1][1]
        step = min(abs(first), abs(last)) * (1 if first > 0 else -1)
        prefix.append((letter, step))
        first -= step
        last += step
        syllables[0] = (letter, first)
        syllables[-1] = (letter, last)
        if last == 0:
            syllables.pop()
        if first == 0:
            syllables.pop(0)
    return Word(u.basis, tuple(syllables)), Word(u.basis, tuple(prefix))


def _rotations(tokens: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    tokens = tuple(tokens)
    for i in range(len(tokens)):
        yield tokens[i:] + tokens[:i]


def is_conjugate(u: Word, v: Word) -> bool:
    """Conjugacy test: cyclic cores must be cyclic rotations of one another."""
    _check_same_basis(u, v)
    core_u = cyclic_reduce(u)[0].tokens()
    core_v = cyclic_reduce(v)[0].tokens()
    if len(core_u) != len(core_v):
        return False
    if not core_u:
        return True
    return any(rotation == core_v for rotation in _rotations(core_u))


def cyclic_key(u: Word) -> Tuple[int, ...]:
    """Least rotation of the cyclic core or of its inverse, as token codes."""
    core = cyclic_reduce(u)[0]
    candidates = list(_rotations(core.tokens())) + list(_rotations(invert(core).tokens()))
    return min(candidates) if candidates else ()


def uses_only(u: Word, subset: Iterable[str]) -> bool:
    allowed = set(subset)
    return all(u.basis.letters[letter] in allowed for letter, _ in u.syllables)


def rename_letters(u: Word, mapping: Mapping[str, str], target: Basis) -> Word:
    """Transport ``u`` into ``target`` renaming letters through ``mapping``."""
    syllables = []
    for letter, exponent in u.syllables:
        name = u.basis.letters[letter]
        syllables.append((target.index(mapping.get(name, name)), exponent))
    return Word(target, tuple(syllables))


def reduced_words(basis: Basis, length: int, first: Optional[int] = None) -> Iterator[Word]:
    """Every reduced word of exactly ``length`` letters, in shortlex token order.

    ``first`` restricts the first token code, which lets callers split the
    enumeration between workers.
    """
    if length == 0:
        if first is None:
            yield Word.identity(basis)
        return
    codes = range(2 * len(basis))
    starts = [first] if first is not None else list(codes)

    def extend(prefix: List[int]) -> Iterator[List[int]]:
        if len(prefix) == length:
            yield prefix
            return
        for code in codes:
            if code ^ 1 == prefix[-1]:
                continue
            yield from extend(prefix + [code])

    for start in starts:
        for tokens in extend([start]):
            yield Word.from_tokens(basis, tokens)


def words_up_to(basis: Basis, max_length: int) -> Iterator[Word]:
    for length in range(max_length + 1):
        yield from reduced_words(basis, length)
