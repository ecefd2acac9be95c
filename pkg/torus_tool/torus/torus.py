"""Mapping tori ``F x|_phi Z`` with normal forms ``u t^n``."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Mapping, Union

from torus_tool.morphisms import GroupMorphism, MorphismError, apply, inverse, verify_automorphism
from torus_tool.words import STABLE_LETTER, Basis, Word, WordError, format_word, parse_word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TorusElement:
    """Normal form ``u t^n``: structural equality is group equality."""

    u: Word
    n: int = 0

    def is_identity(self) -> bool:
        return self.u.is_identity() and self.n == 0

    def __str__(self) -> str:
        return f"({format_word(self.u) or '1'}, {self.n})"


@dataclass(frozen=True)
class MappingTorus:
    """``M_phi`` for an automorphism with a verified inverse witness."""

    phi: GroupMorphism
    _cache: Dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not verify_automorphism(self.phi):
            raise MorphismError(f"Inverse witness does not invert ({self.phi})")

    @property
    def basis(self) -> Basis:
        return self.phi.basis

    @cached_property
    def phi_inverse(self) -> GroupMorphism:
        return inverse(self.phi)

    @cached_property
    def alphabet(self) -> Basis:
        """F-letters followed by the stable letter."""
        return Basis.presentation(self.basis.letters + (STABLE_LETTER,))

    def identity(self) -> TorusElement:
        return TorusElement(Word.identity(self.basis), 0)

    def element(self, u: Union[Word, str], n: int = 0) -> TorusElement:
        if isinstance(u, str):
            u = parse_word(u, self.basis)
        return TorusElement(u, n)

    def stable(self, n: int = 1) -> TorusElement:
        return TorusElement(Word.identity(self.basis), n)

    def twist(self, u: Word, a: int) -> Word:
        """``phi^a(u)``, using the inverse witness for ``a < 0``."""
        key = (u, a)
        if key in self._cache:
            return self._cache[key]
        morphism = self.phi if a >= 0 else self.phi_inverse
        result = u
        for _ in range(abs(a)):
            result = apply(morphism, result)
        if len(self._cache) < 100_000:
            self._cache[key] = result
        return result

    def mul(self, g: TorusElement, h: TorusElement) -> TorusElement:
        return TorusElement(g.u * self.twist(h.u, g.n), g.n + h.n)

    def inverse(self, g: TorusElement) -> TorusElement:
        return TorusElement(self.twist(~g.u, -g.n), -g.n)

    def power(self, g: TorusElement, n: int) -> TorusElement:
        if n < 0:
            return self.power(self.inverse(g), -n)
        result = self.identity()
        base = g
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result


def torus_mul(M: MappingTorus, g: TorusElement, h: TorusElement) -> TorusElement:
    """``(u, a)(v, b) = (u phi^a(v), a + b)``."""
    return M.mul(g, h)


def torus_inverse(M: MappingTorus, g: TorusElement) -> TorusElement:
    return M.inverse(g)


def torus_power(M: MappingTorus, g: TorusElement, n: int) -> TorusElement:
    return M.power(g, n)


def evaluate_word(word: Word, anchors: Mapping[str, TorusElement], M: MappingTorus) -> TorusElement:
    """Image of a presentation word under a generator-to-element assignment."""
    result = M.identity()
    for letter, exponent in word.syllables:
        name = word.basis.letters[letter]
        try:
            value = anchors[name]
        except KeyError:
            raise WordError(f"Letter {name!r} has no anchor")
        result = M.mul(result, M.power(value, exponent))
    return result


def atom_anchors(M: MappingTorus) -> Dict[str, TorusElement]:
    """Anchors sending each F-letter and ``t`` to itself."""
    anchors = {name: TorusElement(Word.letter(M.basis, name), 0) for name in M.basis}
    anchors[STABLE_LETTER] = M.stable()
    return anchors


def torus_eval(expr: Union[Word, str], M: MappingTorus) -> TorusElement:
    """Left-to-right product of F-letters and ``t``; strings are parsed first."""
    if isinstance(expr, str):
        expr = parse_word(expr, M.alphabet)
    result = M.identity()
    for letter, exponent in expr.syllables:
        name = expr.basis.letters[letter]
        if name == STABLE_LETTER:
            result = TorusElement(result.u, result.n + exponent)
        elif name in M.basis:
            atom = Word.letter(M.basis, name, exponent)
            result = TorusElement(result.u * M.twist(atom, result.n), result.n)
        else:
            raise WordError(f"Unknown letter {name!r} in torus expression")
    return result