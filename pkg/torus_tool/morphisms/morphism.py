"""Endomorphisms and automorphisms of free groups."""

import logging
from dataclasses import dataclass, replace
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from torus_tool.intlinalg import IntMatrix, int_matrix
from torus_tool.words import (
    Basis,
    BasisMismatchError,
    Word,
    parse_word,
    rename_letters,
    uses_only,
)

logger = logging.getLogger(__name__)


class MorphismError(ValueError):
    """Raised for malformed morphisms."""


class MissingInverseWitness(MorphismError):
    """Raised when an operation needs the inverse witness and none was supplied."""


@dataclass(frozen=True)
class GroupMorphism:
    """Endomorphism of the free group on ``basis`` given by generator images.

    ``inverse_witness`` is a claimed two-sided inverse; it is only trusted
    after :func:`verify_automorphism`.
    """

    basis: Basis
    images: Tuple[Word, ...]
    inverse_witness: Optional['GroupMorphism'] = None

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, 'images', images)
        if len(images) != len(self.basis):
            raise MorphismError(
                f"Expected {len(self.basis)} images, got {len(images)}")
        for name, image in zip(self.basis, images):
            if image.basis != self.basis:
                raise BasisMismatchError(f"Image of {name} is over ({image.basis}), expected ({self.basis})")
        if self.inverse_witness is not None and self.inverse_witness.basis != self.basis:
            raise BasisMismatchError("Inverse witness is over a different basis")

    @classmethod
    def from_images(cls, basis: Basis, images: Union[Mapping[str, str], Sequence[str]],
                    inverse: Union[Mapping[str, str], Sequence[str], None] = None) -> 'GroupMorphism':
        """Build a morphism from image texts, keyed by letter or given in basis order."""
        witness = cls.from_images(basis, inverse) if inverse is not None else None
        return cls(basis, _parse_images(basis, images), witness)

    def image(self, name: str) -> Word:
        return self.images[self.basis.index(name)]

    def __call__(self, u: Word) -> Word:
        return apply(self, u)

    @property
    def has_witness(self) -> bool:
        return self.inverse_witness is not None

    def without_witness(self) -> 'GroupMorphism':
        return replace(self, inverse_witness=None)

    def with_witness(self, witness: 'GroupMorphism') -> 'GroupMorphism':
        return replace(self, inverse_witness=witness.without_witness())

    def __str__(self) -> str:
        return ', '.join(f"{name} -> {image}" for name, image in zip(self.basis, self.images))


def _parse_images(basis: Basis, images) -> Tuple[Word, ...]:
    if isinstance(images, Mapping):
        missing = [name for name in basis if name not in images]
        if missing:
            raise MorphismError(f"No image given for {' '.join(missing)}")
        extra = [name for name in images if name not in basis]
        if extra:
            raise MorphismError(f"Images given for letters outside the basis: {' '.join(extra)}")
        texts = [images[name] for name in basis]
    else:
        texts = list(images)
    return tuple(parse_word(text, basis) for text in texts)


def apply(phi: GroupMorphism, u: Word) -> Word:
    """Homomorphic image of ``u``."""
    if u.basis != phi.basis:
        raise BasisMismatchError(f"Cannot apply morphism over ({phi.basis}) to word over ({u.basis})")
    syllables: List[Tuple[int, int]] = []
    for letter, exponent in u.syllables:
        image = phi.images[letter]
        piece = image.syllables if exponent > 0 else (~image).syllables
        syllables.extend(piece * abs(exponent))
    return Word(phi.basis, tuple(syllables))


def apply_all(phi: GroupMorphism, words: Iterable[Word]) -> Tuple[Word, ...]:
    return tuple(apply(phi, u) for u in words)


def _check_same_basis(phi: GroupMorphism, psi: GroupMorphism) -> None:
    if phi.basis != psi.basis:
        raise BasisMismatchError(f"Basis mismatch: ({phi.basis}) vs ({psi.basis})")


def compose(phi: GroupMorphism, psi: GroupMorphism) -> GroupMorphism:
    """``phi`` after ``psi``; the witness is composed in reverse when both are known."""
    _check_same_basis(phi, psi)
    images = apply_all(phi, psi.images)
    witness = None
    if phi.has_witness and psi.has_witness:
        witness = GroupMorphism(phi.basis, apply_all(psi.inverse_witness, phi.inverse_witness.images))
    return GroupMorphism(phi.basis, images, witness)


def identity_morphism(basis: Basis) -> GroupMorphism:
    images = tuple(Word.letter(basis, name) for name in basis)
    return GroupMorphism(basis, images, GroupMorphism(basis, images))


def inverse(phi: GroupMorphism) -> GroupMorphism:
    """The inverse witness promoted to a morphism whose own witness is ``phi``."""
    if not phi.has_witness:
        raise MissingInverseWitness(f"No inverse witness for morphism ({phi})")
    return GroupMorphism(phi.basis, phi.inverse_witness.images, phi.without_witness())


def power(phi: GroupMorphism, n: int) -> GroupMorphism:
    """``phi^n``; negative exponents go through the inverse witness."""
    if n < 0:
        return power(inverse(phi), -n)
    result = identity_morphism(phi.basis)
    if not phi.has_witness:
        result = result.without_witness()
    base = phi
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def verify_automorphism(phi: GroupMorphism) -> bool:
    """True iff the inverse witness is a two-sided inverse of ``phi``."""
    if not phi.has_witness:
        raise MissingInverseWitness(f"No inverse witness for morphism ({phi})")
    witness = phi.inverse_witness
    for name, image in zip(phi.basis, phi.images):
        letter = Word.letter(phi.basis, name)
        if apply(witness, image) != letter:
            logger.debug(f"witness(phi({name})) = {apply(witness, image)}")
            return False
        if apply(phi, witness.image(name)) != letter:
            logger.debug(f"phi(witness({name})) = {apply(phi, witness.image(name))}")
            return False
    return True


def restricts_to(phi: GroupMorphism, subset: Iterable[str]) -> bool:
    """True iff ``phi`` maps every letter of ``subset`` into the factor it spans."""
    subset = set(subset)
    return all(uses_only(phi.image(name), subset) for name in subset)


def preserves_factor(phi: GroupMorphism, subset: Iterable[str]) -> bool:
    """``phi(F_S) = F_S``: both ``phi`` and its witness restrict to ``subset``."""
    subset = set(subset)
    if not restricts_to(phi, subset):
        return False
    if not phi.has_witness:
        raise MissingInverseWitness("Factor equality needs the inverse witness")
    return restricts_to(phi.inverse_witness, subset)


def abelianization_matrix(phi: GroupMorphism) -> IntMatrix:
    """Column ``j`` is the exponent-sum vector of the image of generator ``j``."""
    columns = [image.exponent_vector() for image in phi.images]
    rank = len(phi.basis)
    return int_matrix([[columns[j][i] for j in range(rank)] for i in range(rank)], cols=rank)


def free_product(phi1: GroupMorphism, phi2: GroupMorphism) -> GroupMorphism:
    """``phi1 * phi2`` on the concatenated basis."""
    basis = phi1.basis.extend(phi2.basis)

    def transport(images: Sequence[Word]) -> Tuple[Word, ...]:
        return tuple(rename_letters(u, {}, basis) for u in images)

    witness = None
    if phi1.has_witness and phi2.has_witness:
        witness = GroupMorphism(basis, transport(phi1.inverse_witness.images) + transport(phi2.inverse_witness.images))
    return GroupMorphism(basis, transport(phi1.images) + transport(phi2.images), witness)


def substitution(basis: Basis, changes: Mapping[str, Word],
                 inverse_changes: Optional[Mapping[str, Word]] = None) -> GroupMorphism:
    """Morphism fixing every letter except those listed in ``changes``."""
    def build(mapping: Mapping[str, Word]) -> Tuple[Word, ...]:
        return tuple(mapping.get(name, Word.letter(basis, name)) for name in basis)

    witness = GroupMorphism(basis, build(inverse_changes)) if inverse_changes is not None else None
    return GroupMorphism(basis, build(changes), witness)
