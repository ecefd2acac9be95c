"""Extensions ``psi = phi_1 * (a -> a w)`` and the twisted-equation hypothesis they need.

``psi`` is hyperbolic when ``phi_1`` is and, for all ``k >= 1`` and ``v``,
``w phi(w) ... phi^(k-1)(w) != v phi^k(v^-1)``. The direct check searches
for a counterexample in a bounded box; the abelianized check proves the
inequality for a given ``k`` when the abelianized equation has no integer
solution.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from tqdm import tqdm

from torus_tool.intlinalg import (
    identity_matrix,
    mat_power,
    mat_sum_powers,
    matvec,
    solve_integer,
)
from torus_tool.morphisms import (
    GroupMorphism,
    MissingInverseWitness,
    MorphismError,
    abelianization_matrix,
    apply,
    verify_automorphism,
)
from torus_tool.utils.helpers import fresh_name
from torus_tool.words import Basis, Word, WordError, format_word, rename_letters, words_up_to

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    OBSTRUCTED = 'OBSTRUCTED'
    INCONCLUSIVE = 'INCONCLUSIVE'


@dataclass(frozen=True)
class TwistedSolution:
    """``w phi(w) ... phi^(k-1)(w) = v phi^k(v^-1)``."""

    k: int
    v: Word

    def __str__(self) -> str:
        return f"k={self.k} v={format_word(self.v) or '1'}"


@dataclass(frozen=True)
class AbelianVerdict:
    k: int
    verdict: Verdict
    solution: Optional[List[int]] = None

    def __str__(self) -> str:
        text = f"k={self.k} {self.verdict.value}"
        if self.solution is not None:
            text += f" y={' '.join(str(c) for c in self.solution)}"
        return text


def extend_by_letter(phi1: GroupMorphism, w: Word, name: Optional[str] = None) -> GroupMorphism:
    """``psi`` on ``F_1 * <a>``: ``psi`` is ``phi1`` on ``F_1`` and ``psi(a) = a w``.

    Args:
        phi1: Automorphism of ``F_1`` with an inverse witness.
        w: Word over ``phi1.basis``.
        name: Name of the new letter; defaults to ``a`` or the first free ``a<i>``.

    Raises:
        WordError: If ``name`` is already a letter of ``F_1``.
        MissingInverseWitness: If ``phi1`` has no inverse witness.
    """
    if w.basis != phi1.basis:
        raise WordError(f"Word is over ({w.basis}), expected ({phi1.basis})")
    if not phi1.has_witness:
        raise MissingInverseWitness("extend_by_letter needs the inverse witness of phi1")
    if name is None:
        name = fresh_name('a', phi1.basis.letters)
    elif name in phi1.basis:
        raise WordError(f"Letter {name!r} already belongs to the basis ({phi1.basis})")

    basis = phi1.basis.extend(Basis.of([name]))
    a = Word.letter(basis, name)

    def lift(u: Word) -> Word:
        return rename_letters(u, {}, basis)

    inverse_w = lift(apply(phi1.inverse_witness, w))
    images = tuple(lift(u) for u in phi1.images) + (a * lift(w),)
    inverse = tuple(lift(u) for u in phi1.inverse_witness.images) + (a * ~inverse_w,)
    psi = GroupMorphism(basis, images, GroupMorphism(basis, inverse))
    if not verify_automorphism(psi):
        raise MorphismError(f"Extension of ({phi1}) by {name} -> {name} {format_word(w)} is not invertible")
    return psi


def twisted_product(phi1: GroupMorphism, w: Word, k: int) -> Word:
    """``w phi(w) ... phi^(k-1)(w)``."""
    result = Word.identity(phi1.basis)
    term = w
    for _ in range(k):
        result = result * term
        term = apply(phi1, term)
    return result


def check_splitex_direct(phi1: GroupMorphism, w: Word, k_max: int, v_len_max: int,
                         show_progress: bool = False) -> Optional[TwistedSolution]:
    """First ``(k, v)`` in shortlex order with ``w phi(w)...phi^(k-1)(w) = v phi^k(v^-1)``, or ``None``.

    ``None`` means the hypothesis holds for ``k <= k_max`` and ``|v| <= v_len_max`` only.
    """
    candidates = list(words_up_to(phi1.basis, v_len_max))
    for k in tqdm(range(1, k_max + 1), desc="Twisted equation", disable=not show_progress):
        target = twisted_product(phi1, w, k)
        for v in candidates:
            image = ~v
            for _ in range(k):
                image = apply(phi1, image)
            if v * image == target:
                logger.info(f"Twisted equation solved at k={k} by v={format_word(v) or '1'}")
                return TwistedSolution(k, v)
    logger.info(f"No solution for k<={k_max}, |v|<={v_len_max}")
    return None


def check_splitex_abelian(phi1: GroupMorphism, w: Word, k_max: int) -> List[AbelianVerdict]:
    """Per ``k``: is ``S_k [w]`` outside the image of ``I - A^k``?

    ``A`` is the abelianization of ``phi1`` and ``S_k = I + A + ... + A^(k-1)``.
    OBSTRUCTED proves the inequality for that ``k`` and every ``v``.
    """
    A = abelianization_matrix(phi1)
    rank = len(phi1.basis)
    exponents = w.exponent_vector()
    verdicts = []
    for k in range(1, k_max + 1):
        target = matvec(mat_sum_powers(A, k), exponents)
        lattice = identity_matrix(rank) - mat_power(A, k)
        solution = solve_integer(lattice, target) if rank else ([] if not any(target) else None)
        if solution is None:
            verdicts.append(AbelianVerdict(k, Verdict.OBSTRUCTED))
        else:
            verdicts.append(AbelianVerdict(k, Verdict.INCONCLUSIVE, [int(c) for c in solution]))
        logger.debug(f"k={k}: {verdicts[-1]}")
    return verdicts
