"""Bounded search for conjugacy classes preserved by a power of an automorphism.

Any obstruction found shows ``phi`` is not atoroidal. An empty scan only
says nothing was found at the scanned scale, which the report records.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

from tqdm import tqdm

from torus_tool.morphisms import GroupMorphism, apply
from torus_tool.words import Word, cyclic_key, format_word, is_conjugate, reduced_words

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Obstruction:
    """``phi^power(w)`` is conjugate to ``w``; ``power`` is minimal."""

    w: Word
    power: int

    @property
    def key(self) -> Tuple[int, ...]:
        return self.w.tokens()

    def __str__(self) -> str:
        return f"w={format_word(self.w)} M={self.power}"


@dataclass
class ScanReport:
    max_len: int
    max_power: int
    words_examined: int = 0
    orbits_examined: int = 0
    obstructions: List[Obstruction] = field(default_factory=list)

    @property
    def toroidal(self) -> bool:
        return bool(self.obstructions)

    def header(self) -> str:
        return f"scanned len<={self.max_len} powers<={self.max_power}"

    def lines(self) -> List[str]:
        return [self.header()] + [str(obstruction) for obstruction in self.obstructions]

    def as_dict(self) -> dict:
        return {
            'max_len': self.max_len,
            'max_power': self.max_power,
            'words_examined': self.words_examined,
            'orbits_examined': self.orbits_examined,
            'obstructions': [{'w': format_word(o.w), 'M': o.power} for o in self.obstructions],
        }


def is_orbit_representative(w: Word) -> bool:
    """True iff ``w`` is the least rotation of its cyclic core or its inverse."""
    return not w.is_identity() and w.tokens() == cyclic_key(w)


def minimal_period(phi: GroupMorphism, w: Word, max_power: int) -> int:
    """Least ``1 <= M <= max_power`` with ``phi^M(w)`` conjugate to ``w``, or 0."""
    image = w
    for power in range(1, max_power + 1):
        image = apply(phi, image)
        if is_conjugate(image, w):
            return power
    return 0


def _scan_first_token(phi: GroupMorphism, first: int, max_len: int, max_power: int
                      ) -> Tuple[int, int, List[Obstruction]]:
    examined = orbits = 0
    found = []
    for length in range(1, max_len + 1):
        for w in reduced_words(phi.basis, length, first=first):
            examined += 1
            if not is_orbit_representative(w):
                continue
            orbits += 1
            power = minimal_period(phi, w, max_power)
            if power:
                found.append(Obstruction(w, power))
    return examined, orbits, found


def toroidal_scan(phi: GroupMorphism, max_len: int, max_power: int, workers: int = 4,
                  show_progress: bool = False) -> ScanReport:
    """Every orbit representative ``w`` with ``|w| <= max_len`` preserved up to conjugacy by some ``phi^M``.

    Args:
        phi: The automorphism to scan.
        max_len: Longest cyclically reduced word examined.
        max_power: Largest power ``M`` tried.
        workers: Threads; the word space is split by first letter.
        show_progress: Show a tqdm bar over the first letters.

    Returns:
        ScanReport with obstructions sorted by their token codes.
    """
    if max_len < 0 or max_power < 1:
        raise ValueError(f"Scan bounds must be max_len >= 0, max_power >= 1 (got {max_len}, {max_power})")
    report = ScanReport(max_len, max_power)
    firsts = list(range(2 * len(phi.basis))) if max_len > 0 else []
    logger.info(f"Scanning words up to length {max_len} for powers up to {max_power} "
                f"({len(firsts)} partitions)")

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        results = executor.map(lambda first: _scan_first_token(phi, first, max_len, max_power), firsts)
        for examined, orbits, found in tqdm(results, total=len(firsts), desc="Scanning",
                                            disable=not show_progress):
            report.words_examined += examined
            report.orbits_examined += orbits
            report.obstructions.extend(found)

    report.obstructions.sort(key=lambda o: (o.w.length, o.key))
    logger.info(f"Examined {report.words_examined} words in {report.orbits_examined} orbits, "
                f"{len(report.obstructions)} obstructions")
    return report
