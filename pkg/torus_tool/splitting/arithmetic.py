"""Index arithmetic for the distance-one HNN case and the congruence-only cases."""

import logging
from math import gcd
from typing import List, NamedTuple, Tuple

from torus_tool.words import Basis, Word

from .certificate import CaseB, CertificateError

logger = logging.getLogger(__name__)


class CongruenceData(NamedTuple):
    s: int
    d: int
    inverted: bool


def modular_inverse(a: int, modulus: int) -> int:
    """Multiplicative inverse of ``a`` mod ``modulus``; they must be coprime."""
    old_r, r = a % modulus, modulus
    old_x, x = 1, 0
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
    if old_r != 1:
        raise CertificateError(f"{a} has no inverse mod {modulus}")
    return old_x % modulus


def _check_coprime(m: int, r: int) -> None:
    if gcd(m, r) != 1:
        raise CertificateError(f"m and r must be coprime (m={m}, r={r})")


def build_b_generators(cert: CaseB, basis: Basis) -> List[Word]:
    """``b_i = a_{m+i-1} a_{m+i-2} ... a_{m-1}`` for ``i = 0 .. (k-1)m``."""
    m = cert.m
    generators = []
    current = cert.loop_word(basis, m - 1)
    generators.append(current)
    for i in range(1, (cert.k - 1) * m + 1):
        current = cert.loop_word(basis, m + i - 1) * current
        generators.append(current)
    return generators


def expected_b_image(b: List[Word], v: Word, cert: CaseB, i: int) -> Word:
    """The image of ``b_i`` the distance-one template predicts."""
    m, last = cert.m, (cert.k - 1) * cert.m
    if i == last:
        return v * b[last]
    if i % m == m - 1:
        return ~b[0] * b[i + 1]
    return b[i + 1]


def congruence_data(m: int, r: int) -> CongruenceData:
    """Smallest ``s > 0`` with ``r s = +-1 mod m`` and ``d = min(s, m - s)``.

    ``inverted`` is set when ``r s = -1 mod m`` (and ``m > 2``): the edge
    labels are then read with ``t`` inverted.

    >>> congruence_data(8, 3)
    CongruenceData(s=3, d=3, inverted=False)
    >>> congruence_data(5, 2)
    CongruenceData(s=2, d=2, inverted=True)
    """
    if m < 2 or r <= 1:
        raise CertificateError(f"Need m >= 2 and r > 1 (m={m}, r={r})")
    _check_coprime(m, r)
    s = next(s for s in range(1, m + 1) if (r * s) % m in (1, m - 1))
    inverted = m > 2 and (r * s) % m == m - 1
    return CongruenceData(s, min(s, m - s), inverted)


def edge_labels(m: int, r: int, j: int) -> Tuple[int, int]:
    """Vertex indices ``(v(rj), v(r(j+1)))`` joined by the edge ``E_j``."""
    if m < 1:
        raise CertificateError(f"Need m >= 1 (m={m})")
    _check_coprime(m, r)
    return (r * j) % m, (r * (j + 1)) % m


def general_amalgam_s(m: int, n: int) -> int:
    """The ``s`` with ``1 < s < m`` and ``s n = 1 mod m``."""
    if m < 3:
        raise CertificateError(f"Need m >= 3 (m={m})")
    if gcd(m, n) != 1:
        raise CertificateError(f"m and n must be coprime (m={m}, n={n})")
    if n % m == 1:
        raise CertificateError(f"n = 1 mod m is the n = qm + 1 amalgam case (m={m}, n={n})")
    return modular_inverse(n, m)
