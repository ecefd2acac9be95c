"""Bounded atoroidality scans and free-product extensions by one letter."""

from .scanner import Obstruction, ScanReport, is_orbit_representative, minimal_period, toroidal_scan
from .splitex import (
    AbelianVerdict,
    TwistedSolution,
    Verdict,
    check_splitex_abelian,
    check_splitex_direct,
    extend_by_letter,
    twisted_product,
)

__all__ = [
    'AbelianVerdict',
    'Obstruction',
    'ScanReport',
    'TwistedSolution',
    'Verdict',
    'check_splitex_abelian',
    'check_splitex_direct',
    'extend_by_letter',
    'is_orbit_representative',
    'minimal_period',
    'toroidal_scan',
    'twisted_product',
]
