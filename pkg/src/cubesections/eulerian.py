"""Eulerian numbers and the hypersimplex sections of the cube.

Rows use the standard convention: ``eulerian_row(d)`` lists A(d, k) for
k = 0..d−1 (permutations of d letters with k descents), so A(d, 0) = 1.
The index pairing with section volumes is not assumed; it is calibrated by
exact comparison, see ``calibrate_offset``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Tuple

from .asymptotics import eulerian_bound
from .errors import DomainError
from .numeric.quadext import QuadExtValue
from .sections import eval_exact, floor_z


@dataclass(frozen=True)
class EulerianRow:
    d: int
    entries: Tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        """A(d, k), zero outside 0..d−1."""
        return self.entries[k] if 0 <= k < len(self.entries) else 0

    def is_symmetric(self) -> bool:
        return self.entries == self.entries[::-1]

    def total(self) -> int:
        return sum(self.entries)


def _next_row(prev: Tuple[int, ...], n: int) -> Tuple[int, ...]:
    # A(n, k) = (k + 1)·A(n−1, k) + (n − k)·A(n−1, k−1)
    out = [0] * n
    for k in range(n):
        a = prev[k] if k < len(prev) else 0
        b = prev[k - 1] if k >= 1 else 0
        out[k] = (k + 1) * a + (n - k) * b
    return tuple(out)


def rows(d_max: int) -> Iterator[EulerianRow]:
    """Rows 1..d_max in order, keeping only the current row in memory."""
    row: Tuple[int, ...] = (1,)
    for n in range(1, d_max + 1):
        if n > 1:
            row = _next_row(row, n)
        yield EulerianRow(n, row)


@lru_cache(maxsize=64)
def eulerian_row(d: int) -> EulerianRow:
    if d < 1:
        raise DomainError(f"Eulerian rows start at d = 1, got {d}")
    for row in rows(d):
        pass
    return row


def shifted_entry(d: int, i: int, offset: Tuple[int, int]) -> int:
    """The Eulerian number paired with the i-th hypersimplex height of [0,1]^d."""
    dn, di = offset
    n = d + dn
    if n < 1:
        return 0
    return eulerian_row(n)[i + di]


@dataclass(frozen=True)
class IdentityCheck:
    d: int
    i: int
    section: QuadExtValue
    formula: QuadExtValue
    holds: bool
    offset: Tuple[int, int]


def _height(d: int, i: int) -> QuadExtValue:
    return QuadExtValue(0, Fraction(d - 2 * i, 2 * d), d)


def _section_at_height(d: int, i: int) -> QuadExtValue:
    return eval_exact(d, _height(d, i)).value


def _formula(d: int, i: int, offset: Tuple[int, int]) -> QuadExtValue:
    return QuadExtValue(0, Fraction(shifted_entry(d, i, offset), math.factorial(d - 1)), d)


@lru_cache(maxsize=1)
def calibrate_offset(d_max: int = 10) -> Tuple[int, int]:
    """Offset (Δd, Δi) with I_d(√d/2 − i/√d) = √d/(d−1)!·A(d+Δd, i+Δi).

    Searches {−1, 0, 1}² and keeps the unique offset that holds for every
    2 ≤ d ≤ d_max and 0 ≤ i ≤ d/2.
    """
    hits = [
        off for off in product((-1, 0, 1), repeat=2)
        if all(_section_at_height(d, i) == _formula(d, i, off)
               for d in range(2, d_max + 1) for i in range(d // 2 + 1))
    ]
    if len(hits) != 1:
        raise RuntimeError(f"index calibration is ambiguous: {hits}")
    return hits[0]


def hypersimplex_identity_check(d: int, i: int) -> IdentityCheck:
    if d < 2 or not 0 <= i <= d / 2:
        raise DomainError(f"need d ≥ 2 and 0 ≤ i ≤ d/2, got d={d}, i={i}")
    offset = calibrate_offset()
    section = _section_at_height(d, i)
    formula = _formula(d, i, offset)
    return IdentityCheck(d, i, section, formula, section == formula, offset)


@dataclass(frozen=True)
class NormalityReport:
    d: int
    max_dev: float
    bound: float
    passed: bool
    witness_t: float


def normality_deviation(d: int, step=Fraction(1, 100)) -> NormalityReport:
    """max |scaled Eulerian volume − √(6/π)e^{−6t²}| over the t-grid in [0, √d/2)."""
    if d < 2:
        raise DomainError("need d ≥ 2")
    step = Fraction(step)
    offset = calibrate_offset()
    row = eulerian_row(d + offset[0])
    fact = math.factorial(d - 1)
    sd = math.sqrt(d)
    c = math.sqrt(6 / math.pi)
    worst, witness = 0.0, 0.0
    k = 0
    while True:
        t = k * step
        if 4 * t * t >= d:
            break
        zf = floor_z(d, t)
        i = zf if _height(d, zf) == QuadExtValue(t) else zf + 1
        entry = row[i + offset[1]]
        vol = sd * float(Fraction(entry, fact))
        dev = abs(vol - c * math.exp(-6 * float(t) ** 2))
        if dev > worst:
            worst, witness = dev, float(t)
        k += 1
    bound = float(eulerian_bound(d).hi)
    return NormalityReport(d, worst, bound, worst <= bound, witness)
