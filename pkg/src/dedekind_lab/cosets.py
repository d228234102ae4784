"""Double cosets Gamma_inf \\ Gamma / Gamma_inf for SL(2,Z) and Gamma_0(N).

For Gamma_0(N) the double cosets at modulus c are exactly the units
a mod c when N | c, and there are none otherwise: any a coprime to such a
c completes, via d = a^-1 mod c, to (a, (ad-1)/c; c, d), whose lower-left
entry is divisible by N. Hence a_c = phi(c) [N | c].

Cutoffs are inclusive (c <= x) throughout; the c = 0 coset is never
enumerated or counted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .exact_arith import check_budget, mod_inverse, prime_factors, totient_sieve
from ._parallel import ordered_fsum
from .groups import DoubleCoset, GroupSpec, UnimodularMatrix


@dataclass(frozen=True)
class CountReport:
    x: float
    count: int
    main_term: float
    ratio: float
    remainder: float


def _cmax(x: float) -> int:
    return math.floor(x)


def coset_count_at(group: GroupSpec, c: int) -> int:
    """a_c: the number of double cosets with lower-left entry c."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    if c % group.level:
        return 0
    phi = c
    for p in prime_factors(c):
        phi -= phi // p
    return phi


def coset_counts(group: GroupSpec, x: float, budget: int | None = None) -> np.ndarray:
    """a_c for c = 1..floor(x) (entry i holds a_{i+1})."""
    cmax = _cmax(x)
    if cmax < 1:
        return np.zeros(0, dtype=np.int64)
    counts = totient_sieve(cmax, budget)
    if group.level > 1:
        c = np.arange(1, cmax + 1)
        counts = np.where(c % group.level == 0, counts, 0)
    return counts


def enumerate_cosets(group: GroupSpec, x: float, budget: int | None = None) -> Iterator[DoubleCoset]:
    """All double cosets with 0 < c <= x, by c then a."""
    cmax = _cmax(x)
    if cmax < 1:
        return
    # projected count from the main term, plus slack for small x
    projected = 3 * cmax * cmax // (math.pi**2 * group.index) + cmax
    check_budget(int(projected), budget, "enumerate_cosets")
    step = group.level
    for c in range(step, cmax + 1, step):
        for a in range(c):
            if math.gcd(a, c) == 1:
                yield DoubleCoset(c, a, group)


def complete_matrix(coset: DoubleCoset) -> UnimodularMatrix:
    """The completion (a, b; c, d) with 0 <= d < c."""
    a, c = coset.a, coset.c
    d = mod_inverse(a, c)
    return UnimodularMatrix(a, (a * d - 1) // c, c, d)


def pi_count(group: GroupSpec, x: float, budget: int | None = None) -> CountReport:
    """pi(x) from the totient sieve, against the main term x^2 / (pi V)."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    count = int(coset_counts(group, x, budget).sum())
    main = x * x / (math.pi * group.covolume)
    return CountReport(x=x, count=count, main_term=main, ratio=count / main, remainder=count - main)


def zeta_partial(group: GroupSpec, s: float, x: float, budget: int | None = None) -> float:
    """sum_{c <= x} a_c / c^(2s), compensated."""
    if s <= 0.5:
        raise ValueError("need s > 1/2")
    counts = coset_counts(group, x, budget)
    c = np.arange(1, counts.size + 1, dtype=np.float64)
    terms = counts / c ** (2.0 * s)
    return ordered_fsum(terms[counts > 0])
