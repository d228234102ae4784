"""Equidistribution mod 1 of k times the Dedekind symbol.

The stream is the aggregate over all double cosets with c <= x, in
enumeration order. Sums are compensated, so reordering a stream moves a
statistic by rounding only; the discrepancy works on sorted values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._kernels import weyl_direct, weyl_power_sums
from ._parallel import ordered_fsum
from .dedekind import as_weight, symbol_table
from .errors import EmptyStream, UnsupportedGroup
from .groups import SL2Z, GroupSpec

# Largest int64 product allowed on the exact path.
_INT64_SAFE = 2**62


@dataclass
class SampleStream:
    k: Fraction | float | None
    group: GroupSpec | None
    x: float | None
    values: np.ndarray = field(repr=False)

    def __len__(self):
        return int(self.values.size)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> SampleStream:
        """Wrap arbitrary points of [0, 1); mainly for tests."""
        v = np.asarray(values, dtype=np.float64)
        if v.size and (v.min() < 0.0 or v.max() >= 1.0):
            raise ValueError("values must lie in [0, 1)")
        return cls(None, None, None, v)


@dataclass(frozen=True)
class WeylReport:
    m: int
    weyl_sum: complex
    normalized: float


@dataclass(frozen=True)
class DiscrepancyReport:
    star_discrepancy: float
    et_bound: float
    M: int


def _frac_exact(k: Fraction, c: np.ndarray, u: np.ndarray) -> np.ndarray:
    # k s = p u / (12 c q); reduce the numerator mod the denominator in integers
    p, q = k.numerator, k.denominator
    den = 12 * c * q
    umax = int(np.abs(u).max()) if u.size else 0
    if abs(p) * max(umax, 1) < _INT64_SAFE and 12 * int(c.max(initial=1)) * q < _INT64_SAFE:
        return np.mod(p * u, den) / den
    out = np.empty(u.size)
    for i, (ci, ui) in enumerate(zip(c.tolist(), u.tolist())):
        d = 12 * ci * q
        out[i] = (p * ui % d) / d
    return out


def sample_stream(k, group: GroupSpec = SL2Z, x: float = 1, budget: int | None = None) -> SampleStream:
    """{k s(a; c)} over all cosets with c <= x.

    Rational k is exact; a float k runs in double precision.
    """
    if not group.is_sl2z:
        raise UnsupportedGroup(f"symbol values are only available on SL(2,Z), not {group}")
    k = as_weight(k)
    if k <= 0:
        raise ValueError("k must be positive")
    c, _, u = symbol_table(x, budget)
    if isinstance(k, Fraction):
        values = _frac_exact(k, c, u)
    else:
        values = np.mod(k * (u / (12.0 * c)), 1.0)
        values[values >= 1.0] = 0.0
    return SampleStream(k, group, x, values)


def _values(stream) -> np.ndarray:
    v = stream.values if isinstance(stream, SampleStream) else np.asarray(stream, dtype=np.float64)
    if v.size == 0:
        raise EmptyStream("statistic of an empty stream")
    return v


def weyl_sum(stream, m: int) -> WeylReport:
    if m == 0:
        raise ValueError("m must be nonzero")
    v = _values(stream)
    total = weyl_direct(v, m)
    return WeylReport(m, total, min(abs(total) / v.size, 1.0))


def star_discrepancy(stream) -> float:
    """D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted points."""
    v = np.sort(_values(stream))
    n = v.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - v), np.max(v - (i - 1) / n)))


def erdos_turan_bound(stream, M: int) -> DiscrepancyReport:
    """3/(M+1) + 3 sum_{m<=M} |weyl(m)| / (m N), beside the exact D*_N."""
    if M < 1:
        raise ValueError("M must be >= 1")
    v = _values(stream)
    sums = weyl_power_sums(v, M)
    tail = ordered_fsum(min(abs(s) / v.size, 1.0) / m for m, s in enumerate(sums.tolist(), 1))
    return DiscrepancyReport(star_discrepancy(stream), 3.0 / (M + 1) + 3.0 * tail, M)


def histogram(stream, bins: int) -> np.ndarray:
    """Counts over [j/bins, (j+1)/bins)."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    v = stream.values if isinstance(stream, SampleStream) else np.asarray(stream, dtype=np.float64)
    idx = np.minimum(np.floor(v * bins).astype(np.int64), bins - 1)
    return np.bincount(idx, minlength=bins)
