"""Classical and multiplier-twisted Kloosterman sums, and the Vardi identity.

Every phase is reduced mod 1 in exact arithmetic before the single
trigonometric evaluation per term. Scalar functions loop in Python and
serve as references; the ``*_table`` functions batch many moduli through
numpy and are what the scans use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from ._parallel import block_map, c_blocks, complex_fsum, ordered_fsum
from .cosets import complete_matrix, coset_count_at
from .dedekind import MultiplierSystem, as_weight, dedekind_symbol, multiplier, scaled_frac, unit
from .errors import NotCoprime, NotPrime, UnsupportedGroup
from .exact_arith import (
    batch_inverse_mask,
    frac_part,
    is_prime,
    mod_inverse,
    smallest_prime_factor_sieve,
)
from .groups import SL2Z, DoubleCoset, GroupSpec


@dataclass(frozen=True)
class KloostermanValue:
    c: int
    m: int
    n: int
    value: complex
    term_count: int


def _units(c: int):
    return (a for a in range(c) if math.gcd(a, c) == 1)


def kloosterman_classical(m: int, n: int, c: int) -> complex:
    """S(m, n; c) = sum over units a mod c of e((m a + n a^-1) / c)."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    terms = []
    for a in _units(c):
        d = mod_inverse(a, c)
        terms.append(unit(((m * a + n * d) % c) / c))
    return complex_fsum(terms)


def _classical_block(m: int, n: int, cs: Sequence[int]) -> np.ndarray:
    cs = np.asarray(cs, dtype=np.int64)
    starts = np.concatenate(([0], np.cumsum(cs)[:-1]))
    owner = np.repeat(np.arange(cs.size), cs)
    a = np.arange(int(cs.sum()), dtype=np.int64) - starts[owner]
    c = cs[owner]
    d, keep = batch_inverse_mask(a, c)
    a, c, d, owner = a[keep], c[keep], d[keep], owner[keep]
    num = (np.mod(m, c) * a + np.mod(n, c) * d) % c
    ang = 2.0 * np.pi * (num / c)
    re = np.bincount(owner, weights=np.cos(ang), minlength=cs.size)
    im = np.bincount(owner, weights=np.sin(ang), minlength=cs.size)
    return re + 1j * im


def kloosterman_table(
    m: int, n: int, cs: Sequence[int], threads: int | None = None, engine: str = "auto"
) -> np.ndarray:
    """S(m, n; c) for every c in ``cs``, batched.

    ``engine`` is ``compiled`` (numba), ``numpy`` (vectorized Euclid) or
    ``auto``. Output does not depend on ``threads``.
    """
    cs = [int(c) for c in cs]
    if any(c < 1 for c in cs):
        raise ValueError("moduli must be positive")
    if not cs:
        return np.zeros(0, dtype=complex)
    if engine == "auto":
        engine = "compiled" if _kernels.HAVE_NUMBA else "numpy"
    if engine == "compiled":
        spf = smallest_prime_factor_sieve(max(cs))
        fn = lambda blk: _kernels.kloosterman_sums(m, n, np.asarray(blk), spf)  # noqa: E731
    elif engine == "numpy":
        fn = lambda blk: _classical_block(m, n, blk)  # noqa: E731
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return np.concatenate(block_map(fn, c_blocks(cs), threads))


def kloosterman_values(m: int, n: int, cmax: int, threads: int | None = None) -> list[KloostermanValue]:
    cs = list(range(1, cmax + 1))
    vals = kloosterman_table(m, n, cs, threads)
    return [KloostermanValue(c, m, n, complex(v), coset_count_at(SL2Z, c)) for c, v in zip(cs, vals)]


def kloosterman_partial_sum(
    m: int, n: int, x: float, weighting: str = "unweighted", threads: int | None = None
) -> complex:
    """sum_{c <= x} S(m, n; c), or with each term divided by c (``over_c``)."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if weighting not in ("unweighted", "over_c"):
        raise ValueError(f"unknown weighting {weighting!r}")
    cs = np.arange(1, math.floor(x) + 1)
    vals = kloosterman_table(m, n, cs, threads)
    if weighting == "over_c":
        vals = vals / cs
    return complex(ordered_fsum(vals.real), ordered_fsum(vals.imag))


def weil_ratio(m: int, n: int, p: int) -> float:
    """|S(m, n; p)| / 2 sqrt(p); Weil's bound says this is at most 1."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if math.gcd(m * n, p) != 1:
        raise NotCoprime(f"p = {p} divides mn = {m * n}")
    return abs(kloosterman_table(m, n, [p])[0]) / (2.0 * math.sqrt(p))


# -- twisted sums and Vardi ------------------------------------------------------

def _require_sl2z(group: GroupSpec) -> None:
    if not group.is_sl2z:
        raise UnsupportedGroup(
            f"the multiplier chi_k is only available on SL(2,Z); got {group}"
        )


def kloosterman_twisted(
    k,
    c: int,
    group: GroupSpec = SL2Z,
    *,
    m: int | None = None,
    n: int | None = None,
    experimental: bool = False,
) -> complex:
    """S(m, n; c, chi_k) with m = n = ceil(k V / 4pi), so both shifted
    frequencies m - alpha, n - alpha equal k V / 4pi.

    Other (m, n) need ``experimental=True`` and come with no guarantees.
    """
    _require_sl2z(group)
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    if (m is not None or n is not None) and not experimental:
        raise ValueError("general (m, n) twisted sums require experimental=True")
    ms = MultiplierSystem(k, group)
    kx = Fraction(ms.k)
    scaled = kx * group.volume_over_4pi
    alpha = math.ceil(scaled) - scaled
    m = math.ceil(scaled) if m is None else m
    n = math.ceil(scaled) if n is None else n
    terms = []
    for a in _units(c):
        g = complete_matrix(DoubleCoset(c, a, group))
        freq = frac_part(((m - alpha) * g.a + (n - alpha) * g.d) / c)
        terms.append(multiplier(ms, g).conjugate() * unit(float(freq)))
    return complex_fsum(terms)


def vardi_lhs(k, c: int, group: GroupSpec = SL2Z) -> complex:
    """sum over cosets at modulus c of e(k * symbol)."""
    _require_sl2z(group)
    k = as_weight(k)
    return complex_fsum(
        unit(scaled_frac(k, dedekind_symbol(DoubleCoset(c, a, group)))) for a in _units(c)
    )


def vardi_check(k, c: int) -> float:
    """|lhs - e(-k/4) S(ceil(k/12), ceil(k/12); c, chi_k)|."""
    k = as_weight(k)
    rot = unit(scaled_frac(k, Fraction(-1, 4)))
    return abs(vardi_lhs(k, c) - rot * kloosterman_twisted(k, c))


def vardi_scan(k, cmax: int, threads: int | None = None) -> list[tuple[int, float]]:
    """(c, residual) for c = 1..cmax."""
    blocks = [list(range(lo, min(lo + 16, cmax + 1))) for lo in range(1, cmax + 1, 16)]
    parts = block_map(lambda blk: [(c, vardi_check(k, c)) for c in blk], blocks, threads)
    return [row for part in parts for row in part]
