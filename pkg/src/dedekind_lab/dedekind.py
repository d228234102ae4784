"""Dedekind sums, the cocycles Phi and psi, the Dedekind symbol and the
weight-k multiplier system on SL(2,Z).

All values are exact :class:`~fractions.Fraction` objects except the
multiplier itself, which is a double-precision unit complex number whose
phase is reduced mod 1 *before* any floating point happens.

The fast evaluator works with the integer ``u(a, c) = 12 c s(a; c)``.
Reciprocity in that normalisation reads

    a u(a, c) + c u(c, a) = a^2 + c^2 + 1 - 3ac,

so one Euclidean descent plus exact integer divisions gives s(a; c)
with no rational arithmetic at all.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

import numpy as np

from .errors import (
    InfinityCoset,
    IntegralityViolation,
    NotCoprime,
    UnsupportedGroup,
)
from .exact_arith import check_budget, frac_part
from .groups import SL2Z, S, T, DoubleCoset, GroupSpec, UnimodularMatrix


# -- weights and phases ------------------------------------------------------

def as_weight(k) -> Fraction | float:
    """Normalise a weight: ints, Fractions and ``"p/q"`` strings are exact,
    anything else becomes a float."""
    if isinstance(k, str):
        k = k.strip()
        if "/" in k:
            return Fraction(k)
        try:
            return Fraction(int(k))
        except ValueError:
            return float(k)
    if isinstance(k, bool):
        raise TypeError("weight must be a number")
    if isinstance(k, _RationalABC):
        return Fraction(k)
    k = float(k)
    if not math.isfinite(k):
        raise ValueError("weight must be finite")
    return k


def scaled_frac(k, r: Fraction) -> float:
    """Fractional part of k*r in [0, 1).

    A float k is taken at its exact binary value, so the reduction mod 1
    never loses the integer part of a large k*r.
    """
    kk = k if isinstance(k, Fraction) else Fraction(k)
    return float(frac_part(kk * r)) % 1.0


def unit(t: float) -> complex:
    """e(t) = exp(2 pi i t)."""
    ang = 2.0 * math.pi * t
    return complex(math.cos(ang), math.sin(ang))


# -- Dedekind sums -------------------------------------------------------------

def sawtooth(x: Fraction) -> Fraction:
    """((x)): {x} - 1/2 off the integers, 0 on them."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return frac_part(x) - Fraction(1, 2)


def _check_args(a: int, c: int) -> None:
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    if math.gcd(a, c) != 1:
        raise NotCoprime(f"gcd({a}, {c}) = {math.gcd(a, c)}")


def dedekind_sum_naive(a: int, c: int) -> Fraction:
    """s(a; c) straight from the defining sum. O(c); used as the oracle.

    With n/c never integral, ((n/c)) ((na/c)) = (2n - c)(2r - c) / 4c^2
    where r = na mod c, and the r = 0 term is dropped.
    """
    _check_args(a, c)
    total = 0
    for n in range(1, c):
        r = n * a % c
        if r:
            total += (2 * n - c) * (2 * r - c)
    return Fraction(total, 4 * c * c)


def twelve_c_s(a: int, c: int) -> int:
    """The integer 12 c s(a; c), by Euclidean descent on reciprocity."""
    _check_args(a, c)
    a %= c
    chain = []
    while a > 1:
        chain.append((a, c))
        a, c = c % a, a
    # a == 0 only for c == 1; s(1; c) = (c-1)(c-2)/12c
    u = 0 if a == 0 else (c - 1) * (c - 2)
    for a, c in reversed(chain):
        u, rem = divmod(a * a + c * c + 1 - 3 * a * c - c * u, a)
        if rem:
            raise IntegralityViolation(f"12c s({a};{c}) not integral")
    return u


def dedekind_sum_fast(a: int, c: int) -> Fraction:
    """s(a; c) in O(log c) integer operations."""
    return Fraction(twelve_c_s(a, c), 12 * c)


def symbol_table(x: float, budget: int | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(c, a, u)`` arrays over every coprime 0 <= a < c <= x, in (c, a) order,
    with u = 12 c s(a; c).

    Dynamic programme over moduli: u(a, c) needs u(c mod a, a), which lives
    in the already-filled row of modulus a < c. Memory is the full
    triangle, c_max (c_max + 1) / 2 int64 entries.
    """
    cmax = math.floor(x)
    if cmax < 1:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    check_budget(cmax * (cmax + 1) // 2, budget, "symbol_table")
    rows = np.zeros(cmax * (cmax + 1) // 2, dtype=np.int64)
    cs, as_, us = [np.array([1])], [np.array([0])], [np.array([0])]
    for c in range(2, cmax + 1):
        a = np.arange(1, c, dtype=np.int64)
        a = a[np.gcd(a, c) == 1]
        prev = rows[a * (a - 1) // 2 + c % a]
        num = a * a + c * c + 1 - 3 * a * c - c * prev
        u = num // a
        if np.any(u * a != num):
            raise IntegralityViolation(f"non-integral 12c s(a;c) at c={c}")
        rows[c * (c - 1) // 2 + a] = u
        cs.append(np.full(a.size, c, dtype=np.int64))
        as_.append(a)
        us.append(u)
    return np.concatenate(cs), np.concatenate(as_), np.concatenate(us)


# -- cocycles ------------------------------------------------------------------

def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


def phi_cocycle(g: UnimodularMatrix) -> Fraction:
    """Rademacher's Phi: b/d when c = 0, else (a+d)/c - 12 sign(c) s(a; |c|)."""
    a, b, c, d = g.entries()
    if c == 0:
        return Fraction(b, d)
    # 12 s(a;|c|) = u/|c|, so Phi = sign(c) (a + d - u) / |c|
    num = a + d - twelve_c_s(a, abs(c))
    if num % abs(c):
        raise IntegralityViolation(f"Phi{g} = {Fraction(_sign(c) * num, abs(c))}")
    return Fraction(_sign(c) * num // abs(c))


def psi_cocycle(g: UnimodularMatrix) -> Fraction:
    """psi(g) = phi(g) - sign(c(-d)) / 4, with c(-d) = c if c != 0 else -d.

    phi = Phi/12 off the c = 0 line; on it, phi(+-T^m) = m/12 - 1/4.
    Resulting values: psi(T^m) = m/12, psi(-I) = -1/2, psi = Phi/12 - sign(c)/4
    for c != 0. psi is a function of the matrix, not of +-g.
    """
    a, b, c, d = g.entries()
    if c == 0:
        phi = phi_cocycle(g) / 12 - Fraction(1, 4)
        return phi - Fraction(_sign(-d), 4)
    return phi_cocycle(g) / 12 - Fraction(_sign(c), 4)


def symbol_of_matrix(g: UnimodularMatrix) -> Fraction:
    """(a + d) / 12c - Phi(g) / 12 for any matrix with c != 0."""
    if g.c == 0:
        raise InfinityCoset("c = 0: the symbol is infinite")
    return Fraction(g.a + g.d, 12 * g.c) - phi_cocycle(g) / 12


def dedekind_symbol(coset: DoubleCoset) -> Fraction:
    """Dedekind symbol of a double coset of SL(2,Z); equals s(a; c)."""
    from .cosets import complete_matrix

    if not coset.group.is_sl2z:
        raise UnsupportedGroup(f"no symbol values for {coset.group}")
    return symbol_of_matrix(complete_matrix(coset))


# -- multiplier system -----------------------------------------------------------

@dataclass(frozen=True)
class MultiplierSystem:
    """chi_k = e(k psi) on SL(2,Z)."""

    k: Fraction | float
    group: GroupSpec = SL2Z

    def __post_init__(self):
        object.__setattr__(self, "k", as_weight(self.k))

    @property
    def scaled_volume(self):
        """k V / 4pi; exact for rational k."""
        v = self.group.volume_over_4pi
        return self.k * v if isinstance(self.k, Fraction) else self.k * float(v)

    @property
    def target_index(self) -> int:
        """ceil(k V / 4pi): the Kloosterman index m = n."""
        return math.ceil(self.scaled_volume)

    @property
    def alpha(self):
        """The scalar in [0, 1) with chi(T) = e(-alpha)."""
        return self.target_index - self.scaled_volume


def multiplier(ms: MultiplierSystem, g: UnimodularMatrix) -> complex:
    if not ms.group.is_sl2z:
        raise UnsupportedGroup(f"psi-based multiplier is only defined on SL(2,Z), not {ms.group}")
    return unit(scaled_frac(ms.k, psi_cocycle(g)))


# -- words -----------------------------------------------------------------------

_LETTERS = {"S": S, "s": S.inverse(), "T": T, "t": T.inverse()}


def word_matrix(word: str) -> UnimodularMatrix:
    """Product of generators; ``s`` and ``t`` denote S^-1 and T^-1."""
    g = UnimodularMatrix(1, 0, 0, 1)
    for ch in word:
        try:
            g = g @ _LETTERS[ch]
        except KeyError:
            raise ValueError(f"unknown generator {ch!r} in {word!r}") from None
    return g


def random_word(length: int, seed: int) -> str:
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = random.Random(f"{seed}:{length}")
    return "".join(rng.choice("SsTt") for _ in range(length))


def random_group_word(length: int, seed: int) -> UnimodularMatrix:
    g = word_matrix(random_word(length, seed))
    if g.a * g.d - g.b * g.c != 1:  # pragma: no cover - guarded by the constructor
        raise ArithmeticError("determinant drifted")
    return g
