"""Exact integer and rational primitives.

Rationals are :class:`fractions.Fraction`: arbitrary precision, always
reduced, positive denominator. Nothing in this module rounds.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import NotCoprime, ResourceLimit

Rational = Fraction

#: Largest number of array elements a single call may allocate.
DEFAULT_BUDGET = 5 * 10**7


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def mod_inverse(a: int, c: int) -> int:
    """Return d in [0, c) with a*d = 1 (mod c). By convention the inverse mod 1 is 0."""
    if c < 1:
        raise ValueError(f"modulus must be positive, got {c}")
    if c == 1:
        return 0
    if math.gcd(a, c) != 1:
        raise NotCoprime(f"gcd({a}, {c}) = {math.gcd(a, c)}")
    return pow(a, -1, c)


def check_budget(n_items: int, budget: int | None, what: str) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if n_items > limit:
        raise ResourceLimit(f"{what}: {n_items} elements exceeds budget {limit}")


def totient_sieve(x: int, budget: int | None = None) -> np.ndarray:
    """Euler totient of 1..x; entry ``i`` holds phi(i + 1).

    Eratosthenes-style: for every prime p, phi[p::p] -= phi[p::p] // p.
    """
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    check_budget(x, budget, "totient_sieve")
    phi = np.arange(x + 1, dtype=np.int64)
    for p in prime_sieve(x).tolist():
        phi[p::p] -= phi[p::p] // p
    return phi[1:]


def prime_sieve(x: int) -> np.ndarray:
    """All primes <= x, ascending."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(x + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def smallest_prime_factor_sieve(x: int) -> np.ndarray:
    """spf[n] = least prime dividing n, for 2 <= n <= x (spf[0] = spf[1] = 0)."""
    spf = np.zeros(max(x, 1) + 1, dtype=np.int64)
    for p in prime_sieve(x).tolist():
        block = spf[p::p]
        block[block == 0] = p
    return spf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % q for q in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n by trial division."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def batch_inverse_mask(a: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized extended Euclid over pairs (a, c).

    Returns ``(d, ok)``: ok marks coprime pairs and d = a^-1 mod c there
    (0 elsewhere; the inverse mod 1 is 0). Finished lanes are dropped after
    each pass. Every intermediate is bounded by c, so moduli below 2^31 run
    in int32.
    """
    a = np.asarray(a, dtype=np.int64).ravel()
    c = np.asarray(c, dtype=np.int64).ravel()
    dtype = np.int32 if c.size == 0 or int(c.max()) < 2**31 - 1 else np.int64
    out = np.zeros(a.size, dtype=dtype)
    ok = np.zeros(a.size, dtype=bool)
    lane = np.arange(a.size)
    r0, r1 = c.astype(dtype), np.mod(a, c).astype(dtype)
    t0, t1 = np.zeros_like(r0), np.ones_like(r0)
    while lane.size:
        done = r1 == 0
        if done.any():
            fin = lane[done]
            out[fin] = t0[done]
            ok[fin] = r0[done] == 1
            keep = ~done
            lane, r0, r1, t0, t1 = lane[keep], r0[keep], r1[keep], t0[keep], t1[keep]
            if not lane.size:
                break
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    d = np.where(ok, np.mod(out.astype(np.int64), c), 0)
    return d, ok


def batch_mod_inverse(a: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Elementwise inverse of a mod c; every pair must be coprime."""
    a = np.asarray(a, dtype=np.int64)
    c = np.broadcast_to(np.asarray(c, dtype=np.int64), a.shape)
    d, ok = batch_inverse_mask(a, c)
    if not ok.all():
        bad = int(np.flatnonzero(~ok)[0])
        raise NotCoprime(f"gcd({int(a.flat[bad])}, {int(c.flat[bad])}) != 1")
    return d.reshape(a.shape)


def frac_part(x: Fraction) -> Fraction:
    """Fractional part in [0, 1), exactly."""
    return x - math.floor(x)
