"""Compiled inner loops for the Kloosterman scans and the Weyl sums.

Per modulus c: sieve out the non-units with c's prime factors, invert all
units at once with Montgomery's trick (one extended Euclid, three modular
products per unit), then accumulate e((m a + n d) / c).
"""
from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None


def _inverse(a, c):
    r0, r1 = c, a % c
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    return t0 % c


def _kloosterman_sums(m, n, cs, spf):
    size = cs.size
    out_re = np.zeros(size)
    out_im = np.zeros(size)
    if size == 0:
        return out_re, out_im
    cmax = cs.max()
    units = np.empty(cmax, np.int64)
    prefix = np.empty(cmax, np.int64)
    inv = np.empty(cmax, np.int64)
    mark = np.empty(cmax, np.bool_)
    for i in range(size):
        c = cs[i]
        if c == 1:
            out_re[i] = 1.0  # single term a = d = 0
            continue
        mark[:c] = True
        r = c
        while r > 1:
            p = spf[r]
            for j in range(0, c, p):
                mark[j] = False
            while r % p == 0:
                r //= p
        k = 0
        acc = 1
        for a in range(1, c):
            if mark[a]:
                units[k] = a
                acc = acc * a % c
                prefix[k] = acc
                k += 1
        tinv = _inverse(acc, c)
        for j in range(k - 1, 0, -1):
            inv[j] = tinv * prefix[j - 1] % c
            tinv = tinv * units[j] % c
        inv[0] = tinv
        mm = m % c
        nn = n % c
        sr = 0.0
        si = 0.0
        for j in range(k):
            num = (mm * units[j] + nn * inv[j]) % c
            ang = 2.0 * math.pi * (num / c)
            sr += math.cos(ang)
            si += math.sin(ang)
        out_re[i] = sr
        out_im[i] = si
    return out_re, out_im


def _neumaier_sum(x):
    s = 0.0
    comp = 0.0
    for i in range(x.size):
        v = x[i]
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
    return s + comp


def _weyl_direct(values, m):
    sr = 0.0
    cr = 0.0
    si = 0.0
    ci = 0.0
    for i in range(values.size):
        t = m * values[i]
        ang = 2.0 * math.pi * (t - math.floor(t))
        x = math.cos(ang)
        y = math.sin(ang)
        u = sr + x
        cr += ((sr - u) + x) if abs(sr) >= abs(x) else ((x - u) + sr)
        sr = u
        u = si + y
        ci += ((si - u) + y) if abs(si) >= abs(y) else ((y - u) + si)
        si = u
    return sr + cr, si + ci


def _weyl_power_sums(values, M):
    # e(m v) by repeated multiplication with e(v); error grows like m * eps
    sr = np.zeros(M)
    cr = np.zeros(M)
    si = np.zeros(M)
    ci = np.zeros(M)
    for i in range(values.size):
        ang = 2.0 * math.pi * values[i]
        br = math.cos(ang)
        bi = math.sin(ang)
        x = br
        y = bi
        for j in range(M):
            u = sr[j] + x
            cr[j] += ((sr[j] - u) + x) if abs(sr[j]) >= abs(x) else ((x - u) + sr[j])
            sr[j] = u
            u = si[j] + y
            ci[j] += ((si[j] - u) + y) if abs(si[j]) >= abs(y) else ((y - u) + si[j])
            si[j] = u
            x, y = x * br - y * bi, x * bi + y * br
    return sr + cr, si + ci


if njit is not None:
    _weyl_direct = njit(cache=True, nogil=True)(_weyl_direct)
    _weyl_power_sums = njit(cache=True, nogil=True)(_weyl_power_sums)
    _inverse = njit(cache=True, nogil=True)(_inverse)
    _kloosterman_sums = njit(cache=True, nogil=True)(_kloosterman_sums)
    _neumaier_sum = njit(cache=True, nogil=True)(_neumaier_sum)

HAVE_NUMBA = njit is not None


def kloosterman_sums(m: int, n: int, cs: np.ndarray, spf: np.ndarray) -> np.ndarray:
    """S(m, n; c) for each c in ``cs``; ``spf`` is a smallest-prime-factor table
    covering max(cs)."""
    re, im = _kloosterman_sums(int(m), int(n), np.ascontiguousarray(cs, dtype=np.int64), spf)
    return re + 1j * im


def compensated_sum(x: np.ndarray) -> float:
    """Neumaier-compensated sum in array order (math.fsum without numba)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if not HAVE_NUMBA:
        return math.fsum(x.tolist())
    return float(_neumaier_sum(x))


def weyl_direct(values: np.ndarray, m: int) -> complex:
    """sum e(m v) with each phase reduced mod 1 before the trig call."""
    v = np.ascontiguousarray(values, dtype=np.float64)
    if not HAVE_NUMBA:
        ang = 2.0 * np.pi * np.mod(m * v, 1.0)
        return complex(math.fsum(np.cos(ang).tolist()), math.fsum(np.sin(ang).tolist()))
    re, im = _weyl_direct(v, float(m))
    return complex(re, im)


def weyl_power_sums(values: np.ndarray, M: int) -> np.ndarray:
    """sum e(m v) for m = 1..M in one pass."""
    v = np.ascontiguousarray(values, dtype=np.float64)
    if not HAVE_NUMBA:
        return np.array([weyl_direct(v, m) for m in range(1, M + 1)])
    re, im = _weyl_power_sums(v, int(M))
    return re + 1j * im
