"""Deterministic fan-out over fixed blocks.

Work is always cut into the same blocks regardless of the worker count,
and results come back in block order, so the thread count can never
change a single output bit.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "DEDEKIND_LAB_THREADS"


def default_threads() -> int:
    raw = os.environ.get(ENV_THREADS, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def block_map(fn: Callable[[T], R], blocks: Sequence[T], threads: int | None = None) -> list[R]:
    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or len(blocks) <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, blocks))


def c_blocks(cs: Sequence[int], max_pairs: int = 1 << 20) -> list[list[int]]:
    """Split moduli into consecutive blocks holding about ``max_pairs`` residues."""
    blocks, cur, load = [], [], 0
    for c in cs:
        cur.append(c)
        load += c
        if load >= max_pairs:
            blocks.append(cur)
            cur, load = [], 0
    if cur:
        blocks.append(cur)
    return blocks


def ordered_fsum(values: Iterable[float]) -> float:
    """Correctly rounded sum; independent of order and chunking."""
    return math.fsum(values)


def complex_fsum(values: Iterable[complex]) -> complex:
    re, im = [], []
    for v in values:
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))


def running_complex_sum(values: Iterable[complex]) -> list[complex]:
    """Prefix sums with Neumaier compensation on each component."""
    out = []
    s_re = c_re = s_im = c_im = 0.0
    for v in values:
        s_re, c_re = _neumaier(s_re, c_re, v.real)
        s_im, c_im = _neumaier(s_im, c_im, v.imag)
        out.append(complex(s_re + c_re, s_im + c_im))
    return out


def _neumaier(s: float, comp: float, x: float) -> tuple[float, float]:
    t = s + x
    if abs(s) >= abs(x):
        comp += (s - t) + x
    else:
        comp += (x - t) + s
    return t, comp
