import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dedekind_lab.errors import NotCoprime, ResourceLimit
from dedekind_lab.exact_arith import (
    batch_inverse_mask,
    batch_mod_inverse,
    frac_part,
    gcd,
    is_prime,
    mod_inverse,
    prime_factors,
    prime_sieve,
    smallest_prime_factor_sieve,
    totient_sieve,
)


@pytest.mark.parametrize("a,b,g", [(12, 18, 6), (0, 7, 7), (1, 10**9 + 7, 1), (-4, 6, 2)])
def test_gcd(a, b, g):
    assert gcd(a, b) == g


@pytest.mark.parametrize("a,c,d", [(3, 7, 5), (1, 1, 0), (4, 9, 7), (-1, 5, 4)])
def test_mod_inverse_examples(a, c, d):
    assert mod_inverse(a, c) == d


def test_mod_inverse_brute_force():
    for c in range(1, 60):
        for a in range(c):
            if math.gcd(a, c) != 1:
                with pytest.raises(NotCoprime):
                    mod_inverse(a, c)
                continue
            brute = next(d for d in range(c) if (a * d - 1) % c == 0)
            assert mod_inverse(a, c) == brute


def brute_phi(c):
    return sum(1 for a in range(c) if math.gcd(a, c) == 1)


def test_totient_examples():
    assert totient_sieve(10).tolist() == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert totient_sieve(1).tolist() == [1]
    assert int(totient_sieve(10).sum()) == 32


def test_totient_against_coprime_count():
    assert totient_sieve(500).tolist() == [brute_phi(c) for c in range(1, 501)]


def test_totient_budget():
    with pytest.raises(ResourceLimit):
        totient_sieve(10**6, budget=1000)


def test_primes_and_factors():
    small = [n for n in range(2, 200) if all(n % d for d in range(2, n))]
    assert prime_sieve(199).tolist() == small
    assert [n for n in range(200) if is_prime(n)] == small
    spf = smallest_prime_factor_sieve(100)
    assert spf[91] == 7 and spf[97] == 97 and spf[64] == 2
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []


def test_batch_inverse_matches_scalar():
    rng = np.random.default_rng(5)
    c = rng.integers(1, 10**6, size=4000)
    a = rng.integers(0, 10**6, size=4000) % c
    d, ok = batch_inverse_mask(a, c)
    for ai, ci, di, oki in zip(a.tolist(), c.tolist(), d.tolist(), ok.tolist()):
        assert oki == (math.gcd(ai, ci) == 1)
        if oki:
            assert di == pow(ai, -1, ci) if ci > 1 else di == 0


def test_batch_mod_inverse_rejects_non_units():
    with pytest.raises(NotCoprime):
        batch_mod_inverse(np.array([2, 3]), np.array([4, 5]))
    assert batch_mod_inverse(np.array([2, 3]), np.array([5, 5])).tolist() == [3, 2]


def test_frac_part():
    assert frac_part(Fraction(7, 2)) == Fraction(1, 2)
    assert frac_part(Fraction(-1, 3)) == Fraction(2, 3)
    assert frac_part(Fraction(4)) == 0


rationals = st.fractions(max_denominator=10**6)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if x != 0:
        assert x * (1 / x) == 1


@given(st.integers(-10**12, 10**12), st.integers(1, 10**12))
def test_mod_inverse_property(a, c):
    if math.gcd(a, c) != 1:
        with pytest.raises(NotCoprime):
            mod_inverse(a, c)
    else:
        d = mod_inverse(a, c)
        assert 0 <= d < c and (a * d - 1) % c == 0
