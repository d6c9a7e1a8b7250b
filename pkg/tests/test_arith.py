import random

import pytest
from hypothesis import given, settings, strategies as st

from scholz.arith import (
    FactorBudgetError,
    NonresidueError,
    NotPrimeError,
    factor,
    is_prime,
    jacobi,
    primes_up_to,
    sqrt_mod_prime,
    squarefree_kernel,
)

PRIMES_1000 = primes_up_to(1000)


def test_is_prime_examples():
    assert not is_prime(1)
    assert is_prime(1093)
    assert not is_prime(19677)  # 3 * 7 * 937


def test_is_prime_against_sieve():
    sieve = set(PRIMES_1000)
    for n in range(1001):
        assert is_prime(n) == (n in sieve)


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))


def test_factor_examples():
    assert factor(728).factors == ((2, 3), (7, 1), (13, 1))
    f = factor(-53071200)
    assert f.factors == ((2, 5), (3, 6), (5, 2), (7, 1), (13, 1))
    assert f.value == -53071200 and f.reassembled() == -53071200
    assert factor(1).factors == ()


def test_factor_budget_is_explicit():
    # two large primes beyond the rho budget: error, never a wrong answer
    p = 2**127 - 1
    with pytest.raises(FactorBudgetError):
        factor(p * (p + 64), budget=8)


def test_factor_roundtrip_bulk():
    # 10^5 random inputs up to 10^12 reassemble exactly
    rng = random.Random(20231115)
    for _ in range(100_000):
        n = rng.randrange(2, 10**12)
        f = factor(n)
        assert f.reassembled() == n
        assert all(is_prime(p) for p, _ in f.factors)
        assert [p for p, _ in f.factors] == sorted({p for p, _ in f.factors})


def test_jacobi_examples():
    assert jacobi(1, 9) == 1
    assert jacobi(5, 13) == -1
    assert jacobi(5, 41) == 1


def test_jacobi_matches_euler_criterion():
    for p in PRIMES_1000[1:]:
        for a in range(1, 25):
            e = pow(a, (p - 1) // 2, p)
            expected = 0 if a % p == 0 else (1 if e == 1 else -1)
            assert jacobi(a, p) == expected


@given(st.integers(min_value=-10**9, max_value=10**9),
       st.integers(min_value=-10**9, max_value=10**9),
       st.sampled_from([n for n in range(3, 2000, 2)]))
@settings(max_examples=300)
def test_jacobi_multiplicative(a, b, n):
    assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


def test_sqrt_mod_prime_examples():
    assert sqrt_mod_prime(0, 7) == 0
    assert sqrt_mod_prime(5, 41) == 13
    r = sqrt_mod_prime(2, 7)
    assert r in (3, 4) and r * r % 7 == 2


def test_sqrt_mod_prime_errors():
    with pytest.raises(NonresidueError):
        sqrt_mod_prime(3, 7)
    with pytest.raises(NotPrimeError):
        sqrt_mod_prime(4, 15)


@given(st.integers(min_value=0, max_value=10**6),
       st.sampled_from(PRIMES_1000[1:]))
@settings(max_examples=500)
def test_sqrt_mod_prime_roundtrip(a, p):
    if jacobi(a, p) == -1:
        return
    r = sqrt_mod_prime(a, p)
    assert r * r % p == a % p
    assert r <= p - r


def test_squarefree_kernel():
    assert squarefree_kernel(12) == 3
    assert squarefree_kernel(-182) == -182
    assert squarefree_kernel(9 * 17) == 17
    assert squarefree_kernel(-4) == -1
