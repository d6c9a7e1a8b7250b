import pytest
from hypothesis import given, settings, strategies as st

from scholz.arith import NonresidueError, jacobi, primes_up_to
from scholz.symbols import (
    Sign,
    UndefinedSymbolError,
    quartic_symbol,
    unit_character,
    unit_character_at_root,
)
from scholz.arith import sqrt_mod_prime

P1MOD4 = [p for p in primes_up_to(2000) if p % 4 == 1]


def test_sign_type():
    assert Sign.PLUS * Sign.MINUS == Sign.MINUS
    assert -Sign.MINUS == Sign.PLUS
    assert int(Sign.MINUS) == -1
    with pytest.raises(ValueError):
        Sign.of(7)


def test_quartic_symbol_examples():
    assert quartic_symbol(1, 13) == Sign.PLUS
    assert quartic_symbol(5, 41) == Sign.MINUS
    assert quartic_symbol(41, 5) == Sign.PLUS


def test_quartic_symbol_errors():
    with pytest.raises(UndefinedSymbolError):
        quartic_symbol(2, 7)        # q = 3 (mod 4)
    with pytest.raises(UndefinedSymbolError):
        quartic_symbol(2, 5)        # nonresidue
    with pytest.raises(UndefinedSymbolError):
        quartic_symbol(13, 13)      # divisible by the modulus


@given(st.integers(min_value=2, max_value=10**6), st.sampled_from(P1MOD4))
@settings(max_examples=400)
def test_quartic_symbol_square_consistency(a, q):
    # (a^2 / q)_4 = a^((q-1)/2) mod q, the quadratic character
    if a % q == 0:
        return
    s = quartic_symbol(a * a % q, q)
    assert int(s) == jacobi(a, q)
    if jacobi(a, q) == 1:
        assert quartic_symbol(a, q) * quartic_symbol(a, q) == Sign.PLUS


def test_unit_character_examples():
    assert unit_character(5, 41) == Sign.MINUS
    assert unit_character(5, 29) == Sign.PLUS


def test_unit_character_errors():
    with pytest.raises(UndefinedSymbolError):
        unit_character(5, 7)   # q = 3 (mod 4) refused: root-dependent
    with pytest.raises(UndefinedSymbolError):
        unit_character(7, 29)  # p = 3 (mod 4)
    with pytest.raises(NonresidueError):
        unit_character(5, 13)  # sqrt(5) does not exist mod 13


def test_unit_character_root_independence():
    # both square roots of p give the same character when q = 1 (mod 4)
    count = 0
    for p in P1MOD4[:18]:
        for q in P1MOD4:
            if p == q or jacobi(p, q) != 1:
                continue
            r = sqrt_mod_prime(p, q)
            a = unit_character_at_root(p, q, r)
            b = unit_character_at_root(p, q, q - r)
            assert a == b == unit_character(p, q), (p, q)
            count += 1
    assert count > 1000
