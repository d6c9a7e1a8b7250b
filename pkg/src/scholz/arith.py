"""Exact integer plumbing: primality, factorization, Jacobi symbols, modular square roots.

Everything operates on Python ints and is pure; safe to call from any number
of workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class NotPrimeError(ValueError):
    """A modulus that must be prime is composite."""


class NonresidueError(ValueError):
    """Square root requested for a quadratic nonresidue."""


class FactorBudgetError(RuntimeError):
    """Factorization effort cap hit before completion (explicit, never a wrong answer)."""


# Deterministic Miller-Rabin witness set, correct for all n < 3.317e24
# (Sorenson-Webster), which covers the 2^64 contract with room to spare.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

# Policy above the deterministic range: the twelve witnesses above plus forty
# more fixed prime bases.  Deterministic output with error probability below
# 4**-52 per composite; documented, not relied on by any scan in this package.
_EXTRA_WITNESSES = (
    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239,
)

_TRIAL_LIMIT = 10**6


def _mr_composite_witness(n: int, a: int) -> bool:
    """True if base a proves n composite."""
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: deterministic below 2^64 (in fact below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    witnesses = _MR_WITNESSES
    if n >= _DETERMINISTIC_LIMIT:
        witnesses = _MR_WITNESSES + _EXTRA_WITNESSES
    return not any(_mr_composite_witness(n, a) for a in witnesses)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (_TRIAL_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(2, _TRIAL_LIMIT + 1) if sieve[i])


def primes_up_to(n: int) -> list[int]:
    """All primes <= n (n <= 10^6 served from the cached sieve)."""
    if n <= _TRIAL_LIMIT:
        ps = _small_primes()
        # bisect would work too; scans only ever ask for modest n
        out = []
        for p in ps:
            if p > n:
                break
            out.append(p)
        return out
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]  # (prime, exponent), primes strictly increasing

    def reassembled(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n if self.value > 0 else -n

    def __iter__(self):
        return iter(self.factors)


def _brent_rho(n: int, budget: int) -> int | None:
    """One Brent-cycle factor attempt; returns a nontrivial factor or None on budget."""
    if n % 2 == 0:
        return 2
    for c in range(1, 20):
        y, m, g, r, q = 2, 128, 1, 1, 1
        spent = 0
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
            spent += r
            if spent > budget:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factor(n: int, budget: int = 1 << 24) -> Factorization:
    """Complete factorization of n != 0; trial division to 10^6 then Brent rho.

    Raises FactorBudgetError when the rho iteration cap is exceeded.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    value = n
    n = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        d = _brent_rho(m, budget)
        if d is None or d in (1, m):
            raise FactorBudgetError(f"factorization budget exceeded on {m}")
        stack.extend([d, m // d])
    return Factorization(value, tuple(sorted(found.items())))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int:
    """Square root of a modulo an odd prime p, canonical choice r <= p - r.

    Raises NonresidueError when (a/p) = -1 and NotPrimeError for composite p.
    """
    if p == 2 or not is_prime(p):
        raise NotPrimeError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) == -1:
        raise NonresidueError(f"{a} is a quadratic nonresidue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def icbrt(n: int) -> int:
    """Floor integer cube root of n >= 0."""
    if n < 0:
        raise ValueError("icbrt needs n >= 0")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def squarefree_kernel(n: int) -> int:
    """Signed squarefree part of n != 0 (product of primes with odd exponent)."""
    f = factor(n)
    k = 1
    for p, e in f.factors:
        if e % 2:
            k *= p
    return k if n > 0 else -k
