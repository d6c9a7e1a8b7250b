"""Optimal addition chains by iterative-deepening search, plus the
Scholz-Brauer inequality l(2^n - 1) <= n - 1 + l(n) checked on computed values."""

from __future__ import annotations

import math
from dataclasses import dataclass


class ChainBoundError(ValueError):
    """Target exceeds the configured search bound."""


@dataclass(frozen=True)
class AdditionChain:
    terms: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def target(self) -> int:
        return self.terms[-1]

    def is_valid(self) -> bool:
        return chain_valid(self.terms)


def chain_valid(terms: tuple[int, ...] | list[int]) -> bool:
    """Strictly increasing, starts at 1, every later term a sum of two earlier terms."""
    if not terms or terms[0] != 1:
        return False
    for i in range(1, len(terms)):
        if terms[i] <= terms[i - 1]:
            return False
        prefix = set(terms[:i])
        if not any(terms[i] - a in prefix for a in prefix):
            return False
    return True


def lower_bound(n: int) -> int:
    """Admissible lower bound: max of the doubling bound and the Schonhage bound."""
    if n == 1:
        return 0
    ceil_log2 = (n - 1).bit_length()
    nu = bin(n).count("1")
    schonhage = math.ceil(math.log2(n) + math.log2(nu) - 2.13 - 1e-9)
    return max(ceil_log2, schonhage)


def binary_length(n: int) -> int:
    """Length of the binary (square-and-multiply) chain."""
    return n.bit_length() - 1 + n.bit_count() - 1


def _search(n: int, limit: int) -> list[int] | None:
    """Depth-first search for a chain of length <= limit ending at n."""
    if n == 1:
        return [1]
    chain = [1]
    chain_set = {1}

    def dfs(remaining: int) -> bool:
        last = chain[-1]
        if last == n:
            return True
        if remaining == 0:
            return False
        if last << remaining < n:
            return False
        if remaining == 1:
            # one step left: n must be a pair sum
            for a in chain:
                if n - a in chain_set and n - a >= a:
                    chain.append(n)
                    return True
            return False
        floor_c = (n + (1 << (remaining - 1)) - 1) >> (remaining - 1)
        cands = set()
        for i in range(len(chain) - 1, -1, -1):
            ai = chain[i]
            if 2 * ai <= last:
                break
            for j in range(i, -1, -1):
                c = ai + chain[j]
                if c <= last:
                    break
                if c <= n and c >= floor_c:
                    cands.add(c)
        for c in sorted(cands, reverse=True):
            chain.append(c)
            chain_set.add(c)
            if dfs(remaining - 1):
                return True
            chain.pop()
            chain_set.discard(c)
        return False

    if dfs(limit):
        return list(chain)
    return None


def optimal_chain(n: int, bound: int = 2**20) -> tuple[AdditionChain, int]:
    """A provably minimal addition chain for n (iterative deepening from the lower bound)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > bound:
        raise ChainBoundError(f"{n} exceeds the chain search bound {bound}")
    limit = lower_bound(n)
    while True:
        found = _search(n, limit)
        if found is not None:
            chain = AdditionChain(tuple(found))
            assert chain.is_valid() and chain.target == n
            return chain, chain.length
        limit += 1


@dataclass(frozen=True)
class ScholzBrauerReport:
    n: int
    l_n: int
    l_mersenne: int
    bound: int           # n - 1 + l(n)
    holds: bool


def scholz_brauer_check(n: int, n_max: int = 10) -> ScholzBrauerReport:
    """Evaluate l(2^n - 1) <= n - 1 + l(n) with both sides computed exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > n_max:
        raise ChainBoundError(f"n = {n} beyond the desk-scale bound {n_max}")
    _, l_n = optimal_chain(n)
    _, l_m = optimal_chain(2**n - 1)
    bound = n - 1 + l_n
    return ScholzBrauerReport(n, l_n, l_m, bound, l_m <= bound)
