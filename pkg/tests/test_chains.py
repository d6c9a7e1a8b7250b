import random

import pytest

from scholz import chains as CH


@pytest.fixture(scope="module")
def table():
    # one shared table of optimal chains for n <= 256
    return {n: CH.optimal_chain(n) for n in range(1, 257)}


def test_examples():
    c, l = CH.optimal_chain(1)
    assert l == 0 and c.terms == (1,)
    c, l = CH.optimal_chain(2)
    assert l == 1 and c.terms == (1, 2)
    c, l = CH.optimal_chain(15)
    assert l == 5 and c.is_valid()


def test_known_small_lengths(table):
    # classical table of l(n) for n = 1..24
    expected = [0, 1, 2, 2, 3, 3, 4, 3, 4, 4, 5, 4, 5, 5, 5, 4, 5, 5, 6, 5, 6, 6, 6, 5]
    for n, e in enumerate(expected, start=1):
        assert table[n][1] == e, n


def test_chain_bound():
    with pytest.raises(CH.ChainBoundError):
        CH.optimal_chain(10, bound=5)


def test_verifier_accepts_and_rejects(table):
    for n, (chain, _) in table.items():
        assert chain.is_valid() and chain.target == n
    assert CH.chain_valid((1, 2, 3, 5, 10))
    assert not CH.chain_valid((2, 3))          # must start at 1
    assert not CH.chain_valid((1, 3))          # 3 is not a sum of earlier terms
    assert not CH.chain_valid((1, 2, 2))       # not strictly increasing
    assert not CH.chain_valid(())


def test_verifier_fuzz_mutations(table):
    # random mutations of valid chains are rejected (unless the mutation happens
    # to produce another valid chain, which the verifier itself decides)
    rng = random.Random(53)
    rejected = 0
    trials = 0
    while rejected < 1000:
        n = rng.randrange(8, 257)
        chain, _ = table[n]
        terms = list(chain.terms)
        i = rng.randrange(1, len(terms))
        delta = rng.choice([-3, -2, -1, 1, 2, 3, 17])
        terms[i] = max(1, terms[i] + delta)
        trials += 1
        if not CH.chain_valid(tuple(terms)):
            rejected += 1
        assert trials < 10000
    assert rejected == 1000


def test_subadditivity_and_binary_bound(table):
    for n in range(1, 257):
        assert table[n][1] <= CH.binary_length(n)
    for n in range(1, 129):
        assert table[2 * n][1] <= table[n][1] + 1
    for m in range(2, 17):
        for n in range(2, 17):
            assert table[m * n][1] <= table[m][1] + table[n][1]


def test_lower_bound_admissible(table):
    for n in range(1, 257):
        assert CH.lower_bound(n) <= table[n][1]


def test_scholz_brauer_small():
    r = CH.scholz_brauer_check(2)
    assert (r.l_n, r.l_mersenne, r.bound, r.holds) == (1, 2, 2, True)
    r = CH.scholz_brauer_check(4)
    assert (r.l_mersenne, r.bound, r.holds) == (5, 5, True)
    r = CH.scholz_brauer_check(1)
    assert (r.l_n, r.l_mersenne, r.bound, r.holds) == (0, 0, 0, True)
    with pytest.raises(CH.ChainBoundError):
        CH.scholz_brauer_check(11)
