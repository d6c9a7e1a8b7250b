import pytest

from scholz.arith import primes_up_to
from scholz import cubic as C


def test_period_field_examples():
    f7 = C.period_field(7)
    assert (f7.L, f7.M) == (1, 1) and f7.poly == (-1, -2, 1)
    f13 = C.period_field(13)
    assert (f13.L, f13.M) == (-5, 1) and f13.poly == (1, -4, 1)
    with pytest.raises(ValueError):
        C.period_field(5)


def test_period_field_disc_invariant():
    # disc = (qM)^2 exactly: equals q^2 whenever the period ring is maximal (M = 1).
    # The spec text asserts q^2 unconditionally; q = 31 (M = 2) disproves that,
    # see the decisions ledger.
    for q in primes_up_to(10**4):
        if q % 3 != 1:
            continue
        F = C.period_field(q)
        assert 4 * q == F.L**2 + 27 * F.M**2 and F.L % 3 == 1
        assert C.cubic_disc(*F.poly) == (q * F.M) ** 2
        assert F.disc_check


def test_element_arithmetic():
    F = C.period_field(7)
    theta = C.THETA
    # theta and 1 + theta are units (contract examples)
    assert C.is_unit(theta, F)
    assert C.is_unit(C.make_elt(1, 1, 0), F)
    # norm is multiplicative over a sample
    a = C.make_elt(2, -1, 3)
    b = C.make_elt(-1, 4, 1)
    na, da = C.enorm_frac(a, F)
    nb, db = C.enorm_frac(b, F)
    nab, dab = C.enorm_frac(C.emul(a, b, F), F)
    assert na * nb * dab == nab * da * db


def test_s_action_is_exact_order_three():
    for q in (7, 13, 31, 61, 103):
        F = C.period_field(q)
        s = C.s_action(F)
        # conjugation cubes to the identity on a sample element
        x = C.make_elt(1, 2, -1)
        y = C.econj(C.econj(C.econj(x, F), F), F)
        assert y == x
        # norm = product of the three conjugates
        prod = C.emul(C.emul(x, C.econj(x, F), F), C.econj(C.econj(x, F), F), F)
        n, d3 = C.enorm_frac(x, F)
        assert prod.c[1] == 0 and prod.c[2] == 0
        assert prod.c[0] * d3 == n * prod.den


def test_unit_search_examples():
    F = C.period_field(7)
    sys7 = C.unit_search(F, 3)
    assert sys7.saturated_at_3
    assert C.is_unit(sys7.generator, F)
    assert sys7.units[1] == C.econj(sys7.generator, F)
    det, err = sys7.independence_certificate
    assert abs(det) > 10 * err
    sys13 = C.unit_search(C.period_field(13), 5)
    assert sys13.saturated_at_3
    with pytest.raises(ValueError):
        C.unit_search(F, 0)


def test_unit_search_large_conductor_uses_cyclotomic_units():
    F = C.period_field(181)
    system = C.unit_search(F, 8)
    assert system.saturated_at_3 and C.is_unit(system.generator, F)


def test_cubic_characters_trivial():
    F = C.period_field(7)
    assert C.cubic_characters(F, C.ONE, 13) == (0, 0, 0)
    assert C.cubic_characters(F, C.make_elt(8, 0, 0), 13) == (0, 0, 0)  # rational cube
    chars = C.cubic_characters(F, C.THETA, 13)
    assert set(chars) <= {0, 1, 2}


def test_cubic_characters_errors():
    F = C.period_field(7)
    with pytest.raises(C.SplittingError):
        C.cubic_characters(F, C.THETA, 11)   # 11 = 2 (mod 3)
    with pytest.raises(C.SplittingError):
        C.cubic_characters(F, C.THETA, 7)    # ramified
    with pytest.raises(C.SplittingError):
        C.cubic_characters(F, C.THETA, 31)   # 31 = 1 mod 3 but inert in K_7
    with pytest.raises(ValueError):
        C.cubic_characters(F, C.make_elt(13, 0, 0), 13)  # vanishes mod 13


def test_symbolic_class_cases():
    F = C.period_field(7)
    system = C.unit_search(F, 3)
    # the unit 1 and cubes land at level 4
    assert C.symbolic_class(F, C.ONE, 13).level == 4
    eta3 = C.epow(system.generator, 3, F)
    assert C.symbolic_class(F, eta3, 13).level == 4
    # norm -1 units are squared first and the flag records it
    g = system.generator
    if C.unit_norm(g, F) == -1:
        assert C.symbolic_class(F, g, 13).squared
    cls = C.symbolic_class(F, g, 13)
    assert cls.level in (2, 3, 4)


def test_norm_one_units_never_level_one():
    # Hilbert 90: the character sum of a norm-1 unit vanishes, so the observed
    # pattern is one of: all trivial, all equal nontrivial, pairwise distinct
    for q in (7, 13, 19, 31):
        F = C.period_field(q)
        system = C.unit_search(F, 8)
        units = [system.generator, system.units[1],
                 C.emul(system.generator, system.units[1], F)]
        for p in primes_up_to(150):
            if p % 3 != 1 or p == q or not C.splits_completely(F, p):
                continue
            for u in units:
                cls = C.symbolic_class(F, u, p)
                assert cls.level >= 2
                pattern = cls.characters
                assert (pattern == (0, 0, 0)
                        or pattern[0] == pattern[1] == pattern[2]
                        or len(set(pattern)) == 3)


def test_s_minus_one_power_has_level_three_everywhere():
    # eps = eta^(S-1) for a unit eta classifies at level >= 3 at every split p
    for q in (7, 13, 31):
        F = C.period_field(q)
        system = C.unit_search(F, 8)
        eta = system.generator
        eps = C.emul(C.econj(eta, F), C.einv(eta, F), F)
        assert C.unit_norm(eps, F) == 1
        for p in primes_up_to(1000):
            if p % 3 != 1 or p == q or not C.splits_completely(F, p):
                continue
            assert C.symbolic_class(F, eps, p).level >= 3, (q, p)


def test_proposition_review_modes():
    F = C.period_field(7)
    system = C.unit_search(F, 3)
    eta = system.generator
    eps = C.emul(C.econj(eta, F), C.einv(eta, F), F)
    assert C.proposition_review(F, system, eps, bound=500) == "consistent"
    sq = C.epow(eta, 2, F) if C.unit_norm(eta, F) == -1 else eta
    assert C.proposition_review(F, system, sq, bound=500) in ("low-level", "consistent", "review")


def test_classifier_agrees_with_bruteforce():
    for q in (7, 13, 19, 31, 37, 43, 61):
        F = C.period_field(q)
        system = C.unit_search(F, 8)
        units = [system.generator, system.units[1],
                 C.emul(system.generator, system.units[1], F)]
        for p in primes_up_to(100):
            if p % 3 != 1 or p == q or not C.splits_completely(F, p):
                continue
            for u in units:
                assert C.symbolic_class(F, u, p).level == C.symbolic_level_bruteforce(F, u, p)


def test_classifier_start_root_invariance():
    # the level does not depend on which prime above p the orbit starts at
    F = C.period_field(7)
    system = C.unit_search(F, 3)
    u = system.generator
    for p in (13, 43, 97, 127):
        assert p % 3 == 1 and C.splits_completely(F, p)
        chars = C.cubic_characters(F, u if C.unit_norm(u, F) == 1 else C.epow(u, 2, F), p)
        rotations = [chars, chars[1:] + chars[:1], chars[2:] + chars[:2]]
        levels = set()
        for rot in rotations:
            if rot == (0, 0, 0):
                levels.add(4)
            elif rot[0] == rot[1] == rot[2]:
                levels.add(3)
            else:
                levels.add(2)
        assert len(levels) == 1


def test_l3_reciprocity_pairs():
    r = C.l3_reciprocity_check(79, 97, height_bound=8)
    assert r.biconditional_holds
    with pytest.raises(ValueError):
        C.l3_reciprocity_check(7, 7)
    with pytest.raises(C.SplittingError):
        C.l3_reciprocity_check(7, 13)   # 13 splits in K_7 but 7 does not split in K_13
