import json

import pytest

from scholz.arith import squarefree_kernel
from scholz.quadratic import class_group, fundamental_discriminant
from scholz import construct as K
from scholz import ell2


def test_d4_plan_flagship():
    cert = K.d4_plan(5)
    assert cert.target_group == "D4_via_C4"
    assert cert.base_data["q"] == 29
    assert cert.complete and all(ok for _, ok, _ in cert.conditions)
    assert len(cert.conditions) == 3
    # the recorded ray class number matches the module computation
    assert cert.base_data["ray_class_number_mod_q"] == ell2.ray_class_number(5, 29)


def test_d4_plan_smallest_witness():
    # exhaustive check below 29: every smaller candidate fails a condition
    from scholz.arith import jacobi, primes_up_to
    from scholz.symbols import Sign, unit_character

    for q in primes_up_to(28):
        if q % 4 != 1 or q == 5:
            continue
        assert jacobi(5, q) != 1 or unit_character(5, q) != Sign.PLUS


def test_d4_plan_deterministic():
    assert K.d4_plan(5).to_json() == K.d4_plan(5).to_json()
    assert K.d4_plan(13).to_json() == K.d4_plan(13).to_json()


def test_d4_plan_errors():
    with pytest.raises(K.PreconditionError):
        K.d4_plan(7)
    with pytest.raises(K.PreconditionError):
        K.d4_plan(15)


def test_certificate_schema():
    cert = K.d4_plan(13)
    payload = json.loads(cert.to_json())
    assert list(payload) == ["target_group", "base_data", "conditions", "complete"]
    for cond in payload["conditions"]:
        assert list(cond) == ["predicate", "holds", "witness"]
    assert payload["complete"] == all(c["holds"] for c in payload["conditions"])


def test_pq_plan_quadratic():
    cert = K.pq_plan(2, 5)
    assert cert.base_data == {"p": 2, "q": 5, "l": 3, "base_discriminant": -3, "r": 31}
    assert cert.complete
    # r = 1 (mod 5) and the torsion unit is a quintic residue mod 31
    assert cert.base_data["r"] % 5 == 1


def test_pq_plan_cubic():
    cert = K.pq_plan(3, 7)
    assert cert.complete
    assert cert.base_data["p"] == 3 and cert.base_data["q"] == 7
    assert cert.base_data["r"] % 7 == 1
    assert cert.to_json() == K.pq_plan(3, 7).to_json()


def test_pq_plan_errors():
    with pytest.raises(K.PreconditionError):
        K.pq_plan(5, 11)
    with pytest.raises(K.PreconditionError):
        K.pq_plan(3, 5)   # q != 1 (mod 3)


def test_cubic_from_unit_flagship():
    r = K.cubic_from_unit(182)
    assert (r.unit_T, r.unit_U) == (701, 30)
    assert r.poly == (-1402, -3, 0)
    assert r.disc == -53071200
    assert r.disc_factorization.factors == ((2, 5), (3, 6), (5, 2), (7, 1), (13, 1))
    assert r.partner_discriminant == -728
    assert r.ratio_square_root == 270
    assert r.irreducible and r.unramified_claim and not r.degenerate


def test_companion_identity():
    # x^3 + 17x + b with b^2 = 4*(-182) has discriminant exactly 4
    assert K.depressed_cubic_disc(17, 4 * (-182)) == 4


def test_cubic_from_unit_inapplicable_and_degenerate():
    r = K.cubic_from_unit(5)  # applicable (after cubing the unit), but reducible
    assert r.applicable and r.degenerate and not r.unramified_claim
    r = K.cubic_from_unit(1)
    assert r.applicable and r.degenerate
    with pytest.raises(K.PreconditionError):
        K.cubic_from_unit(6)   # 3 | 3m fails the 3-coprimality precondition
    with pytest.raises(K.PreconditionError):
        K.cubic_from_unit(12)  # not squarefree


def test_cubic_from_unit_reflection_coherence():
    # whenever the construction completes, 3 divides the partner class number
    hits = 0
    for m in range(1, 501):
        if m % 3 == 0 or squarefree_kernel(m) != m:
            continue
        r = K.cubic_from_unit(m)
        if not r.applicable:
            continue
        if r.unramified_claim:
            hits += 1
            g = class_group(r.partner_discriminant)
            assert g.p_rank(3) >= 1, (m, r.partner_discriminant, g.elementary_divisors)
    assert hits >= 3  # the check is not vacuous


def test_unit_norm_minus_one_inapplicable():
    # 3m with a norm -1 unit: m = 2? eps(6) has norm +1; use m = 218? keep a known case:
    # d = 3*41 = 123: eps(123) = 11 + sqrt(123)? 121 - 123 = -2, not a unit; CF gives norm +1.
    # Norm -1 requires 3m = 2 (mod 4) never; search a real case dynamically.
    from scholz.quadratic import fundamental_unit

    found = None
    for m in range(1, 200):
        if m % 3 == 0 or squarefree_kernel(m) != m:
            continue
        d = fundamental_discriminant(3 * m)
        if fundamental_unit(d).norm == -1:
            found = m
            break
    if found is None:
        pytest.skip("no norm -1 case in range (units of Q(sqrt 3m) rarely have norm -1)")
    r = K.cubic_from_unit(found)
    assert not r.applicable and "norm -1" in r.reason
