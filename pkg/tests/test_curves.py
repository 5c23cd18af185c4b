import math

import pytest

from newformlab.curves import ec_ap, short_model_mod_p
from newformlab.forms import (CURVE_11A, CURVE_32A, elliptic_curve_form,
                              weierstrass_discriminant)
from newformlab.tables import primes_from_spf, spf_sieve

from oracles import count_points_enumeration


def good_primes(spec, limit):
    return [int(p) for p in primes_from_spf(spf_sieve(limit))
            if not spec.is_bad_prime(int(p))]


def test_cm_curve_at_3_by_enumeration():
    # 4 points on y^2 = x^3 - x over F_3 including infinity
    assert count_points_enumeration(CURVE_32A.a_invariants, 3) == 4
    assert ec_ap(CURVE_32A, 3) == 3 + 1 - 4 == 0


def test_cm_curve_at_5_hasse():
    a5 = ec_ap(CURVE_32A, 5)
    assert a5 == 5 + 1 - count_points_enumeration(CURVE_32A.a_invariants, 5)
    assert abs(a5) <= 2 * math.sqrt(5)


@pytest.mark.parametrize("spec", [CURVE_32A, CURVE_11A], ids=lambda s: s.form_id)
def test_ec_ap_matches_enumeration_to_200(spec):
    for p in good_primes(spec, 200):
        expected = p + 1 - count_points_enumeration(spec.a_invariants, p)
        assert ec_ap(spec, p) == expected, f"p={p}"


def test_known_11a_values_against_enumeration():
    # classical q-expansion q - 2q^2 - q^3 + 2q^4 + q^5 + ...
    assert ec_ap(CURVE_11A, 2) == -2
    assert ec_ap(CURVE_11A, 3) == -1
    assert ec_ap(CURVE_11A, 5) == 1
    for p in (2, 3, 5):
        assert ec_ap(CURVE_11A, p) == p + 1 - count_points_enumeration(
            CURVE_11A.a_invariants, p)


def test_supersingular_pattern_cm_curve():
    for p in good_primes(CURVE_32A, 1000):
        assert (ec_ap(CURVE_32A, p) == 0) == (p % 4 == 3), f"p={p}"


def test_bad_prime_rejected():
    with pytest.raises(ValueError, match="conductor"):
        ec_ap(CURVE_32A, 2)
    with pytest.raises(ValueError, match="conductor"):
        ec_ap(CURVE_11A, 11)


def test_composite_rejected():
    with pytest.raises(ValueError, match="prime"):
        ec_ap(CURVE_32A, 15)


def test_singular_model_detected():
    # same equation as the CM curve but with a wrong conductor claim, so
    # p = 2 divides the discriminant without being excluded as bad
    fake = elliptic_curve_form(0, 0, 0, -1, 0, 3)
    with pytest.raises(ValueError, match="singular"):
        ec_ap(fake, 2)


def test_singular_discriminant_rejected_at_construction():
    with pytest.raises(ValueError, match="discriminant"):
        elliptic_curve_form(0, 0, 0, 0, 0, 1)


def test_discriminants_of_bundled_curves():
    assert weierstrass_discriminant(CURVE_32A.a_invariants) == 64
    assert weierstrass_discriminant(CURVE_11A.a_invariants) == -161051


def test_short_model_preserves_count():
    for p in (5, 13, 97):
        A, B = short_model_mod_p(CURVE_11A, p)
        assert count_points_enumeration((0, 0, 0, A, B), p) == \
            count_points_enumeration(CURVE_11A.a_invariants, p)
