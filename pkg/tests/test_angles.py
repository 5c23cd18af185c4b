import math
from fractions import Fraction

import pytest
from mpmath import mp

from newformlab.angles import (IRRATIONAL_HEURISTIC, RATIONAL_ANGLE,
                               AngleDomainError, angle, classify_angle,
                               fraction_from_mpf, normalized_prime_coeff,
                               power_sequence, prime_power_coeff)


def test_zero_coefficient_gives_right_angle(cm_table):
    rec = angle(cm_table, 3)  # supersingular: a_3 = 0
    assert rec.classification == RATIONAL_ANGLE
    assert float(rec.theta) == pytest.approx(math.pi / 2, abs=1e-15)
    assert rec.fraction_lo <= Fraction(1, 4) <= rec.fraction_hi
    assert float(rec.radius) <= 2.0 ** (1 - 256)


def test_e11_p2_is_rational_angle(e11_table):
    # a_2 = -2, weight 2: a(2)^2 = 4/2 = 2, so theta = 3*pi/4
    rec = angle(e11_table, 2)
    assert rec.classification == RATIONAL_ANGLE
    assert float(rec.theta) == pytest.approx(3 * math.pi / 4, abs=1e-15)


def test_delta_p2_angle_matches_double_precision(delta_table):
    rec = angle(delta_table, 2)
    a2 = -24 / 2 ** 5.5
    assert a2 == pytest.approx(-0.530330085889911, abs=1e-12)
    assert float(rec.theta) == pytest.approx(math.acos(a2 / 2), abs=1e-13)
    assert rec.classification == IRRATIONAL_HEURISTIC
    assert float(rec.radius) <= 2.0 ** (1 - 256)


def test_interval_brackets_cosine(delta_table):
    for p in delta_table.good_primes(200):
        rec = angle(delta_table, int(p))
        # exact enclosure of a(p)/2 and theta enclosure consistency
        assert rec.cos_lo <= rec.cos_hi
        assert rec.cos_hi - rec.cos_lo < Fraction(1, 2 ** 250)
        assert rec.theta_lo <= rec.theta_hi
        with mp.workprec(300):
            # 2 cos(theta) must equal a(p) within the certified radius
            mid_cos = mp.cos(rec.theta)
            a_p = 2 * mp.mpf(rec.cos_lo.numerator) / rec.cos_lo.denominator
            assert abs(2 * mid_cos - a_p) <= 4 * rec.radius + mp.mpf(2) ** -250


def test_fraction_interval_certified(delta_table):
    rec = angle(delta_table, 5, precision_bits=128)
    assert Fraction(0) <= rec.fraction_lo < rec.fraction_hi <= Fraction(1, 2)
    width = rec.fraction_hi - rec.fraction_lo
    assert width <= Fraction(1, 2 ** 120)


def test_angle_rejects_bad_and_composite(cm_table):
    with pytest.raises(ValueError, match="bad prime"):
        angle(cm_table, 2)
    with pytest.raises(ValueError, match="not prime"):
        angle(cm_table, 9)


def test_angle_detects_coefficient_corruption(delta_table):
    import copy
    broken = copy.copy(delta_table)
    broken.raw = list(delta_table.raw)
    broken.raw[2] = 10 ** 9  # violates Deligne at p = 2
    with pytest.raises(AngleDomainError):
        angle(broken, 2)


def test_classify_realizable_squares():
    assert classify_angle(0, 5, 2) == RATIONAL_ANGLE        # a^2/p = 0
    assert classify_angle(-2, 2, 2) == RATIONAL_ANGLE       # 4/2 = 2
    assert classify_angle(3, 3, 2) == RATIONAL_ANGLE        # 9/3 = 3
    assert classify_angle(1, 5, 2) == IRRATIONAL_HEURISTIC  # 1/5


def test_prime_power_coeff_m0(delta_table):
    assert prime_power_coeff(delta_table, 2, 0) == 1


def test_prime_power_coeff_supersingular_zeros(cm_table):
    # right angle: odd powers vanish exactly, even powers alternate sign
    assert prime_power_coeff(cm_table, 3, 5) == 0
    assert prime_power_coeff(cm_table, 3, 2) == -1
    assert prime_power_coeff(cm_table, 3, 4) == 1


def test_closed_form_agrees_with_recursion(delta_table):
    for m in range(1, 14):  # 2^13 < 10^4
        closed = float(prime_power_coeff(delta_table, 2, m))
        assert abs(closed - delta_table.a(2 ** m)) < 1e-9


def test_power_sequence_matches_closed_form(delta_table):
    with mp.workprec(300):
        a2 = normalized_prime_coeff(delta_table, 2)
        seq = list(power_sequence(a2, 50))
        for m in (1, 7, 50):
            direct = prime_power_coeff(delta_table, 2, m)
            assert abs(seq[m] - direct) < mp.mpf(2) ** -220


def test_fraction_from_mpf_round_trip():
    with mp.workprec(80):
        x = mp.mpf(3) / 7
        f = fraction_from_mpf(x)
        assert abs(f - Fraction(3, 7)) < Fraction(1, 2 ** 75)
        assert fraction_from_mpf(mp.mpf(0)) == 0
        assert fraction_from_mpf(mp.mpf(-5)) == -5
