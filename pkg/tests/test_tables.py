import math
import random

import numpy as np
import pytest

from newformlab.forms import BUNDLED_FORMS
from newformlab.series import tau_table
from newformlab.tables import (build_table, divisor_counts, divisor_function,
                               spf_sieve)


def test_raw_normalization(delta_table, cm_table, e11_table):
    for table in (delta_table, cm_table, e11_table):
        assert table.raw[1] == 1
        assert table.a(1) == 1.0


def test_delta_table_equals_eta_expansion():
    # multiplicativity + recursion from primes must reproduce the
    # independent full product expansion
    table = build_table(BUNDLED_FORMS["delta"], 3000)
    assert table.raw == tau_table(3000)


@pytest.mark.parametrize("name", ["delta", "cm32", "e11"])
def test_deligne_bound_to_1e4(name, request):
    table = request.getfixturevalue(
        {"delta": "delta_table", "cm32": "cm_table", "e11": "e11_table"}[name])
    d = divisor_counts(table.limit)
    assert np.all(np.abs(table.normalized[1:]) <= d[1:])


@pytest.mark.parametrize("name", ["delta", "cm32", "e11"])
def test_multiplicativity_random_coprime_pairs(name, request):
    table = request.getfixturevalue(
        {"delta": "delta_table", "cm32": "cm_table", "e11": "e11_table"}[name])
    rng = random.Random(1234)
    checked = 0
    while checked < 500:
        m = rng.randrange(2, 317)
        n = rng.randrange(2, table.limit // m)
        if math.gcd(m, n) != 1:
            continue
        assert table.raw[m * n] == table.raw[m] * table.raw[n]
        assert table.a(m * n) == pytest.approx(table.a(m) * table.a(n),
                                               rel=1e-12, abs=1e-12)
        checked += 1


def test_hasse_at_primes(delta_table, cm_table, e11_table):
    for table in (delta_table, cm_table, e11_table):
        ps = table.good_primes()
        assert np.all(np.abs(table.normalized[ps]) <= 2.0)


def test_prime_square_recursion(delta_table, cm_table, e11_table):
    for table in (delta_table, cm_table, e11_table):
        for p in table.good_primes(97):
            p = int(p)
            assert table.a(p * p) == pytest.approx(table.a(p) ** 2 - 1,
                                                   abs=1e-12)


def test_bad_prime_flags(cm_table, e11_table):
    assert cm_table.is_flagged(2) and cm_table.is_flagged(6)
    assert not cm_table.is_flagged(3)
    assert cm_table.raw[2] == 0 and cm_table.raw[4] == 0
    assert e11_table.is_flagged(11) and e11_table.is_flagged(22)
    assert e11_table.raw[11] == 0
    # zeroed bad primes propagate multiplicatively
    assert e11_table.raw[33] == 0


def test_cm_zero_pattern_exhaustive(cm_table):
    for p in cm_table.good_primes():
        p = int(p)
        assert (cm_table.raw[p] == 0) == (p % 4 == 3), f"p={p}"


def test_good_primes_excludes_bad(cm_table):
    ps = set(int(p) for p in cm_table.good_primes(100))
    assert 2 not in ps and 3 in ps


def test_divisor_function_examples():
    assert divisor_function(1) == 1
    assert divisor_function(12) == 6
    for p in (2, 3, 97):
        assert divisor_function(p) == 2
    d = divisor_counts(5000)
    spf = spf_sieve(5000)
    for n in (1, 12, 97, 4096, 4999):
        assert d[n] == divisor_function(n) == divisor_function(n, spf)


def test_spf_sieve():
    spf = spf_sieve(100)
    assert spf[2] == 2 and spf[4] == 2 and spf[99] == 3 and spf[97] == 97
    assert spf[1] == 0


def test_limit_budget():
    with pytest.raises(ValueError, match="budget"):
        build_table(BUNDLED_FORMS["delta"], 10 ** 7)
    with pytest.raises(ValueError):
        build_table(BUNDLED_FORMS["delta"], 0)


def test_cache_round_trip(tmp_path):
    spec = BUNDLED_FORMS["e11"]
    first = build_table(spec, 500, cache_dir=str(tmp_path))
    assert (tmp_path / "e11_500.csv").exists()
    again = build_table(spec, 500, cache_dir=str(tmp_path))
    assert again.raw == first.raw
    # a longer cached file satisfies a shorter request
    shorter = build_table(spec, 120, cache_dir=str(tmp_path))
    assert shorter.raw == first.raw[:121]
    assert not (tmp_path / "e11_120.csv").exists()


def test_cache_ignores_other_forms(tmp_path):
    build_table(BUNDLED_FORMS["cm32"], 100, cache_dir=str(tmp_path))
    table = build_table(BUNDLED_FORMS["e11"], 100, cache_dir=str(tmp_path))
    assert table.raw[2] == -2  # not the CM curve's 0 at the bad prime 2
