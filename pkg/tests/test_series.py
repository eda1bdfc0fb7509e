import random

import pytest

from cubicrings import RingConfig, TruncatedSeries, series_inv, series_mul, series_val
from cubicrings.errors import ConfigError, NonUnitError

CFG = RingConfig(5, 4)


def S(*coeffs):
    return TruncatedSeries.from_list(CFG, list(coeffs))


def test_difference_of_squares():
    assert series_mul(S(1, 1), S(1, -1)) == S(1, 0, -1)


def test_truncation_kills_high_powers():
    assert series_mul(S(0, 0, 1), S(0, 0, 0, 1)).is_zero()


def test_geometric_inverse_of_one_plus_t():
    assert series_mul(S(1, 1), S(1, 4, 1, 4)) == S(1)
    assert series_inv(S(1, 1)) == S(1, 4, 1, 4)


def test_inverse_of_constant():
    assert series_inv(S(2)) == S(3)
    assert series_inv(S(1)) == S(1)


def test_inverse_rejects_non_units():
    with pytest.raises(NonUnitError):
        series_inv(S(0, 1))


def test_valuation():
    assert series_val(S(0, 0, 1, 1)) == 2
    assert series_val(S()) is None
    assert series_val(S(3)) == 0


def test_config_mismatch_raises():
    other = TruncatedSeries.from_list(RingConfig(7, 4), [1])
    with pytest.raises(ConfigError):
        series_mul(S(1), other)


def test_bad_prime_configs():
    with pytest.raises(ConfigError):
        RingConfig(4, 3)
    with pytest.raises(ConfigError):
        RingConfig(3, 3)
    with pytest.raises(ConfigError):
        RingConfig(5, 0)


def test_ring_axioms_random():
    rng = random.Random(7)
    cfg = RingConfig(7, 6)
    rand = lambda: TruncatedSeries.from_list(cfg, [rng.randrange(7) for _ in range(6)])
    for _ in range(50):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_valuation_additive_below_precision():
    rng = random.Random(11)
    cfg = RingConfig(7, 8)
    for _ in range(50):
        va, vb = rng.randrange(3), rng.randrange(3)
        a = TruncatedSeries.t_power(cfg, va) * rng.randrange(1, 7)
        b = TruncatedSeries.t_power(cfg, vb) * rng.randrange(1, 7)
        assert (a * b).valuation() == va + vb


def test_inverse_involution():
    rng = random.Random(13)
    cfg = RingConfig(7, 8)
    for _ in range(30):
        coeffs = [rng.randrange(1, 7)] + [rng.randrange(7) for _ in range(7)]
        a = TruncatedSeries.from_list(cfg, coeffs)
        assert a.inverse().inverse() == a
        assert a * a.inverse() == TruncatedSeries.one(cfg)


def test_json_round_trip():
    a = S(1, 2, 3, 4)
    assert TruncatedSeries.from_json(CFG, a.to_json()) == a
    assert a.to_json() == [1, 2, 3, 4]
