import random

import pytest

from cubicrings import (
    BranchCase,
    CubicAlgebra,
    RingConfig,
    TruncatedSeries,
    make_algebra,
)
from cubicrings.algebra import default_min_poly
from cubicrings.errors import ConfigError

CFG = RingConfig(5, 8)


def alg(tok):
    return make_algebra(CFG, tok)


def t_series(k=1):
    return TruncatedSeries.t_power(CFG, k)


def test_defining_relation_one_branch_ramified():
    a = alg("1r")
    tau = a.basis_el(1)
    assert tau * a.basis_el(2) == a.one * t_series()


def test_orthogonal_idempotents_three_branches():
    a = alg("3")
    assert (a.basis_el(0) * a.basis_el(1)).is_zero()
    assert a.basis_el(0) * a.basis_el(0) == a.basis_el(0)
    assert a.basis_el(0) + a.basis_el(1) + a.basis_el(2) == a.one


def test_two_branch_uniformizer_squares_to_t_times_e():
    a = alg("2r")
    tau = a.basis_el(1)
    assert tau * tau == a.basis_el(0) * t_series()


def test_trace_examples():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        assert a.one.trace() == TruncatedSeries.constant(CFG, 3)
    assert alg("1r").basis_el(1).trace().is_zero()
    assert alg("3").basis_el(0).trace() == TruncatedSeries.one(CFG)


def test_multival_examples():
    a = alg("1r")
    assert a.scalar(t_series()).multival() == (3,)
    b = alg("3")
    x = b.element([[0, 1], [0, 0, 1], []])
    assert x.multival() == (1, 2, None)
    c = alg("2r")
    # v(t) = 2 on the ramified branch, so t . tau has first entry 3
    assert (c.basis_el(1) * t_series()).multival() == (3, None)


def test_is_unit():
    assert alg("1r").one.is_unit()
    assert not alg("1r").basis_el(1).is_unit()
    assert alg("1u").basis_el(1).is_unit()


def test_gram_determinant_valuations():
    expected = {"1r": 2, "1u": 0, "2r": 1, "2u": 0, "3": 0}
    for tok, dv in expected.items():
        assert alg(tok).disc_val == dv


def test_default_min_polys_irreducible():
    assert default_min_poly(5, 3) == [1, 1, 0, 1]  # x^3 + x + 1
    assert default_min_poly(5, 2) == [2, 0, 1]  # x^2 + 2
    # no roots by construction
    for p in (5, 7, 11):
        for deg in (2, 3):
            f = default_min_poly(p, deg)
            assert all(
                sum(c * pow(x, i, p) for i, c in enumerate(f)) % p for x in range(p)
            )


def test_custom_min_poly_validation():
    with pytest.raises(ConfigError):
        make_algebra(CFG, "1u", [1, 0, 0, 2])  # not monic
    with pytest.raises(ConfigError):
        make_algebra(CFG, "2u", [4, 0, 1])  # x^2 + 4 = (x-1)(x+1) mod 5
    with pytest.raises(ConfigError):
        make_algebra(CFG, "1r", [1, 1, 0, 1])  # ramified shape takes no f


def test_mul_axioms_random_all_cases():
    rng = random.Random(3)
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        rand = lambda: a.element(
            [[rng.randrange(5) for _ in range(8)] for _ in range(3)]
        )
        for _ in range(20):
            x, y, z = rand(), rand(), rand()
            assert (x * y) * z == x * (y * z)
            assert x * y == y * x
            assert x * (y + z) == x * y + x * z
            assert x * a.one == x


def test_trace_is_linear():
    rng = random.Random(5)
    a = alg("2u")
    for _ in range(20):
        x = a.element([[rng.randrange(5) for _ in range(8)] for _ in range(3)])
        y = a.element([[rng.randrange(5) for _ in range(8)] for _ in range(3)])
        s = TruncatedSeries.from_list(CFG, [rng.randrange(5) for _ in range(8)])
        assert (x * s + y).trace() == x.trace() * s + y.trace()


def test_multival_multiplicative():
    rng = random.Random(9)
    for tok in ("1r", "2r", "3"):
        a = alg(tok)
        for _ in range(30):
            x = a.element([[rng.randrange(5) for _ in range(8)] for _ in range(3)])
            y = a.element([[rng.randrange(5) for _ in range(8)] for _ in range(3)])
            for u, v, uv in zip(x.multival(), y.multival(), (x * y).multival()):
                if u is None or v is None or u + v >= CFG.prec:
                    continue
                assert uv == u + v


def test_algebra_json_round_trip():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        assert CubicAlgebra.from_json(a.to_json()) == a
    x = alg("2u").element([[1, 2], [3], [0, 0, 4]])
    from cubicrings.algebra import AlgebraElement

    assert AlgebraElement.from_json(alg("2u"), x.to_json()) == x


def test_branch_shift_element_has_requested_multival():
    for tok, exps in (("1r", (4,)), ("2r", (3, 2)), ("2u", (1, 2)), ("3", (0, 1, 2))):
        a = alg(tok)
        assert a.branch_shift_element(exps).multival() == exps
