import random

import numpy as np
import pytest

from cubicrings import (
    RingConfig,
    TruncatedSeries,
    full_lattice,
    is_order,
    is_overring,
    lattice_contains,
    lattice_from_generators,
    lattice_index,
    lattice_intersect,
    lattice_product,
    lattice_sum,
    make_algebra,
    make_Am,
    multiplier_ring,
)
from cubicrings.errors import (
    DegenerateLatticeError,
    NonContainmentError,
    PrecisionError,
)
from cubicrings.lattice import Lattice, integral_colon

CFG = RingConfig(5, 12)


def alg(tok="1r"):
    return make_algebra(CFG, tok)


def test_redundant_generator_gives_maximal_order():
    a = alg()
    tau = a.basis_el(1)
    lat = lattice_from_generators(a, [a.one, tau, a.basis_el(2), tau.shift(1)])
    assert lat == full_lattice(a)
    assert lat.pivots() == (0, 0, 0)


def test_am_shape():
    a = alg()
    lat = lattice_from_generators(a, [a.one] + [a.basis_el(i).shift(1) for i in range(3)])
    assert lat.pivots() == (0, 1, 1)
    assert lat == make_Am(a, 1)


def test_two_generator_ring_shape():
    # D + t.tau.D + t^2 A comes out as diag(1, t, t^2)
    a = alg()
    gens = [a.one, a.basis_el(1).shift(1)] + [a.basis_el(i).shift(2) for i in range(3)]
    lat = lattice_from_generators(a, gens)
    assert lat.pivots() == (0, 1, 2)
    offdiag = [(i, j) for i in range(3) for j in range(3) if i != j and lat.hnf[i, j].any()]
    assert not offdiag


def test_contains_examples():
    a = alg()
    a1 = make_Am(a, 1)
    assert lattice_contains(a1, a.basis_el(1).shift(1))
    assert not lattice_contains(a1, a.basis_el(1))
    assert lattice_contains(a1, a.zero)


def test_sum_product_idempotence():
    a = alg()
    a1 = make_Am(a, 1)
    assert lattice_sum(a1, a1) == a1
    assert lattice_product(a1, a1) == a1
    full = full_lattice(a)
    assert lattice_product(full, full) == full


def test_is_order_examples():
    a = alg()
    assert is_order(make_Am(a, 1))
    bad = lattice_from_generators(
        a, [a.one, a.basis_el(1), a.basis_el(2).shift(1)]
    )
    assert not is_order(bad)  # tau.tau = tau^2 escapes
    b = alg("3")
    lat = lattice_from_generators(
        b,
        [
            b.element([[1], [], []]),
            b.element([[], [1], [1]]),
            b.element([[], [], [0, 1]]),
        ],
    )
    assert is_order(lat)


def test_is_overring_direction():
    a = alg()
    full = full_lattice(a)
    a1 = make_Am(a, 1)
    assert is_overring(full, a1)
    assert not is_overring(a1, full)


def test_index_examples():
    a = alg()
    full = full_lattice(a)
    a1, a2 = make_Am(a, 1), make_Am(a, 2)
    assert lattice_index(a1, full) == 2
    assert lattice_index(a2, full) == 4
    assert lattice_index(a1.scale_t(1), a1) == 3
    with pytest.raises(NonContainmentError):
        lattice_index(full, a1)


def test_index_additive_along_chains():
    a = alg("2u")
    full, a1, a2 = full_lattice(a), make_Am(a, 1), make_Am(a, 2)
    assert lattice_index(a2, full) == lattice_index(a2, a1) + lattice_index(a1, full)


def test_degenerate_generators_raise():
    a = alg()
    with pytest.raises(DegenerateLatticeError):
        lattice_from_generators(a, [a.one, a.one.shift(1)])


def test_guard_violation_raises():
    a = alg()
    with pytest.raises(PrecisionError):
        lattice_from_generators(
            a, [x.shift(3) for x in (a.one, a.basis_el(1), a.basis_el(2))], guard=5
        )


def test_canonical_form_idempotent_random():
    rng = random.Random(21)
    for tok in ("1r", "2r", "3"):
        a = alg(tok)
        for _ in range(15):
            gens = [
                a.element([[rng.randrange(5) for _ in range(4)] for _ in range(3)])
                for _ in range(4)
            ]
            try:
                lat = lattice_from_generators(a, gens)
            except DegenerateLatticeError:
                continue
            assert lattice_from_generators(a, lat.columns()) == lat


def test_product_commutative_associative_random():
    rng = random.Random(22)
    a = alg("2r")

    def rand_lat():
        while True:
            gens = [
                a.element([[rng.randrange(5) for _ in range(3)] for _ in range(3)])
                for _ in range(3)
            ]
            try:
                return lattice_from_generators(a, gens)
            except DegenerateLatticeError:
                continue

    for _ in range(10):
        x, y, z = rand_lat(), rand_lat(), rand_lat()
        assert lattice_product(x, y) == lattice_product(y, x)
        assert lattice_product(lattice_product(x, y), z) == lattice_product(
            x, lattice_product(y, z)
        )


def test_multiplier_ring_of_order_is_itself():
    a = alg()
    for m in (0, 1, 2):
        lat = make_Am(a, m)
        assert multiplier_ring(lat) == lat


def test_colon_and_intersection():
    a = alg()
    full = full_lattice(a)
    a1 = make_Am(a, 1)
    assert integral_colon(a1, full) == lattice_from_generators(
        a, [x.shift(1) for x in (a.one, a.basis_el(1), a.basis_el(2))]
    )
    a2 = make_Am(a, 2)
    assert lattice_intersect(a1, a2) == a2
    j = lattice_from_generators(a, [a.one.shift(1)] + [b.shift(1) for b in
                                                       (a.basis_el(1), a.basis_el(2))])
    assert lattice_intersect(a1, j) == j


def test_conductor_exponent():
    a = alg()
    assert full_lattice(a).conductor_exponent() == 0
    assert make_Am(a, 2).conductor_exponent() == 2


def test_branch_mins_and_content():
    a = alg("2r")
    full = full_lattice(a)
    assert full.branch_mins() == (0, 0)
    scaled = full.scale_t(2)
    assert scaled.branch_mins() == (4, 2)
    stripped, j = scaled.strip_t_content()
    assert j == 2 and stripped == full


def test_json_round_trip():
    a = alg("2u")
    lat = make_Am(a, 2)
    assert Lattice.from_json(lat.to_json()) == lat
