import pytest

from cubicrings import (
    BranchCase,
    FamilyDescriptor,
    RingConfig,
    canonical_alpha,
    enumerate_family_descriptors,
    full_lattice,
    make_algebra,
    make_Am,
    make_family,
    make_Jm,
    recognize,
    residue_count,
)
from cubicrings.errors import ClassificationFailureError, UsageError
from cubicrings.lattice import lattice_from_generators

CFG = RingConfig(5, 12)


def alg(tok):
    return make_algebra(CFG, tok)


def test_make_am_shapes():
    a = alg("1r")
    assert make_Am(a, 0) == full_lattice(a)
    assert make_Am(a, 1).pivots() == (0, 1, 1)
    assert make_Jm(a, 2).pivots() == (1, 2, 2)


def test_make_family_examples():
    a = alg("1r")
    d = canonical_alpha(a.case, k=0, rho=2, raw_a=[], p=5)
    lat = make_family(a, d)
    assert lat.pivots() == (0, 1, 2)
    # three-branch decomposables D + e D + t^q A
    b = alg("3")
    for q in (1, 2):
        dd = canonical_alpha(b.case, k=0, l=0, q=q, pair=(0,), p=5, raw_a=[])
        lat = make_family(b, dd)
        direct = lattice_from_generators(
            b, [b.one, b.basis_el(0)] + [b.basis_el(i).shift(q) for i in range(3)]
        )
        assert lat == direct
    # C_0 is the maximal order in every shape
    for tok, kw in (("1r", {"rho": 0}), ("1u", {"r": 0}), ("2r", {"l": 0, "q": 0}),
                    ("3", {"l": 0, "q": 0})):
        c = alg(tok)
        d0 = canonical_alpha(c.case, k=0, raw_a=[], p=5, **kw)
        assert d0.kind == "Am" and d0.m == 0
        assert make_family(c, d0) == full_lattice(c)


def test_every_family_member_is_an_order():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        for d in enumerate_family_descriptors(a, 3):
            assert make_family(a, d).is_order()


def test_containment_ladder():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        for d in enumerate_family_descriptors(a, 3):
            lat = make_family(a, d)
            cond = d.conductor()
            assert lat.contains_lattice(make_Am(a, cond))
            assert lat.conductor_exponent() == cond


def test_canonical_alpha_reduction():
    a = alg("1r")
    d1 = canonical_alpha(a.case, k=0, rho=2, raw_a=[2, 3], p=5)
    assert d1.a == (2,)  # reduced mod t^1
    d2 = canonical_alpha(a.case, k=0, rho=2, raw_a=[2, 9, 9], p=5)
    assert d1 == d2
    # raw a and raw a + t^r agree
    d3 = canonical_alpha(a.case, k=0, rho=4, raw_a=[1, 2], p=5)
    d4 = canonical_alpha(a.case, k=0, rho=4, raw_a=[1, 2, 7], p=5)
    assert d3 == d4 and d3.a == (1, 2)


def test_three_branch_exclusion_at_q_zero():
    b = alg("3")
    with pytest.raises(UsageError):
        canonical_alpha(b.case, k=0, l=1, q=0, pair=(0, 1), raw_a=[1], p=5)
    # a = 1 + t is fine for l = 1 (only the residue matters)
    canonical_alpha(b.case, k=0, l=1, q=0, pair=(0, 1), raw_a=[2], p=5)


def test_three_branch_anharmonic_canonicalization():
    b = alg("3")
    base = canonical_alpha(b.case, k=0, l=1, q=0, pair=(0, 1), raw_a=[2], p=5)
    lat = make_family(b, base)
    # the same ring presented over every other ordered pair
    orbit = {
        (1, 0): pow(2, -1, 5),            # 1/a
        (0, 2): 2 * pow(2 - 1, -1, 5),    # a/(a-1)
        (2, 0): (2 - 1) * pow(2, -1, 5),  # (a-1)/a
        (1, 2): pow(1 - 2, -1, 5),        # 1/(1-a)
        (2, 1): 1 - 2,                    # 1-a
    }
    for pair, val in orbit.items():
        d = canonical_alpha(b.case, k=0, l=1, q=0, pair=pair, raw_a=[val % 5], p=5)
        assert d == base
        assert make_family(b, d) == lat


def test_three_branch_secondary_index_identification():
    b = alg("3")
    d1 = canonical_alpha(b.case, k=0, l=1, q=1, pair=(0, 2), raw_a=[2], p=5)
    assert d1.pair == (0, 1)
    direct = lattice_from_generators(
        b,
        [b.one, b.element([[0, 1], [], [0, 0, 2]])]
        + [b.basis_el(i).shift(3) for i in range(3)],
    )
    assert make_family(b, d1) == direct


def test_unramified_strata_required_members():
    a = alg("1u")
    theta2 = canonical_alpha(a.case, k=0, r=1, stratum="theta2", raw_a=[], p=5)
    lat = make_family(a, theta2)
    assert lat.pivots() == (0, 2, 1)
    with pytest.raises(UsageError):
        canonical_alpha(a.case, k=0, r=2, stratum="theta2", raw_a=[1], p=5)
    b = alg("2u")
    th = canonical_alpha(b.case, k=0, l=1, q=0, stratum="theta", raw_a=[], p=5)
    direct = lattice_from_generators(
        b, [b.one, b.basis_el(1).shift(1)] + [b.basis_el(i).shift(2) for i in range(3)]
    )
    assert make_family(b, th) == direct
    with pytest.raises(UsageError):
        canonical_alpha(b.case, k=0, l=1, q=1, stratum="theta", raw_a=[], p=5)


def test_residue_counts():
    a1r = canonical_alpha(BranchCase.ONE_RAMIFIED, k=0, rho=4, raw_a=[], p=5)
    assert residue_count(a1r) == 2
    odd = canonical_alpha(BranchCase.ONE_RAMIFIED, k=1, rho=3, raw_a=[], p=5)
    assert residue_count(odd) == 1
    th2 = canonical_alpha(BranchCase.ONE_UNRAMIFIED, k=0, r=2, stratum="theta2",
                          raw_a=[0, 1], p=5)
    assert residue_count(th2) == 2 and th2.a == (0, 1)


def test_recognize_round_trip_all_cases():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        for d in enumerate_family_descriptors(a, 3):
            assert recognize(make_family(a, d)) == d


def test_recognize_of_am():
    a = alg("2r")
    d = recognize(make_Am(a, 2))
    assert d.kind == "Am" and d.m == 2


def test_recognize_rejects_non_orders():
    a = alg("1r")
    bad = lattice_from_generators(a, [a.one, a.basis_el(1), a.basis_el(2).shift(1)])
    with pytest.raises(UsageError):
        recognize(bad)


def test_descriptor_injectivity_small_conductors():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        descs = enumerate_family_descriptors(a, 3)
        keys = {make_family(a, d).key() for d in descs}
        assert len(keys) == len(descs)


def test_descriptor_json_round_trip():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        for d in enumerate_family_descriptors(a, 2):
            assert FamilyDescriptor.from_json(d.to_json(), p=5) == d
