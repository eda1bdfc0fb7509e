import pytest

from cubicrings import (
    RingConfig,
    canonical_alpha,
    full_lattice,
    make_algebra,
    make_Am,
    make_family,
)
from cubicrings.errors import EnvelopeError
from cubicrings.overrings import (
    brute_force_overrings,
    compare_closed_vs_oracle,
    enumerate_overrings_procedure,
    overrings_base_m1,
    procedure_step,
    quotient_algebra,
    subalgebra_candidates,
)

CFG = RingConfig(5, 12)


def alg(tok):
    return make_algebra(CFG, tok)


def test_m0_is_just_the_maximal_order():
    a = alg("1r")
    assert brute_force_overrings(a, 0) == [full_lattice(a, a.cfg.guard_for_conductor(0))]


def test_base_case_counts_per_shape():
    # direct subalgebra scan of A/tA
    expected = {"1r": 3, "1u": 2, "2r": 4, "2u": 3, "3": 5}
    for tok, n in expected.items():
        assert len(overrings_base_m1(alg(tok))) == n


def test_one_branch_ramified_m1_members():
    a = alg("1r")
    lats = {l.key() for l in brute_force_overrings(a, 1)}
    a_full = full_lattice(a)
    a1 = make_Am(a, 1)
    c1 = make_family(a, canonical_alpha(a.case, k=0, rho=1, raw_a=[], p=5))
    assert lats == {a_full.key(), a1.key(), c1.key()}


def test_counted_instance_ten_overrings():
    diff = compare_closed_vs_oracle(alg("1r"), 2)
    assert diff.ok and diff.n_closed == 10 and diff.n_oracle == 10


def test_quotient_algebra_nilpotency_patterns():
    a = alg("1r")
    q1 = quotient_algebra(make_Am(a, 1), 1)
    # classes of t.tau and t.tau^2 multiply to zero in A_1/tA_1
    assert not q1.stc[1, 1].any() and not q1.stc[1, 2].any() and not q1.stc[2, 2].any()
    c2 = make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[], p=5))
    q2 = quotient_algebra(c2, 2)
    # (t.tau)^2 = t^2 tau^2 survives in C_2(tau)/t.C_2(tau)
    assert q2.stc[1, 1].any()


def test_subalgebra_conditions_agree_and_k0_is_sterile():
    a = alg("1r")
    c2 = make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[], p=5))
    cands = subalgebra_candidates(quotient_algebra(c2, 2), cross_check=True)
    assert cands == []


def test_procedure_step_from_a1():
    a = alg("1r")
    new = procedure_step(make_Am(a, 1), 1)
    expected = {
        make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[c], p=5)).key()
        for c in range(5)
    }
    assert {l.key() for l in new} == expected


def test_procedure_matches_oracle_everywhere_small():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        for m in (1, 2, 3):
            proc = enumerate_overrings_procedure(a, m)
            oracle = brute_force_overrings(a, m)
            assert {l.key() for l in proc} == {l.key() for l in oracle}


def test_closed_equals_oracle_all_cases_m2():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        diff = compare_closed_vs_oracle(alg(tok), 2)
        assert diff.ok, diff.summary()


def test_three_branch_m1_has_five():
    diff = compare_closed_vs_oracle(alg("3"), 1)
    assert diff.ok and diff.n_oracle == 5


def test_envelope_refusal():
    big = make_algebra(RingConfig(11, 12), "1r")
    with pytest.raises(EnvelopeError):
        brute_force_overrings(big, 1)
    with pytest.raises(EnvelopeError):
        brute_force_overrings(alg("1r"), 4)


def test_all_oracle_orders_contain_one_and_are_closed():
    a = alg("2r")
    full = full_lattice(a)
    for lat in brute_force_overrings(a, 2):
        assert lat.contains(a.one)
        assert lat.mul(lat) == lat
        assert lat.mul(full) == full
