import pytest

from cubicrings import (
    RingConfig,
    canonical_alpha,
    full_lattice,
    make_algebra,
    make_Am,
    make_family,
)
from cubicrings.duality import (
    closed_form_dual,
    dual_report,
    dual_via_hom,
    is_gorenstein,
    scaling_witness,
    trace_dual,
    trace_dual_with_shift,
)
from cubicrings.errors import UsageError
from cubicrings.families import enumerate_family_descriptors
from cubicrings.lattice import lattice_from_generators

CFG = RingConfig(5, 14)


def alg(tok):
    return make_algebra(CFG, tok)


def test_dual_of_maximal_order_three_branches():
    a = alg("3")
    assert trace_dual(full_lattice(a)) == full_lattice(a)


def test_dual_of_maximal_order_one_branch_ramified():
    # the inverse different is generated by 1/(3 tau^2); normalized into the
    # window it becomes tau . A, the same class as A
    a = alg("1r")
    full = full_lattice(a)
    dual, shift = trace_dual_with_shift(full)
    assert dual == full.scale_elem(a.basis_el(1))
    assert shift == 1
    assert scaling_witness(full, dual) is not None


def test_self_duality_of_plane_curve_members():
    a = alg("1r")
    c2 = make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[3], p=5))
    dual = trace_dual(c2)
    assert scaling_witness(c2, dual) is not None


def test_dual_via_hom_identity():
    a = alg("1r")
    c2 = make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[0], p=5))
    assert dual_via_hom(c2, c2) == c2


def test_dual_via_hom_matches_displayed_module():
    # two branches ramified, B = D + t^k C_{l,q}(alpha), C = C_{k+l,q}(alpha):
    # {x in C : x B in C} = t^k D + t^(k+l)(e + t^q alpha)D + t^(2k+2l+q) A
    a = alg("2r")
    k, l, q, aval = 1, 1, 0, 2
    b = make_family(a, canonical_alpha(a.case, k=k, l=l, q=q, raw_a=[aval], p=5))
    c = make_family(a, canonical_alpha(a.case, k=0, l=k + l, q=q, raw_a=[aval], p=5))
    assert b.contains_lattice(c)
    got = dual_via_hom(b, c)
    gen = (a.basis_el(0) + (a.basis_el(1) * aval).shift(q)).shift(k + l)
    expected = lattice_from_generators(
        a,
        [a.one.shift(k), gen]
        + [a.basis_el(i).shift(2 * k + 2 * l + q) for i in range(3)],
    )
    assert got == expected
    assert scaling_witness(trace_dual(b), got) is not None


def test_dual_via_hom_preconditions():
    a = alg("1r")
    a1 = make_Am(a, 1)
    c2 = make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[0], p=5))
    with pytest.raises(UsageError):
        dual_via_hom(full_lattice(a), a1)  # A_1 is not Gorenstein
    with pytest.raises(UsageError):
        dual_via_hom(c2, full_lattice(a))  # containment the wrong way


def test_closed_form_dual_k0_reproduces_input_class():
    for tok in ("1r", "1u", "2r", "2u", "3"):
        a = alg(tok)
        for d in enumerate_family_descriptors(a, 2):
            if d.kind != "C" or d.k:
                continue
            lat = make_family(a, d)
            closed = closed_form_dual(a, d)
            assert scaling_witness(lat, closed) is not None


def test_closed_form_dual_rejects_am():
    a = alg("1r")
    from cubicrings.families import FamilyDescriptor

    with pytest.raises(UsageError):
        closed_form_dual(a, FamilyDescriptor(case=a.case, kind="Am", m=1))


def test_gorenstein_examples():
    a = alg("1r")
    assert is_gorenstein(full_lattice(a))
    assert is_gorenstein(make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[0], p=5)))
    assert not is_gorenstein(make_Am(a, 2))


def test_dual_is_a_module_over_the_ring():
    a = alg("2u")
    for d in enumerate_family_descriptors(a, 2):
        lat = make_family(a, d)
        dual = trace_dual(lat)
        assert dual.contains_lattice(lat.mul(dual))


def test_double_dual_is_identity_on_orders():
    for tok in ("1r", "2r", "3"):
        a = alg(tok)
        for d in enumerate_family_descriptors(a, 2):
            lat = make_family(a, d)
            assert trace_dual(trace_dual(lat)) == lat


def test_scaling_witness_finds_t_shifts_and_units():
    a = alg("2r")
    lat = make_Am(a, 1)
    wit = scaling_witness(lat, lat.scale_t(2))
    assert wit is not None and wit[1] == 0
    wit2 = scaling_witness(lat.scale_t(2), lat)
    assert wit2 is not None and wit2[1] == 2
    tau_scaled = lat.scale_elem(a.basis_el(1))
    assert scaling_witness(lat, tau_scaled) is not None
    # A and A_1 are genuinely different classes
    assert scaling_witness(full_lattice(a), lat) is None


def test_dual_report_shape():
    a = alg("1r")
    c2 = make_family(a, canonical_alpha(a.case, k=0, rho=2, raw_a=[1], p=5))
    rep = dual_report(c2)
    assert rep.gorenstein
    assert rep.descriptor is not None and rep.closed_form is not None
    assert rep.witness is not None
    doc = rep.to_json()
    assert set(doc) >= {"input", "trace_dual", "t_shift", "gorenstein"}
