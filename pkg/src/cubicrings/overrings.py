"""Over-ring enumeration three ways, so each route can check the others.

1. closed form: the family descriptors with conductor <= m (families.py);
2. the inductive procedure: reduce mod t, pick proper unital subalgebras S of
   B/tB with Abar.S = B/tB, take preimages;
3. brute force: scan all two-generator submodules of A/A_m, keep the ones
   closed under multiplication -- no family knowledge involved.

The closed form and the oracle agreeing, set-exactly, is the headline
verification; the procedure reproducing both checks the inductive step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import CubicAlgebra
from .backend import K
from .errors import ClassificationFailureError, EnvelopeError, UsageError
from .families import (
    FamilyDescriptor,
    enumerate_family_descriptors,
    make_Am,
    make_family,
    make_Jm,
)
from .lattice import Lattice, full_lattice, lattice_from_generators
from .series import TruncatedSeries

BRUTE_P_MAX = 7
BRUTE_M_MAX = 3


@dataclass
class QuotientAlgebra:
    """B/tB with multiplication table, plus the image of A_m inside it."""

    base: Lattice
    m: int
    stc: np.ndarray  # (3,3,3) ints mod p
    one: np.ndarray  # coords of 1
    abar: np.ndarray  # rref rows spanning the image of A_m
    bjm: np.ndarray  # rref rows spanning the image of B.J_m


def _mod_t_coords(b: Lattice, x) -> np.ndarray:
    coords = b.coords_of(x)
    if coords is None:
        raise ClassificationFailureError("element unexpectedly outside the order")
    return np.array([int(c.coeffs[0]) for c in coords], dtype=np.int64)


def _rref_rows(rows, p) -> np.ndarray:
    if not rows:
        return np.zeros((0, 3), dtype=np.int64)
    mat = np.stack(rows) % p
    R, piv, rank = K.rref_mod_p(mat, p)
    return R[:rank].copy()


def quotient_algebra(b: Lattice, m: int) -> QuotientAlgebra:
    alg = b.alg
    p = alg.cfg.p
    if not b.is_order():
        raise UsageError("quotient algebra of a non-order")
    am = make_Am(alg, m)
    if not b.contains_lattice(am):
        raise UsageError(f"order does not contain A_{m}")
    cols = b.columns()
    stc = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(i, 3):
            v = _mod_t_coords(b, cols[i] * cols[j])
            stc[i, j] = v
            stc[j, i] = v
    one = _mod_t_coords(b, alg.one)
    abar_gens = [one] + [_mod_t_coords(b, alg.basis_el(i).shift(m)) for i in range(3)]
    abar = _rref_rows(abar_gens, p)
    bjm_lat = b.mul(make_Jm(alg, m)) if m >= 1 else b
    bjm = _rref_rows([_mod_t_coords(b, c) for c in bjm_lat.columns()], p)
    return QuotientAlgebra(base=b, m=m, stc=stc, one=one, abar=abar, bjm=bjm)


def _vec_mul(q: QuotientAlgebra, x, y, p) -> np.ndarray:
    out = np.zeros(3, dtype=np.int64)
    for i in range(3):
        if x[i] == 0:
            continue
        for j in range(3):
            if y[j] == 0:
                continue
            out = (out + x[i] * y[j] * q.stc[i, j]) % p
    return out


def _span_contains(rows: np.ndarray, v, p) -> bool:
    if rows.shape[0] == 0:
        return not (np.asarray(v) % p).any()
    aug = np.concatenate([rows, np.asarray(v, dtype=np.int64).reshape(1, 3)])
    _, _, rank = K.rref_mod_p(aug, p)
    return rank == rows.shape[0]


def _unital_subalgebras(q: QuotientAlgebra):
    """Proper unital F_p-subalgebras of B/tB, as rref row matrices."""
    p = q.base.alg.cfg.p
    out = [_rref_rows([q.one], p)]
    # complement the line through 1 by two coordinate directions
    onepos = int(np.nonzero(q.one)[0][0])
    dirs = [i for i in range(3) if i != onepos][:2]
    lines = [(1, c) for c in range(p)] + [(0, 1)]
    for u0, u1 in lines:
        w = np.zeros(3, dtype=np.int64)
        w[dirs[0]] = u0
        w[dirs[1]] = u1
        rows = _rref_rows([q.one, w], p)
        if rows.shape[0] != 2:
            continue
        w2 = _vec_mul(q, w, w, p)
        if not _span_contains(rows, w2, p):
            continue
        out.append(rows)
    # deduplicate spans (several lines can complete 1 to the same plane)
    seen = {}
    for rows in out:
        seen[rows.tobytes()] = rows
    return list(seen.values())


def _product_span(q: QuotientAlgebra, rows_a, rows_b, p) -> np.ndarray:
    gens = [r for r in rows_a] + [r for r in rows_b]
    for x in rows_a:
        for y in rows_b:
            gens.append(_vec_mul(q, x, y, p))
    return _rref_rows(gens, p)


def subalgebra_candidates(q: QuotientAlgebra, cross_check: bool = True):
    """Proper unital subalgebras S with Abar.S = B/tB.

    cross_check also evaluates the equivalent surjectivity condition
    (S covers B/B.J_m) and raises if the two ever disagree.
    """
    p = q.base.alg.cfg.p
    chosen = []
    for rows in _unital_subalgebras(q):
        if rows.shape[0] == 3:
            continue  # proper only
        full = _product_span(q, q.abar, rows, p).shape[0] == 3
        if cross_check:
            surj = _rref_rows(list(rows) + list(q.bjm), p).shape[0] == 3
            if surj != full:
                raise ClassificationFailureError(
                    "the two subalgebra conditions disagree on a candidate"
                )
        if full:
            chosen.append(rows)
    return chosen


def procedure_step(b: Lattice, m: int) -> list[Lattice]:
    """Over-rings of A_(m+1) that are new at level m+1 and reduce to b.

    b must contain A_m but not A_(m-1).
    """
    alg = b.alg
    if m >= 1 and b.contains_lattice(make_Am(alg, m - 1)):
        raise UsageError(f"order already contains A_{m - 1}")
    q = quotient_algebra(b, m)
    am1 = make_Am(alg, m + 1)
    am = make_Am(alg, m)
    out = []
    guard = alg.cfg.guard_for_conductor(m + 1)
    tb_cols = [c.shift(1) for c in b.columns()]
    for rows in subalgebra_candidates(q):
        lifts = []
        for r in rows:
            x = alg.zero
            for kx in range(3):
                if r[kx]:
                    x = x + b.column(kx) * int(r[kx])
            lifts.append(x)
        cand = lattice_from_generators(alg, lifts + tb_cols, guard)
        if not cand.is_order():
            raise ClassificationFailureError("preimage of a subalgebra is not an order")
        if not cand.contains_lattice(am1) or cand.contains_lattice(am):
            raise ClassificationFailureError("preimage misses the expected level")
        out.append(cand)
    out.sort(key=Lattice.key)
    return out


def overrings_base_m1(alg: CubicAlgebra) -> list[Lattice]:
    """Over-rings of A_1, by a direct subalgebra scan of A/tA."""
    a = full_lattice(alg, alg.cfg.guard_for_conductor(1))
    q = quotient_algebra(a, 1)
    out = [a]
    t_cols = [c.shift(1) for c in a.columns()]
    for rows in _unital_subalgebras(q):
        if rows.shape[0] == 3:
            continue
        lifts = []
        for r in rows:
            x = alg.zero
            for kx in range(3):
                if r[kx]:
                    x = x + a.column(kx) * int(r[kx])
            lifts.append(x)
        out.append(lattice_from_generators(alg, lifts + t_cols, a.guard))
    out.sort(key=Lattice.key)
    return out


def enumerate_overrings_procedure(alg: CubicAlgebra, m: int) -> list[Lattice]:
    """All over-rings of A_m via the inductive procedure from the m = 1 base."""
    alg.cfg.guard_for_conductor(m)
    a = full_lattice(alg, alg.cfg.guard_for_conductor(max(m, 1)))
    if m == 0:
        return [a]
    level = [lat for lat in overrings_base_m1(alg) if lat != a]
    result = {a.key(): a}
    for lat in level:
        result[lat.key()] = lat
    for mm in range(1, m):
        nxt: dict[bytes, Lattice] = {}
        for b in level:
            for cand in procedure_step(b, mm):
                if cand.key() in nxt:
                    raise ClassificationFailureError("procedure produced a duplicate")
                nxt[cand.key()] = cand
        level = list(nxt.values())
        result.update(nxt)
    out = list(result.values())
    out.sort(key=Lattice.key)
    return out


def brute_force_overrings(alg: CubicAlgebra, m: int) -> list[Lattice]:
    """Exhaustive oracle: all orders between A_m and A.

    Scans every two-generator submodule of A/A_m (generous superset, deduped
    through the canonical form) and keeps multiplication-closed ones.  Knows
    nothing about the families.
    """
    p = alg.cfg.p
    if p > BRUTE_P_MAX or m > BRUTE_M_MAX:
        raise EnvelopeError(
            f"brute force limited to p <= {BRUTE_P_MAX}, m <= {BRUTE_M_MAX} "
            f"(got p={p}, m={m})"
        )
    guard = alg.cfg.guard_for_conductor(m)
    a = full_lattice(alg, guard)
    if m == 0:
        return [a]
    base = [alg.basis_el(i).shift(m) for i in range(3)]
    found: dict[bytes, Lattice] = {}
    b1, b2 = alg.basis_el(1), alg.basis_el(2)
    coeff_tuples = list(itertools.product(range(p), repeat=m))
    for av in range(m + 1):
        for bv in range(m + 1):
            g2 = b2.shift(bv)
            for cs in coeff_tuples:
                c = TruncatedSeries.from_list(alg.cfg, list(cs))
                g1 = b1.shift(av) + b2 * c
                lat = lattice_from_generators(alg, [alg.one, g1, g2] + base, guard)
                if lat.key() in found:
                    continue
                if lat.is_order():
                    found[lat.key()] = lat
    out = list(found.values())
    out.sort(key=Lattice.key)
    return out


def closed_form_lattices(alg: CubicAlgebra, m: int) -> list[tuple[FamilyDescriptor, Lattice]]:
    pairs = [(d, make_family(alg, d)) for d in enumerate_family_descriptors(alg, m)]
    pairs.sort(key=lambda dl: dl[1].key())
    return pairs


def enumerate_overrings_closed(alg: CubicAlgebra, m: int) -> list[FamilyDescriptor]:
    """The complete duplicate-free descriptor list of over-rings of A_m."""
    return enumerate_family_descriptors(alg, m)


@dataclass
class OverringDiff:
    case: str
    p: int
    m: int
    n_closed: int
    n_oracle: int
    only_closed: list[FamilyDescriptor]
    only_oracle: list[Lattice]

    @property
    def ok(self) -> bool:
        return not self.only_closed and not self.only_oracle

    def summary(self) -> str:
        return (
            f"case={self.case} p={self.p} m={self.m} closed={self.n_closed} "
            f"oracle={self.n_oracle} diff={len(self.only_closed) + len(self.only_oracle)}"
        )


def compare_closed_vs_oracle(alg: CubicAlgebra, m: int) -> OverringDiff:
    closed = closed_form_lattices(alg, m)
    oracle = brute_force_overrings(alg, m)
    closed_map = {lat.key(): desc for desc, lat in closed}
    oracle_keys = {lat.key() for lat in oracle}
    only_closed = [desc for key, desc in closed_map.items() if key not in oracle_keys]
    only_oracle = [lat for lat in oracle if lat.key() not in closed_map]
    return OverringDiff(
        case=alg.case.value,
        p=alg.cfg.p,
        m=m,
        n_closed=len(closed),
        n_oracle=len(oracle),
        only_closed=only_closed,
        only_oracle=only_oracle,
    )
