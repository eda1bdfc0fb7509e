"""Dual lattices through the trace pairing, and the Gorenstein test.

The dual of a lattice M is {x in L : Tr(x M) in D}, computed from the inverse
transpose of (Gram . H); p >= 5 keeps the pairing nondegenerate in all five
shapes.  Duals are only canonical up to a scalar from L^x, so every comparison
here goes through an explicit witness; the stored representative is the unique
t-power multiple sitting inside A with t-content zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, CubicAlgebra
from .backend import K
from .errors import UsageError
from .families import FamilyDescriptor, middle_generator, recognize
from .lattice import (
    Lattice,
    from_generator_array,
    integral_colon,
    lattice_from_generators,
    lattice_intersect,
)


def _matmul_series(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[2]
    out = np.zeros((3, 3, n), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            acc = np.zeros(n, dtype=np.int64)
            for k in range(3):
                acc = (acc + K.poly_mul(a[i, k], b[k, j], p)) % p
            out[i, j] = acc
    return out


def _adjugate(mat: np.ndarray, p: int) -> np.ndarray:
    n = mat.shape[2]
    adj = np.zeros((3, 3, n), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != j]
            c = [x for x in range(3) if x != i]
            minor = (
                K.poly_mul(mat[r[0], c[0]], mat[r[1], c[1]], p)
                - K.poly_mul(mat[r[0], c[1]], mat[r[1], c[0]], p)
            ) % p
            if (i + j) % 2:
                minor = (-minor) % p
            adj[i, j] = minor
    return adj


def trace_dual_with_shift(m: Lattice) -> tuple[Lattice, int]:
    """Normalized trace dual and the t-shift back to the true dual.

    Returns (R, s) with the honest dual equal to t^(-s) . R.
    """
    alg = m.alg
    p = alg.cfg.p
    gh = _matmul_series(alg.gram, m.hnf, p)
    ght = np.transpose(gh, (1, 0, 2))
    det = alg.det3(ght)
    c = det.valuation()
    if c is None:
        raise UsageError("degenerate pairing matrix; precision exhausted")
    adj = _adjugate(ght, p)
    gens = np.stack([adj[:, j] for j in range(3)])
    raw = from_generator_array(alg, gens, 0)
    norm, content = raw.strip_t_content()
    return norm, c - content


def trace_dual(m: Lattice) -> Lattice:
    """Dual lattice of m under the trace pairing, scaled into the window
    [t^c A, A] with t-content zero."""
    return trace_dual_with_shift(m)[0]


def dual_via_hom(b: Lattice, c: Lattice) -> Lattice:
    """{x in c : x b inside c}; requires a Gorenstein subring c of b."""
    if not c.is_order() or not b.is_order():
        raise UsageError("both arguments must be orders")
    if not b.contains_lattice(c):
        raise UsageError("second argument must sit inside the first")
    if not is_gorenstein(c):
        raise UsageError("subring is not Gorenstein")
    return integral_colon(c, b)


def closed_form_dual(alg: CubicAlgebra, desc: FamilyDescriptor) -> Lattice:
    """The displayed dual module: same second generator without the t^k shift,
    maximal-order part at t^(k + conductor of the unshifted ring).

    The shape-A_k members have no second generator and no closed form; use
    trace_dual directly for those (they must still be double-dual stable).
    """
    if desc.kind != "C":
        raise UsageError("no closed-form dual at r = 0: the displayed module "
                         "has no second generator for t^k A + D")
    cond = desc.conductor()
    gens = [alg.one, middle_generator(alg, desc, shifted=False)]
    gens += [alg.basis_el(i).shift(cond) for i in range(3)]
    return lattice_from_generators(alg, gens, 0)


# -- exact scaling witnesses -----------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _coset_transversal(alg: CubicAlgebra, big: Lattice, small: Lattice, kw: int):
    """Representatives of big/small as elements, small a sublattice of big."""
    p = alg.cfg.p
    n = alg.cfg.prec

    def window_rows(lat):
        rows = []
        for j in range(3):
            for sh in range(kw):
                vec = np.zeros(3 * kw, dtype=np.int64)
                for i in range(3):
                    shifted = K.poly_shift(lat.hnf[i, j], sh)
                    vec[i * kw : (i + 1) * kw] = shifted[:kw]
                rows.append(vec)
        R, piv, rank = K.rref_mod_p(np.stack(rows) % p, p)
        return R[:rank]

    small_rows = window_rows(small)
    big_rows = window_rows(big)
    extra = []
    current = small_rows
    for row in big_rows:
        aug = np.concatenate([current, row.reshape(1, -1)])
        R, piv, rank = K.rref_mod_p(aug, p)
        if rank > current.shape[0]:
            current = R[:rank]
            extra.append(row)
    reps = []

    def lift(vec):
        arr = np.zeros((3, n), dtype=np.int64)
        for i in range(3):
            arr[i, :kw] = vec[i * kw : (i + 1) * kw]
        return AlgebraElement(alg, arr)

    for combo in itertools.product(range(p), repeat=len(extra)):
        vec = np.zeros(3 * kw, dtype=np.int64)
        for cf, row in zip(combo, extra):
            vec = (vec + cf * row) % p
        reps.append(lift(vec))
    return reps


def scaling_witness(src: Lattice, dst: Lattice):
    """lambda in L^x with lambda . src = dst, as (x, s) meaning t^(-s) x.

    Exact and complete: a valid lambda must have per-branch valuations equal to
    the difference of branch minima, and the candidates with exactly those
    valuations form finitely many cosets of a sublattice of (dst : src).
    Returns None when the lattices are not scalar multiples of each other.
    """
    alg = src.alg
    if alg != dst.alg:
        raise UsageError("lattices over different algebras")
    ram = alg.ram_indices
    mins_s = src.branch_mins()
    mins_d = dst.branch_mins()
    delta = [md - ms for ms, md in zip(mins_s, mins_d)]
    s = max(0, max(_ceil_div(-d, e) for d, e in zip(delta, ram)))
    dshift = [d + s * e for d, e in zip(delta, ram)]
    dst2 = dst.scale_t(s) if s else dst
    q = integral_colon(dst2, src)
    w_up = lattice_from_generators(
        alg, alg.window_generators(tuple(d + 1 for d in dshift)), 0
    )
    qw = lattice_intersect(q, w_up)
    kw = max(q.conductor_exponent(), qw.conductor_exponent(), 1)
    for cand in _coset_transversal(alg, q, qw, kw):
        if cand.is_zero():
            continue
        if list(cand.multival()) != dshift:
            continue
        if cand.coords.any() and dst2 == src.scale_elem(cand):
            return cand, s
    return None


def is_scalar_multiple(a: Lattice, b: Lattice) -> bool:
    return scaling_witness(a, b) is not None


def is_gorenstein(b: Lattice) -> bool:
    """True when the dual is a scalar multiple of b itself (principal dual)."""
    if not b.is_order():
        raise UsageError("Gorenstein test is defined for orders")
    return scaling_witness(b, trace_dual(b)) is not None


@dataclass
class DualReport:
    lattice: Lattice
    dual: Lattice
    shift: int
    descriptor: FamilyDescriptor | None
    closed_form: Lattice | None
    witness: AlgebraElement | None
    witness_shift: int | None
    gorenstein: bool

    def to_json(self) -> dict:
        doc = {
            "input": self.lattice.to_json(),
            "trace_dual": self.dual.to_json(),
            "t_shift": self.shift,
            "gorenstein": self.gorenstein,
        }
        if self.descriptor is not None:
            doc["descriptor"] = self.descriptor.to_json()
        if self.closed_form is not None:
            doc["closed_form"] = self.closed_form.to_json()
        if self.witness is not None:
            doc["witness"] = {
                "element": self.witness.to_json(),
                "t_shift": self.witness_shift,
            }
        return doc


def dual_report(m: Lattice, closed_form: bool = True) -> DualReport:
    dual, shift = trace_dual_with_shift(m)
    desc = None
    closed = None
    wit = None
    wshift = None
    if closed_form and m.is_order():
        desc = recognize(m)
        if desc.kind == "C":
            closed = closed_form_dual(m.alg, desc)
            found = scaling_witness(dual, closed)
            if found is None:
                raise UsageError(
                    "closed-form dual is not a scalar multiple of the trace dual"
                )
            wit, wshift = found
    return DualReport(
        lattice=m,
        dual=dual,
        shift=shift,
        descriptor=desc,
        closed_form=closed,
        witness=wit,
        witness_shift=wshift,
        gorenstein=scaling_witness(m, dual) is not None if m.is_order() else False,
    )
