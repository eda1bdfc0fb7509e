"""Brute-force fractional-ideal censuses and the parameter-count proxy.

An ideal of a base order C is represented by a full lattice M with C.M inside
M; every class has a representative between t^w A and A for w the conductor
exponent of C, so the census scans that window.  Two strategies:

  * base order A_w itself: every window lattice is stable, so the canonical
    echelon forms are generated directly from the containment constraints;
  * any other base: an output-sensitive closure walk that grows stable modules
    one socle line at a time (v with J.v falling inside the module), visiting
    exactly the stable modules.

Isomorphism of ideals is multiplication by a scalar from L^x; the witness
search in duality.scaling_witness is exact, so the class grouping is exact.
par is *estimated* as the exact-fit polynomial degree of the class counts n(p)
over a list of primes; over the finite fields within reach this is a proxy for
the parameter count, never a theorem check, and the report says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, BranchCase, CubicAlgebra, make_algebra
from .backend import K
from .config import RingConfig
from .duality import scaling_witness, trace_dual
from .errors import EnvelopeError, UsageError
from .families import FamilyDescriptor, make_Am, make_family
from .lattice import Lattice, lattice_from_generators, multiplier_ring

IDEAL_P_MAX = 13
IDEAL_W_MAX = 3


@dataclass(frozen=True)
class FractionalIdeal:
    base: Lattice
    module: Lattice

    def __post_init__(self):
        if self.base.alg != self.module.alg:
            raise UsageError("base order and module over different algebras")
        prod = self.base.mul(self.module)
        # 1 sits in the base, so C.M covers M; stability is the other inclusion
        if not self.module.contains_lattice(prod):
            raise UsageError("module is not stable under the base order")


def census_precision(w: int) -> int:
    """Working precision for a window-w census: witness searches rescale
    lattices branch by branch, growing pivot sums up to twice the window
    index, hence the headroom."""
    return 6 * w + 6


def _check_envelope(p: int, w: int) -> None:
    if p > IDEAL_P_MAX or w > IDEAL_W_MAX:
        raise EnvelopeError(
            f"ideal enumeration limited to p <= {IDEAL_P_MAX}, window <= {IDEAL_W_MAX} "
            f"(got p={p}, w={w})"
        )


# -- strategy 1: every window lattice (base order A_w) ---------------------------


def _series_tuples(p: int, length: int, min_val: int):
    """Coefficient tuples of residues mod t^length with valuation >= min_val."""
    length = max(length, 0)
    if min_val >= length:
        yield (0,) * length
        return
    head = (0,) * min_val
    for tail in itertools.product(range(p), repeat=length - min_val):
        yield head + tail


def _enumerate_all_window(alg: CubicAlgebra, w: int) -> list[Lattice]:
    """All lattices M with t^w A <= M <= A, generated directly in canonical
    form; the containment constraints pin the off-pivot entries."""
    p = alg.cfg.p
    n = alg.cfg.prec
    out: list[Lattice] = []

    def poly(ctuple):
        arr = np.zeros(n, dtype=np.int64)
        if ctuple:
            arr[: len(ctuple)] = ctuple
        return arr

    for d0 in range(w + 1):
        for d1 in range(w + 1):
            for d2 in range(w + 1):
                m10 = max(0, d0 + d1 - w)
                m21 = max(0, d1 + d2 - w)
                free_from = max(0, d0 + d2 - w)
                for h10t in _series_tuples(p, d1, m10):
                    h10 = poly(h10t)
                    for h21t in _series_tuples(p, d2, m21):
                        h21 = poly(h21t)
                        # reducing t^w e_0 forces, in row 2:
                        # t^(w-d0) h20 = t^(w-d0-d1) h10 h21 (mod t^d2)
                        prod = K.poly_mul(h10, h21, p)
                        if w - d0 - d1 >= 0:
                            pint = K.poly_shift(prod, w - d0 - d1)
                        else:
                            pint = K.poly_shift_right(prod, d0 + d1 - w)
                        if w - d0 >= d2:
                            if K.poly_val(pint) < d2:
                                continue
                            base20 = np.zeros(n, dtype=np.int64)
                        else:
                            if K.poly_val(pint) < w - d0:
                                continue
                            base20 = K.poly_shift_right(pint, w - d0)
                            base20[free_from:] = 0
                        for h20t in _series_tuples(p, d2 - free_from, 0):
                            seg = poly(h20t)
                            h20 = (base20 + K.poly_shift(seg, free_from)) % p
                            H = np.zeros((3, 3, n), dtype=np.int64)
                            for pos, dv in ((0, d0), (1, d1), (2, d2)):
                                if dv < n:
                                    H[pos, pos, dv] = 1
                            H[1, 0] = h10
                            H[2, 0] = h20
                            H[2, 1] = h21
                            out.append(Lattice(alg, H, 0))
    return out


# -- strategy 2: closure walk for a general base order ----------------------------


def _quotient_mult_table(c: Lattice) -> np.ndarray:
    cols = c.columns()
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(i, 3):
            coords = c.coords_of(cols[i] * cols[j])
            v = np.array([int(x.coeffs[0]) for x in coords], dtype=np.int64)
            sc[i, j] = v
            sc[j, i] = v
    return sc


def _radical_row_basis(c: Lattice) -> list[np.ndarray]:
    """Basis of rad(C/tC) in column coordinates (trace-form kernel; valid over
    the prime field because branch multiplicities stay below p)."""
    p = c.alg.cfg.p
    sc = _quotient_mult_table(c)

    def mult_mat(vec):
        m = np.zeros((3, 3), dtype=np.int64)
        for i in range(3):
            if vec[i]:
                for j in range(3):
                    m[:, j] = (m[:, j] + vec[i] * sc[i, j]) % p
        return m

    gram = np.zeros((3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            gram[i, j] = int(np.trace(mult_mat(sc[i, j])) % p)
    return _fp_kernel(gram, p)


def _fp_kernel(mat: np.ndarray, p: int) -> list[np.ndarray]:
    cols = mat.shape[1]
    if mat.size == 0:
        return [np.eye(cols, dtype=np.int64)[i] for i in range(cols)]
    R, piv, rank = K.rref_mod_p(mat, p)
    pivset = set(int(x) for x in piv[:rank])
    out = []
    for fr in range(cols):
        if fr in pivset:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[fr] = 1
        for r in range(rank):
            v[int(piv[r])] = (-int(R[r, fr])) % p
        out.append(v)
    return out


def _window_matrix(alg: CubicAlgebra, w: int, mult_by: AlgebraElement) -> np.ndarray:
    """Matrix of multiplication by an element on A/t^w A."""
    dim = 3 * w
    mat = np.zeros((dim, dim), dtype=np.int64)
    for idx in range(dim):
        i, j = divmod(idx, w)
        y = mult_by * alg.basis_el(i).shift(j)
        for ii in range(3):
            mat[ii * w : (ii + 1) * w, idx] = y.coords[ii][:w]
    return mat % alg.cfg.p


def _reduce_row(rows: np.ndarray, vec: np.ndarray, p: int) -> np.ndarray:
    v = vec.copy() % p
    for r in rows:
        nz = np.nonzero(r)[0]
        if nz.size and v[nz[0]]:
            v = (v - v[nz[0]] * r) % p
    return v


def _enumerate_stable_bfs(c: Lattice, w: int) -> list[Lattice]:
    alg = c.alg
    p = alg.cfg.p
    dim = 3 * w
    rad_rows = _radical_row_basis(c)
    jgens = []
    for v in rad_rows:
        x = alg.zero
        for kx in range(3):
            if v[kx]:
                x = x + c.column(kx) * int(v[kx])
        jgens.append(x)
    jgens += [col.shift(1) for col in c.columns()]
    jmats = [_window_matrix(alg, w, g) for g in jgens]
    cmats = [_window_matrix(alg, w, col) for col in c.columns()]
    empty = np.zeros((0, dim), dtype=np.int64)

    def canon(rows):
        if rows.shape[0] == 0:
            return empty
        R, piv, rank = K.rref_mod_p(rows, p)
        return R[:rank].copy()

    def close_under_base(rows):
        cur = canon(rows)
        changed = True
        while changed:
            changed = False
            for mat in cmats:
                for r in list(cur):
                    red = _reduce_row(cur, (mat @ r) % p, p)
                    if red.any():
                        cur = canon(np.concatenate([cur, red.reshape(1, -1)]))
                        changed = True
        return cur

    seen = {empty.tobytes(): empty}
    frontier = [empty]
    while frontier:
        rows = frontier.pop()
        conds = []
        for mat in jmats:
            reduced = np.stack(
                [_reduce_row(rows, mat[:, idx], p) for idx in range(dim)], axis=1
            )
            conds.append(reduced)
        stacked = np.concatenate(conds, axis=0)
        kern = _fp_kernel(stacked, p)
        # lines of the socle modulo the module itself
        qbasis = canon(
            np.stack([_reduce_row(rows, v, p) for v in kern]) if kern else empty
        )
        if qbasis.shape[0] == 0:
            continue
        seen_lines = set()
        for combo in itertools.product(range(p), repeat=qbasis.shape[0]):
            if not any(combo):
                continue
            v = np.zeros(dim, dtype=np.int64)
            for cf, b in zip(combo, qbasis):
                v = (v + cf * b) % p
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                continue
            v = (v * pow(int(v[nz[0]]), p - 2, p)) % p
            lk = v.tobytes()
            if lk in seen_lines:
                continue
            seen_lines.add(lk)
            newrows = close_under_base(np.concatenate([rows, v.reshape(1, -1)]))
            key = newrows.tobytes()
            if key not in seen:
                seen[key] = newrows
                frontier.append(newrows)
    out = []
    base = [alg.basis_el(i).shift(w) for i in range(3)]
    for rows in seen.values():
        gens = list(base)
        for r in rows:
            arr = np.zeros((3, alg.cfg.prec), dtype=np.int64)
            for idx, cv in enumerate(r):
                if cv:
                    i, j = divmod(idx, w)
                    arr[i, j] = cv
            gens.append(AlgebraElement(alg, arr))
        out.append(lattice_from_generators(alg, gens, 0))
    return out


def enumerate_ideal_lattices(c: Lattice, w: int | None = None) -> list[FractionalIdeal]:
    """All lattices M with t^w A <= M <= A and C.M <= M, as fractional ideals."""
    alg = c.alg
    if not c.is_order():
        raise UsageError("base must be an order")
    cond = c.conductor_exponent()
    if w is None:
        w = cond
    if w < cond:
        raise UsageError(f"window {w} smaller than the conductor exponent {cond}")
    _check_envelope(alg.cfg.p, w)
    if alg.cfg.prec < census_precision(w):
        raise UsageError(
            f"census at window {w} needs precision >= {census_precision(w)}"
        )
    if w == cond and c == make_Am(alg, cond, guard=c.guard):
        lats = _enumerate_all_window(alg, w)
    else:
        lats = _enumerate_stable_bfs(c, w)
    out = []
    for m in lats:
        prod = c.mul(m)
        if not m.contains_lattice(prod):
            raise UsageError("enumerated module fails the stability re-check")
        out.append(FractionalIdeal(base=c, module=m))
    out.sort(key=lambda fi: fi.module.key())
    return out


def is_isomorphic_ideals(a: FractionalIdeal, b: FractionalIdeal) -> bool:
    if a.base != b.base:
        raise UsageError("ideals over different base orders")
    return scaling_witness(a.module, b.module) is not None


# -- census ------------------------------------------------------------------------


@dataclass
class IdealClass:
    rep: Lattice
    size: int
    tags: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "representative": self.rep.to_json(),
            "lattices": self.size,
            "tags": list(self.tags),
        }


@dataclass
class ClassCensus:
    base: Lattice
    window: int
    n_lattices: int
    classes: list[IdealClass] = field(default_factory=list)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def unexpected(self) -> list[IdealClass]:
        return [c for c in self.classes if "UNEXPECTED" in c.tags]

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "window": self.window,
            "lattices": self.n_lattices,
            "classes": [c.to_json() for c in self.classes],
        }


def _normalize_class_rep(m: Lattice) -> Lattice:
    """Scale so every branch minimum is zero: a class-stable representative."""
    alg = m.alg
    ram = alg.ram_indices
    mins = m.branch_mins()
    s = max(0, max((mn + e - 1) // e for mn, e in zip(mins, ram)))
    exps = tuple(s * e - mn for mn, e in zip(mins, ram))
    if any(exps):
        m = m.scale_elem(alg.branch_shift_element(exps))
    return m.strip_t_content()[0]


def iso_classes(c: Lattice, w: int | None = None) -> ClassCensus:
    """Unit-orbit census of the window ideals of c, with classification tags.

    Tags: "over-ring" when the class contains an over-ring of c, "dual" when
    it is the dual class of such an over-ring, "UNEXPECTED" otherwise; an
    UNEXPECTED class would falsify the classification and fails verification.
    """
    ideals = enumerate_ideal_lattices(c, w)
    window = w if w is not None else c.conductor_exponent()
    # collapse to branch-normalized representatives first (cheap), then group
    # the survivors into unit orbits, bucketed by the multiplier ring
    norm_counts: dict[bytes, list] = {}
    for fi in ideals:
        nm = _normalize_class_rep(fi.module)
        entry = norm_counts.get(nm.key())
        if entry is None:
            norm_counts[nm.key()] = [nm, 1]
        else:
            entry[1] += 1
    groups: dict[bytes, list[dict]] = {}
    for rep, cnt in sorted(norm_counts.values(), key=lambda rc: rc[0].key()):
        mult = multiplier_ring(rep)
        bucket = groups.setdefault(mult.key(), [])
        for entry in bucket:
            if scaling_witness(rep, entry["rep"]) is not None:
                entry["size"] += cnt
                break
        else:
            bucket.append({"rep": rep, "size": cnt, "mult": mult})
    entries = [e for bucket in groups.values() for e in bucket]
    entries.sort(key=lambda e: e["rep"].key())
    overrings = []
    for e in entries:
        tags = []
        if e["mult"].contains_lattice(c) and scaling_witness(e["rep"], e["mult"]):
            tags.append("over-ring")
            overrings.append(e["mult"])
        e["tags"] = tags
    dual_reps = [trace_dual(b) for b in overrings]
    classes = []
    for e in entries:
        tags = e["tags"]
        if any(scaling_witness(e["rep"], d) is not None for d in dual_reps):
            tags.append("dual")
        if not tags:
            tags.append("UNEXPECTED")
        classes.append(IdealClass(rep=e["rep"], size=e["size"], tags=tuple(sorted(tags))))
    classes.sort(key=lambda cl: cl.rep.key())
    return ClassCensus(base=c, window=window, n_lattices=len(ideals), classes=classes)


# -- parameter growth -----------------------------------------------------------------


@dataclass
class ParEstimate:
    counts: dict[int, int]
    degree: int | None
    inconclusive: bool
    literal_reading: int | None
    proof_reading: int | None

    def to_json(self) -> dict:
        return {
            "counts": {str(p): n for p, n in sorted(self.counts.items())},
            "degree": self.degree,
            "inconclusive": self.inconclusive,
            "reading_subscript_half": self.literal_reading,
            "reading_growth_consistent": self.proof_reading,
        }


def _exact_fit_degree(points: list[tuple[int, int]]) -> int:
    """Degree of the interpolating polynomial, by divided differences."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    degree = 0
    for order in range(1, len(points)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + order] - xs[i])
            for i in range(len(points) - order)
        ]
        if any(v != 0 for v in table):
            degree = order
    return degree


def _corollary_readings(desc: FamilyDescriptor) -> tuple[int | None, int | None]:
    """The two readings of the special-ring parameter formula.

    literal: half the printed subscript.  growth-consistent: for the one-branch
    ramified family the subscript counts half-steps, so the half is taken of
    rho//2; elsewhere the readings agree.
    """
    if desc.kind in ("Am", "Jm"):
        return desc.m // 2, desc.m // 2
    if desc.case is BranchCase.ONE_RAMIFIED:
        return desc.rho // 2, (desc.rho // 2) // 2
    if desc.r is not None:
        return desc.r // 2, desc.r // 2
    if desc.l is not None:
        return desc.l // 2, desc.l // 2
    return None, None


def par_estimate(desc: FamilyDescriptor, primes: list[int]) -> ParEstimate:
    """Class-count growth degree across primes: the desk-scale stand-in for
    the number of parameters in the ideal theory of the named ring.

    Only ramified and three-branch shapes qualify (the geometric setting
    excludes residue-field extensions).  Reported degree None means the grid
    was too short to pin the degree down (growth matched the maximal fit).
    """
    if desc.case in (BranchCase.ONE_UNRAMIFIED, BranchCase.TWO_UNRAMIFIED):
        raise UsageError("parameter growth is defined for ramified or three-branch shapes")
    if len(primes) < 2:
        raise UsageError("need at least two primes")
    if any(desc.a) and max(desc.a) >= min(primes):
        raise UsageError("descriptor parameter does not reduce into all requested fields")
    counts: dict[int, int] = {}
    for p in sorted(primes):
        cfg = RingConfig(p, census_precision(desc.conductor()))
        alg = make_algebra(cfg, desc.case)
        lat = make_family(alg, desc)
        counts[p] = iso_classes(lat).n_classes
    degree = _exact_fit_degree(sorted(counts.items()))
    inconclusive = degree == len(primes) - 1
    lit, proof = _corollary_readings(desc)
    return ParEstimate(
        counts=counts,
        degree=None if inconclusive else degree,
        inconclusive=inconclusive,
        literal_reading=lit,
        proof_reading=proof,
    )
