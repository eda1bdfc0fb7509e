"""Locality, embedding dimension, and singularity names with multivaluations.

The name table covers the plane-curve members (unshifted two-generator rings);
shifted rings and the maximal-order chain A_k are not plane curves, and
decomposable rings are excluded from the local notions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import BranchCase
from .errors import LocalityError, NotPlaneCurveError, UsageError
from .families import FamilyDescriptor, residue_count
from .ideals import _quotient_mult_table, _radical_row_basis
from .lattice import Lattice, lattice_from_generators


def is_decomposable(c: Lattice) -> bool:
    """True when the order contains an idempotent other than 0 and 1.

    Idempotents lift from C/tC over the complete base, so a scan of the
    three-dimensional quotient decides it.
    """
    if not c.is_order():
        raise UsageError("decomposability is defined for orders")
    alg = c.alg
    p = alg.cfg.p
    sc = _quotient_mult_table(c)
    one = c.coords_of(alg.one)
    onev = np.array([int(x.coeffs[0]) for x in one], dtype=np.int64)
    for combo in itertools.product(range(p), repeat=3):
        v = np.array(combo, dtype=np.int64)
        if not v.any() or ((v - onev) % p == 0).all():
            continue
        sq = np.zeros(3, dtype=np.int64)
        for i in range(3):
            if v[i]:
                for j in range(3):
                    if v[j]:
                        sq = (sq + v[i] * v[j] * sc[i, j]) % p
        if ((sq - v) % p == 0).all():
            return True
    return False


def embedding_dim(c: Lattice) -> int:
    """dim of J/J^2 over the residue field of the (local) order c."""
    if not c.is_order():
        raise UsageError("embedding dimension is defined for orders")
    if is_decomposable(c):
        raise LocalityError("embedding dimension needs a local order")
    alg = c.alg
    rad_rows = _radical_row_basis(c)
    gens = [col.shift(1) for col in c.columns()]
    for v in rad_rows:
        x = alg.zero
        for kx in range(3):
            if v[kx]:
                x = x + c.column(kx) * int(v[kx])
        gens.append(x)
    j = lattice_from_generators(alg, gens)
    j2 = j.mul(j)
    dim_fp = j2.index_in(j)
    residue_deg = j.index_in(c)
    if dim_fp % residue_deg:
        raise UsageError("radical quotient is not free over the residue field")
    return dim_fp // residue_deg


@dataclass(frozen=True)
class SingularityType:
    name: str
    branches: int
    unramified: bool
    vx: tuple
    vy: tuple
    par: int

    def to_json(self) -> dict:
        return {
            "type": self.name,
            "branches": self.branches,
            "unramified_residue": self.unramified,
            "v_x": [v for v in self.vx],
            "v_y": [v for v in self.vy],
            "par": self.par,
        }


def singularity_type(desc: FamilyDescriptor) -> SingularityType:
    """Name row for an unshifted local two-generator ring.

    v_x and v_y are the multivaluations of the maximal-ideal generators
    (t and the distinguished generator); None stands for an infinite entry.
    """
    if desc.kind != "C" or desc.k > 0:
        raise NotPlaneCurveError("only unshifted two-generator rings carry a name")
    case = desc.case
    par = residue_count(desc)
    if case is BranchCase.ONE_RAMIFIED:
        r = desc.rho // 2
        if desc.rho % 2 == 0:
            return SingularityType(f"E_{6 * r}", 1, False, (3,), (3 * r + 1,), par)
        return SingularityType(f"E_{6 * r + 2}", 1, False, (3,), (3 * r + 2,), par)
    if case is BranchCase.ONE_UNRAMIFIED:
        return SingularityType(f"E*_{{{desc.r},0}}", 1, True, (1,), (desc.r,), par)
    if case is BranchCase.TWO_RAMIFIED:
        if desc.r is not None:
            return SingularityType(
                f"E_{6 * desc.r + 1}", 2, False, (2, 1), (2 * desc.r + 1, None), par
            )
        if desc.l == 0:
            raise NotPlaneCurveError("decomposable rings carry no plane-curve name")
        return SingularityType(
            f"E_{{{desc.l},{2 * desc.q + 1}}}", 2, False, (2, 1), (2 * desc.l, None), par
        )
    if case is BranchCase.TWO_UNRAMIFIED:
        if desc.l == 0:
            raise NotPlaneCurveError("decomposable rings carry no plane-curve name")
        return SingularityType(
            f"E*_{{{desc.l},{2 * desc.q}}}", 2, True, (1, 1), (desc.l, None), par
        )
    if desc.l == 0:
        raise NotPlaneCurveError("decomposable rings carry no plane-curve name")
    return SingularityType(
        f"E_{{{desc.l},{2 * desc.q}}}", 3, False, (1, 1, 1),
        (desc.l, desc.l + desc.q, None), par
    )


def classification_report(c: Lattice) -> dict:
    """Everything classify knows about one order, JSON-shaped."""
    from .families import recognize

    desc = recognize(c)
    decomposable = is_decomposable(c)
    report: dict = {
        "descriptor": desc.to_json(),
        "decomposable": decomposable,
        "local": not decomposable,
    }
    if not decomposable:
        report["edim"] = embedding_dim(c)
    try:
        st = singularity_type(desc)
        report["singularity"] = st.to_json()
    except NotPlaneCurveError:
        report["singularity"] = None
    return report
