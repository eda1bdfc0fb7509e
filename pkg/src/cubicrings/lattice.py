"""Full rank-3 D-lattices inside a cubic algebra, in canonical echelon form.

A lattice is stored as a 3x3 matrix H of truncated series: columns generate,
column j has pivot t^(d_j) in row j, entries below a pivot row are reduced
modulo that row's pivot.  Over the local ring D_N this form is unique, so
lattice equality is array equality and canonical bytes can key dictionaries.

The guard g asserts d_0+d_1+d_2 <= N - g at construction; enumerations choose
N and g so that every module they touch is represented faithfully, making
truncation artifacts loud errors rather than silent corruption.  Derived
lattices (sums, products, scalings, colons) assert against the full budget
g = 0: their pivots may legitimately exceed the constructor-time window.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraElement, CubicAlgebra
from .backend import K
from .errors import (
    ConfigError,
    DegenerateLatticeError,
    NonContainmentError,
    PrecisionError,
)
from .series import TruncatedSeries


class Lattice:
    __slots__ = ("alg", "hnf", "guard", "_hash")

    def __init__(self, alg: CubicAlgebra, hnf: np.ndarray, guard: int = 0) -> None:
        self.alg = alg
        arr = np.asarray(hnf, dtype=np.int64)
        arr = arr % alg.cfg.p
        arr.flags.writeable = False
        self.hnf = arr
        self.guard = guard
        self._hash = None
        if sum(self.pivots()) > alg.cfg.prec - guard:
            raise PrecisionError(
                f"pivot valuations {self.pivots()} exceed precision budget "
                f"{alg.cfg.prec} - {guard}"
            )

    # -- basics ----------------------------------------------------------------

    def pivots(self) -> tuple[int, int, int]:
        return tuple(int(K.poly_val(self.hnf[i, i])) for i in range(3))

    def column(self, j: int) -> AlgebraElement:
        return AlgebraElement(self.alg, self.hnf[:, j].copy())

    def columns(self) -> list[AlgebraElement]:
        return [self.column(j) for j in range(3)]

    def index_in_maximal(self) -> int:
        """dim over F_p of A / self; the sum of pivot valuations."""
        return sum(self.pivots())

    def key(self) -> bytes:
        return self.hnf.tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.alg == other.alg and np.array_equal(self.hnf, other.hnf)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alg, self.hnf.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Lattice(pivots={self.pivots()}, alg={self.alg.case.value})"

    # -- membership and comparisons ---------------------------------------------

    def contains(self, x: AlgebraElement) -> bool:
        if x.alg != self.alg:
            raise ConfigError("element from a different algebra")
        r = K.hnf_residue(self.hnf, x.coords, self.alg.cfg.p)
        return not r.any()

    def residue(self, x: AlgebraElement) -> np.ndarray:
        """Canonical representative of x modulo this lattice (linear in x)."""
        return K.hnf_residue(self.hnf, x.coords, self.alg.cfg.p)

    def coords_of(self, x: AlgebraElement):
        """Column coordinates of x, or None when x is not in the lattice."""
        c, ok = K.hnf_solve(self.hnf, x.coords, self.alg.cfg.p)
        if not ok:
            return None
        return [TruncatedSeries(self.alg.cfg, c[i].copy()) for i in range(3)]

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(other.column(j)) for j in range(3))

    def index_in(self, ambient: "Lattice") -> int:
        """dim over F_p of ambient/self; requires self to sit inside ambient."""
        if not ambient.contains_lattice(self):
            raise NonContainmentError("index requested without containment")
        return self.index_in_maximal() - ambient.index_in_maximal()

    # -- module operations --------------------------------------------------------

    def add(self, other: "Lattice") -> "Lattice":
        if self.alg != other.alg:
            raise ConfigError("lattices over different algebras")
        gens = np.concatenate([self._colsarr(), other._colsarr()])
        return from_generator_array(self.alg, gens)

    def _colsarr(self) -> np.ndarray:
        return np.stack([self.hnf[:, j] for j in range(3)])

    def mul(self, other: "Lattice") -> "Lattice":
        if self.alg != other.alg:
            raise ConfigError("lattices over different algebras")
        p = self.alg.cfg.p
        gens = []
        for i in range(3):
            for j in range(3):
                gens.append(K.elem_mul(self.hnf[:, i], other.hnf[:, j], self.alg.stc, p))
        return from_generator_array(self.alg, np.stack(gens))

    def scale_elem(self, x: AlgebraElement) -> "Lattice":
        """x . self for an element x of the algebra (injective on full lattices
        only when x is invertible in L; degeneracy raises)."""
        p = self.alg.cfg.p
        gens = [K.elem_mul(x.coords, self.hnf[:, j], self.alg.stc, p) for j in range(3)]
        return from_generator_array(self.alg, np.stack(gens))

    def scale_t(self, k: int) -> "Lattice":
        """t^k . self, staying in canonical form by shifting every entry."""
        rows = [[K.poly_shift(self.hnf[i, j], k) for j in range(3)] for i in range(3)]
        return Lattice(self.alg, np.array(rows))

    def is_order(self) -> bool:
        if not self.contains(self.alg.one):
            return False
        for i in range(3):
            for j in range(i, 3):
                prod = K.elem_mul(self.hnf[:, i], self.hnf[:, j], self.alg.stc, self.alg.cfg.p)
                if K.hnf_residue(self.hnf, prod, self.alg.cfg.p).any():
                    return False
        return True

    # -- normalization helpers ------------------------------------------------------

    def t_content(self) -> int:
        """Largest j with t^(-j) . self still inside A."""
        n = self.alg.cfg.prec
        best = n
        for i in range(3):
            for j in range(3):
                if self.hnf[i, j].any():
                    best = min(best, int(K.poly_val(self.hnf[i, j])))
        return best

    def strip_t_content(self) -> tuple["Lattice", int]:
        j = self.t_content()
        if j == 0:
            return self, 0
        rows = [[K.poly_shift_right(self.hnf[r, c], j) for c in range(3)] for r in range(3)]
        return Lattice(self.alg, np.array(rows)), j

    def branch_mins(self) -> tuple[int, ...]:
        """Per-branch minimum valuation over the lattice."""
        nb = self.alg.case.n_branches
        mins = [None] * nb
        for col in self.columns():
            mv = col.multival()
            for b in range(nb):
                if mv[b] is not None and (mins[b] is None or mv[b] < mins[b]):
                    mins[b] = mv[b]
        if any(m is None for m in mins):
            raise DegenerateLatticeError("full-rank lattice with an empty branch")
        return tuple(mins)

    def conductor_exponent(self) -> int:
        """Smallest w with t^w A contained in this lattice."""
        n = self.alg.cfg.prec
        for w in range(n):
            if all(self.contains(self.alg.basis_el(i).shift(w)) for i in range(3)):
                return w
        raise PrecisionError("conductor exponent exceeds working precision")

    # -- serialization -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "algebra": self.alg.to_json(),
            "hnf": [[[int(c) for c in self.hnf[i, j]] for j in range(3)] for i in range(3)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Lattice":
        alg = CubicAlgebra.from_json(obj["algebra"])
        hnf = np.array(obj["hnf"], dtype=np.int64)
        if hnf.shape != (3, 3, alg.cfg.prec):
            raise ConfigError(f"hnf document has shape {hnf.shape}")
        gens = np.stack([hnf[:, j] for j in range(3)])
        return from_generator_array(alg, gens)


def from_generator_array(alg: CubicAlgebra, gens: np.ndarray, guard: int = 0) -> Lattice:
    H, rank = K.hnf_reduce(gens, alg.cfg.p)
    if rank < 3:
        raise DegenerateLatticeError(f"generators span rank {rank} < 3")
    return Lattice(alg, H, guard)


def lattice_from_generators(alg: CubicAlgebra, gens, guard: int = 0) -> Lattice:
    """Canonical lattice spanned by the given AlgebraElements."""
    arr = np.stack([g.coords for g in gens])
    return from_generator_array(alg, arr, guard)


def full_lattice(alg: CubicAlgebra, guard: int = 0) -> Lattice:
    """The maximal order A itself."""
    return lattice_from_generators(alg, [alg.basis_el(i) for i in range(3)], guard)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    return a.add(b)


def lattice_product(a: Lattice, b: Lattice) -> Lattice:
    return a.mul(b)


def lattice_contains(m: Lattice, x: AlgebraElement) -> bool:
    return m.contains(x)


def lattice_index(sub: Lattice, ambient: Lattice) -> int:
    return sub.index_in(ambient)


def is_order(m: Lattice) -> bool:
    return m.is_order()


def is_overring(b: Lattice, c: Lattice) -> bool:
    """True when both are orders and b dominates c (c inside b)."""
    return b.is_order() and c.is_order() and b.contains_lattice(c)


# -- finite-window linear algebra ---------------------------------------------
#
# For x in A, conditions of the form "x . c lies in M" only depend on x modulo
# t^K A once t^K A sits inside M (then (t^K z) . c lands in t^K A).  That makes
# colon lattices and intersections finite F_p kernel computations over the
# window A/t^K A.


def _window_dim(alg: CubicAlgebra, kw: int) -> int:
    return 3 * kw


def _window_element(alg: CubicAlgebra, kw: int, idx: int) -> AlgebraElement:
    i, j = divmod(idx, kw)
    return alg.basis_el(i).shift(j)


def _lift_window_vector(alg: CubicAlgebra, kw: int, vec) -> AlgebraElement:
    arr = np.zeros((3, alg.cfg.prec), dtype=np.int64)
    for idx, c in enumerate(vec):
        if c:
            i, j = divmod(idx, kw)
            arr[i, j] = int(c) % alg.cfg.p
    return AlgebraElement(alg, arr)


def _window_kernel(alg: CubicAlgebra, kw: int, maps) -> list[AlgebraElement]:
    """Generators (with t^kw A implied) of {x in A : every map sends x to 0}.

    maps: callables AlgebraElement -> flat int vector, linear over F_p.
    """
    dim = _window_dim(alg, kw)
    cols = []
    for idx in range(dim):
        x = _window_element(alg, kw, idx)
        pieces = [m(x) for m in maps]
        cols.append(np.concatenate(pieces))
    mat = np.stack(cols, axis=1) % alg.cfg.p
    kern = _kernel_basis(mat, alg.cfg.p)
    return [_lift_window_vector(alg, kw, v) for v in kern]


def _kernel_basis(mat: np.ndarray, p: int) -> list[np.ndarray]:
    rows, cols = mat.shape
    R, piv, rank = K.rref_mod_p(mat, p)
    pivset = set(int(c) for c in piv[:rank])
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for r in range(rank):
            pc = int(piv[r])
            v[pc] = (-int(R[r, free])) % p
        basis.append(v)
    return basis


def integral_colon(target: Lattice, source: Lattice) -> Lattice:
    """{x in A : x . source inside target} as a lattice.

    The true colon may stick out of A; callers needing that rescale first.
    """
    alg = target.alg
    kw = target.conductor_exponent()
    kw = max(kw, 1)
    srccols = source.columns()

    def make_map(c):
        def f(x, c=c):
            return target.residue(x * c).reshape(-1)

        return f

    gens = _window_kernel(alg, kw, [make_map(c) for c in srccols])
    gens += [alg.basis_el(i).shift(kw) for i in range(3)]
    return lattice_from_generators(alg, gens)


def multiplier_ring(m: Lattice) -> Lattice:
    """{x in L : x m inside m}; integral because m has full rank."""
    return integral_colon(m, m)


def lattice_intersect(a: Lattice, b: Lattice) -> Lattice:
    alg = a.alg
    kw = max(a.conductor_exponent(), b.conductor_exponent(), 1)

    def mk(m):
        def f(x, m=m):
            return m.residue(x).reshape(-1)

        return f

    gens = _window_kernel(alg, kw, [mk(a), mk(b)])
    gens += [alg.basis_el(i).shift(kw) for i in range(3)]
    return lattice_from_generators(alg, gens)
