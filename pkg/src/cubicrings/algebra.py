"""The five cubic algebras A over D_N, with a fixed basis and exact products.

Shapes, by branch count and ramification (basis in parentheses):

  1r  one branch, ramified:    A = D[tau], tau^3 = t          (1, tau, tau^2)
  1u  one branch, unramified:  A = D[theta], f(theta) = 0     (1, theta, theta^2)
  2r  two branches, ramified:  A = D1 x D, tau^2 = t.e        (e, tau, e')
  2u  two branches, unramified: A = D1 x D, f(theta) = 0      (e1, theta, e')
  3   three branches:          A = D^3                        (e1, e2, e3)

In the ramified shapes the uniformizer satisfies the monic Eisenstein relation
exactly (tau^3 = t, resp. tau^2 = t on the first factor); in the unramified
shapes f is a monic lift of an irreducible polynomial over F_p, by default the
lexicographically smallest one, overridable at construction.

Elements carry a multivaluation: the vector of valuations of their components
under the decomposition of A into discrete valuation rings, with None standing
for "zero at working precision".
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .backend import K
from .config import RingConfig
from .errors import ConfigError
from .series import TruncatedSeries


class BranchCase(enum.Enum):
    ONE_RAMIFIED = "1r"
    ONE_UNRAMIFIED = "1u"
    TWO_RAMIFIED = "2r"
    TWO_UNRAMIFIED = "2u"
    THREE = "3"

    @classmethod
    def from_token(cls, token: str) -> "BranchCase":
        for case in cls:
            if case.value == token:
                return case
        raise ConfigError(f"unknown case token {token!r}; use 1r,1u,2r,2u,3")

    @property
    def n_branches(self) -> int:
        return {"1r": 1, "1u": 1, "2r": 2, "2u": 2, "3": 3}[self.value]

    @property
    def ramified(self) -> bool:
        return self in (BranchCase.ONE_RAMIFIED, BranchCase.TWO_RAMIFIED)


def _has_root(coeffs: list[int], p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def default_min_poly(p: int, degree: int) -> list[int]:
    """Smallest monic irreducible polynomial of the given degree over F_p.

    Coefficient tuples (highest degree first, leading 1 omitted) are scanned in
    ascending lexicographic order; degree <= 3 means root-freeness decides
    irreducibility.  Returned ascending, leading coefficient included.
    """
    if degree == 2:
        for f1 in range(p):
            for f0 in range(p):
                if not _has_root([f0, f1, 1], p):
                    return [f0, f1, 1]
    elif degree == 3:
        for f2 in range(p):
            for f1 in range(p):
                for f0 in range(p):
                    if not _has_root([f0, f1, f2, 1], p):
                        return [f0, f1, f2, 1]
    raise ConfigError(f"no irreducible polynomial of degree {degree} found")


_EXPECTED_DISC_VAL = {
    BranchCase.ONE_RAMIFIED: 2,  # disc(x^3 - t) = -27 t^2
    BranchCase.ONE_UNRAMIFIED: 0,
    BranchCase.TWO_RAMIFIED: 1,  # disc(x^2 - t) = 4t
    BranchCase.TWO_UNRAMIFIED: 0,
    BranchCase.THREE: 0,
}


class CubicAlgebra:
    """Fixed-basis model of one of the five algebra shapes over a RingConfig."""

    def __init__(self, cfg: RingConfig, case: BranchCase, f: tuple[int, ...] | None):
        self.cfg = cfg
        self.case = case
        self.f = f
        n = cfg.prec
        self.stc = self._build_stc()
        self.stc.flags.writeable = False
        # trace of multiplication by basis element k: sum_i (b_k b_i)_i
        tr = np.zeros((3, n), dtype=np.int64)
        for k in range(3):
            for i in range(3):
                tr[k] = (tr[k] + self.stc[k, i, i]) % cfg.p
        self.trace_vec = tr
        self.trace_vec.flags.writeable = False
        gram = np.zeros((3, 3, n), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                acc = np.zeros(n, dtype=np.int64)
                for k in range(3):
                    acc = (acc + K.poly_mul(self.stc[i, j, k], tr[k], cfg.p)) % cfg.p
                gram[i, j] = acc
        self.gram = gram
        self.gram.flags.writeable = False
        dval = self.det3(gram).valuation()
        if dval != _EXPECTED_DISC_VAL[case]:
            raise ConfigError(
                f"trace form determinant has t-valuation {dval}, "
                f"expected {_EXPECTED_DISC_VAL[case]} for case {case.value}"
            )
        self.disc_val = dval

    # -- construction ---------------------------------------------------------

    def _build_stc(self) -> np.ndarray:
        cfg = self.cfg
        n = cfg.prec
        stc = np.zeros((3, 3, 3, n), dtype=np.int64)
        case = self.case
        if case is BranchCase.ONE_RAMIFIED:
            # tau^(i+j), with tau^3 = t
            for i in range(3):
                for j in range(3):
                    k = i + j
                    if k < 3:
                        stc[i, j, k, 0] = 1
                    else:
                        stc[i, j, k - 3, 1] = 1
        elif case is BranchCase.ONE_UNRAMIFIED:
            pows = self._power_table(self.f, 5)
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        stc[i, j, k, 0] = pows[i + j][k] % cfg.p
        elif case is BranchCase.TWO_RAMIFIED:
            stc[0, 0, 0, 0] = 1  # e.e = e
            stc[0, 1, 1, 0] = stc[1, 0, 1, 0] = 1  # e.tau = tau
            stc[1, 1, 0, 1] = 1  # tau.tau = t.e
            stc[2, 2, 2, 0] = 1  # e'.e' = e'
        elif case is BranchCase.TWO_UNRAMIFIED:
            f0, f1 = self.f[0], self.f[1]
            stc[0, 0, 0, 0] = 1
            stc[0, 1, 1, 0] = stc[1, 0, 1, 0] = 1
            stc[1, 1, 0, 0] = (-f0) % cfg.p  # theta^2 = -f0.e1 - f1.theta
            stc[1, 1, 1, 0] = (-f1) % cfg.p
            stc[2, 2, 2, 0] = 1
        else:
            for i in range(3):
                stc[i, i, i, 0] = 1
        return stc

    @staticmethod
    def _power_table(f: tuple[int, ...], upto: int) -> list[list[int]]:
        """Coefficients of x^k mod f(x) for k < upto, over the integers mod p
        implicitly (reduction happens when the table is stored)."""
        deg = len(f) - 1
        pows = [[0] * deg for _ in range(upto)]
        pows[0][0] = 1
        cur = [0] * deg
        cur[0] = 1
        for k in range(1, upto):
            nxt = [0] * (deg + 1)
            for i, c in enumerate(cur):
                nxt[i + 1] = c
            if nxt[deg]:
                lead = nxt[deg]
                for i in range(deg):
                    nxt[i] -= lead * f[i]
            cur = nxt[:deg]
            pows[k] = list(cur)
        return pows

    # -- basic elements -------------------------------------------------------

    def element(self, series_list) -> "AlgebraElement":
        coords = []
        for s in series_list:
            if isinstance(s, TruncatedSeries):
                coords.append(s.coeffs)
            else:
                coords.append(TruncatedSeries.from_list(self.cfg, s).coeffs)
        return AlgebraElement(self, np.stack(coords))

    def basis_el(self, i: int) -> "AlgebraElement":
        arr = np.zeros((3, self.cfg.prec), dtype=np.int64)
        arr[i, 0] = 1
        return AlgebraElement(self, arr)

    @property
    def one(self) -> "AlgebraElement":
        arr = np.zeros((3, self.cfg.prec), dtype=np.int64)
        if self.case in (BranchCase.ONE_RAMIFIED, BranchCase.ONE_UNRAMIFIED):
            arr[0, 0] = 1
        elif self.case is BranchCase.THREE:
            arr[:, 0] = 1
        else:
            arr[0, 0] = 1
            arr[2, 0] = 1
        return AlgebraElement(self, arr)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros((3, self.cfg.prec), dtype=np.int64))

    def scalar(self, s) -> "AlgebraElement":
        """Embed a series (or int) along 1."""
        if isinstance(s, int):
            s = TruncatedSeries.constant(self.cfg, s)
        return self.one * s

    def branch_shift_element(self, exponents) -> "AlgebraElement":
        """Element whose multivaluation is exactly the given exponent vector.

        Products of per-branch uniformizer powers; used to normalize lattices
        branch by branch.
        """
        cfg = self.cfg
        arr = np.zeros((3, cfg.prec), dtype=np.int64)
        case = self.case
        if case is BranchCase.ONE_RAMIFIED:
            (k,) = exponents
            if k // 3 < cfg.prec:
                arr[k % 3, k // 3] = 1
        elif case is BranchCase.ONE_UNRAMIFIED:
            (k,) = exponents
            if k < cfg.prec:
                arr[0, k] = 1
        elif case is BranchCase.TWO_RAMIFIED:
            a, b = exponents
            if a % 2 == 0:
                arr[0, a // 2] = 1
            else:
                arr[1, a // 2] = 1
            arr[2, b] = 1
        elif case is BranchCase.TWO_UNRAMIFIED:
            a, b = exponents
            arr[0, a] = 1
            arr[2, b] = 1
        else:
            for i, a in enumerate(exponents):
                arr[i, a] = 1
        return AlgebraElement(self, arr)

    def window_generators(self, delta) -> list["AlgebraElement"]:
        """D-module generators of {x in A : v_b(x) >= delta_b for every branch b}."""
        cfg = self.cfg
        case = self.case
        gens = []
        if case is BranchCase.ONE_RAMIFIED:
            (d,) = delta
            for k in (d, d + 1, d + 2):
                gens.append(self.branch_shift_element((k,)))
        elif case is BranchCase.ONE_UNRAMIFIED:
            (d,) = delta
            for i in range(3):
                gens.append(self.basis_el(i).shift(d))
        elif case is BranchCase.TWO_RAMIFIED:
            a, b = delta
            s = a // 2
            if a % 2 == 0:
                gens.append(self.basis_el(0).shift(s))
                gens.append(self.basis_el(1).shift(s))
            else:
                gens.append(self.basis_el(0).shift(s + 1))
                gens.append(self.basis_el(1).shift(s))
            gens.append(self.basis_el(2).shift(b))
        elif case is BranchCase.TWO_UNRAMIFIED:
            a, b = delta
            gens.append(self.basis_el(0).shift(a))
            gens.append(self.basis_el(1).shift(a))
            gens.append(self.basis_el(2).shift(b))
        else:
            for i, a in enumerate(delta):
                gens.append(self.basis_el(i).shift(a))
        return gens

    # -- branch data -----------------------------------------------------------

    @property
    def ram_indices(self) -> tuple[int, ...]:
        return {
            BranchCase.ONE_RAMIFIED: (3,),
            BranchCase.ONE_UNRAMIFIED: (1,),
            BranchCase.TWO_RAMIFIED: (2, 1),
            BranchCase.TWO_UNRAMIFIED: (1, 1),
            BranchCase.THREE: (1, 1, 1),
        }[self.case]

    def det3(self, mat: np.ndarray) -> TruncatedSeries:
        """Determinant of a 3x3 matrix of series (shape (3,3,N))."""
        p = self.cfg.p

        def mul(a, b):
            return K.poly_mul(a, b, p)

        def det2(i1, i2, j1, j2):
            return (mul(mat[i1, j1], mat[i2, j2]) - mul(mat[i1, j2], mat[i2, j1])) % p

        acc = mul(mat[0, 0], det2(1, 2, 1, 2))
        acc = (acc - mul(mat[0, 1], det2(1, 2, 0, 2))) % p
        acc = (acc + mul(mat[0, 2], det2(1, 2, 0, 1))) % p
        return TruncatedSeries(self.cfg, acc)

    # -- identity ---------------------------------------------------------------

    def key(self) -> tuple:
        return (self.case.value, self.cfg.p, self.cfg.prec, self.f)

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicAlgebra) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        extra = f", f={list(self.f)}" if self.f else ""
        return f"CubicAlgebra({self.case.value}, p={self.cfg.p}, prec={self.cfg.prec}{extra})"

    def to_json(self) -> dict:
        doc = {"case": self.case.value, "p": self.cfg.p, "prec": self.cfg.prec}
        if self.f is not None:
            doc["f"] = list(self.f)
        return doc

    @classmethod
    def from_json(cls, obj: dict) -> "CubicAlgebra":
        cfg = RingConfig(int(obj["p"]), int(obj["prec"]))
        f = tuple(int(c) for c in obj["f"]) if "f" in obj else None
        return make_algebra(cfg, BranchCase.from_token(obj["case"]), f)


@lru_cache(maxsize=None)
def _make_algebra_cached(p: int, prec: int, case: BranchCase, f: tuple[int, ...] | None):
    cfg = RingConfig(p, prec)
    if case in (BranchCase.ONE_UNRAMIFIED, BranchCase.TWO_UNRAMIFIED):
        deg = 3 if case is BranchCase.ONE_UNRAMIFIED else 2
        if f is None:
            f = tuple(default_min_poly(p, deg))
        if len(f) != deg + 1 or f[-1] != 1:
            raise ConfigError(f"f must be monic of degree {deg}, got {list(f)}")
        if _has_root([c % p for c in f], p):
            raise ConfigError(f"f = {list(f)} is reducible modulo t")
    else:
        if f is not None:
            raise ConfigError(f"case {case.value} takes no minimal polynomial")
    return CubicAlgebra(cfg, case, f)


def make_algebra(cfg: RingConfig, case: BranchCase | str, f=None) -> CubicAlgebra:
    if isinstance(case, str):
        case = BranchCase.from_token(case)
    return _make_algebra_cached(cfg.p, cfg.prec, case, tuple(f) if f is not None else None)


class AlgebraElement:
    """Element of a CubicAlgebra: three coordinate series along the fixed basis."""

    __slots__ = ("alg", "coords", "_hash")

    def __init__(self, alg: CubicAlgebra, coords: np.ndarray) -> None:
        self.alg = alg
        arr = (np.asarray(coords, dtype=np.int64) % alg.cfg.p).copy()
        arr.flags.writeable = False
        self.coords = arr
        self._hash = None

    def _check(self, other: "AlgebraElement") -> None:
        if self.alg != other.alg:
            raise ConfigError("elements of different algebras")

    def series(self, i: int) -> TruncatedSeries:
        return TruncatedSeries(self.alg.cfg, self.coords[i].copy())

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.alg, self.coords + other.coords)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.alg, self.coords - other.coords)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, -self.coords)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(
                self.alg, K.elem_mul(self.coords, other.coords, self.alg.stc, self.alg.cfg.p)
            )
        if isinstance(other, TruncatedSeries):
            p = self.alg.cfg.p
            rows = [K.poly_mul(self.coords[i], other.coeffs, p) for i in range(3)]
            return AlgebraElement(self.alg, np.stack(rows))
        if isinstance(other, int):
            return AlgebraElement(self.alg, self.coords * (other % self.alg.cfg.p))
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "AlgebraElement":
        """Multiply by t^k."""
        rows = [K.poly_shift(self.coords[i], k) for i in range(3)]
        return AlgebraElement(self.alg, np.stack(rows))

    def is_zero(self) -> bool:
        return not self.coords.any()

    def multival(self) -> tuple:
        """Per-branch valuations; None marks a branch component that vanishes
        at working precision."""
        case = self.alg.case
        n = self.alg.cfg.prec
        vals = [None if K.poly_val(self.coords[i]) >= n else int(K.poly_val(self.coords[i]))
                for i in range(3)]
        if case is BranchCase.ONE_RAMIFIED:
            cand = [3 * vals[i] + i for i in range(3) if vals[i] is not None]
            return (min(cand) if cand else None,)
        if case is BranchCase.ONE_UNRAMIFIED:
            cand = [v for v in vals if v is not None]
            return (min(cand) if cand else None,)
        if case is BranchCase.TWO_RAMIFIED:
            cand = []
            if vals[0] is not None:
                cand.append(2 * vals[0])
            if vals[1] is not None:
                cand.append(2 * vals[1] + 1)
            return (min(cand) if cand else None, vals[2])
        if case is BranchCase.TWO_UNRAMIFIED:
            cand = [v for v in (vals[0], vals[1]) if v is not None]
            return (min(cand) if cand else None, vals[2])
        return tuple(vals)

    def is_unit(self) -> bool:
        return all(v == 0 for v in self.multival())

    def trace(self) -> TruncatedSeries:
        p = self.alg.cfg.p
        acc = np.zeros(self.alg.cfg.prec, dtype=np.int64)
        for i in range(3):
            acc = (acc + K.poly_mul(self.coords[i], self.alg.trace_vec[i], p)) % p
        return TruncatedSeries(self.alg.cfg, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alg == other.alg and np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alg, self.coords.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        names = {
            BranchCase.ONE_RAMIFIED: ("1", "tau", "tau^2"),
            BranchCase.ONE_UNRAMIFIED: ("1", "theta", "theta^2"),
            BranchCase.TWO_RAMIFIED: ("e", "tau", "e'"),
            BranchCase.TWO_UNRAMIFIED: ("e1", "theta", "e'"),
            BranchCase.THREE: ("e1", "e2", "e3"),
        }[self.alg.case]
        parts = [f"({self.series(i)!r})*{names[i]}" for i in range(3) if self.coords[i].any()]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> list:
        return [self.series(i).to_json() for i in range(3)]

    @classmethod
    def from_json(cls, alg: CubicAlgebra, obj) -> "AlgebraElement":
        if not isinstance(obj, list) or len(obj) != 3:
            raise ConfigError("element document must be a list of 3 series arrays")
        return alg.element(obj)


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def trace_of(x: AlgebraElement) -> TruncatedSeries:
    return x.trace()


def multival(x: AlgebraElement) -> tuple:
    return x.multival()


def is_unit_elem(x: AlgebraElement) -> bool:
    return x.is_unit()
