"""Named ring families: A_m, J_m and the shifted two-generator rings t^k C + D.

Every order between some t^m A + D and A is one of:

  A_k                     = t^k A + D
  1r:  t^k C_rho(alpha) + D,  alpha = tau + a tau^2 (rho = 2r) or
                              alpha = tau^2 + a t tau (rho = 2r+1), a mod t^r
  1u:  t^k C_r(alpha) + D,    alpha = theta + a theta^2 (a mod t^r) or
                              alpha = theta^2 + a theta (val a >= 1, a mod t^r)
  2r:  t^k C_{l,q}(a tau) + D (a a unit mod t^l; l = 0 gives D + t^k e D + t^(k+q) A)
       t^k C_r(tau + a tau^2) + D, a mod t^r
  2u:  t^k C_{l,q}(a theta) + D (a a unit mod t^l; l = 0 decomposable), and at
       q = 0 the theta-led boundary stratum with generator theta + t d e1,
       d mod t^(l-1)
  3:   t^k C_{l,q}(e_i + t^q a e_j) + D over ordered idempotent pairs.  One
       ring has several presentations: at q = 0 all six pairs occur (related by
       the anharmonic maps) and the (e1, e2) one is canonical, with a a unit,
       a != 1 mod t; at q >= 1 the two pairs sharing a leading idempotent
       coincide and the smaller secondary index is canonical

The extra strata beyond the single generic parameter shape are required for the
enumeration to be complete; the brute-force oracle in overrings.py checks that.

A descriptor is canonical: its parameter tuple is the unique reduced
representative, so descriptor equality is value equality and
recognize(make_family(d)) == d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgebraElement, BranchCase, CubicAlgebra
from .config import RingConfig
from .errors import ClassificationFailureError, ConfigError, UsageError
from .lattice import Lattice, full_lattice, lattice_from_generators
from .series import TruncatedSeries

_THETA, _THETA2, _IDEM = "theta", "theta2", "idem"


@dataclass(frozen=True)
class FamilyDescriptor:
    case: BranchCase
    kind: str  # "Am" | "Jm" | "C"
    k: int = 0
    m: int = 0
    rho: int | None = None
    r: int | None = None
    l: int | None = None
    q: int | None = None
    stratum: str | None = None
    pair: tuple[int, ...] | None = None
    a: tuple[int, ...] = ()

    def conductor(self) -> int:
        """Smallest m with t^m A inside the ring this descriptor builds."""
        if self.kind in ("Am", "Jm"):
            return self.m
        c = self.case
        if c is BranchCase.ONE_RAMIFIED:
            return self.k + self.rho
        if c is BranchCase.ONE_UNRAMIFIED:
            return self.k + 2 * self.r
        if c is BranchCase.TWO_RAMIFIED:
            if self.r is not None:
                return self.k + 2 * self.r + 1
            return self.k + 2 * self.l + self.q
        return self.k + 2 * self.l + self.q

    def is_shifted(self) -> bool:
        return self.kind == "C" and self.k > 0

    def sort_key(self) -> tuple:
        return (
            {"Am": 0, "Jm": 1, "C": 2}[self.kind],
            self.m,
            self.conductor(),
            self.k,
            -1 if self.rho is None else self.rho,
            -1 if self.r is None else self.r,
            -1 if self.l is None else self.l,
            -1 if self.q is None else self.q,
            self.stratum or "",
            self.pair or (),
            self.a,
        )

    def to_json(self) -> dict:
        doc: dict = {"case": self.case.value, "kind": self.kind}
        if self.kind in ("Am", "Jm"):
            doc["m"] = self.m
            return doc
        doc["k"] = self.k
        for key in ("rho", "r", "l", "q", "stratum"):
            v = getattr(self, key)
            if v is not None:
                doc[key] = v
        if self.pair is not None:
            doc["pair"] = [i + 1 for i in self.pair]  # 1-based outside
        doc["a"] = list(self.a)
        return doc

    @classmethod
    def from_json(cls, obj: dict, p: int | None = None) -> "FamilyDescriptor":
        try:
            case = BranchCase.from_token(obj["case"])
            kind = obj["kind"]
            if kind in ("Am", "Jm"):
                return cls(case=case, kind=kind, m=int(obj["m"]))
            pair = tuple(int(i) - 1 for i in obj["pair"]) if "pair" in obj else None
            pval = obj.get("p", p)
            if pval is None:
                raise UsageError("descriptor parameter needs p (in the document or passed)")
            return canonical_alpha(
                case,
                k=int(obj.get("k", 0)),
                rho=obj.get("rho"),
                r=obj.get("r"),
                l=obj.get("l"),
                q=obj.get("q"),
                stratum=obj.get("stratum"),
                pair=pair,
                raw_a=list(obj.get("a", [])),
                p=int(pval),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad family descriptor document: {exc}") from exc


def residue_count(desc: FamilyDescriptor) -> int:
    """Number of residue parameters that pin the ring down (length of a)."""
    if desc.kind in ("Am", "Jm"):
        return 0
    c = desc.case
    if c is BranchCase.ONE_RAMIFIED:
        return desc.rho // 2
    if c is BranchCase.ONE_UNRAMIFIED:
        return desc.r
    if c is BranchCase.TWO_RAMIFIED:
        if desc.r is not None:
            return desc.r
        return desc.l
    if c is BranchCase.TWO_UNRAMIFIED:
        if desc.stratum == _THETA:
            return max(desc.l - 1, 0)
        return desc.l
    return desc.l


def _reduce_tuple(raw, count: int, p: int) -> tuple[int, ...]:
    vals = list(raw)[:count]
    vals += [0] * (count - len(vals))
    return tuple(v % p for v in vals)


def _anharmonic_canonical(p: int, l: int, pair: tuple[int, int], a: tuple[int, ...]):
    """Move a q=0 three-branch presentation to the canonical (e1, e2) pair.

    Presentations of one ring form a single orbit under
    swap: (i, j, a) -> (j, i, 1/a) and
    rebase: (i, j, a) -> (i, k, a/(a-1)), k the third index;
    each ordered pair occurs exactly once in the orbit.
    """
    cfg = RingConfig(p, max(l, 1))
    one = TruncatedSeries.one(cfg)

    def to_series(t):
        return TruncatedSeries.from_list(cfg, list(t))

    def to_tuple(s):
        return tuple(int(c) for c in s.coeffs[:l])

    seen = set()
    frontier = [(pair, to_series(a))]
    while frontier:
        (i, j), av = frontier.pop()
        key = (i, j, to_tuple(av))
        if key in seen:
            continue
        seen.add(key)
        if (i, j) == (0, 1):
            return to_tuple(av)
        frontier.append(((j, i), av.inverse()))
        k = 3 - i - j
        frontier.append(((i, k), av * (av - one).inverse()))
    raise ClassificationFailureError("anharmonic orbit did not reach the (e1,e2) pair")


def canonical_alpha(
    case: BranchCase,
    k: int = 0,
    rho: int | None = None,
    r: int | None = None,
    l: int | None = None,
    q: int | None = None,
    stratum: str | None = None,
    pair: tuple[int, ...] | None = None,
    raw_a=(),
    p: int | None = None,
) -> FamilyDescriptor:
    """Reduce a raw parameter to its canonical descriptor.

    Two raw parameters congruent modulo the residue power of t give the same
    descriptor.  Invalid normalizations (non-unit where a unit is required,
    the excluded a = 1 mod t at q = 0 in the three-branch case) raise.
    """
    if isinstance(raw_a, TruncatedSeries):
        p = raw_a.cfg.p
        raw = [int(c) for c in raw_a.coeffs]
    else:
        raw = [int(c) for c in raw_a]
        if p is None:
            raise ConfigError("p required when raw_a is a plain list")
    if k < 0:
        raise UsageError("negative shift k")

    def unit_check(a, what):
        if not a or a[0] == 0:
            raise UsageError(f"{what} requires a unit parameter (nonzero constant term)")

    if case is BranchCase.ONE_RAMIFIED:
        if rho is None or rho < 0:
            raise UsageError("one-branch ramified family needs a subscript rho >= 0")
        if rho == 0:
            return FamilyDescriptor(case=case, kind="Am", m=k)
        a = _reduce_tuple(raw, rho // 2, p)
        return FamilyDescriptor(case=case, kind="C", k=k, rho=rho, a=a)

    if case is BranchCase.ONE_UNRAMIFIED:
        if r is None or r < 0:
            raise UsageError("one-branch unramified family needs a subscript r >= 0")
        if r == 0:
            return FamilyDescriptor(case=case, kind="Am", m=k)
        st = stratum or _THETA
        if st not in (_THETA, _THETA2):
            raise UsageError(f"unknown stratum {st!r}")
        a = _reduce_tuple(raw, r, p)
        if st == _THETA2 and a and a[0] != 0:
            # theta^2 + a theta with a a unit is theta-led after rescaling
            raise UsageError("theta^2-led stratum requires val(a) >= 1")
        return FamilyDescriptor(case=case, kind="C", k=k, r=r, stratum=st, a=a)

    if case is BranchCase.TWO_RAMIFIED:
        if r is not None:
            a = _reduce_tuple(raw, r, p)
            return FamilyDescriptor(case=case, kind="C", k=k, r=r, a=a)
        if l is None or q is None or l < 0 or q < 0:
            raise UsageError("two-branch ramified family needs (l, q) or r")
        if l == 0:
            if q == 0:
                return FamilyDescriptor(case=case, kind="Am", m=k)
            return FamilyDescriptor(case=case, kind="C", k=k, l=0, q=q, a=())
        a = _reduce_tuple(raw, l, p)
        unit_check(a, "C_{l,q}")
        return FamilyDescriptor(case=case, kind="C", k=k, l=l, q=q, a=a)

    if case is BranchCase.TWO_UNRAMIFIED:
        if l is None or q is None or l < 0 or q < 0:
            raise UsageError("two-branch unramified family needs (l, q)")
        if l == 0:
            if q == 0:
                return FamilyDescriptor(case=case, kind="Am", m=k)
            return FamilyDescriptor(case=case, kind="C", k=k, l=0, q=q, a=())
        st = stratum or _IDEM
        if st == _THETA:
            if q != 0:
                raise UsageError("theta-led stratum exists only at q = 0")
            a = _reduce_tuple(raw, l - 1, p)
            return FamilyDescriptor(case=case, kind="C", k=k, l=l, q=0, stratum=st, a=a)
        if st != _IDEM:
            raise UsageError(f"unknown stratum {st!r}")
        a = _reduce_tuple(raw, l, p)
        unit_check(a, "C_{l,q}")
        return FamilyDescriptor(case=case, kind="C", k=k, l=l, q=q, stratum=st, a=a)

    # three branches
    if l is None or q is None or l < 0 or q < 0:
        raise UsageError("three-branch family needs (l, q)")
    if l == 0:
        if q == 0:
            return FamilyDescriptor(case=case, kind="Am", m=k)
        if pair is None or len(pair) != 1:
            raise UsageError("decomposable three-branch ring needs pair = (i,)")
        if pair[0] not in (0, 1, 2):
            raise UsageError("idempotent index out of range")
        return FamilyDescriptor(case=case, kind="C", k=k, l=0, q=q, pair=(pair[0],), a=())
    if pair is None or len(pair) != 2 or pair[0] == pair[1]:
        raise UsageError("three-branch family needs an ordered pair of distinct idempotents")
    if not all(i in (0, 1, 2) for i in pair):
        raise UsageError("idempotent index out of range")
    a = _reduce_tuple(raw, l, p)
    unit_check(a, "C_{l,q}")
    if q == 0:
        if a[0] == 1:
            raise UsageError(
                "q = 0 requires a != 1 mod t: the module would degenerate to a "
                "shifted decomposable ring"
            )
        a = _anharmonic_canonical(p, l, (pair[0], pair[1]), a)
        pair = (0, 1)
    else:
        # (i, j, a) and (i, k, -a/(1 - t^q a)) present the same ring; keep the
        # smaller secondary index
        i, j = pair
        kk = 3 - i - j
        if kk < j:
            cfg = RingConfig(p, max(l, 1))
            av = TruncatedSeries.from_list(cfg, list(a))
            tqa = av.shift(q) if q < l else TruncatedSeries.zero(cfg)
            av = -av * (TruncatedSeries.one(cfg) - tqa).inverse()
            a = tuple(int(c) for c in av.coeffs[:l])
            pair = (i, kk)
    return FamilyDescriptor(case=case, kind="C", k=k, l=l, q=q, pair=tuple(pair), a=a)


# -- constructors ----------------------------------------------------------------


def make_Am(alg: CubicAlgebra, m: int, guard: int | None = None) -> Lattice:
    """t^m A + D in canonical form."""
    if m < 0:
        raise UsageError("m must be >= 0")
    g = alg.cfg.guard_for_conductor(m) if guard is None else guard
    gens = [alg.one] + [alg.basis_el(i).shift(m) for i in range(3)]
    return lattice_from_generators(alg, gens, g)


def make_Jm(alg: CubicAlgebra, m: int, guard: int | None = None) -> Lattice:
    """t A_{m-1}, the radical of A_m (m >= 1)."""
    if m < 1:
        raise UsageError("J_m needs m >= 1")
    g = alg.cfg.guard_for_conductor(m) if guard is None else guard
    gens = [alg.one.shift(1)] + [alg.basis_el(i).shift(m) for i in range(3)]
    return lattice_from_generators(alg, gens, g)


def _a_series(alg: CubicAlgebra, a: tuple[int, ...]) -> TruncatedSeries:
    return TruncatedSeries.from_list(alg.cfg, list(a))


def middle_generator(alg: CubicAlgebra, desc: FamilyDescriptor, shifted: bool = True) -> AlgebraElement:
    """The distinguished second generator; shifted=False drops the t^k factor
    (the form the dual formulas use)."""
    if desc.kind != "C":
        raise UsageError("A_m and J_m have no distinguished generator")
    c = desc.case
    av = _a_series(alg, desc.a)
    if c is BranchCase.ONE_RAMIFIED:
        r = desc.rho // 2
        if desc.rho % 2 == 0:
            alpha = alg.basis_el(1) + alg.basis_el(2) * av
        else:
            alpha = alg.basis_el(2) + alg.basis_el(1).shift(1) * av
        gen = alpha.shift(r)
    elif c is BranchCase.ONE_UNRAMIFIED:
        if desc.stratum == _THETA:
            alpha = alg.basis_el(1) + alg.basis_el(2) * av
        else:
            alpha = alg.basis_el(2) + alg.basis_el(1) * av
        gen = alpha.shift(desc.r)
    elif c is BranchCase.TWO_RAMIFIED:
        if desc.r is not None:
            # alpha = tau + a tau^2, and tau^2 = t e lives in row 0
            alpha = alg.basis_el(1) + alg.basis_el(0).shift(1) * av
            gen = alpha.shift(desc.r)
        elif desc.l == 0:
            gen = alg.basis_el(0)
        else:
            alpha = alg.basis_el(0) + (alg.basis_el(1) * av).shift(desc.q)
            gen = alpha.shift(desc.l)
    elif c is BranchCase.TWO_UNRAMIFIED:
        if desc.l == 0:
            gen = alg.basis_el(0)
        elif desc.stratum == _THETA:
            gen = (alg.basis_el(1) + (alg.basis_el(0) * av).shift(1)).shift(desc.l)
        else:
            gen = (alg.basis_el(0) + (alg.basis_el(1) * av).shift(desc.q)).shift(desc.l)
    else:
        if desc.l == 0:
            gen = alg.basis_el(desc.pair[0])
        else:
            i, j = desc.pair
            gen = (alg.basis_el(i) + (alg.basis_el(j) * av).shift(desc.q)).shift(desc.l)
    if shifted:
        gen = gen.shift(desc.k)
    return gen


def make_family(alg: CubicAlgebra, desc: FamilyDescriptor, guard: int | None = None) -> Lattice:
    """Canonical lattice of the ring the descriptor names; always an order."""
    if desc.case is not alg.case:
        raise ConfigError(f"descriptor case {desc.case.value} != algebra case {alg.case.value}")
    if desc.kind == "Am":
        return make_Am(alg, desc.m, guard)
    if desc.kind == "Jm":
        return make_Jm(alg, desc.m, guard)
    cond = desc.conductor()
    g = alg.cfg.guard_for_conductor(cond) if guard is None else guard
    gens = [alg.one, middle_generator(alg, desc)]
    gens += [alg.basis_el(i).shift(cond) for i in range(3)]
    lat = lattice_from_generators(alg, gens, g)
    if not lat.is_order():
        raise ClassificationFailureError(f"constructed module is not a ring: {desc}")
    return lat


# -- enumeration of all descriptors up to a conductor bound -----------------------


def _unit_tuples(p: int, length: int, exclude_one: bool = False):
    if length == 0:
        yield ()
        return
    first = [c for c in range(1, p) if not (exclude_one and c == 1)]
    for c0 in first:
        for rest in itertools.product(range(p), repeat=length - 1):
            yield (c0, *rest)


def _all_tuples(p: int, length: int, val_positive: bool = False):
    if length == 0:
        yield ()
        return
    firsts = [0] if val_positive else list(range(p))
    for c0 in firsts:
        for rest in itertools.product(range(p), repeat=length - 1):
            yield (c0, *rest)


def enumerate_family_descriptors(alg: CubicAlgebra, m: int) -> list[FamilyDescriptor]:
    """All canonical descriptors of over-rings of A_m (conductor <= m), sorted.

    The bound is the conductor bound per family; for the two-branch ramified
    C_r family that is k + 2r + 1 <= m.
    """
    p = alg.cfg.p
    case = alg.case
    out: list[FamilyDescriptor] = [
        FamilyDescriptor(case=case, kind="Am", m=k) for k in range(m + 1)
    ]
    if case is BranchCase.ONE_RAMIFIED:
        for rho in range(1, m + 1):
            for k in range(m - rho + 1):
                for a in _all_tuples(p, rho // 2):
                    out.append(FamilyDescriptor(case=case, kind="C", k=k, rho=rho, a=a))
    elif case is BranchCase.ONE_UNRAMIFIED:
        for r in range(1, m // 2 + 1):
            for k in range(m - 2 * r + 1):
                for a in _all_tuples(p, r):
                    out.append(
                        FamilyDescriptor(case=case, kind="C", k=k, r=r, stratum=_THETA, a=a)
                    )
                for a in _all_tuples(p, r, val_positive=True):
                    out.append(
                        FamilyDescriptor(case=case, kind="C", k=k, r=r, stratum=_THETA2, a=a)
                    )
    elif case is BranchCase.TWO_RAMIFIED:
        for l in range(1, m // 2 + 1):
            for q in range(m - 2 * l + 1):
                for k in range(m - 2 * l - q + 1):
                    for a in _unit_tuples(p, l):
                        out.append(
                            FamilyDescriptor(case=case, kind="C", k=k, l=l, q=q, a=a)
                        )
        for q in range(1, m + 1):
            for k in range(m - q + 1):
                out.append(FamilyDescriptor(case=case, kind="C", k=k, l=0, q=q, a=()))
        for r in range((m - 1) // 2 + 1):
            for k in range(m - 2 * r):
                for a in _all_tuples(p, r):
                    out.append(FamilyDescriptor(case=case, kind="C", k=k, r=r, a=a))
    elif case is BranchCase.TWO_UNRAMIFIED:
        for l in range(1, m // 2 + 1):
            for q in range(m - 2 * l + 1):
                for k in range(m - 2 * l - q + 1):
                    for a in _unit_tuples(p, l):
                        out.append(
                            FamilyDescriptor(
                                case=case, kind="C", k=k, l=l, q=q, stratum=_IDEM, a=a
                            )
                        )
            for k in range(m - 2 * l + 1):
                for a in _all_tuples(p, l - 1):
                    out.append(
                        FamilyDescriptor(case=case, kind="C", k=k, l=l, q=0, stratum=_THETA, a=a)
                    )
        for q in range(1, m + 1):
            for k in range(m - q + 1):
                out.append(FamilyDescriptor(case=case, kind="C", k=k, l=0, q=q, a=()))
    else:
        for l in range(1, m // 2 + 1):
            for k in range(m - 2 * l + 1):
                for a in _unit_tuples(p, l, exclude_one=True):
                    out.append(
                        FamilyDescriptor(case=case, kind="C", k=k, l=l, q=0, pair=(0, 1), a=a)
                    )
            for q in range(1, m - 2 * l + 1):
                for k in range(m - 2 * l - q + 1):
                    for pair in ((0, 1), (1, 0), (2, 0)):
                        for a in _unit_tuples(p, l):
                            out.append(
                                FamilyDescriptor(
                                    case=case, kind="C", k=k, l=l, q=q, pair=pair, a=a
                                )
                            )
        for q in range(1, m + 1):
            for k in range(m - q + 1):
                for i in range(3):
                    out.append(
                        FamilyDescriptor(case=case, kind="C", k=k, l=0, q=q, pair=(i,), a=())
                    )
    out.sort(key=FamilyDescriptor.sort_key)
    return out


# -- recognition --------------------------------------------------------------------

_RECOGNITION_CACHE: dict = {}


def recognition_table(alg: CubicAlgebra, m: int) -> dict[bytes, FamilyDescriptor]:
    key = (alg.key(), m)
    table = _RECOGNITION_CACHE.get(key)
    if table is None:
        table = {}
        for desc in enumerate_family_descriptors(alg, m):
            lat = make_family(alg, desc)
            prev = table.get(lat.key())
            if prev is not None and prev != desc:
                raise ClassificationFailureError(
                    f"descriptor collision: {prev} and {desc} build the same lattice"
                )
            table[lat.key()] = desc
        _RECOGNITION_CACHE[key] = table
    return table


def recognize(m_lat: Lattice) -> FamilyDescriptor:
    """Descriptor whose make_family reproduces the given order exactly.

    Raises ClassificationFailureError when no descriptor matches: that means a
    precision problem or a counterexample to the classification, and is never
    silently absorbed.
    """
    if not m_lat.is_order():
        raise UsageError("recognition is defined for orders only")
    w = m_lat.conductor_exponent()
    table = recognition_table(m_lat.alg, w)
    desc = table.get(m_lat.key())
    if desc is None:
        raise ClassificationFailureError(
            f"order with conductor exponent {w} matches no family descriptor"
        )
    return desc
