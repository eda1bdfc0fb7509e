"""Exact arithmetic in D_N = F_p[t]/(t^N), the truncation of F_p[[t]].

TruncatedSeries values are immutable; the zero series reports valuation None
("at least N") rather than a fake finite value, so precision problems surface
instead of hiding.
"""

from __future__ import annotations

import numpy as np

from .backend import K
from .config import RingConfig
from .errors import ConfigError, NonUnitError


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class TruncatedSeries:
    """Element of F_p[t]/(t^N); coefficient of t^i at index i."""

    __slots__ = ("cfg", "coeffs", "_hash")

    def __init__(self, cfg: RingConfig, coeffs) -> None:
        arr = np.asarray(coeffs, dtype=np.int64)
        if arr.shape != (cfg.prec,):
            raise ConfigError(
                f"coefficient vector has length {arr.shape}, expected {cfg.prec}"
            )
        self.cfg = cfg
        self.coeffs = _freeze(arr % cfg.p)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_list(cls, cfg: RingConfig, coeffs) -> "TruncatedSeries":
        arr = np.zeros(cfg.prec, dtype=np.int64)
        vals = list(coeffs)
        if len(vals) > cfg.prec:
            raise ConfigError(f"{len(vals)} coefficients exceed precision {cfg.prec}")
        arr[: len(vals)] = vals
        return cls(cfg, arr)

    @classmethod
    def constant(cls, cfg: RingConfig, c: int) -> "TruncatedSeries":
        arr = np.zeros(cfg.prec, dtype=np.int64)
        arr[0] = c % cfg.p
        return cls(cfg, arr)

    @classmethod
    def zero(cls, cfg: RingConfig) -> "TruncatedSeries":
        return cls(cfg, np.zeros(cfg.prec, dtype=np.int64))

    @classmethod
    def one(cls, cfg: RingConfig) -> "TruncatedSeries":
        return cls.constant(cfg, 1)

    @classmethod
    def t_power(cls, cfg: RingConfig, k: int) -> "TruncatedSeries":
        arr = np.zeros(cfg.prec, dtype=np.int64)
        if not 0 <= k:
            raise ConfigError(f"negative t-power {k}")
        if k < cfg.prec:
            arr[k] = 1
        return cls(cfg, arr)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "TruncatedSeries") -> None:
        if self.cfg != other.cfg:
            raise ConfigError("operands built over different ring configurations")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.cfg, (self.coeffs + other.coeffs) % self.cfg.p)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.cfg, (self.coeffs - other.coeffs) % self.cfg.p)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.cfg, (-self.coeffs) % self.cfg.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.cfg, (self.coeffs * (other % self.cfg.p)) % self.cfg.p)
        self._check(other)
        return TruncatedSeries(self.cfg, K.poly_mul(self.coeffs, other.coeffs, self.cfg.p))

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] == 0:
            raise NonUnitError("series has zero constant term")
        return TruncatedSeries(self.cfg, K.poly_inv(self.coeffs, self.cfg.p))

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k (k >= 0)."""
        return TruncatedSeries(self.cfg, K.poly_shift(self.coeffs, k))

    def shift_right(self, k: int) -> "TruncatedSeries":
        """Exact division by t^k; caller guarantees valuation >= k."""
        return TruncatedSeries(self.cfg, K.poly_shift_right(self.coeffs, k))

    def truncate(self, k: int) -> "TruncatedSeries":
        """Reduce modulo t^k."""
        arr = self.coeffs.copy()
        arr[k:] = 0
        return TruncatedSeries(self.cfg, arr)

    # -- queries -------------------------------------------------------------

    def valuation(self):
        """t-valuation, or None when the series is zero at working precision."""
        v = K.poly_val(self.coeffs)
        return None if v >= self.cfg.prec else int(v)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cfg == other.cfg and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cfg, self.coeffs.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(int(c)))
                elif i == 1:
                    terms.append(f"{int(c)}*t" if c != 1 else "t")
                else:
                    terms.append(f"{int(c)}*t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"<{body} (mod t^{self.cfg.prec}, p={self.cfg.p})>"

    def to_json(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, cfg: RingConfig, obj) -> "TruncatedSeries":
        if not isinstance(obj, list):
            raise ConfigError(f"series document must be a list, got {type(obj)}")
        return cls.from_list(cfg, obj)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_inv(a: TruncatedSeries) -> TruncatedSeries:
    return a.inverse()


def series_val(a: TruncatedSeries):
    return a.valuation()
