"""Ring configuration: the modulus p and working precision N of F_p[t]/(t^N)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingConfig:
    """Parameters of the coefficient ring D_N = F_p[t]/(t^N).

    p must be a prime >= 5: in characteristic 2 and 3 the ramified quadratic and
    cubic extensions (uniformizer^e = t) are inseparable and the trace pairing
    used for dual lattices degenerates.
    """

    p: int
    prec: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ConfigError(f"p = {self.p} is not prime")
        if self.p < 5:
            raise ConfigError(f"p = {self.p} < 5: trace pairing degenerates")
        if self.prec < 1:
            raise ConfigError(f"prec = {self.prec} < 1")

    def guard_for_conductor(self, m: int) -> int:
        """Guard value for enumerations at conductor exponent m.

        Requires prec >= 2m+2 so that every module handled between t^(m+1)A and A
        is represented faithfully; truncation artifacts then fail loudly instead
        of silently.
        """
        if self.prec < 2 * m + 2:
            raise ConfigError(
                f"prec = {self.prec} too small for conductor exponent {m}: "
                f"need at least {2 * m + 2}"
            )
        return self.prec - (2 * m + 1)

    def to_json(self) -> dict:
        return {"p": self.p, "prec": self.prec}

    @classmethod
    def from_json(cls, obj: dict) -> "RingConfig":
        try:
            return cls(int(obj["p"]), int(obj["prec"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad RingConfig document: {obj!r}") from exc
