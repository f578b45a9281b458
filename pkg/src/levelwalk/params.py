"""Step probabilities and the characteristic roots shared by every closed form.

All quantities are double precision. Each quadratic ``q*x**2 - c*x + p = 0``
is solved with the small root taken as ``2p / (c + sqrt(c**2 - 4pq))`` so
that nothing cancels when ``p*q`` is small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RangeError, SumError

SUM_TOLERANCE = 1e-9
_STRICT_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class WalkParams:
    """Forward ``p``, backward ``q``, level-jump ``r`` and absorption ``s`` probabilities."""

    p: float
    q: float
    r: float
    s: float

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise RangeError(f"{name}={value!r} is not finite")
            if not 0.0 < value < 1.0:
                raise RangeError(f"{name}={value!r} must lie strictly between 0 and 1")
        total = self.p + self.q + self.r + self.s
        if abs(total - 1.0) > _STRICT_SUM_TOLERANCE:
            raise SumError(f"p+q+r+s = {total!r}, expected 1")

    def swapped(self) -> "WalkParams":
        """The reflected walk: forward and backward probabilities interchanged."""
        return WalkParams(self.q, self.p, self.r, self.s)

    @property
    def drift(self) -> float:
        return self.p - self.q

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r, "s": self.s}


def validate(p_raw: float, q_raw: float, r_raw: float, s_raw: float) -> WalkParams:
    """Check raw step probabilities and return normalized :class:`WalkParams`.

    A raw sum within ``1e-9`` of one is accepted and ``s`` is recomputed as
    ``1 - p - q - r``; anything further off raises :class:`SumError`.
    """
    raw = {"p": p_raw, "q": q_raw, "r": r_raw, "s": s_raw}
    for name, value in raw.items():
        value = float(value)
        if not math.isfinite(value):
            raise RangeError(f"{name}={value!r} is not finite")
        if not 0.0 < value < 1.0:
            raise RangeError(f"{name}={value!r} must lie strictly between 0 and 1")
    p, q, r, s = (float(v) for v in raw.values())
    total = p + q + r + s
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise SumError(f"p+q+r+s = {total!r} deviates from 1 by more than {SUM_TOLERANCE}")
    s = 1.0 - p - q - r
    if s <= 0.0:
        raise RangeError(f"s={s!r} after normalization is not positive")
    return WalkParams(p, q, r, s)


def quadratic_roots(p: float, q: float, c: float) -> tuple[float, float, float]:
    """Roots of ``q*x**2 - c*x + p = 0`` as ``(large, small, 1/sqrt(discriminant))``."""
    disc = c * c - 4.0 * p * q
    if disc <= 0.0:
        raise RangeError(f"discriminant {disc!r} is not positive")
    root = math.sqrt(disc)
    large = (c + root) / (2.0 * q)
    small = 2.0 * p / (c + root)
    return large, small, 1.0 / root


@dataclass(frozen=True)
class SingleSpectrum:
    """Roots of ``q*xi**2 - xi + p = 0`` (``xi1 > 1 > xi2``) and ``zeta = (1-4pq)**-0.5``."""

    xi1: float
    xi2: float
    zeta: float


@dataclass(frozen=True)
class TwoLevelSpectrum:
    """Roots for the two-level walk.

    ``mu1 > 1 > mu2`` solve ``q*mu**2 - (1+r)*mu + p = 0`` and
    ``mu3 > 1 > mu4`` solve ``q*mu**2 - (1-r)*mu + p = 0``. The amplitudes are
    the inverse square roots of the two discriminants.
    """

    mu1: float
    mu2: float
    mu3: float
    mu4: float
    zeta1: float
    zeta2: float

    @property
    def annulus(self) -> tuple[float, float]:
        """Open interval of ``u`` on which F(u) and G(u) converge."""
        return max(self.mu2, self.mu4), min(self.mu1, self.mu3)


def single_spectrum(params: WalkParams) -> SingleSpectrum:
    xi1, xi2, zeta = quadratic_roots(params.p, params.q, 1.0)
    return SingleSpectrum(xi1, xi2, zeta)


def two_level_spectrum(params: WalkParams) -> TwoLevelSpectrum:
    mu1, mu2, zeta1 = quadratic_roots(params.p, params.q, 1.0 + params.r)
    mu3, mu4, zeta2 = quadratic_roots(params.p, params.q, 1.0 - params.r)
    return TwoLevelSpectrum(mu1, mu2, mu3, mu4, zeta1, zeta2)
