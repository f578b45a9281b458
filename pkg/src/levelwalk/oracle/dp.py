"""Exact expected-visit tables by forward mass propagation on a finite lattice.

A unit mass starts at site 0 of level 0. Every step a fraction ``s`` of the
live mass is absorbed where it stands and the rest moves forward, backward
or across levels. Occupancy is accumulated at steps ``0..K``. Live mass after
``k`` steps is ``(1-s)**k``, so the visits never counted total
``(1-s)**(K+1) / s``. Mass moves at most one site and one level per step, so
a window of half-width ``K`` (and ``K`` levels) loses nothing to truncation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ..errors import RangeError, WindowError
from ..params import WalkParams


class ModelTag(str, enum.Enum):
    TWO_LEVEL = "two-level"
    MULTI_LEVEL = "multi-level"


@dataclass(frozen=True)
class LatticeWindow:
    n_min: int
    n_max: int
    m_max: int

    @property
    def width(self) -> int:
        return self.n_max - self.n_min + 1


@dataclass(frozen=True)
class VisitTable:
    """Accumulated visits, indexed ``values[m, n - n_min]``."""

    model: ModelTag
    window: LatticeWindow
    steps: int
    values: np.ndarray
    residual_bound: float
    moment_bound: float
    max_mass_defect: float

    def get(self, n: int, m: int) -> float:
        w = self.window
        if not (w.n_min <= n <= w.n_max and 0 <= m <= w.m_max):
            return 0.0
        return float(self.values[m, n - w.n_min])

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.window.n_min, self.window.n_max + 1)

    def layer_sum(self, m: int) -> float:
        return math.fsum(self.values[m])

    def layer_moment(self, m: int) -> float:
        """``sum_n n * visits(n, m)`` over the window."""
        return math.fsum(self.sites * self.values[m])

    def total(self) -> float:
        return math.fsum(self.values.ravel())

    def as_mapping(self) -> dict[tuple[int, int], float]:
        out = {}
        for m in range(self.window.m_max + 1):
            for n, value in zip(self.sites.tolist(), self.values[m].tolist()):
                if value > 0.0:
                    out[(n, m)] = value
        return out


def residual_bound(s: float, steps: int) -> float:
    """Visits not yet counted after ``steps`` steps."""
    return (1.0 - s) ** (steps + 1) / s


def moment_bound(s: float, steps: int) -> float:
    """Upper bound on ``sum |n|`` over the uncounted visits.

    A walk alive at step ``k`` sits at ``|n| <= k``, so the tail is at most
    ``sum_{k>K} k (1-s)**k``.
    """
    tail = (1.0 - s) ** (steps + 1)
    return tail * ((steps + 1) / s + (1.0 - s) / s**2)


def steps_for_residual(s: float, tol: float = 1e-10) -> int:
    """Smallest ``K`` with ``residual_bound(s, K) <= tol``."""
    k = max(0, math.ceil(math.log(tol * s) / math.log1p(-s)) - 1)
    while residual_bound(s, k) > tol:
        k += 1
    while k > 0 and residual_bound(s, k - 1) <= tol:
        k -= 1
    return k


def steps_for_moment(s: float, tol: float = 1e-10) -> int:
    """Smallest ``K`` with ``moment_bound(s, K) <= tol``."""
    k = steps_for_residual(s, tol)
    while moment_bound(s, k) > tol:
        k += 1
    return k


def default_window(model: ModelTag, steps: int) -> LatticeWindow:
    m_max = 1 if ModelTag(model) is ModelTag.TWO_LEVEL else steps
    return LatticeWindow(-steps, steps, m_max)


def _check_window(model: ModelTag, steps: int, window: LatticeWindow) -> None:
    if window.n_min > -steps or window.n_max < steps:
        raise WindowError(f"sites [{window.n_min}, {window.n_max}] cannot hold {steps} steps")
    if model is ModelTag.TWO_LEVEL:
        if window.m_max != 1:
            raise WindowError("two-level window must have m_max = 1")
    elif window.m_max < steps:
        raise WindowError(f"m_max={window.m_max} cannot hold {steps} steps")


def dp_expected_visits(
    model: ModelTag | str,
    params: WalkParams,
    steps: int | None = None,
    window: LatticeWindow | None = None,
) -> VisitTable:
    """Accumulate expected visits over ``steps`` steps of the killed walk.

    ``steps`` defaults to the smallest value putting the residual at or below
    ``1e-10``.
    """
    model = ModelTag(model)
    if steps is None:
        steps = steps_for_residual(params.s)
    if steps < 0:
        raise RangeError(f"steps={steps} must be non-negative")
    if window is None:
        window = default_window(model, steps)
    _check_window(model, steps, window)

    p, q, r, s = params.p, params.q, params.r, params.s
    origin = -window.n_min
    live = np.zeros((window.m_max + 1, window.width))
    live[0, origin] = 1.0
    visits = live.copy()
    absorbed = 0.0
    max_defect = 0.0

    for k in range(1, steps + 1):
        # mass occupies |n| < k and levels < k before this step
        lo, hi = origin - k, origin + k + 1
        top = min(k, window.m_max) + 1
        old = live[:top, lo + 1:hi - 1].copy()
        absorbed += s * float(old.sum())
        new = np.zeros((top, hi - lo))
        new[:, 2:] += p * old
        new[:, :-2] += q * old
        if model is ModelTag.TWO_LEVEL:
            new[0, 1:-1] += r * old[1]
            new[1, 1:-1] += r * old[0]
        else:
            new[1:, 1:-1] += r * old[:-1]
        live[:top, lo:hi] = new
        visits[:top, lo:hi] += new
        defect = abs(float(new.sum()) + absorbed - 1.0)
        max_defect = max(max_defect, defect)

    return VisitTable(
        model=model,
        window=window,
        steps=steps,
        values=visits,
        residual_bound=residual_bound(s, steps),
        moment_bound=moment_bound(s, steps),
        max_mass_defect=max_defect,
    )
