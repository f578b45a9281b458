"""Seeded Monte Carlo simulation of the absorbing walks.

Trial ``i`` owns a SplitMix64 stream whose state is
``mix64(seed ^ mix64(i))``; its ``k``-th uniform is
``mix64(state + (k+1)*GAMMA) >> 11`` scaled by ``2**-53``. Every draw is a pure
function of ``(seed, i, k)``, so the result does not depend on how trials are
split across workers or in what order the chunks finish.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import RangeError, SimulationError
from ..params import WalkParams
from .dp import ModelTag

STEP_CAP = 10_000_000
GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MAX_SEED = 2**64


_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)


def mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer on a ``uint64`` array (wrapping arithmetic)."""
    x = np.array(x, dtype=np.uint64)
    _mix64_inplace(x, np.empty_like(x))
    return x


def _mix64_inplace(x: np.ndarray, tmp: np.ndarray) -> None:
    np.right_shift(x, _S30, out=tmp)
    x ^= tmp
    x *= _M1
    np.right_shift(x, _S27, out=tmp)
    x ^= tmp
    x *= _M2
    np.right_shift(x, _S31, out=tmp)
    x ^= tmp


def _weyl(step: int) -> np.uint64:
    return np.uint64(((step + 1) * int(GAMMA)) % _MAX_SEED)


def trial_keys(seed: int, trials: np.ndarray) -> np.ndarray:
    return mix64(np.uint64(seed) ^ mix64(trials.astype(np.uint64)))


def uniforms(keys: np.ndarray, step: int) -> np.ndarray:
    """The ``step``-th uniform in ``[0, 1)`` of each stream."""
    bits = keys + _weyl(step)
    _mix64_inplace(bits, np.empty_like(bits))
    return (bits >> _S11).astype(np.float64) * 2.0**-53


def _threshold(t: float) -> np.uint64:
    # u < t  <=>  (bits >> 11) < ceil(t * 2**53), exactly
    return np.uint64(math.ceil(t * 2.0**53))


@dataclass(frozen=True)
class SimResult:
    model: ModelTag
    trials: int
    seed: int
    absorption_counts: dict[tuple[int, int], int]
    mean_position: float
    mean_layer: float

    def layer_count(self, m: int) -> int:
        return sum(c for (_, layer), c in self.absorption_counts.items() if layer == m)

    def layer_fraction(self, m: int) -> float:
        return self.layer_count(m) / self.trials

    def position_variance(self) -> float:
        """Unbiased sample variance of the absorption site."""
        if self.trials < 2:
            return 0.0
        sq = sum(c * n * n for (n, _), c in self.absorption_counts.items())
        mean = self.mean_position
        return (sq - self.trials * mean * mean) / (self.trials - 1)

    def mean_position_stderr(self) -> float:
        return math.sqrt(self.position_variance() / self.trials)


def _run_chunk(model: ModelTag, params: WalkParams, seed: int, start: int, stop: int):
    ids = np.arange(start, stop, dtype=np.int64)
    keys = trial_keys(seed, ids)
    pos = np.zeros(ids.size, dtype=np.int64)
    lev = np.zeros(ids.size, dtype=np.int64)
    final_pos = np.empty(ids.size, dtype=np.int64)
    final_lev = np.empty(ids.size, dtype=np.int64)
    slot = np.arange(ids.size)

    # category 0 forward, 1 backward, 2 jump, 3 absorb
    cuts = [_threshold(params.p), _threshold(params.p + params.q), _threshold(params.p + params.q + params.r)]
    shift = np.array([1, -1, 0, 0], dtype=np.int64)
    climb = np.array([0, 0, 1, 0], dtype=np.int64)
    two_level = model is ModelTag.TWO_LEVEL
    step = 0
    while slot.size:
        if step >= STEP_CAP:
            raise SimulationError(
                f"{slot.size} trial(s) still alive after {STEP_CAP} steps "
                f"(seed={seed}, first trial={ids[slot[0]]})"
            )
        bits = keys + _weyl(step)
        tmp = np.empty_like(bits)
        _mix64_inplace(bits, tmp)
        bits >>= _S11
        cat = (bits >= cuts[0]).view(np.int8)
        cat = cat + (bits >= cuts[1]).view(np.int8)
        cat += (bits >= cuts[2]).view(np.int8)
        pos += shift[cat]
        if two_level:
            lev ^= climb[cat]
        else:
            lev += climb[cat]
        dead = cat == 3
        if dead.any():
            final_pos[slot[dead]] = pos[dead]
            final_lev[slot[dead]] = lev[dead]
            alive = ~dead
            slot, keys, pos, lev = slot[alive], keys[alive], pos[alive], lev[alive]
        step += 1
    return start, final_pos, final_lev


def mc_simulate(
    model: ModelTag | str,
    params: WalkParams,
    trials: int,
    seed: int,
    workers: int = 1,
    chunk_size: int = 250_000,
) -> SimResult:
    """Simulate ``trials`` walks and tally where each is absorbed."""
    model = ModelTag(model)
    if trials < 1:
        raise RangeError(f"trials={trials} must be at least 1")
    if not 0 <= seed < _MAX_SEED:
        raise RangeError(f"seed={seed} is not a 64-bit unsigned integer")
    if workers < 1:
        raise RangeError(f"workers={workers} must be at least 1")

    bounds = [(a, min(a + chunk_size, trials)) for a in range(0, trials, chunk_size)]
    final_pos = np.empty(trials, dtype=np.int64)
    final_lev = np.empty(trials, dtype=np.int64)
    if workers == 1:
        parts = [_run_chunk(model, params, seed, a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: _run_chunk(model, params, seed, *ab), bounds))
    for start, fp, fl in parts:
        final_pos[start:start + fp.size] = fp
        final_lev[start:start + fl.size] = fl

    # |n| and m are bounded by the step count, far below 2**31
    packed, counts = np.unique(final_lev * 2**32 + (final_pos + 2**31), return_counts=True)
    table = {
        (int(k % 2**32) - 2**31, int(k // 2**32)): int(c) for k, c in zip(packed.tolist(), counts.tolist())
    }
    return SimResult(
        model=model,
        trials=trials,
        seed=seed,
        absorption_counts=table,
        mean_position=int(final_pos.sum()) / trials,
        mean_layer=int(final_lev.sum()) / trials,
    )
