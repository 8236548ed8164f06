"""Vectorized trial batches and the reproducible parallel RNG layout.

Randomness contract: trial i is row (i mod CHUNK_TRIALS) of canonical chunk
(i div CHUNK_TRIALS), and chunk c of a run with master seed s is the Philox
stream keyed by the two 64-bit words (s, c).  Each row holds the trial's 2n
uniforms: arrival times first, then weights -- exactly the draw order of
simulate.sample_trial.  Chunk boundaries are fixed constants, so every
reported number is a pure function of (poset, parameters, master seed) and
workers only decide who computes which chunk, never what comes out.

The tag-matrix computation mirrors simulate.tag_sequence: for each arrival
prefix, scan elements in increasing weight order and jump whenever the next
element lies strictly above the current one.  All prefixes advance in
lockstep, one weight position per step, so the whole batch costs n vector
passes.  Equivalence with the per-trial reference is pinned by tests.
"""

from __future__ import annotations

import numpy as np

from .posets import Poset
from .simulate import Trial

__all__ = [
    "CHUNK_TRIALS",
    "chunk_layout",
    "chunk_uniforms",
    "trial_for_index",
    "batch_tag_matrix",
    "batch_accept",
    "batch_last_tag_time",
    "batch_greedy_maximum",
]

# Canonical batch size. Fixed: changing it would change which trial sees
# which uniforms, so it is a constant of the format, not a tuning knob.
CHUNK_TRIALS = 1 << 15

_MASK64 = (1 << 64) - 1


def _philox(master_seed: int, chunk_index: int) -> np.random.Generator:
    if not 0 <= master_seed <= _MASK64:
        raise ValueError(f"master seed must fit in 64 bits, got {master_seed}")
    key = np.array([master_seed, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def chunk_layout(trials: int) -> list[tuple[int, int]]:
    """(chunk_index, rows) pairs covering the first `trials` trials."""
    out = []
    full, rest = divmod(trials, CHUNK_TRIALS)
    for c in range(full):
        out.append((c, CHUNK_TRIALS))
    if rest:
        out.append((full, rest))
    return out


def chunk_uniforms(
    n: int, master_seed: int, chunk_index: int, rows: int
) -> tuple[np.ndarray, np.ndarray]:
    """Arrival times and weights for `rows` trials of one canonical chunk.

    Row-major generation means row i never depends on how many rows were
    requested, so partial chunks agree with full ones.
    """
    mat = _philox(master_seed, chunk_index).random((rows, 2 * n))
    return mat[:, :n], mat[:, n:]


def trial_for_index(n: int, master_seed: int, trial_index: int) -> Trial:
    """The exact Trial the batched harness uses for one trial index."""
    if trial_index < 0:
        raise ValueError("trial_index must be nonnegative")
    chunk, row = divmod(trial_index, CHUNK_TRIALS)
    times, weights = chunk_uniforms(n, master_seed, chunk, row + 1)
    return Trial(times[row], weights[row])


def _stable_argsort(a: np.ndarray) -> np.ndarray:
    # ties broken by index, matching the per-trial lexsort
    return np.argsort(a, axis=1, kind="stable")


def batch_tag_matrix(
    p: Poset, times: np.ndarray, weights: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arrival order, sorted times, and the (trials, n) tag-flag matrix.

    tagged[b, k] is True iff the (k+1)-th arrival of trial b is the greedy
    maximum of the order induced on the first k+1 arrivals.
    """
    n = p.n
    B = times.shape[0]
    aorder = _stable_argsort(times)
    worder = _stable_argsort(weights)
    pos = np.empty_like(aorder)
    np.put_along_axis(pos, aorder, np.broadcast_to(np.arange(n), (B, n)), axis=1)
    # arrival position of the w-th lightest element, per trial
    wpos = np.take_along_axis(pos, worder, axis=1)

    lt_pad = np.vstack([p.lt, np.zeros((1, n), dtype=bool)])  # row n: sentinel
    prefix = np.arange(n)
    z = np.full((B, n), n, dtype=np.intp)  # column j tracks the prefix of j+1 arrivals
    for w in range(n):
        e = worder[:, w]
        arrived = wpos[:, w][:, None] <= prefix[None, :]
        step = arrived & ((z == n) | lt_pad[z, e[:, None]])
        z = np.where(step, e[:, None], z)

    tagged = z == aorder
    tsorted = np.take_along_axis(times, aorder, axis=1)
    return aorder, tsorted, tagged


def batch_accept(
    aorder: np.ndarray,
    tsorted: np.ndarray,
    tagged: np.ndarray,
    tau: float,
    is_maximal: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """First tagged arrival strictly after tau; (accepted or -1, success)."""
    ok = tagged & (tsorted > tau)
    has = ok.any(axis=1)
    first = ok.argmax(axis=1)
    element = np.take_along_axis(aorder, first[:, None], axis=1)[:, 0]
    accepted = np.where(has, element, -1)
    success = has & is_maximal[np.where(has, element, 0)]
    return accepted, success


def batch_last_tag_time(tsorted: np.ndarray, tagged: np.ndarray, t: float) -> np.ndarray:
    """Arrival time of the last tag strictly before t; NaN when no arrival.

    The first arrival is always tagged, so the value exists exactly when
    some element arrives before t.
    """
    m = tagged & (tsorted < t)
    has = m.any(axis=1)
    n = tsorted.shape[1]
    last = n - 1 - np.argmax(m[:, ::-1], axis=1)
    out = np.take_along_axis(tsorted, last[:, None], axis=1)[:, 0]
    out[~has] = np.nan
    return out


def batch_greedy_maximum(lt: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Greedy maximum of the full poset for a batch of weight vectors."""
    worder = _stable_argsort(weights)
    z = worder[:, 0]
    for w in range(1, lt.shape[0]):
        e = worder[:, w]
        z = np.where(lt[z, e], e, z)
    return z
