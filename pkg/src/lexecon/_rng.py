"""Seed derivation and per-repeat random streams.

All randomized stages follow the same contract: a stage derives its own
64-bit seed from the global seed plus a fixed stage label, and repeat ``r``
of any resampling loop draws from a stream keyed by ``(stage_seed, r)``.
Results are therefore independent of execution order, chunking and
parallel scheduling, and adding a stage never perturbs another stage's
stream.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, label: str) -> int:
    """Derive a stage seed from the global seed and a stage label."""
    key = (int(seed) & _MASK64).to_bytes(8, "little")
    digest = hashlib.blake2s(label.encode("utf-8"), key=key).digest()
    return int.from_bytes(digest[:8], "little")


def stream(seed: int, *branch: int) -> np.random.Generator:
    """Return the generator for stream ``(seed, *branch)``.

    ``stream(seed, r)`` is the stream of repeat ``r``; the same tuple always
    yields the same bit sequence.
    """
    entropy = [int(seed) & _MASK64] + [int(b) & _MASK64 for b in branch]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def repeat_uniforms(seed: int, n_repeats: int, n_per_repeat: int,
                    first_repeat: int = 0) -> np.ndarray:
    """Uniform variates for repeats ``first_repeat .. first_repeat+n_repeats-1``.

    Row ``i`` holds the first ``n_per_repeat`` uniforms of the stream
    ``(seed, first_repeat + i)``, so any chunking over repeats reproduces
    the same numbers.
    """
    out = np.empty((n_repeats, n_per_repeat), dtype=np.float64)
    for i in range(n_repeats):
        out[i] = stream(seed, first_repeat + i).random(n_per_repeat)
    return out
