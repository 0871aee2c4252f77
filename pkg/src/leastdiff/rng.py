"""Deterministic substream derivation for parallel Monte Carlo work.

A master seed plus a path of labels and indices maps to an independent
numpy Generator. The mapping is a pure function of its arguments, so any
worker process can recreate any stream without coordination, and results
never depend on scheduling or worker count.

String path parts are hashed with BLAKE2b (8-byte digest) rather than
Python's built-in hash, which is salted per interpreter and would break
reproducibility across runs.
"""
from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["substream", "child_seed", "seed_sequence"]

_MASK64 = (1 << 64) - 1


def _key_word(part: int | str) -> int:
    if isinstance(part, str):
        digest = hashlib.blake2b(part.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "big")
    return int(part) & _MASK64


def seed_sequence(seed: int, *path: int | str) -> np.random.SeedSequence:
    """SeedSequence for a master seed and a path of labels/indices."""
    key = tuple(_key_word(part) for part in path)
    return np.random.SeedSequence(int(seed) & _MASK64, spawn_key=key)


def substream(seed: int, *path: int | str) -> np.random.Generator:
    """Independent generator for (seed, *path); same inputs, same stream."""
    return np.random.default_rng(seed_sequence(seed, *path))


def child_seed(seed: int, *path: int | str) -> int:
    """A 64-bit integer seed derived from (seed, *path).

    Use this to hand a nested component its own master seed, letting it
    derive further substreams of its own.
    """
    state = seed_sequence(seed, *path).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 32) | int(state[1])
