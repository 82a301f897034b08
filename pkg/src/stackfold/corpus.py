"""Seeded random sequences: one 64-bit seed, expanded per trial index."""
from __future__ import annotations

import numpy as np

from .core import ALPHABET, RnaSequence

_LETTERS = np.frombuffer(ALPHABET.encode(), dtype=np.uint8)


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def random_sequence(rng: np.random.Generator, length: int) -> RnaSequence:
    return RnaSequence(_LETTERS[rng.integers(0, 4, size=length)].tobytes().decode())


def trial_sequence(seed: int, index: int, lo: int, hi: int | None = None) -> RnaSequence:
    """Sequence for trial ``index``; its length is drawn uniformly from ``lo..hi``."""
    rng = trial_rng(seed, index)
    length = lo if hi is None or hi == lo else int(rng.integers(lo, hi + 1))
    return random_sequence(rng, length)


def corpus(seed: int, count: int, lo: int, hi: int | None = None) -> list[RnaSequence]:
    return [trial_sequence(seed, t, lo, hi) for t in range(count)]
