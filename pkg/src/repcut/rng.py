"""Deterministic random streams.

Every random draw in this package comes from numpy's Philox4x64-10, a named
counter-based 64-bit generator.  A stream is identified by the 128-bit key
(seed, tag): the user-facing seed fills the first key word and a fixed
per-purpose tag the second, so distinct purposes get disjoint streams without
any coordination.  Sampling loops derive one child seed per iteration from a
driver stream, which keeps each sample's randomness independent of how many
samples ran before it.

Identical (seed, tag) pairs always reproduce identical draws, across
processes and platforms.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox

_MASK = (1 << 64) - 1

# stream tags; values are arbitrary but frozen
TAG_KLEINBERG_TARDOS = 0x4B54
TAG_SINGLE_THRESHOLD = 0x5354
TAG_DESCENDING = 0x4453
TAG_INDEPENDENT = 0x4954
TAG_SCHEME_CHOICE = 0x434D
TAG_SAMPLE_DRIVER = 0x5344
TAG_DENSITY = 0x444E
TAG_CORPUS = 0x4350


def stream(seed: int, tag: int) -> Generator:
    """Generator for the (seed, tag) stream."""
    key = np.array([seed & _MASK, tag & _MASK], dtype=np.uint64)
    return Generator(Philox(key=key))


def child_seeds(seed: int, count: int, tag: int = TAG_SAMPLE_DRIVER) -> np.ndarray:
    """One 63-bit child seed per sample, drawn from the driver stream."""
    return stream(seed, tag).integers(0, 1 << 63, size=count, dtype=np.int64)


def unit_open(rng: Generator, size=None) -> np.ndarray | float:
    """Uniform draw from the half-open interval (0, 1].

    Used for thresholds: a draw of exactly 0.0 would let zero coordinates
    pass a >= comparison and assign labels an instance forbids.
    """
    return 1.0 - rng.random(size)
