"""Reproducible random streams.

Streams are derived from a master seed by counter-based splitting
(Philox keyed on the label path), so the stream used for path ``i`` is
the same no matter how work is scheduled.  Every stream carries a
provenance tuple; constructions that require independent sources assert
the provenances differ.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams


def _label_key(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFF
    return zlib.crc32(str(label).encode())


@dataclass
class Stream:
    """A numpy Generator plus the derivation path that produced it."""

    seed: int
    key: tuple[int, ...] = ()
    provenance: tuple[str, ...] = ("master",)
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.key)
        self.generator = np.random.Generator(np.random.Philox(seq))

    def child(self, *labels) -> "Stream":
        """Derive an independent stream; deterministic in (seed, labels)."""
        if not labels:
            raise InvalidParams("child() needs at least one label")
        return Stream(
            seed=self.seed,
            key=self.key + tuple(_label_key(l) for l in labels),
            provenance=self.provenance + tuple(str(l) for l in labels),
        )


def master_stream(seed: int) -> Stream:
    return Stream(seed=int(seed))


def require_independent(a: Stream, b: Stream) -> None:
    """Reject reuse of one stream where two independent ones are required."""
    if a.provenance == b.provenance:
        raise InvalidParams(
            f"streams must be independent; both derive from {a.provenance}"
        )
