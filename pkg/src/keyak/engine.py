"""The Engine: a bank of Pistons fed consecutive fragments of shared streams.

The engine tracks how many state bytes of each Piston were consumed as tag
or chaining value (so they are never reused as keystream) and enforces a
four-phase protocol on the order of calls. With an executor attached, the
permutation step of all Pistons runs in parallel; everything else stays
sequential so output ordering is deterministic.
"""
from __future__ import annotations

import enum
from concurrent.futures import Executor

from .errors import PhaseError
from .piston import Piston
from .streams import ByteStream


class Phase(enum.Enum):
    FRESH = "fresh"
    CRYPTED = "crypted"
    END_OF_CRYPT = "endOfCrypt"
    END_OF_MESSAGE = "endOfMessage"


class Engine:
    def __init__(self, pistons: list[Piston], executor: Executor | None = None):
        if not pistons:
            raise ValueError("engine needs at least one piston")
        self.pistons = list(pistons)
        self.tag_use = [0] * len(pistons)  # bytes used as tag/chaining last spark
        self.phase = Phase.FRESH
        self.executor = executor

    @property
    def count(self) -> int:
        return len(self.pistons)

    def _require(self, *phases: Phase) -> None:
        if self.phase not in phases:
            raise PhaseError(
                f"engine is {self.phase.value}, expected {'/'.join(p.value for p in phases)}"
            )

    def spark(self, eom: bool, lengths: list[int]) -> None:
        """Spark every piston; lengths[i] is piston i's upcoming tag use."""
        if len(lengths) != self.count:
            raise ValueError(f"need {self.count} tag lengths, got {len(lengths)}")
        for piston, length in zip(self.pistons, lengths):
            if length > piston.squeeze_rate:
                raise ValueError("tag length exceeds the squeeze rate")
        if self.executor is not None and self.count > 1:
            # Permutations are data-independent across pistons.
            list(
                self.executor.map(
                    lambda pl: pl[0].spark(eom, pl[1]), zip(self.pistons, lengths)
                )
            )
        else:
            for piston, length in zip(self.pistons, lengths):
                piston.spark(eom, length)
        self.tag_use = list(lengths)

    def crypt(self, inp: ByteStream, out: ByteStream, unwrap: bool) -> None:
        """Distribute consecutive input fragments to the pistons' keystream."""
        self._require(Phase.FRESH)
        for i, piston in enumerate(self.pistons):
            piston.crypt(inp, out, self.tag_use[i], unwrap)
        self.phase = Phase.CRYPTED if inp.has_more() else Phase.END_OF_CRYPT

    def inject(self, meta: ByteStream) -> None:
        """Distribute consecutive metadata fragments to the pistons."""
        self._require(Phase.FRESH, Phase.CRYPTED, Phase.END_OF_CRYPT)
        crypting = self.phase in (Phase.CRYPTED, Phase.END_OF_CRYPT)
        for piston in self.pistons:
            piston.inject(meta, crypting)
        if self.phase is Phase.CRYPTED or meta.has_more():
            self.spark(False, [0] * self.count)
            self.phase = Phase.FRESH
        else:
            self.phase = Phase.END_OF_MESSAGE  # permutation deferred to get_tags

    def get_tags(self, tag_stream: ByteStream, lengths: list[int]) -> None:
        """Spark with the end-of-message marker, then collect per-piston tags."""
        self._require(Phase.END_OF_MESSAGE)
        self.spark(True, lengths)
        for piston, length in zip(self.pistons, lengths):
            piston.get_tag(tag_stream, length)
        self.phase = Phase.FRESH

    def inject_collective(self, stream: ByteStream, diversify: bool) -> None:
        """Inject the same stream into every piston, block by block.

        With diversify set, each piston's copy is extended with the piston
        count and its own index, so states (and hence keystreams) of the
        pistons diverge even though they absorb the same payload.
        """
        self._require(Phase.FRESH)
        copies = [ByteStream() for _ in range(self.count)]
        payload = stream.read(stream.remaining())
        for i, copy in enumerate(copies):
            copy.put_all(payload)
            if diversify:
                copy.put(self.count)
                copy.put(i)
            copy.seek(0)
        while True:
            for piston, copy in zip(self.pistons, copies):
                piston.inject(copy, False)
            if copies[0].has_more():
                self.spark(False, [0] * self.count)
            else:
                break
        self.phase = Phase.END_OF_MESSAGE
