"""The Motorist: sessions of authenticated messages over an Engine.

A session starts from a secret and unique value (SUV), then wraps messages
into cryptograms (ciphertext + metadata + tag) or unwraps them back,
with every tag authenticating the whole sequence so far. Knots tie the
states of parallel pistons together (and provide rollback resistance when
forgetting is requested).
"""
from __future__ import annotations

import enum
import hmac
from concurrent.futures import Executor
from dataclasses import dataclass, field

from .engine import Engine
from .errors import PhaseError
from .permutation import PermutationSpec
from .piston import Piston
from .streams import ByteStream


def derive_rates(width: int, alignment: int, capacity: int) -> tuple[int, int, int]:
    """Rates implied by (width, alignment W, capacity): (R_s, R_a, c').

    R_s (bytes): largest multiple of W such that at least max(capacity, 32)
    state bits are never used as output. R_a (bytes): largest multiple of W
    leaving 32 bits at the end of the state for the fragment offsets.
    c' (bits): capacity rounded up to a multiple of W.
    """
    if alignment % 8 or alignment < 8:
        raise ValueError("alignment must be a positive multiple of 8 bits")
    if capacity < 32:
        raise ValueError("capacity below the 32-bit offset reservation")
    squeeze_bits = (width - max(capacity, 32)) // alignment * alignment
    absorb_bits = (width - 32) // alignment * alignment
    chain_bits = -(-capacity // alignment) * alignment
    if squeeze_bits <= 0:
        raise ValueError("no room for a squeeze rate with these parameters")
    return squeeze_bits // 8, absorb_bits // 8, chain_bits


@dataclass(frozen=True)
class MotoristParams:
    f: PermutationSpec
    pistons: int = 1
    alignment: int = 64  # W, bits
    capacity: int = 256  # c, bits
    tag_bits: int = 128  # tau

    squeeze_rate: int = field(init=False)  # R_s, bytes
    absorb_rate: int = field(init=False)  # R_a, bytes
    chain_bits: int = field(init=False)  # c'

    def __post_init__(self):
        if self.pistons < 1:
            raise ValueError("need at least one piston")
        if self.tag_bits % 8 or self.tag_bits < 8:
            raise ValueError("tag length must be a positive multiple of 8 bits")
        rs, ra, cp = derive_rates(self.f.width, self.alignment, self.capacity)
        if ra + 4 > self.f.width_bytes:
            raise ValueError("absorb rate leaves no room for fragment offsets")
        if self.tag_bits // 8 > rs or cp // 8 > rs:
            raise ValueError("tag or chaining value exceeds the squeeze rate")
        object.__setattr__(self, "squeeze_rate", rs)
        object.__setattr__(self, "absorb_rate", ra)
        object.__setattr__(self, "chain_bits", cp)

    @property
    def tag_bytes(self) -> int:
        return self.tag_bits // 8

    @property
    def chain_bytes(self) -> int:
        return self.chain_bits // 8


class SessionPhase(enum.Enum):
    READY = "ready"
    RIDING = "riding"
    FAILED = "failed"


class Motorist:
    """One side of a session. Single-owner; never share across threads."""

    def __init__(self, params: MotoristParams, executor: Executor | None = None):
        self.params = params
        self.engine = Engine(
            [
                Piston(params.f, params.squeeze_rate, params.absorb_rate)
                for _ in range(params.pistons)
            ],
            executor=executor,
        )
        self.phase = SessionPhase.READY

    def _require(self, phase: SessionPhase) -> None:
        if self.phase is not phase:
            raise PhaseError(f"session is {self.phase.value}, expected {phase.value}")

    def start_engine(self, suv: ByteStream, tag_flag: bool, tag: ByteStream,
                     unwrap: bool, forget: bool) -> bool:
        """Key the session with the SUV; optionally emit or verify a startup tag."""
        self._require(SessionPhase.READY)
        self.engine.inject_collective(suv, diversify=True)
        if forget:
            self._make_knot()
        ok = self._handle_tag(tag_flag, tag, unwrap)
        if ok:
            self.phase = SessionPhase.RIDING
        return ok

    def wrap(self, inp: ByteStream, out: ByteStream, meta: ByteStream,
             tag: ByteStream, unwrap: bool, forget: bool) -> bool:
        """Wrap a message (or unwrap a cryptogram) and handle its tag.

        Returns True on success. A failed tag check erases `out`, marks the
        session failed and returns False; wrapping itself always succeeds.
        `forget` is protocol-level: both sides of a session must pass the
        same value per call, like the tag flag at startup.
        """
        self._require(SessionPhase.RIDING)
        if not inp.has_more() and not meta.has_more():
            self.engine.inject(meta)  # empty message: still advance the engine
        while inp.has_more():
            self.engine.crypt(inp, out, unwrap)
            self.engine.inject(meta)
        while meta.has_more():
            self.engine.inject(meta)
        if self.params.pistons > 1 or forget:
            self._make_knot()
        ok = self._handle_tag(True, tag, unwrap)
        if not ok:
            out.erase()
        return ok

    def _make_knot(self) -> None:
        """Cross-inject chaining values so every piston depends on all of them."""
        chain = ByteStream()
        self.engine.get_tags(chain, [self.params.chain_bytes] * self.params.pistons)
        chain.seek(0)
        self.engine.inject_collective(chain, diversify=False)

    def _handle_tag(self, tag_flag: bool, tag: ByteStream, unwrap: bool) -> bool:
        """Produce (wrap) or verify (unwrap) a tag; mark failure permanently."""
        collected = ByteStream()
        if not tag_flag:
            self.engine.get_tags(collected, [0] * self.params.pistons)
            return True
        lengths = [self.params.tag_bytes] + [0] * (self.params.pistons - 1)
        self.engine.get_tags(collected, lengths)
        if not unwrap:
            tag.put_all(collected.getvalue())
            return True
        presented = tag.read(self.params.tag_bytes)
        if hmac.compare_digest(collected.getvalue(), presented):
            return True
        self.phase = SessionPhase.FAILED
        return False
