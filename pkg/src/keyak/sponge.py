"""Sponge constructions: plain, keyed (outer / inner / full-state), and the
lane-oriented hash/XOF built directly on the 5x5 state.

All entry points are stateless functions; rates are byte-aligned and
messages are whole bytes, while output lengths are in bits (a partial final
byte is zero-filled at the top per the LSB-first convention).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bits import mask_tail_bits, xor_bytes
from .padding import pad10star1_bytes, pad10star_bytes
from .permutation import KeccakState, PermutationSpec, keccak_f, width_log_for

PadRule = Callable[[int, int], bytes]


@dataclass(frozen=True)
class SpongeParams:
    """Permutation + padding rule + bitrate. Capacity is width - rate."""

    f: PermutationSpec
    rate: int  # bits
    pad: PadRule = pad10star1_bytes

    def __post_init__(self):
        if self.rate % 8 or self.rate < 8:
            raise ValueError(f"rate {self.rate} must be a positive multiple of 8 bits")
        if self.rate > self.f.width:
            raise ValueError("rate exceeds permutation width")

    @property
    def capacity(self) -> int:
        return self.f.width - self.rate

    @property
    def rate_bytes(self) -> int:
        return self.rate // 8


@dataclass(frozen=True)
class KeyedSpongeParams:
    """Sponge parameters plus a key living in the inner (capacity) bits."""

    base: SpongeParams
    key: bytes

    def __post_init__(self):
        if 8 * len(self.key) > self.base.capacity:
            raise ValueError(
                f"key of {8 * len(self.key)} bits exceeds capacity {self.base.capacity}"
            )


def _absorb(state: bytes, padded: bytes, rate_bytes: int,
            permute: Callable[[bytes], bytes]) -> bytes:
    for off in range(0, len(padded), rate_bytes):
        block = padded[off : off + rate_bytes]
        state = permute(xor_bytes(state[:rate_bytes], block) + state[rate_bytes:])
    return state


def _squeeze(state: bytes, rate_bytes: int, out_bits: int,
             permute: Callable[[bytes], bytes]) -> bytes:
    out = bytearray()
    need = (out_bits + 7) // 8
    while len(out) < need:
        out += state[:rate_bytes]
        if len(out) < need:
            state = permute(state)
    return mask_tail_bits(bytes(out), out_bits)


def sponge(params: SpongeParams, message: bytes, out_bits: int) -> bytes:
    """Absorb then squeeze: Sponge[f, pad, r](message, out_bits)."""
    if out_bits < 0:
        raise ValueError("output length must be non-negative")
    rb = params.rate_bytes
    padded = message + params.pad(len(message), rb)
    state = _absorb(bytes(params.f.width_bytes), padded, rb, params.f.permute)
    return _squeeze(state, rb, out_bits, params.f.permute)


def keccak_rc_hash(rate: int, capacity: int, message: bytes, out_bits: int) -> bytes:
    """The classic lane-level hash/XOF over Keccak-f[rate + capacity].

    Second route to the same function as sponge() with pad10*1; kept as a
    direct transcription on the 5x5 lane state, with the rate required to be
    a whole number of lanes.
    """
    b = rate + capacity
    w = 1 << width_log_for(b)
    if rate % w or rate <= 0:
        raise ValueError(f"rate {rate} is not a multiple of the {w}-bit lane size")
    if out_bits < 0:
        raise ValueError("output length must be non-negative")
    lane_bytes = w // 8
    rate_lanes = rate // w
    rb = rate // 8

    state = KeccakState.zeros(b)
    padded = message + pad10star1_bytes(len(message), rb)
    for off in range(0, len(padded), rb):
        block = padded[off : off + rb]
        for i in range(rate_lanes):  # lanes (x, y) with x + 5y < rate/w
            x, y = i % 5, i // 5
            state.lanes[x][y] ^= int.from_bytes(
                block[i * lane_bytes : (i + 1) * lane_bytes], "little"
            )
        state = keccak_f(state)

    out = bytearray()
    need = (out_bits + 7) // 8
    while len(out) < need:
        for i in range(rate_lanes):
            x, y = i % 5, i // 5
            out += state.lanes[x][y].to_bytes(lane_bytes, "little")
        if len(out) < need:
            state = keccak_f(state)
    return mask_tail_bits(bytes(out[:need]), out_bits)


def outer_keyed_sponge(params: SpongeParams, key: bytes, message: bytes,
                       out_bits: int) -> bytes:
    """Sponge over key || message."""
    return sponge(params, key + message, out_bits)


def even_mansour(f: PermutationSpec, key: bytes, block: bytes) -> bytes:
    """Single-key Even-Mansour block cipher: f(x xor K) xor K."""
    if 8 * len(key) != f.width:
        raise ValueError(f"key must be {f.width} bits")
    if 8 * len(block) != f.width:
        raise ValueError(f"block must be {f.width} bits")
    return xor_bytes(f.permute(xor_bytes(block, key)), key)


def inner_keyed_sponge(params: SpongeParams, key: bytes, message: bytes,
                       out_bits: int) -> bytes:
    """Sponge with the Even-Mansour cipher in place of the bare permutation."""
    if 8 * len(key) != params.f.width:
        raise ValueError(f"key must be {params.f.width} bits")
    if out_bits < 0:
        raise ValueError("output length must be non-negative")

    def permute(state: bytes) -> bytes:
        return even_mansour(params.f, key, state)

    rb = params.rate_bytes
    padded = message + params.pad(len(message), rb)
    state = _absorb(bytes(params.f.width_bytes), padded, rb, permute)
    return _squeeze(state, rb, out_bits, permute)


def fks(params: KeyedSpongeParams, message: bytes, out_bits: int) -> bytes:
    """Full-state keyed sponge.

    The key sits in the inner (last) key-length bits of the state and the
    message, padded with pad10* to a multiple of the width, is absorbed
    across the full state. Squeezing emits the outer rate bits as usual.
    """
    if out_bits < 0:
        raise ValueError("output length must be non-negative")
    base = params.base
    wb = base.f.width_bytes
    state = bytes(wb - len(params.key)) + params.key
    padded = message + pad10star_bytes(len(message), wb)
    state = _absorb(state, padded, wb, base.f.permute)
    return _squeeze(state, base.rate_bytes, out_bits, base.f.permute)
