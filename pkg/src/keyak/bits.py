"""Bit/byte conversion helpers.

Convention used everywhere in this package: bit i of a byte string lives in
byte i // 8 at weight 2**(i % 8) (LSB-first within each byte).
"""
from __future__ import annotations


def bytes_to_bits(data: bytes, nbits: int | None = None) -> list[int]:
    """Expand bytes into a list of 0/1 ints, optionally truncated to nbits."""
    if nbits is None:
        nbits = 8 * len(data)
    if nbits > 8 * len(data):
        raise ValueError("nbits exceeds available data")
    return [(data[i >> 3] >> (i & 7)) & 1 for i in range(nbits)]


def bits_to_bytes(bits: list[int]) -> bytes:
    """Pack bits into bytes; a partial final byte is zero-filled at the top."""
    out = bytearray((len(bits) + 7) // 8)
    for i, bit in enumerate(bits):
        if bit:
            out[i >> 3] |= 1 << (i & 7)
    return bytes(out)


def xor_bytes(a: bytes, b: bytes) -> bytes:
    """XOR two equal-length byte strings."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    n = len(a)
    return (int.from_bytes(a, "little") ^ int.from_bytes(b, "little")).to_bytes(n, "little")


def mask_tail_bits(data: bytes, nbits: int) -> bytes:
    """Zero any bits of data above position nbits (data must hold >= nbits)."""
    nbytes = (nbits + 7) // 8
    if nbytes > len(data):
        raise ValueError("nbits exceeds available data")
    out = bytearray(data[:nbytes])
    if nbits % 8:
        out[-1] &= (1 << (nbits % 8)) - 1
    return bytes(out)
