"""Reversible padding rules (pad10* and pad10*1) and the one-byte length encoder.

The bit-level functions return lists of 0/1 ints; the _bytes variants are the
byte-aligned fast forms (lengths and rates in whole bytes) used by the sponge,
duplex and key-pack code. Both produce identical padded streams under the
LSB-first bit-to-byte convention.
"""
from __future__ import annotations


def pad10star(message_len: int, rate: int) -> list[int]:
    """A single 1 bit then the minimum number of 0 bits reaching a rate multiple.

    message_len and rate are in bits.
    """
    if rate < 1:
        raise ValueError("rate must be >= 1 bit")
    q = -(message_len + 1) % rate
    return [1] + [0] * q


def pad10star1(message_len: int, rate: int) -> list[int]:
    """1, minimum number of 0s, then 1, reaching a rate multiple (bits)."""
    if rate < 2:
        raise ValueError("rate must be >= 2 bits")
    q = -(message_len + 2) % rate
    return [1] + [0] * q + [1]


def pad10star_bytes(message_len: int, rate: int) -> bytes:
    """Byte form of pad10*: 0x01 then zero bytes (lengths in bytes)."""
    if rate < 1:
        raise ValueError("rate must be >= 1 byte")
    q = -(message_len + 1) % rate
    return b"\x01" + b"\x00" * q


def pad10star1_bytes(message_len: int, rate: int) -> bytes:
    """Byte form of pad10*1: 0x01, zero fill, 0x80 into the block's last byte."""
    if rate < 1:
        raise ValueError("rate must be >= 1 byte")
    n = rate - message_len % rate
    pad = bytearray(n)
    pad[0] ^= 0x01
    pad[-1] ^= 0x80
    return bytes(pad)


def enc8(n: int) -> bytes:
    """Encode an integer in [0, 255] as a single byte."""
    if not 0 <= n < 256:
        raise ValueError(f"enc8 argument {n} out of range")
    return bytes([n])
