"""Duplex objects and the full-state keyed variant.

A duplex object keeps the sponge state alive between calls so each output
depends on everything absorbed so far. The input of one duplexing call must
pad to a single rate-sized block; with pad10*1 that caps the input at
rate - 2 bits (rate_bytes - 1 when byte-granular).
"""
from __future__ import annotations

from .bits import mask_tail_bits, xor_bytes
from .padding import pad10star_bytes
from .sponge import SpongeParams
from .permutation import PermutationSpec


class Duplex:
    """Stateful duplex construction over SpongeParams (pad10*1)."""

    def __init__(self, params: SpongeParams):
        self.params = params
        self.state = bytes(params.f.width_bytes)

    @property
    def max_input_bits(self) -> int:
        """Largest sigma accepted by one duplexing call (rho_max)."""
        return self.params.rate - 2

    @property
    def max_input_bytes(self) -> int:
        return self.params.rate_bytes - 1

    def duplexing(self, sigma: bytes, out_bits: int, sigma_bits: int | None = None) -> bytes:
        """Absorb one padded block of sigma, permute, return first out_bits.

        sigma_bits allows a bit-granular input (low bits of the final byte);
        an empty sigma is a "blank call", out_bits = 0 a "mute call".
        """
        if sigma_bits is None:
            sigma_bits = 8 * len(sigma)
        elif not 8 * (len(sigma) - 1) < sigma_bits <= 8 * len(sigma) and sigma_bits != 0:
            raise ValueError("sigma_bits inconsistent with sigma length")
        if sigma_bits > self.max_input_bits:
            raise ValueError(
                f"input of {sigma_bits} bits exceeds the duplex rate {self.max_input_bits}"
            )
        if not 0 <= out_bits <= self.params.rate:
            raise ValueError(f"output length must be within 0..{self.params.rate} bits")

        rb = self.params.rate_bytes
        block = bytearray(rb)
        block[: (sigma_bits + 7) // 8] = mask_tail_bits(sigma, sigma_bits)
        block[sigma_bits // 8] ^= 1 << (sigma_bits % 8)  # first pad bit
        block[rb - 1] ^= 0x80  # final pad bit
        self.state = self.params.f.permute(
            xor_bytes(self.state[:rb], bytes(block)) + self.state[rb:]
        )
        return mask_tail_bits(self.state, out_bits)


class FullStateKeyedDuplex:
    """Duplex keyed through the inner state, absorbing across the full width.

    Initialization places the key in the inner (last) key-length bits and an
    optional starting string in the outer bits, then applies the permutation
    once. Later calls may absorb up to a full state width per call: inputs
    shorter than the width are completed with pad10*, a width-sized input is
    absorbed as-is.
    """

    def __init__(self, f: PermutationSpec, rate: int, key: bytes, sigma0: bytes = b""):
        if rate % 8 or not 8 <= rate <= f.width:
            raise ValueError(f"rate {rate} must be a multiple of 8 within the width")
        capacity = f.width - rate
        if 8 * len(key) > capacity:
            raise ValueError(f"key of {8 * len(key)} bits exceeds capacity {capacity}")
        wb = f.width_bytes
        if len(sigma0) > wb - len(key):
            raise ValueError("initial string overlaps the key placement")
        self.f = f
        self.rate = rate
        self.key_bits = 8 * len(key)
        outer = sigma0 + bytes(wb - len(key) - len(sigma0))
        self.state = f.permute(outer + key)

    def duplexing(self, sigma: bytes, out_bits: int) -> bytes:
        """Absorb one full-width block built from sigma, permute, output."""
        wb = self.f.width_bytes
        if len(sigma) > wb:
            raise ValueError(f"input of {len(sigma)} bytes exceeds the state width")
        if not 0 <= out_bits <= self.rate:
            raise ValueError(f"output length must be within 0..{self.rate} bits")
        if len(sigma) == wb:
            block = sigma
        else:
            block = sigma + pad10star_bytes(len(sigma), wb)
        self.state = self.f.permute(xor_bytes(self.state, block))
        return mask_tail_bits(self.state, out_bits)
