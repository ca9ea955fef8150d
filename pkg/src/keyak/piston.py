"""The Piston: one full-state keyed duplex unit with session plumbing.

A Piston keeps a zero-initialized state of width_bytes bytes and absorbs
full-width blocks laid out as: keystream/plaintext region [0, squeeze_rate),
metadata region up to absorb_rate, then four fragment-offset bytes. In place
of a single duplexing call it exposes crypt / inject / spark / get_tag.
"""
from __future__ import annotations

from .bits import xor_bytes
from .permutation import PermutationSpec
from .streams import ByteStream

# The four offset bytes trail the metadata region in this order. Their
# absolute positions absorb_rate + 0..3 are the interop-sensitive layout
# fact; change only in lockstep with peer implementations.
OFFSET_EOM = 0
OFFSET_CRYPT_END = 1
OFFSET_INJECT_START = 2
OFFSET_INJECT_END = 3


class Piston:
    def __init__(self, f: PermutationSpec, squeeze_rate: int, absorb_rate: int):
        if squeeze_rate > absorb_rate:
            raise ValueError("squeeze rate exceeds absorb rate")
        if absorb_rate + 4 > f.width_bytes:
            raise ValueError("no room for fragment offsets after the absorb region")
        self.f = f
        self.squeeze_rate = squeeze_rate
        self.absorb_rate = absorb_rate
        self.state = bytearray(f.width_bytes)

    def crypt(self, inp: ByteStream, out: ByteStream, omega: int, unwrap: bool) -> None:
        """Move up to squeeze_rate - omega bytes through the keystream.

        Wrapping XORs plaintext with state bytes; unwrapping does the
        inverse. Either way the state ends up holding the ciphertext, and
        the end position is folded into the crypt-end offset.
        """
        if omega > self.squeeze_rate:
            raise ValueError("start index beyond the squeeze rate")
        take = min(self.squeeze_rate - omega, inp.remaining())
        if take:
            x = inp.read(take)
            y = xor_bytes(bytes(self.state[omega : omega + take]), x)
            out.put_all(y)
            self.state[omega : omega + take] = x if unwrap else y
            omega += take
        self.state[self.absorb_rate + OFFSET_CRYPT_END] ^= omega

    def inject(self, stream: ByteStream, crypting: bool) -> None:
        """Absorb a metadata fragment, after the plaintext region if crypting."""
        omega = self.squeeze_rate if crypting else 0
        self.state[self.absorb_rate + OFFSET_INJECT_START] ^= omega
        take = min(self.absorb_rate - omega, stream.remaining())
        if take:
            chunk = stream.read(take)
            self.state[omega : omega + take] = xor_bytes(
                bytes(self.state[omega : omega + take]), chunk
            )
            omega += take
        self.state[self.absorb_rate + OFFSET_INJECT_END] ^= omega

    def spark(self, eom: bool, tag_len: int) -> None:
        """Fold the end-of-message marker into the state and permute.

        At a message end, tag_len (or 255 when no tag is wanted) goes into
        the EOM offset byte.
        """
        if not 0 <= tag_len <= 255:
            raise ValueError("tag length must fit one byte")
        if eom:
            self.state[self.absorb_rate + OFFSET_EOM] ^= 255 if tag_len == 0 else tag_len
        self.state = bytearray(self.f.permute(bytes(self.state)))

    def get_tag(self, tag_stream: ByteStream, length: int) -> None:
        """Append the first `length` state bytes as tag / chaining value."""
        if length > self.squeeze_rate:
            raise ValueError("tag longer than the squeeze rate")
        tag_stream.put_all(bytes(self.state[:length]))
