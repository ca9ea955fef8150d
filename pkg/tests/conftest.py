import random

import pytest

from keyak.bits import bits_to_bytes, bytes_to_bits
from keyak.oracle import oracle_permutation
from keyak.padding import pad10star1_bytes
from keyak.permutation import WIDTHS, KeccakState


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_state(rng: random.Random, width: int) -> KeccakState:
    return KeccakState.from_bits([rng.randint(0, 1) for _ in range(width)])


def random_bits(rng: random.Random, n: int) -> list[int]:
    return [rng.randint(0, 1) for _ in range(n)]


def oracle_sponge(rate: int, width: int, message: bytes, out_bits: int) -> bytes:
    """Independent sponge built on the bit-level oracle permutation."""
    l = (width // 25).bit_length() - 1
    rb = rate // 8
    state = [0] * width
    padded = message + pad10star1_bytes(len(message), rb)
    for off in range(0, len(padded), rb):
        block = bytes_to_bits(padded[off : off + rb])
        state = [s ^ m for s, m in zip(state, block + [0] * (width - rate))]
        state = oracle_permutation(state, 12 + 2 * l, l)
    out = []
    while 8 * len(out) < out_bits:
        out.extend(state[:rate])
        if 8 * len(out) < out_bits:
            state = oracle_permutation(state, 12 + 2 * l, l)
    return bits_to_bytes(out[:out_bits])


__all__ = ["WIDTHS", "random_state", "random_bits", "oracle_sponge"]
