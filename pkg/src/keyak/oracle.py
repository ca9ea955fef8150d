"""Naive bit-level reference implementation of the round function.

The state is a flat list of b individual bits, indexed w*(5y + x) + z, and
every step is a direct per-bit transcription of the round definition. This
module is the independent oracle for differential tests of the lane
implementation, so it deliberately shares no code or tables with
keyak.permutation: rotation offsets are rederived from the pi-trajectory
triangular-number recurrence, and the round-constant LFSR is run in
polynomial (bit-list) form. Clarity is the only criterion; never use this
for production work. Exposed to users via the `perm --oracle` CLI flag.
"""
from __future__ import annotations


def _rotation_offsets() -> dict[tuple[int, int], int]:
    """Offsets r[x, y] from the (t+1)(t+2)/2 recurrence along the pi orbit."""
    offsets = {(0, 0): 0}
    x, y = 1, 0
    for t in range(24):
        offsets[(x, y)] = (t + 1) * (t + 2) // 2
        x, y = y, (2 * x + 3 * y) % 5
    return offsets


_OFFSETS = _rotation_offsets()


def _rc_bits(count: int) -> list[int]:
    """First `count` outputs of the round-constant LFSR, run on a bit register.

    Register holds the coefficients of x^0..x^7; stepping multiplies by x
    modulo x^8 + x^6 + x^5 + x^4 + 1.
    """
    reg = [1, 0, 0, 0, 0, 0, 0, 0]
    out = []
    for _ in range(count):
        out.append(reg[0])
        carry = reg[7]
        reg = [0] + reg[:7]
        if carry:
            reg[0] ^= 1
            reg[4] ^= 1
            reg[5] ^= 1
            reg[6] ^= 1
    return out


_RC_BITS = _rc_bits(7 * 24 + 7)


def _check_bit_state(bits: list[int], width_log: int) -> int:
    if not 0 <= width_log <= 6:
        raise ValueError(f"width_log {width_log} out of range 0..6")
    w = 1 << width_log
    if len(bits) != 25 * w:
        raise ValueError(f"state must hold {25 * w} bits, got {len(bits)}")
    if any(bit not in (0, 1) for bit in bits):
        raise ValueError("state bits must be 0 or 1")
    return w


def oracle_round(bits: list[int], round_index: int, width_log: int) -> list[int]:
    """One round, bit by bit."""
    w = _check_bit_state(bits, width_log)

    def at(x, y, z):
        return bits[w * (5 * y + x) + z]

    # theta: column parities, then D[x] = C[x-1] xor rot(C[x+1], 1)
    c = [[at(x, 0, z) ^ at(x, 1, z) ^ at(x, 2, z) ^ at(x, 3, z) ^ at(x, 4, z)
          for z in range(w)] for x in range(5)]
    d = [[c[(x - 1) % 5][z] ^ c[(x + 1) % 5][(z - 1) % w] for z in range(w)]
         for x in range(5)]
    a = [at(x, y, z) ^ d[x][z]
         for y in range(5) for x in range(5) for z in range(w)]

    # rho + pi: B[y][2x+3y][z] = A[x][y][(z - r[x,y]) mod w]
    b = [0] * (25 * w)
    for x in range(5):
        for y in range(5):
            r = _OFFSETS[(x, y)]
            src = w * (5 * y + x)
            dst = w * (5 * ((2 * x + 3 * y) % 5) + y)
            for z in range(w):
                b[dst + z] = a[src + (z - r) % w]

    # chi
    out = [0] * (25 * w)
    for y in range(5):
        for x in range(5):
            base = w * (5 * y + x)
            b1 = w * (5 * y + (x + 1) % 5)
            b2 = w * (5 * y + (x + 2) % 5)
            for z in range(w):
                out[base + z] = b[base + z] ^ ((1 ^ b[b1 + z]) & b[b2 + z])

    # iota: flip bits 2^j - 1 of lane (0, 0) where the LFSR says so
    for j in range(width_log + 1):
        if _RC_BITS[j + 7 * round_index]:
            out[(1 << j) - 1] ^= 1
    return out


def oracle_permutation(bits: list[int], n_rounds: int, width_log: int) -> list[int]:
    """The last n_rounds rounds of the full schedule, via oracle_round."""
    _check_bit_state(bits, width_log)
    full = 12 + 2 * width_log
    if not 1 <= n_rounds <= full:
        raise ValueError(f"round count {n_rounds} outside 1..{full}")
    for i in range(full - n_rounds, full):
        bits = oracle_round(bits, i, width_log)
    return bits
