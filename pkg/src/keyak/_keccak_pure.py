"""Pure-Python Keccak-p byte-state kernel.

Fallback for the compiled extension; same interface, same results. Lanes are
Python ints in a flat list indexed x + 5y.
"""
from __future__ import annotations

# Rotation offsets, flat index x + 5y.
_RHO = (
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
)

# Destination of lane (x, y) under pi: (y, 2x + 3y), flattened.
_PI = tuple((i // 5) + 5 * ((2 * (i % 5) + 3 * (i // 5)) % 5) for i in range(25))


def permute(data: bytes, first_round: int, n_rounds: int, rcs: tuple[int, ...]) -> bytes:
    """Apply rounds first_round..first_round+n_rounds-1 to a serialized state."""
    lane_bytes = len(data) // 25
    if 25 * lane_bytes != len(data) or lane_bytes not in (1, 2, 4, 8):
        raise ValueError(f"bad state size {len(data)} bytes")
    w = 8 * lane_bytes
    mask = (1 << w) - 1
    lanes = [
        int.from_bytes(data[i * lane_bytes : (i + 1) * lane_bytes], "little")
        for i in range(25)
    ]
    for r in range(first_round, first_round + n_rounds):
        # theta
        c = [lanes[x] ^ lanes[x + 5] ^ lanes[x + 10] ^ lanes[x + 15] ^ lanes[x + 20]
             for x in range(5)]
        for x in range(5):
            cc = c[(x + 1) % 5]
            d = c[x - 1] ^ (((cc << 1) | (cc >> (w - 1))) & mask)
            for i in range(x, 25, 5):
                lanes[i] ^= d
        # rho + pi
        b = [0] * 25
        for i in range(25):
            s = _RHO[i] % w
            v = lanes[i]
            b[_PI[i]] = ((v << s) | (v >> (w - s))) & mask if s else v
        # chi
        for i in range(0, 25, 5):
            r0, r1, r2, r3, r4 = b[i : i + 5]
            lanes[i] = r0 ^ (~r1 & r2 & mask)
            lanes[i + 1] = r1 ^ (~r2 & r3 & mask)
            lanes[i + 2] = r2 ^ (~r3 & r4 & mask)
            lanes[i + 3] = r3 ^ (~r4 & r0 & mask)
            lanes[i + 4] = r4 ^ (~r0 & r1 & mask)
        # iota
        lanes[0] = (lanes[0] ^ rcs[r]) & mask
    return b"".join(v.to_bytes(lane_bytes, "little") for v in lanes)
