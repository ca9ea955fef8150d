"""The Keccak-f / Keccak-p permutation family.

The state is a 5x5 grid of w-bit lanes (w = 2**l, total width b = 25*w).
Bit z of lane (x, y) is global state bit w*(5y + x) + z, and byte k of the
serialized state carries global bits 8k..8k+7 LSB-first. rot() moves lane
bit i to position (i + r) mod w, i.e. it is a left rotation of the lane
word under this numbering.

Round constants are generated from the degree-8 LFSR rather than hardcoded;
the generated schedule is checked against the published 64-bit table at
import time.

Byte-aligned widths (b >= 200) are permuted by a compiled kernel when the
extension module built from _keccak_kernel.pyx is available, otherwise by
the pure-Python fallback in _keccak_pure. Set KEYAK_PURE_PYTHON=1 to force
the fallback. Sub-byte lane widths always use the generic lane code here.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

if os.environ.get("KEYAK_PURE_PYTHON"):
    from . import _keccak_pure as _backend

    KERNEL_LOADED = False
else:
    try:
        from . import _keccak_kernel as _backend  # type: ignore[attr-defined]

        KERNEL_LOADED = True
    except ImportError:
        from . import _keccak_pure as _backend

        KERNEL_LOADED = False

WIDTHS = (25, 50, 100, 200, 400, 800, 1600)

# r[x][y], indexed ROTATION_OFFSETS[x][y].
ROTATION_OFFSETS = (
    (0, 36, 3, 41, 18),
    (1, 44, 10, 45, 2),
    (62, 6, 43, 15, 61),
    (28, 55, 25, 21, 56),
    (27, 20, 39, 8, 14),
)

# Published 64-bit round-constant table; used only to cross-check the
# LFSR-generated schedule below.
_RC64_PUBLISHED = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A,
    0x8000000080008000, 0x000000000000808B, 0x0000000080000001,
    0x8000000080008081, 0x8000000000008009, 0x000000000000008A,
    0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089,
    0x8000000000008003, 0x8000000000008002, 0x8000000000000080,
    0x000000000000800A, 0x800000008000000A, 0x8000000080008081,
    0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)


def lfsr_rc(t: int) -> int:
    """Bit t of the round-constant LFSR (x^8 + x^6 + x^5 + x^4 + 1, period 255)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    reg = 1
    for _ in range(t % 255):
        reg <<= 1
        if reg & 0x100:
            reg ^= 0x171
    return reg & 1


def round_constant(i: int, width_log: int = 6) -> int:
    """Assemble round constant i as a w-bit lane word (bits at positions 2^j - 1)."""
    if not 0 <= i < 24:
        raise ValueError(f"round index {i} out of range 0..23")
    if not 0 <= width_log <= 6:
        raise ValueError(f"width_log {width_log} out of range 0..6")
    value = 0
    for j in range(width_log + 1):
        if lfsr_rc(j + 7 * i):
            value |= 1 << ((1 << j) - 1)
    return value


ROUND_CONSTANTS = tuple(round_constant(i, 6) for i in range(24))
if ROUND_CONSTANTS != _RC64_PUBLISHED:  # pragma: no cover
    raise AssertionError("LFSR round-constant schedule does not match the published table")


def rotation_offset(x: int, y: int) -> int:
    """Rotation offset r[x, y] (reduced mod w at use time)."""
    if not (0 <= x < 5 and 0 <= y < 5):
        raise ValueError("coordinates must be in 0..4")
    return ROTATION_OFFSETS[x][y]


def width_log_for(b: int) -> int:
    if b not in WIDTHS:
        raise ValueError(f"invalid permutation width {b}")
    return (b // 25).bit_length() - 1


def full_round_count(b: int) -> int:
    """Rounds of the full permutation at width b: 12 + 2l."""
    return 12 + 2 * width_log_for(b)


class KeccakState:
    """5x5 grid of w-bit lanes, value semantics."""

    __slots__ = ("lanes", "width_log")

    def __init__(self, lanes: list[list[int]], width_log: int):
        if not 0 <= width_log <= 6:
            raise ValueError(f"width_log {width_log} out of range 0..6")
        mask = (1 << (1 << width_log)) - 1
        if len(lanes) != 5 or any(len(col) != 5 for col in lanes):
            raise ValueError("lanes must be a 5x5 grid")
        if any(lane & ~mask for col in lanes for lane in col):
            raise ValueError("lane value exceeds lane width")
        self.lanes = lanes
        self.width_log = width_log

    @classmethod
    def zeros(cls, b: int) -> "KeccakState":
        return cls([[0] * 5 for _ in range(5)], width_log_for(b))

    @property
    def w(self) -> int:
        return 1 << self.width_log

    @property
    def b(self) -> int:
        return 25 * self.w

    @property
    def mask(self) -> int:
        return (1 << self.w) - 1

    def copy(self) -> "KeccakState":
        return KeccakState([list(col) for col in self.lanes], self.width_log)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, KeccakState)
            and other.width_log == self.width_log
            and other.lanes == self.lanes
        )

    def to_bytes(self) -> bytes:
        """Serialize; requires a byte-aligned lane width (w >= 8)."""
        if self.w < 8:
            raise ValueError(f"width {self.b} is not byte-aligned")
        nb = self.w // 8
        return b"".join(
            self.lanes[i % 5][i // 5].to_bytes(nb, "little") for i in range(25)
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "KeccakState":
        b = 8 * len(data)
        if b not in WIDTHS or b < 200:
            raise ValueError(f"{len(data)} bytes is not a byte-aligned state size")
        nb = len(data) // 25
        lanes = [[0] * 5 for _ in range(5)]
        for i in range(25):
            lanes[i % 5][i // 5] = int.from_bytes(data[i * nb : (i + 1) * nb], "little")
        return cls(lanes, width_log_for(b))

    def to_bits(self) -> list[int]:
        """Flat bit list indexed w*(5y + x) + z; works for every width."""
        w = self.w
        return [
            (self.lanes[i % 5][i // 5] >> z) & 1 for i in range(25) for z in range(w)
        ]

    @classmethod
    def from_bits(cls, bits: list[int]) -> "KeccakState":
        b = len(bits)
        l = width_log_for(b)
        if any(bit not in (0, 1) for bit in bits):
            raise ValueError("state bits must be 0 or 1")
        w = 1 << l
        lanes = [[0] * 5 for _ in range(5)]
        for i in range(25):
            lanes[i % 5][i // 5] = sum(bits[i * w + z] << z for z in range(w))
        return cls(lanes, l)


def _rol(v: int, r: int, w: int, mask: int) -> int:
    r %= w
    if r == 0:
        return v
    return ((v << r) | (v >> (w - r))) & mask


def theta(state: KeccakState) -> KeccakState:
    """Column-parity diffusion."""
    w, mask = state.w, state.mask
    a = state.lanes
    c = [a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4] for x in range(5)]
    d = [c[(x - 1) % 5] ^ _rol(c[(x + 1) % 5], 1, w, mask) for x in range(5)]
    return KeccakState(
        [[a[x][y] ^ d[x] for y in range(5)] for x in range(5)], state.width_log
    )


def rho(state: KeccakState) -> KeccakState:
    """Per-lane rotation by the fixed offsets."""
    w, mask = state.w, state.mask
    return KeccakState(
        [
            [_rol(state.lanes[x][y], ROTATION_OFFSETS[x][y], w, mask) for y in range(5)]
            for x in range(5)
        ],
        state.width_log,
    )


def pi(state: KeccakState) -> KeccakState:
    """Lane transposition (x, y) -> (y, 2x + 3y)."""
    out = [[0] * 5 for _ in range(5)]
    for x in range(5):
        for y in range(5):
            out[y][(2 * x + 3 * y) % 5] = state.lanes[x][y]
    return KeccakState(out, state.width_log)


def chi(state: KeccakState) -> KeccakState:
    """Non-linear row mapping."""
    mask = state.mask
    a = state.lanes
    return KeccakState(
        [
            [a[x][y] ^ (~a[(x + 1) % 5][y] & a[(x + 2) % 5][y] & mask) for y in range(5)]
            for x in range(5)
        ],
        state.width_log,
    )


def iota(state: KeccakState, rc: int) -> KeccakState:
    """XOR the round constant into lane (0, 0)."""
    out = state.copy()
    out.lanes[0][0] = (out.lanes[0][0] ^ rc) & state.mask
    return out


def apply_round(state: KeccakState, rc: int) -> KeccakState:
    """One full round: theta, rho, pi, chi, iota."""
    return iota(chi(pi(rho(theta(state)))), rc)


def round_trace(state: KeccakState, rc: int) -> list[tuple[str, KeccakState]]:
    """Intermediate states after each step of one round (for debugging)."""
    steps = []
    for name, fn in (("theta", theta), ("rho", rho), ("pi", pi), ("chi", chi)):
        state = fn(state)
        steps.append((name, state))
    state = iota(state, rc)
    steps.append(("iota", state))
    return steps


def keccak_p(state: KeccakState, n_rounds: int) -> KeccakState:
    """Apply the last n_rounds rounds of the full schedule at this width."""
    full = full_round_count(state.b)
    if not 1 <= n_rounds <= full:
        raise ValueError(f"round count {n_rounds} outside 1..{full}")
    if state.w >= 8:
        return KeccakState.from_bytes(permute_bytes(state.to_bytes(), n_rounds))
    l = state.width_log
    for i in range(full - n_rounds, full):
        state = apply_round(state, round_constant(i, l))
    return state


def keccak_f(state: KeccakState) -> KeccakState:
    """The full permutation: 12 + 2l rounds."""
    return keccak_p(state, full_round_count(state.b))


def permute_bytes(data: bytes, n_rounds: int | None = None) -> bytes:
    """Permute a serialized byte-aligned state (the hot path).

    n_rounds=None applies the full schedule; otherwise the last n_rounds
    rounds, as in keccak_p.
    """
    b = 8 * len(data)
    if b not in WIDTHS or b < 200:
        raise ValueError(f"{len(data)} bytes is not a byte-aligned state size")
    full = full_round_count(b)
    n = full if n_rounds is None else n_rounds
    if not 1 <= n <= full:
        raise ValueError(f"round count {n} outside 1..{full}")
    return _backend.permute(data, full - n, n, ROUND_CONSTANTS)


@dataclass(frozen=True)
class PermutationSpec:
    """A fixed choice of width and round count: Keccak-p[b, n_rounds]."""

    width: int
    rounds: int

    def __post_init__(self):
        full = full_round_count(self.width)  # validates width
        if not 1 <= self.rounds <= full:
            raise ValueError(f"round count {self.rounds} outside 1..{full}")

    @classmethod
    def full(cls, width: int) -> "PermutationSpec":
        """Keccak-f[width]."""
        return cls(width, full_round_count(width))

    @property
    def width_bytes(self) -> int:
        if self.width % 8:
            raise ValueError(f"width {self.width} is not byte-aligned")
        return self.width // 8

    def permute(self, data: bytes) -> bytes:
        if 8 * len(data) != self.width:
            raise ValueError(f"state must be {self.width} bits, got {8 * len(data)}")
        return permute_bytes(data, self.rounds)

    def apply(self, state: KeccakState) -> KeccakState:
        if state.b != self.width:
            raise ValueError("state width does not match permutation width")
        return keccak_p(state, self.rounds)


def backend_name() -> str:
    """Which permutation backend got selected at import."""
    return "compiled" if KERNEL_LOADED else "pure-python"
