# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
"""Compiled Keccak-p byte-state kernel.

Same interface and results as _keccak_pure.permute; the round loop runs
without the GIL so parallel engine sparks overlap for real.
"""

from libc.stdint cimport uint64_t


cdef int _RHO[25]
cdef int _PI[25]
_rho_init = (
    0, 1, 62, 28, 27,
    36, 44, 6, 55, 20,
    3, 10, 43, 25, 39,
    41, 45, 15, 21, 8,
    18, 2, 61, 56, 14,
)
for _i in range(25):
    _RHO[_i] = _rho_init[_i]
    _PI[_i] = (_i // 5) + 5 * ((2 * (_i % 5) + 3 * (_i // 5)) % 5)


cdef void _rounds(uint64_t *lanes, int w, uint64_t mask,
                  const uint64_t *rc, int first, int n) noexcept nogil:
    cdef uint64_t c[5]
    cdef uint64_t b[25]
    cdef uint64_t d, cc
    cdef int r, x, i, s
    for r in range(first, first + n):
        # theta
        for x in range(5):
            c[x] = lanes[x] ^ lanes[x + 5] ^ lanes[x + 10] ^ lanes[x + 15] ^ lanes[x + 20]
        for x in range(5):
            cc = c[(x + 1) % 5]
            d = c[(x + 4) % 5] ^ (((cc << 1) | (cc >> (w - 1))) & mask)
            for i in range(x, 25, 5):
                lanes[i] ^= d
        # rho + pi
        for i in range(25):
            s = _RHO[i] % w
            if s:
                b[_PI[i]] = ((lanes[i] << s) | (lanes[i] >> (w - s))) & mask
            else:
                b[_PI[i]] = lanes[i]
        # chi
        for i in range(0, 25, 5):
            for x in range(5):
                lanes[i + x] = b[i + x] ^ ((~b[i + (x + 1) % 5]) & b[i + (x + 2) % 5] & mask)
        # iota
        lanes[0] = (lanes[0] ^ rc[r]) & mask


def permute(data, int first_round, int n_rounds, rcs):
    """Apply rounds first_round..first_round+n_rounds-1 to a serialized state."""
    cdef Py_ssize_t nbytes = len(data)
    cdef int lane_bytes = <int>(nbytes // 25)
    if 25 * lane_bytes != nbytes or lane_bytes not in (1, 2, 4, 8):
        raise ValueError(f"bad state size {nbytes} bytes")
    cdef int w = 8 * lane_bytes
    cdef uint64_t mask = (<uint64_t>0xFFFFFFFFFFFFFFFF) >> (64 - w)
    cdef uint64_t lanes[25]
    cdef uint64_t rc[24]
    cdef const unsigned char[::1] buf = data
    cdef int i, j
    if len(rcs) < first_round + n_rounds:
        raise ValueError("round-constant table too short")
    for i in range(first_round, first_round + n_rounds):
        rc[i] = <uint64_t>rcs[i]
    for i in range(25):
        lanes[i] = 0
        for j in range(lane_bytes):
            lanes[i] |= (<uint64_t>buf[i * lane_bytes + j]) << (8 * j)
    with nogil:
        _rounds(lanes, w, mask, rc, first_round, n_rounds)
    out = bytearray(nbytes)
    cdef unsigned char[::1] ov = out
    for i in range(25):
        for j in range(lane_bytes):
            ov[i * lane_bytes + j] = <unsigned char>((lanes[i] >> (8 * j)) & 0xFF)
    return bytes(out)
