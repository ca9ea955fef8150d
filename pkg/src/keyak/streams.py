"""Sequential byte streams.

All session-mode layers consume and produce data through these: an
append-only buffer with a separate read cursor. A run of consecutive bytes
taken from a stream by one consumer is a fragment.
"""
from __future__ import annotations

from .errors import StreamExhausted


class ByteStream:
    """Byte buffer readable and writable in sequential fashion."""

    __slots__ = ("_buf", "_pos")

    def __init__(self, data: bytes = b""):
        self._buf = bytearray(data)
        self._pos = 0

    def get(self) -> int:
        """Consume and return the next byte."""
        if self._pos >= len(self._buf):
            raise StreamExhausted("read past end of stream")
        b = self._buf[self._pos]
        self._pos += 1
        return b

    def put(self, byte: int) -> None:
        """Append one byte."""
        self._buf.append(byte)

    def has_more(self) -> bool:
        return self._pos < len(self._buf)

    def seek(self, pos: int = 0) -> None:
        """Reposition the read cursor (typically a rewind to 0)."""
        if pos < 0 or pos > len(self._buf):
            raise ValueError(f"seek position {pos} outside [0, {len(self._buf)}]")
        self._pos = pos

    def erase(self) -> None:
        """Drop all content and reset the cursor. Idempotent."""
        self._buf.clear()
        self._pos = 0

    # Bulk helpers; byte-for-byte equivalent to looping get()/put().

    def read(self, n: int) -> bytes:
        """Consume exactly n bytes."""
        if n > self.remaining():
            raise StreamExhausted(f"need {n} bytes, have {self.remaining()}")
        chunk = bytes(self._buf[self._pos : self._pos + n])
        self._pos += n
        return chunk

    def put_all(self, data: bytes) -> None:
        self._buf.extend(data)

    def remaining(self) -> int:
        return len(self._buf) - self._pos

    def getvalue(self) -> bytes:
        """Whole buffer regardless of cursor."""
        return bytes(self._buf)

    def __len__(self) -> int:
        return len(self._buf)

    def __repr__(self) -> str:
        return f"ByteStream({len(self._buf)} bytes, cursor={self._pos})"
