"""MSB-first bit packing for variable-length codes."""

from __future__ import annotations


class BitExhaustionError(ValueError):
    """Reader ran out of bits mid-code."""


class BitWriter:
    """Accumulates MSB-first codes into a byte buffer."""

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._nbits = 0

    def write(self, code: int, length: int):
        self._acc = (self._acc << length) | code
        self._nbits += length
        while self._nbits >= 8:
            self._nbits -= 8
            self._buf.append((self._acc >> self._nbits) & 0xFF)
        self._acc &= (1 << self._nbits) - 1

    @property
    def bit_length(self) -> int:
        return len(self._buf) * 8 + self._nbits

    def getvalue(self) -> bytes:
        """Byte buffer with the final partial byte zero-padded."""
        out = bytearray(self._buf)
        if self._nbits:
            out.append((self._acc << (8 - self._nbits)) & 0xFF)
        return bytes(out)


class BitReader:
    """Reads MSB-first bit fields from a byte buffer."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0
        self._acc = 0
        self._nbits = 0
        self.bits_consumed = 0

    def peek(self, length: int) -> int:
        """Top `length` bits without consuming them."""
        while self._nbits < length:
            if self._pos >= len(self._data):
                raise BitExhaustionError("bitstream exhausted")
            self._acc = (self._acc << 8) | self._data[self._pos]
            self._pos += 1
            self._nbits += 8
        return self._acc >> (self._nbits - length)

    def skip(self, length: int):
        if length > self._nbits:
            raise BitExhaustionError("cannot skip past buffered bits")
        self._nbits -= length
        self._acc &= (1 << self._nbits) - 1
        self.bits_consumed += length
