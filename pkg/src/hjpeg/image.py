"""8-bit grayscale images: PGM I/O, synthetic generators, block padding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BLOCK_SIZE = 8


class PgmError(ValueError):
    """Base class for malformed PGM input."""


class PgmMagicError(PgmError):
    """Magic number is neither P2 nor P5."""


class PgmMaxvalError(PgmError):
    """Declared maxval is outside [1, 255]."""


class PgmTruncatedError(PgmError):
    """Sample data ends before width*height samples."""


@dataclass(frozen=True, eq=False)
class Image:
    """Grayscale image; pixels is a (height, width) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.ndim != 2 or px.size == 0:
            raise ValueError("pixels must be a non-empty 2-D array")
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


def _tokenize_header(data: bytes, count: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated integer tokens, skipping # comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last one.
    """
    tokens: list[int] = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i] == ord("#"):
            while i < n and data[i] not in (0x0A, 0x0D):
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace():
            i += 1
        if i == start:
            raise PgmTruncatedError("header ended before all fields were read")
        try:
            tokens.append(int(data[start:i]))
        except ValueError:
            raise PgmError(f"non-numeric header field {data[start:i]!r}") from None
        i += 1  # consume the single whitespace terminator
    return tokens, i


def read_pgm(data: bytes) -> Image:
    """Parse a binary (P5) or ASCII (P2) PGM with maxval <= 255."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmMagicError(f"bad PGM magic {magic!r}")
    fields, offset = _tokenize_header(data[2:], 3)
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PgmError(f"invalid dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise PgmMaxvalError(f"maxval {maxval} not in [1, 255]")
    count = width * height
    body = data[2 + offset :]
    if magic == b"P5":
        if len(body) < count:
            raise PgmTruncatedError(
                f"expected {count} samples, found {len(body)}"
            )
        samples = np.frombuffer(body[:count], dtype=np.uint8)
    else:
        values = body.split()
        if len(values) < count:
            raise PgmTruncatedError(
                f"expected {count} samples, found {len(values)}"
            )
        samples = np.array([int(v) for v in values[:count]], dtype=np.int64)
        if samples.min() < 0 or samples.max() > maxval:
            raise PgmError("sample value outside [0, maxval]")
        samples = samples.astype(np.uint8)
    return Image(samples.reshape(height, width))


def write_pgm(img: Image) -> bytes:
    """Serialize as binary P5; read_pgm(write_pgm(img)) == img."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()


def generate_test_image(kind: str, width: int, height: int, seed: int = 0) -> Image:
    """Deterministic synthetic image: gradient, checker, or noise."""
    if width < 1 or height < 1:
        raise ValueError("dimensions must be >= 1")
    if kind == "gradient":
        if width == 1:
            row = np.zeros(1, dtype=np.uint8)
        else:
            row = (255 * np.arange(width) // (width - 1)).astype(np.uint8)
        pixels = np.tile(row, (height, 1))
    elif kind == "checker":
        x = np.arange(width)
        y = np.arange(height)[:, None]
        pixels = (((x + y) % 2) * 255).astype(np.uint8)
    elif kind == "noise":
        rng = np.random.default_rng(seed)
        pixels = rng.integers(0, 256, size=(height, width), dtype=np.uint8)
    else:
        raise ValueError(f"unknown image kind {kind!r}")
    return Image(pixels)


def pad_to_blocks(img: Image) -> Image:
    """Pad width and height up to multiples of 8 by replicating edge samples."""
    pad_h = (-img.height) % BLOCK_SIZE
    pad_w = (-img.width) % BLOCK_SIZE
    if pad_h == 0 and pad_w == 0:
        return img
    return Image(np.pad(img.pixels, ((0, pad_h), (0, pad_w)), mode="edge"))
