"""End-to-end compressor/decompressor for the block-DCT pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import container, entropy, quantize, transform
from .container import CompressedFile
from .image import Image, pad_to_blocks


@dataclass
class CodecConfig:
    entropy_mode: str = "reduced"  # "scalar" | "reduced"
    group_size: int = 4
    dc_diff: bool = False
    quant_table: np.ndarray = field(default_factory=quantize.default_quant_table)

    def __post_init__(self):
        if self.entropy_mode not in ("scalar", "reduced"):
            raise ValueError(f"unknown entropy mode {self.entropy_mode!r}")
        if self.entropy_mode == "scalar":
            self.group_size = 1
        elif self.group_size < 2:
            raise ValueError("reduced mode needs group size >= 2")
        self.quant_table = quantize.validate_quant_table(self.quant_table)


def _to_blocks(pixels: np.ndarray) -> np.ndarray:
    """(h, w) array -> (n_blocks, 8, 8) in row-major block order."""
    h, w = pixels.shape
    return (
        pixels.reshape(h // 8, 8, w // 8, 8)
        .transpose(0, 2, 1, 3)
        .reshape(-1, 8, 8)
    )


def _from_blocks(blocks: np.ndarray, h: int, w: int) -> np.ndarray:
    return (
        blocks.reshape(h // 8, w // 8, 8, 8)
        .transpose(0, 2, 1, 3)
        .reshape(h, w)
    )


def image_to_symbols(img: Image, cfg: CodecConfig) -> np.ndarray:
    """Transform + quantize + zigzag every block; flat coefficient stream."""
    padded = pad_to_blocks(img)
    blocks = _to_blocks(padded.pixels)
    coeffs = transform.fdct(transform.level_shift(blocks))
    levels = quantize.quantize(coeffs, cfg.quant_table)
    seq = quantize.zigzag(levels).reshape(-1).astype(np.int64)
    if cfg.dc_diff:
        seq = quantize.dc_differential_encode(seq)
    return seq


def compress(img: Image, cfg: CodecConfig | None = None) -> CompressedFile:
    cfg = cfg or CodecConfig()
    padded = pad_to_blocks(img)
    seq = image_to_symbols(img, cfg)
    scalars = seq.tolist()
    if cfg.entropy_mode == "reduced":
        symbols, pad_count = entropy.reduce_symbols(scalars, cfg.group_size)
    else:
        symbols, pad_count = scalars, 0
    freqs = entropy.build_frequency_table(symbols)
    book = entropy.build_codebook(freqs, cfg.group_size)
    payload, bit_length = entropy.encode(symbols, book)
    return CompressedFile(
        group_size=cfg.group_size,
        dc_diff=cfg.dc_diff,
        orig_width=img.width,
        orig_height=img.height,
        padded_width=padded.width,
        padded_height=padded.height,
        pad_count=pad_count,
        symbol_count=len(symbols),
        quant_table=cfg.quant_table,
        codebook=book,
        payload=payload,
        payload_bit_length=bit_length,
    )


def decompress(file: CompressedFile) -> Image:
    file.validate()
    symbols = entropy.decode(
        file.payload, file.codebook, file.symbol_count, file.payload_bit_length
    )
    if file.reduced:
        scalars = entropy.expand_symbols(symbols, file.group_size, file.pad_count)
    else:
        scalars = symbols
    n_blocks = (file.padded_width // 8) * (file.padded_height // 8)
    seq = np.asarray(scalars, dtype=np.int64)
    if seq.size != n_blocks * 64:
        raise container.InvariantError(
            f"decoded {seq.size} coefficients, expected {n_blocks * 64}"
        )
    if file.dc_diff:
        seq = quantize.dc_differential_decode(seq)
    levels = quantize.inverse_zigzag(seq.reshape(n_blocks, 64))
    coeffs = quantize.dequantize(levels, file.quant_table)
    pixels = transform.level_unshift(transform.idct(coeffs))
    full = _from_blocks(pixels, file.padded_height, file.padded_width)
    return Image(full[: file.orig_height, : file.orig_width])


def compress_bytes(img: Image, cfg: CodecConfig | None = None) -> bytes:
    return container.serialize(compress(img, cfg))


def decompress_bytes(data: bytes) -> Image:
    return decompress(container.deserialize(data))
