"""Entropy, average code length, compression ratio, and PSNR."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import CodeBook, FrequencyTable, UnknownSymbolError
from .image import Image


def empirical_entropy(freqs: FrequencyTable) -> float:
    """First-order entropy in bits/symbol of the empirical distribution."""
    if not freqs.counts:
        raise ValueError("empty frequency table")
    total = freqs.total
    return -sum(
        (c / total) * math.log2(c / total) for c in freqs.counts.values()
    )


def average_code_length(book: CodeBook, freqs: FrequencyTable) -> float:
    """Expected code length in bits under the empirical distribution."""
    try:
        weighted = sum(
            book.lengths[sym] * count for sym, count in freqs.counts.items()
        )
    except KeyError as exc:
        raise UnknownSymbolError(f"symbol {exc.args[0]!r} not in codebook") from None
    return weighted / freqs.total


def compression_ratio(original_bits: int, compressed_bits: int) -> float:
    if original_bits <= 0 or compressed_bits <= 0:
        raise ValueError("bit counts must be positive")
    return original_bits / compressed_bits


def psnr(a: Image, b: Image) -> float:
    """Peak signal-to-noise ratio in dB; infinity for identical images."""
    if a.pixels.shape != b.pixels.shape:
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    diff = a.pixels.astype(np.float64) - b.pixels.astype(np.float64)
    mse = np.mean(diff * diff)
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


@dataclass
class CompressionReport:
    image: str
    mode: str  # "scalar" | "reduced"
    group_size: int
    dc_diff: bool
    entropy_bits: float
    l_avg: float
    payload_cr: float
    file_cr: float
    psnr_db: float

    CSV_HEADER = (
        "image,mode,group_size,dc_diff,entropy_bits,l_avg,"
        "payload_cr,file_cr,psnr_db,improvement_pct"
    )

    def csv_row(self, improvement_pct: float | None = None) -> str:
        imp = "" if improvement_pct is None else f"{improvement_pct:.4f}"
        psnr_s = "inf" if math.isinf(self.psnr_db) else f"{self.psnr_db:.4f}"
        return (
            f"{self.image},{self.mode},{self.group_size},"
            f"{int(self.dc_diff)},{self.entropy_bits:.6f},{self.l_avg:.6f},"
            f"{self.payload_cr:.6f},{self.file_cr:.6f},{psnr_s},{imp}"
        )
