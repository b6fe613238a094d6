"""Grayscale block-DCT image codec with a symbol-grouping Huffman entropy stage."""

from .codec import CodecConfig, compress, compress_bytes, decompress, decompress_bytes
from .image import Image, generate_test_image, pad_to_blocks, read_pgm, write_pgm

__all__ = [
    "CodecConfig",
    "Image",
    "compress",
    "compress_bytes",
    "decompress",
    "decompress_bytes",
    "generate_test_image",
    "pad_to_blocks",
    "read_pgm",
    "write_pgm",
]

__version__ = "0.1.0"
