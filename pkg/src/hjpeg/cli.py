"""Command-line interface: compress, decompress, inspect, bench."""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import codec, container, entropy, metrics
from .codec import CodecConfig
from .image import Image, PgmError, generate_test_image, read_pgm, write_pgm
from .metrics import CompressionReport

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FORMAT = 3
EXIT_INVARIANT = 4

SYNTHETIC_KINDS = ("gradient", "checker", "noise")


class UsageError(ValueError):
    pass


class ParityError(ValueError):
    """Scalar and reduced reconstructions disagree."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _error_class(exc: Exception) -> str:
    """Machine-parsable kebab-case class name, e.g. BadMagicError -> bad-magic."""
    name = type(exc).__name__
    name = name.removesuffix("Error")
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def _config(mode: str, group_size: int, dc_diff: bool) -> CodecConfig:
    if mode == "reduced" and group_size < 2:
        raise UsageError("--group-size must be >= 2 with --entropy reduced")
    return CodecConfig(
        entropy_mode="scalar" if mode == "huffman" else "reduced",
        group_size=group_size if mode == "reduced" else 1,
        dc_diff=dc_diff,
    )


def _report(name: str, img: Image, cfg: CodecConfig,
            file: container.CompressedFile, data: bytes,
            restored: Image) -> CompressionReport:
    seq = codec.image_to_symbols(img, cfg).tolist()
    if cfg.entropy_mode == "reduced":
        symbols, _ = entropy.reduce_symbols(seq, cfg.group_size)
    else:
        symbols = seq
    freqs = entropy.build_frequency_table(symbols)
    original_bits = img.width * img.height * 8
    return CompressionReport(
        image=name,
        mode=cfg.entropy_mode,
        group_size=cfg.group_size,
        dc_diff=cfg.dc_diff,
        entropy_bits=metrics.empirical_entropy(freqs),
        l_avg=metrics.average_code_length(file.codebook, freqs),
        payload_cr=metrics.compression_ratio(original_bits, file.payload_bit_length),
        file_cr=metrics.compression_ratio(original_bits, len(data) * 8),
        psnr_db=metrics.psnr(img, restored),
    )


def cmd_compress(args) -> int:
    cfg = _config(args.entropy, args.group_size, args.dc_diff)
    img = read_pgm(Path(args.input).read_bytes())
    data = codec.compress_bytes(img, cfg)
    Path(args.output).write_bytes(data)
    file = container.deserialize(data)
    restored = codec.decompress(file)
    print(CompressionReport.CSV_HEADER)
    print(_report(Path(args.input).name, img, cfg, file, data, restored).csv_row())
    return EXIT_OK


def cmd_decompress(args) -> int:
    file = container.deserialize(Path(args.input).read_bytes())
    img = codec.decompress(file)
    Path(args.output).write_bytes(write_pgm(img))
    return EXIT_OK


def cmd_inspect(args) -> int:
    file = container.deserialize(Path(args.input).read_bytes())
    book = file.codebook
    print(f"mode: {'reduced' if file.reduced else 'scalar'}")
    print(f"group_size: {file.group_size}")
    print(f"dc_diff: {int(file.dc_diff)}")
    print(f"original: {file.orig_width}x{file.orig_height}")
    print(f"padded: {file.padded_width}x{file.padded_height}")
    print(f"pad_count: {file.pad_count}")
    print(f"symbol_count: {file.symbol_count}")
    print(f"payload_bits: {file.payload_bit_length}")
    print(f"codebook_symbols: {len(book.lengths)}")
    hist: dict[int, int] = {}
    for length in book.lengths.values():
        hist[length] = hist.get(length, 0) + 1
    for length in sorted(hist):
        print(f"code_length[{length}]: {hist[length]}")
    print(f"kraft_sum: {book.kraft_sum:g}")
    return EXIT_OK


def _load_corpus(corpus: str | None) -> list[tuple[str, Image]]:
    if corpus:
        paths = sorted(Path(corpus).glob("*.pgm"))
        if not paths:
            raise UsageError(f"no .pgm files in {corpus}")
        return [(p.name, read_pgm(p.read_bytes())) for p in paths]
    return [
        (f"synthetic:{kind}", generate_test_image(kind, 256, 256, seed=1))
        for kind in SYNTHETIC_KINDS
    ]


def bench_image(name: str, img: Image, group_size: int,
                dc_modes=(False, True)) -> list[CompressionReport]:
    """All entropy/DC configurations for one image, parity-checked."""
    reports = []
    for dc in dc_modes:
        restored_by_mode = {}
        for mode in ("huffman", "reduced"):
            cfg = _config(mode, group_size, dc)
            data = codec.compress_bytes(img, cfg)
            file = container.deserialize(data)
            restored = codec.decompress(file)
            restored_by_mode[mode] = restored
            reports.append(_report(name, img, cfg, file, data, restored))
        if restored_by_mode["huffman"] != restored_by_mode["reduced"]:
            raise ParityError(f"mode parity violated on {name} (dc_diff={dc})")
    return reports


def cmd_bench(args) -> int:
    corpus = _load_corpus(args.corpus)
    with ThreadPoolExecutor(max_workers=max(args.jobs, 1)) as pool:
        futures = [
            pool.submit(bench_image, name, img, args.group_size)
            for name, img in corpus
        ]
        results = [f.result() for f in futures]  # deterministic corpus order
    lines = [CompressionReport.CSV_HEADER]
    for reports in results:
        scalar_cr = {r.dc_diff: r.payload_cr for r in reports if r.mode == "scalar"}
        for r in reports:
            imp = None
            if r.mode == "reduced":
                imp = 100.0 * (r.payload_cr / scalar_cr[r.dc_diff] - 1.0)
            lines.append(r.csv_row(imp))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    print(text, end="")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="hjpeg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a PGM image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--entropy", choices=("huffman", "reduced"), default="reduced")
    p.add_argument("--group-size", type=int, default=4)
    p.add_argument("--dc-diff", action="store_true")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decompress a container to PGM")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("inspect", help="print container header and codebook stats")
    p.add_argument("input")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("bench", help="run the compression-ratio benchmark")
    p.add_argument("--corpus", help="directory of .pgm images (default: synthetic)")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--group-size", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParityError as exc:
        print(f"error: parity: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except container.InvariantError as exc:
        print(f"error: invariant: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PgmError, container.ContainerError, entropy.EntropyError) as exc:
        print(f"error: {_error_class(exc)}: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ValueError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
