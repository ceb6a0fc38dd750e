"""Command-line interface.

USAGE: gaplabels <subcommand> [options]

Subcommands:
  encode     treebank lines -> per-token label file
  decode     label file -> treebank lines
  roundtrip  check encode+decode returns every tree unchanged
  eval       bracket scores of a predicted treebank against gold
  stats      frequency statistics over a label file
  unseen     test-set label values missing from a training file
  corrupt    randomly damage label components (robustness studies)
  baseline   tag-conditioned most-frequent-label baseline
  generate   write a seeded random treebank
  bench      codec throughput, pure vs compiled kernels

Files are UTF-8; "-" (the default) means stdin/stdout.  Exit codes:
0 success, 1 bad usage, 2 malformed data.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from . import _backend, bench
from .codec import decode_tree, encode_tree
from .contcodec import FALLBACK_LABEL
from .errors import GapLabelsError
from .generate import GenParams, generate
from .harness import (
    COMPONENTS,
    baseline_fit,
    baseline_predict,
    corrupt,
    label_stats,
    unseen_report,
)
from .permcodec import PermVariant
from .scoring import DEFAULT_PUNCT_POS, EvalParams, score
from .treebank import (
    format_label_row,
    parse_discbracket,
    parse_label_row,
    read_labels,
    read_treebank,
    rows_for_tree,
    write_discbracket,
)

_VARIANT_CHOICES = [v.value for v in PermVariant]
_FAMILY_CHOICES = ["none", "dptb", "tiger-negra"]
_CHUNK_LINES = 200


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures exiting 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _open_in(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdin)
    return open(path, "r", encoding="utf-8")


def _open_out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8")


def _chunked(items: Iterable, size: int) -> Iterator[list]:
    chunk = []
    for item in items:
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _run_chunks(worker, payloads, threads: int) -> Iterator[str]:
    """Run chunk workers in order, inline or across processes."""
    if threads <= 1:
        results = map(worker, payloads)
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        results = pool.map(worker, payloads)
    try:
        for status, text in results:
            if status == "err":
                raise GapLabelsError(text)
            yield text
    finally:
        if threads > 1:
            pool.shutdown()


def _tree_lines(stream) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if line:
            yield lineno, line


def _label_blocks(stream) -> Iterator[list[tuple[int, str]]]:
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            if block:
                yield block
                block = []
        else:
            block.append((lineno, line))
    if block:
        yield block


def _encode_chunk(payload):
    variant_value, family, items = payload
    variant = PermVariant(variant_value)
    try:
        parts = []
        for lineno, line in items:
            tree = parse_discbracket(line, lineno)
            labels = encode_tree(tree, variant, family)
            for row in rows_for_tree(tree, labels):
                parts.append(format_label_row(row))
                parts.append("\n")
            parts.append("\n")
        return ("ok", "".join(parts))
    except GapLabelsError as exc:
        return ("err", str(exc))


def _decode_chunk(payload):
    variant_value, family, fallback, blocks = payload
    variant = PermVariant(variant_value)
    try:
        parts = []
        for block in blocks:
            rows = [parse_label_row(line, lineno) for lineno, line in block]
            labels = [row.label for row in rows]
            tokens = [(row.form, row.pos) for row in rows]
            tree = decode_tree(labels, tokens, variant, fallback, family)
            parts.append(write_discbracket(tree))
            parts.append("\n")
        return ("ok", "".join(parts))
    except GapLabelsError as exc:
        return ("err", str(exc))


def _roundtrip_chunk(payload):
    variant_values, family, items = payload
    variants = [PermVariant(v) for v in variant_values]
    try:
        count = 0
        failures = []
        for lineno, line in items:
            tree = parse_discbracket(line, lineno)
            tokens = [(tok.form, tok.pos) for tok in tree.tokens()]
            count += 1
            for variant in variants:
                labels = encode_tree(tree, variant, family)
                back = decode_tree(labels, tokens, variant, FALLBACK_LABEL, family)
                if back != tree:
                    failures.append(
                        (
                            f"line {lineno} ({variant.value})",
                            write_discbracket(tree),
                            write_discbracket(back),
                        )
                    )
        return ("ok", (count, failures))
    except GapLabelsError as exc:
        return ("err", str(exc))


def cmd_encode(args) -> int:
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        payloads = (
            (args.variant, args.pos_family, chunk)
            for chunk in _chunked(_tree_lines(fin), _CHUNK_LINES)
        )
        for text in _run_chunks(_encode_chunk, payloads, args.threads):
            fout.write(text)
    return 0


def cmd_decode(args) -> int:
    with _open_in(args.input) as fin, _open_out(args.output) as fout:
        payloads = (
            (args.variant, args.pos_family, args.fallback_label, chunk)
            for chunk in _chunked(_label_blocks(fin), _CHUNK_LINES // 10)
        )
        for text in _run_chunks(_decode_chunk, payloads, args.threads):
            fout.write(text)
    return 0


def cmd_roundtrip(args) -> int:
    variant_values = (
        _VARIANT_CHOICES if args.variant == "all" else [args.variant]
    )
    total = 0
    failures: list[str] = []
    with _open_in(args.input) as fin:
        payloads = (
            (variant_values, args.pos_family, chunk)
            for chunk in _chunked(_tree_lines(fin), _CHUNK_LINES)
        )
        for count, fails in _run_chunks(_roundtrip_chunk, payloads, args.threads):
            total += count
            failures.extend(fails)
    variants_text = ", ".join(variant_values)
    print(f"checked {total} trees under: {variants_text}")
    if failures:
        where = ", ".join(f[0] for f in failures[:10])
        more = "" if len(failures) <= 10 else f" (+{len(failures) - 10} more)"
        print(f"MISMATCH in {len(failures)} cases: {where}{more}", file=sys.stderr)
        print(f"first diff at {failures[0][0]}:", file=sys.stderr)
        print(f"  expected: {failures[0][1]}", file=sys.stderr)
        print(f"  restored: {failures[0][2]}", file=sys.stderr)
        return 2
    print("all trees restored exactly")
    return 0


def cmd_eval(args) -> int:
    params = EvalParams(
        punct_pos=(
            frozenset(args.punct_pos.split(","))
            if args.punct_pos is not None
            else DEFAULT_PUNCT_POS
        ),
        ignore_labels=(
            frozenset(x for x in args.ignore_labels.split(",") if x)
            if args.ignore_labels is not None
            else None
        ),
        include_root=args.include_root,
    )
    with _open_in(args.gold) as fg:
        gold = list(read_treebank(fg))
    with _open_in(args.pred) as fp:
        pred = list(read_treebank(fp))
    report = score(gold, pred, params)
    with _open_out(args.output) as fout:
        if args.format == "keys":
            fout.write(report.format_keyvalues() + "\n")
        else:
            fout.write(report.format_text() + "\n")
    return 0


def cmd_stats(args) -> int:
    with _open_in(args.input) as fin:
        stats = label_stats(read_labels(fin))
    with _open_out(args.output) as fout:
        fout.write(stats.format_text(top=args.top) + "\n")
    return 0


def cmd_unseen(args) -> int:
    components = COMPONENTS if args.component == "all" else [args.component]
    with _open_in(args.train) as ft:
        train = [list(s) for s in read_labels(ft)]
    with _open_in(args.test) as fe:
        test = [list(s) for s in read_labels(fe)]
    with _open_out(args.output) as fout:
        for component in components:
            report = unseen_report(train, test, component)
            fout.write(report.format_text() + "\n")
    return 0


def cmd_corrupt(args) -> int:
    components = (
        COMPONENTS
        if args.components is None
        else tuple(args.components.split(","))
    )
    with _open_in(args.input) as fin:
        sentences = list(read_labels(fin))
    try:
        damaged = corrupt(sentences, args.rate, args.seed, components)
    except ValueError as exc:
        raise GapLabelsError(str(exc)) from exc
    with _open_out(args.output) as fout:
        for sentence in damaged:
            for row in sentence:
                fout.write(format_label_row(row) + "\n")
            fout.write("\n")
    return 0


def cmd_baseline(args) -> int:
    variant = PermVariant(args.variant)
    with _open_in(args.train) as ft:
        model = baseline_fit(read_labels(ft))
    with _open_in(args.test) as fe:
        gold = list(read_treebank(fe))
    predicted = []
    for tree in gold:
        tokens = [(tok.form, tok.pos) for tok in tree.tokens()]
        labels = baseline_predict(model, tokens)
        predicted.append(
            decode_tree(labels, tokens, variant, FALLBACK_LABEL, args.pos_family)
        )
    report = score(gold, predicted)
    with _open_out(args.output) as fout:
        fout.write(report.format_text() + "\n")
    return 0


def cmd_generate(args) -> int:
    params = GenParams(
        seed=args.seed,
        sentences=args.sentences,
        min_tokens=args.min_tokens,
        max_tokens=args.max_tokens,
        max_arity=args.max_arity,
        unary_prob=args.unary_prob,
        disc_rate=args.disc_rate,
    )
    with _open_out(args.output) as fout:
        for tree in generate(params):
            fout.write(write_discbracket(tree) + "\n")
    return 0


def cmd_bench(args) -> int:
    variants = (
        tuple(PermVariant)
        if args.variant == "all"
        else (PermVariant(args.variant),)
    )
    if args.compare_backends:
        results = bench.compare_backends(
            variants,
            sentences=args.sentences,
            length=args.length,
            seed=args.seed,
            repeats=args.repeats,
        )
    else:
        results = [
            bench.measure(
                variant,
                sentences=args.sentences,
                length=args.length,
                seed=args.seed,
                repeats=args.repeats,
            )
            for variant in variants
        ]
    with _open_out(args.output) as fout:
        fout.write(
            f"active backend: {_backend.get_backend()} "
            f"(available: {', '.join(_backend.available_backends())})\n"
        )
        fout.write(bench.HEADER + "\n")
        for result in results:
            fout.write(result.format_row() + "\n")
    return 0


def _add_io(sub, output_only=False):
    if not output_only:
        sub.add_argument("--input", "-i", default="-", help="input file (default stdin)")
    sub.add_argument("--output", "-o", default="-", help="output file (default stdout)")


def _add_variant(sub, allow_all=False, default=None):
    choices = _VARIANT_CHOICES + (["all"] if allow_all else [])
    kwargs = {"choices": choices}
    if default is None:
        kwargs["required"] = True
    else:
        kwargs["default"] = default
    sub.add_argument("--variant", **kwargs)
    sub.add_argument(
        "--pos-family",
        choices=_FAMILY_CHOICES,
        default="none",
        help="coarse tag grouping for pointer-simple",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gaplabels",
        description="Lossless per-token labeling of constituency trees "
        "with crossing branches.",
    )
    parser.add_argument("--version", action="version", version="gaplabels 0.1.0")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("encode", help="treebank -> label file")
    _add_variant(p)
    _add_io(p)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_encode)

    p = subs.add_parser("decode", help="label file -> treebank")
    _add_variant(p)
    _add_io(p)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument(
        "--fallback-label",
        default=FALLBACK_LABEL,
        help="label for nodes the input leaves unnamed",
    )
    p.set_defaults(func=cmd_decode)

    p = subs.add_parser("roundtrip", help="verify encode+decode is exact")
    _add_variant(p, allow_all=True, default="all")
    p.add_argument("--input", "-i", default="-")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_roundtrip)

    p = subs.add_parser("eval", help="bracket scores, pred vs gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--punct-pos", default=None, help="comma-separated tags to drop")
    p.add_argument(
        "--ignore-labels",
        default=None,
        help="comma-separated labels to skip (default: each gold root label)",
    )
    p.add_argument("--include-root", action="store_true")
    p.add_argument("--format", choices=["text", "keys"], default="text")
    _add_io(p, output_only=True)
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("stats", help="label component statistics")
    _add_io(p)
    p.add_argument("--top", type=int, default=10)
    p.set_defaults(func=cmd_stats)

    p = subs.add_parser("unseen", help="test values missing from train")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument(
        "--component", choices=list(COMPONENTS) + ["all"], default="all"
    )
    _add_io(p, output_only=True)
    p.set_defaults(func=cmd_unseen)

    p = subs.add_parser("corrupt", help="randomly damage label components")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--components",
        default=None,
        help=f"comma-separated subset of {','.join(COMPONENTS)}",
    )
    _add_io(p)
    p.set_defaults(func=cmd_corrupt)

    p = subs.add_parser("baseline", help="tag-conditioned mode baseline")
    p.add_argument("--train", required=True, help="label file to fit on")
    p.add_argument("--test", required=True, help="gold treebank to score on")
    _add_variant(p)
    _add_io(p, output_only=True)
    p.set_defaults(func=cmd_baseline)

    p = subs.add_parser("generate", help="seeded random treebank")
    p.add_argument("--sentences", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-tokens", type=int, default=1)
    p.add_argument("--max-tokens", type=int, default=40)
    p.add_argument("--max-arity", type=int, default=4)
    p.add_argument("--unary-prob", type=float, default=0.1)
    p.add_argument("--disc-rate", type=float, default=0.0)
    _add_io(p, output_only=True)
    p.set_defaults(func=cmd_generate)

    p = subs.add_parser("bench", help="codec throughput")
    _add_variant(p, allow_all=True, default="all")
    p.add_argument("--sentences", type=int, default=500)
    p.add_argument("--length", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--compare-backends", action="store_true")
    _add_io(p, output_only=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits for usage errors, --help, and --version; report
        # the status as a return value so callers never see SystemExit.
        if isinstance(exc.code, int):
            return exc.code
        return 0 if exc.code is None else 1
    try:
        return args.func(args)
    except GapLabelsError as exc:
        print(f"gaplabels: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"gaplabels: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
