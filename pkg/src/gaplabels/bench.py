"""Throughput measurement for the codec, pure vs compiled kernels.

Times encode and decode over a pre-generated corpus held in memory, so
the numbers cover the codec alone (no parsing or file writing).  Used
by the `gaplabels bench` subcommand and the performance tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import _backend
from .codec import decode_tree, encode_tree
from .generate import GenParams, generate
from .permcodec import PermVariant


@dataclass(frozen=True)
class BenchResult:
    backend: str
    variant: str
    sentences: int
    tokens: int
    encode_per_s: float
    decode_per_s: float

    def format_row(self) -> str:
        return (
            f"{self.backend:<10} {self.variant:<14} "
            f"{self.encode_per_s:>12.0f} {self.decode_per_s:>12.0f}"
        )


HEADER = f"{'backend':<10} {'variant':<14} {'encode/s':>12} {'decode/s':>12}"


def _best_time(fn, repeats: int) -> float:
    best = None
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best


def measure(
    variant: PermVariant,
    sentences: int = 500,
    length: int = 20,
    seed: int = 0,
    disc_rate: float = 0.15,
    repeats: int = 3,
    backend: str | None = None,
) -> BenchResult:
    """Codec throughput for one variant on one kernel backend."""
    previous = _backend.get_backend()
    if backend is not None:
        _backend.set_backend(backend)
    try:
        corpus = generate(
            GenParams(
                seed=seed,
                sentences=sentences,
                min_tokens=length,
                max_tokens=length,
                disc_rate=disc_rate,
            )
        )
        material = []
        for tree in corpus:
            labels = encode_tree(tree, variant)
            tokens = [(tok.form, tok.pos) for tok in tree.tokens()]
            material.append((tree, labels, tokens))

        def encode_all():
            for tree, _, _ in material:
                encode_tree(tree, variant)

        def decode_all():
            for _, labels, tokens in material:
                decode_tree(labels, tokens, variant)

        encode_time = _best_time(encode_all, repeats)
        decode_time = _best_time(decode_all, repeats)
        return BenchResult(
            backend=_backend.get_backend(),
            variant=variant.value,
            sentences=sentences,
            tokens=sentences * length,
            encode_per_s=sentences / encode_time if encode_time else float("inf"),
            decode_per_s=sentences / decode_time if decode_time else float("inf"),
        )
    finally:
        _backend.set_backend(previous)


def compare_backends(
    variants=tuple(PermVariant),
    sentences: int = 500,
    length: int = 20,
    seed: int = 0,
    repeats: int = 3,
) -> list[BenchResult]:
    """measure() over every available backend and requested variant."""
    results = []
    for backend in _backend.available_backends():
        for variant in variants:
            results.append(
                measure(
                    variant,
                    sentences=sentences,
                    length=length,
                    seed=seed,
                    repeats=repeats,
                    backend=backend,
                )
            )
    return results
