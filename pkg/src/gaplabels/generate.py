"""Seeded random treebank generation for tests and benchmarks.

Trees are built as random continuous bracketings (random arity splits,
optional single-child wrappers), then token indices are shuffled by a
Poisson-distributed number of transpositions, which introduces crossing
branches at a controlled rate.  Generation is deterministic in the
parameters: the same GenParams always produce byte-identical treebanks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .tree import ConstTree, Internal, Leaf, Node, Token, block_degree

DEFAULT_NONTERMINALS = ("S", "NP", "VP", "PP", "ADJP", "ADVP")
DEFAULT_POS_TAGS = ("NN", "VB", "DT", "JJ", "IN", "RB", "PRP")


@dataclass(frozen=True)
class GenParams:
    """Parameters of the random treebank.

    disc_rate is the expected number of token transpositions per
    sentence; 0 keeps every tree continuous.  root_label defaults to
    the decoder's fallback label so that even one-token sentences
    survive an encode/decode round trip unchanged.
    """

    seed: int = 0
    sentences: int = 100
    min_tokens: int = 1
    max_tokens: int = 40
    max_arity: int = 4
    unary_prob: float = 0.1
    disc_rate: float = 0.0
    nonterminals: Sequence[str] = DEFAULT_NONTERMINALS
    pos_tags: Sequence[str] = DEFAULT_POS_TAGS
    root_label: str = "X"

    def __post_init__(self):
        if self.min_tokens < 1 or self.max_tokens < self.min_tokens:
            raise ValueError("token bounds must satisfy 1 <= min <= max")
        if self.max_arity < 2:
            raise ValueError("max_arity must be at least 2")
        if not 0.0 <= self.unary_prob <= 1.0:
            raise ValueError("unary_prob must be within [0, 1]")
        if self.disc_rate < 0.0:
            raise ValueError("disc_rate must be non-negative")
        if not self.nonterminals or not self.pos_tags:
            raise ValueError("label inventories must be non-empty")


def _poisson(rng: random.Random, lam: float) -> int:
    if lam <= 0:
        return 0
    threshold = math.exp(-lam)
    count = 0
    p = 1.0
    while True:
        p *= rng.random()
        if p <= threshold:
            return count
        count += 1


def _leaf_node(
    rng: random.Random, slot: int, order: list[int], poses: list[str], params: GenParams
) -> Node:
    index = order[slot]
    pos = poses[index]
    node: Node = Leaf(Token(index, f"{pos.lower()}{index}", pos))
    wraps = 0
    while wraps < 3 and rng.random() < params.unary_prob:
        node = Internal(rng.choice(params.nonterminals), [node])
        wraps += 1
    return node


def _split_spans(rng: random.Random, lo: int, hi: int, max_arity: int):
    size = hi - lo
    arity = rng.randint(2, min(max_arity, size))
    cuts = sorted(rng.sample(range(lo + 1, hi), arity - 1))
    edges = [lo] + cuts + [hi]
    return list(zip(edges, edges[1:]))


def _build_span(
    rng: random.Random, lo: int, hi: int, order: list[int], poses: list[str],
    params: GenParams,
) -> Node:
    """Random tree over token slots [lo, hi); iterative to spare the stack."""
    if hi - lo == 1:
        return _leaf_node(rng, lo, order, poses, params)
    frames = [[_split_spans(rng, lo, hi, params.max_arity), 0, []]]
    while True:
        frame = frames[-1]
        spans, idx, built = frame
        if idx == len(spans):
            frames.pop()
            node: Node = Internal(rng.choice(params.nonterminals), built)
            if rng.random() < params.unary_prob:
                node = Internal(rng.choice(params.nonterminals), [node])
            if not frames:
                return node
            frames[-1][2].append(node)
            continue
        frame[1] += 1
        sub_lo, sub_hi = spans[idx]
        if sub_hi - sub_lo == 1:
            built.append(_leaf_node(rng, sub_lo, order, poses, params))
        else:
            frames.append([_split_spans(rng, sub_lo, sub_hi, params.max_arity), 0, []])


def _one_tree(rng: random.Random, params: GenParams) -> ConstTree:
    n = rng.randint(params.min_tokens, params.max_tokens)
    poses = [rng.choice(params.pos_tags) for _ in range(n)]
    order = list(range(n))
    if n >= 2:
        for _ in range(_poisson(rng, params.disc_rate)):
            a, b = rng.sample(range(n), 2)
            order[a], order[b] = order[b], order[a]
    if n == 1:
        root = Internal(params.root_label, [_leaf_node(rng, 0, order, poses, params)])
    else:
        spans = _split_spans(rng, 0, n, params.max_arity)
        children = []
        for lo, hi in spans:
            children.append(_build_span(rng, lo, hi, order, poses, params))
        root = Internal(params.root_label, children)
    return ConstTree(root)


def generate(params: GenParams) -> list[ConstTree]:
    """The deterministic random treebank described by params.

    With disc_rate > 0 the corpus is guaranteed to contain at least one
    tree with crossing branches (regenerating deterministically in the
    rare case the random draws produce none).
    """
    for attempt in range(100):
        corpus = [
            _one_tree(random.Random(f"{params.seed}:{attempt}:{k}"), params)
            for k in range(params.sentences)
        ]
        if (
            params.disc_rate <= 0
            or params.sentences == 0
            or params.max_tokens < 2
            or any(block_degree(t) > 1 for t in corpus)
        ):
            return corpus
    raise RuntimeError(
        "could not generate a corpus with crossing branches; "
        "raise disc_rate or the corpus size"
    )
