"""Labeled bracket scoring for trees with crossing branches.

A tree is scored as the multiset of (label, yield) pairs over its
internal nodes, where a yield is the set of token positions below the
node.  Yields are compared as sets, so a constituent covering a
non-contiguous span is matched exactly; a separate tally restricted to
those non-contiguous constituents is reported alongside the overall
scores, since they are the hard cases.

Following common practice, punctuation tokens (by tag) are removed and
the remaining tokens renumbered before comparison, the root node is
skipped unless asked for, and constituents whose label is in the
ignore set are dropped from both sides.  With ignore_labels=None each
sentence ignores its own gold root label.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Optional

from .errors import EvalAlignmentError
from .tree import ConstTree, Internal, Leaf

DEFAULT_PUNCT_POS = frozenset(
    {
        ",", ".", ":", ";", "``", "''", "-LRB-", "-RRB-", "-NONE-",
        "$,", "$.", "$(",
    }
)


@dataclass(frozen=True)
class EvalParams:
    """Knobs for bracket scoring."""

    punct_pos: frozenset = DEFAULT_PUNCT_POS
    ignore_labels: Optional[frozenset] = None
    include_root: bool = False


@dataclass
class ScoreReport:
    """Aggregated bracket counts with derived percentage scores."""

    matched: int = 0
    gold_total: int = 0
    pred_total: int = 0
    disc_matched: int = 0
    disc_gold_total: int = 0
    disc_pred_total: int = 0
    sentences: int = 0

    @staticmethod
    def _pct(num: int, denom: int) -> float:
        return 100.0 * num / denom if denom else 0.0

    @property
    def precision(self) -> float:
        return self._pct(self.matched, self.pred_total)

    @property
    def recall(self) -> float:
        return self._pct(self.matched, self.gold_total)

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def disc_precision(self) -> float:
        return self._pct(self.disc_matched, self.disc_pred_total)

    @property
    def disc_recall(self) -> float:
        return self._pct(self.disc_matched, self.disc_gold_total)

    @property
    def disc_f1(self) -> float:
        p, r = self.disc_precision, self.disc_recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def disc_zero_support(self) -> bool:
        """True when neither side has any non-contiguous constituent."""
        return self.disc_gold_total == 0 and self.disc_pred_total == 0

    def format_text(self) -> str:
        lines = [
            f"sentences            {self.sentences}",
            f"bracket precision    {self.precision:.2f}"
            f"  ({self.matched}/{self.pred_total})",
            f"bracket recall       {self.recall:.2f}"
            f"  ({self.matched}/{self.gold_total})",
            f"bracket F1           {self.f1:.2f}",
        ]
        if self.disc_zero_support:
            lines.append("discontinuous        none in either corpus")
        else:
            lines += [
                f"discont. precision   {self.disc_precision:.2f}"
                f"  ({self.disc_matched}/{self.disc_pred_total})",
                f"discont. recall      {self.disc_recall:.2f}"
                f"  ({self.disc_matched}/{self.disc_gold_total})",
                f"discont. F1          {self.disc_f1:.2f}",
            ]
        return "\n".join(lines)

    def format_keyvalues(self) -> str:
        pairs = [
            ("sentences", self.sentences),
            ("matched", self.matched),
            ("gold", self.gold_total),
            ("pred", self.pred_total),
            ("precision", repr(self.precision)),
            ("recall", repr(self.recall)),
            ("f1", repr(self.f1)),
            ("disc_matched", self.disc_matched),
            ("disc_gold", self.disc_gold_total),
            ("disc_pred", self.disc_pred_total),
            ("disc_precision", repr(self.disc_precision)),
            ("disc_recall", repr(self.disc_recall)),
            ("disc_f1", repr(self.disc_f1)),
        ]
        return "\n".join(f"{k}={v}" for k, v in pairs)


def _sentence_items(tree: ConstTree, params: EvalParams, ignore: frozenset):
    """(label, yield) Counter over internal nodes after punct removal."""
    renumber: dict[int, int] = {}
    rank = 0
    for tok in tree.tokens():
        if tok.pos not in params.punct_pos:
            renumber[tok.index] = rank
            rank += 1
    items: Counter = Counter()
    root = tree.root
    if isinstance(root, Leaf):
        return items, rank
    # Bottom-up yield computation over the skeleton.
    seq = []
    dfs = [root]
    while dfs:
        node = dfs.pop()
        seq.append(node)
        if isinstance(node, Internal):
            dfs.extend(node.children)
    yields: dict[int, frozenset] = {}
    for node in reversed(seq):
        if isinstance(node, Leaf):
            idx = renumber.get(node.token.index)
            yields[id(node)] = frozenset() if idx is None else frozenset((idx,))
            continue
        combined = frozenset().union(*(yields[id(c)] for c in node.children))
        yields[id(node)] = combined
        if node is root and not params.include_root:
            continue
        if not combined or node.label in ignore:
            continue
        items[(node.label, combined)] += 1
    return items, rank


def _is_contiguous(indices: frozenset) -> bool:
    return max(indices) - min(indices) + 1 == len(indices)


def score(
    gold: Iterable[ConstTree],
    pred: Iterable[ConstTree],
    params: EvalParams = EvalParams(),
) -> ScoreReport:
    """Micro-averaged bracket scores of pred against gold.

    The corpora must align one to one with identical token forms;
    EvalAlignmentError names the first sentence where they do not.
    """
    report = ScoreReport()
    missing = object()
    for number, (g, p) in enumerate(zip_longest(gold, pred, fillvalue=missing), 1):
        if g is missing or p is missing:
            raise EvalAlignmentError(
                f"corpora end at different lengths (sentence {number})"
            )
        g_forms = [tok.form for tok in g.tokens()]
        p_forms = [tok.form for tok in p.tokens()]
        if g_forms != p_forms:
            raise EvalAlignmentError(
                f"sentence {number}: token forms differ between corpora"
            )
        if params.ignore_labels is not None:
            ignore = params.ignore_labels
        elif params.include_root:
            # Counting roots while also ignoring every node that shares the
            # gold root's label would drop the roots again, so the derived
            # ignore set is only used when roots are excluded.
            ignore = frozenset()
        else:
            ignore = _root_label_set(g)
        g_items, g_rank = _sentence_items(g, params, ignore)
        p_items, p_rank = _sentence_items(p, params, ignore)
        if g_rank != p_rank:
            raise EvalAlignmentError(
                f"sentence {number}: token counts differ after punctuation "
                "removal"
            )
        common = g_items & p_items
        report.matched += sum(common.values())
        report.gold_total += sum(g_items.values())
        report.pred_total += sum(p_items.values())
        report.disc_matched += _disc_count(common)
        report.disc_gold_total += _disc_count(g_items)
        report.disc_pred_total += _disc_count(p_items)
        report.sentences += 1
    return report


def _root_label_set(tree: ConstTree) -> frozenset:
    root = tree.root
    return frozenset((root.label,)) if isinstance(root, Internal) else frozenset()


def _disc_count(items: Counter) -> int:
    return sum(
        count
        for (label, indices), count in items.items()
        if not _is_contiguous(indices)
    )
