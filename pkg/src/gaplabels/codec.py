"""Lossless per-token labeling of trees with crossing branches.

encode_tree flattens any tree into one four-part label per token:
the (level, ancestor, chain) parts describe the tree as if its tokens
stood in the canonical continuous order, and the perm part records how
to get from the sentence order to that order, under one of six
interchangeable encodings (see permcodec).

decode_tree inverts this and is total: whatever the labels say, it
returns a structurally valid tree over the given tokens.  The token
whose label has no level/ancestor marks the sentence end in the
rearranged order; when damage produces several such tokens the
rightmost one wins, and when none remain the permutation alone decides.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .contcodec import FALLBACK_LABEL, _decode_nodes, _emit_parts
from .permcodec import PermLabel, PermVariant, decode_perm, encode_perm
from .tree import ConstTree, Permutation


class TokenLabel(NamedTuple):
    """The complete label attached to one token."""

    level: Optional[int]
    ancestor: Optional[str]
    chain: tuple[str, ...]
    perm: PermLabel

    @property
    def is_dummy(self) -> bool:
        """True when this token carries the end-of-sentence marker."""
        return self.level is None and self.ancestor is None


def encode_tree(
    tree: ConstTree,
    variant: PermVariant,
    pos_family: str = "none",
) -> list[TokenLabel]:
    """One label per token, in sentence order.

    The tree may have crossing branches; a continuous tree always
    yields the variant's all-default perm column.
    """
    levels, ancestors, chains, original, poses = _emit_parts(
        tree, check_continuous=False
    )
    n = len(original)
    mapping = [0] * n
    for rank, index in enumerate(original):
        mapping[index] = rank
    # A valid tree holds each token index exactly once, so this is a
    # bijection by construction.
    perm = Permutation._trusted(mapping)
    pos_tags = poses if variant.uses_tags else None
    perm_labels = encode_perm(perm, variant, pos_tags, pos_family)
    out = []
    add = out.append
    for i in range(n):
        r = mapping[i]
        add(TokenLabel(levels[r], ancestors[r], chains[r], perm_labels[i]))
    return out


def decode_tree(
    labels: Sequence[TokenLabel],
    tokens: Sequence[tuple[str, str]],
    variant: PermVariant,
    fallback: str = FALLBACK_LABEL,
    pos_family: str = "none",
) -> ConstTree:
    """Rebuild a tree from labels and (form, pos) pairs; never fails.

    Exact inverse of encode_tree on undamaged labels; on damaged ones
    the permutation and bracket repairs (see permcodec and contcodec)
    still produce a valid tree over all n tokens.
    """
    n = len(labels)
    if n == 0:
        raise ValueError("cannot decode an empty sentence")
    if len(tokens) != n:
        raise ValueError(f"{len(tokens)} tokens for {n} labels")
    forced = None
    perm_col = [None] * n
    for i, lab in enumerate(labels):
        perm_col[i] = lab[3]
        if lab[0] is None and lab[1] is None:
            forced = i
    pos_tags = None
    if variant.uses_tags:
        pos_tags = [pos for _, pos in tokens]
    perm = decode_perm(
        perm_col,
        variant,
        pos_tags,
        forced_last=forced,
        pos_family=pos_family,
    )
    # order[rank] = the token index standing at that rank.
    order = perm.inverse().mapping
    root = _decode_nodes(labels, tokens, order, fallback)
    return ConstTree._from_canonical(root, n)
