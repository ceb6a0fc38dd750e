"""Per-token encodings of the leaf permutation, and their total decoders.

A permutation that rearranges a sentence into a continuous tree order
is flattened into one label per token.  Six variants are supported:

* absolute      -- the token's target rank, or INV when it stays put
* relative      -- index minus target rank, or INV when it stays put
* lehmer        -- rank-among-remaining codes of the inverse mapping
* inv-lehmer    -- for each token, how many free ranks precede its own
* pointer       -- NEXT, or (j, tag): insert after the j-th preceding
                   token with that part-of-speech tag
* pointer-simple -- pointer over a coarsened tag set

Every decoder is total: arbitrary label values still produce a valid
permutation, through documented repair rules.  decode_perm accepts a
``forced_last`` token index, used by the tree codec to pin the token
that carries the end-of-sentence marker to the last rank.
"""

from __future__ import annotations

import enum
from typing import Callable, Optional, Sequence, Union

from . import _backend
from .tree import Permutation

INV = "INV"
NEXT = "NEXT"

PermLabel = Union[int, str, tuple]


class PermVariant(enum.Enum):
    """The six permutation label encodings."""

    ABSOLUTE = "absolute"
    RELATIVE = "relative"
    LEHMER = "lehmer"
    INVERSE_LEHMER = "inv-lehmer"
    POINTER = "pointer"
    POINTER_SIMPLIFIED = "pointer-simple"

    @property
    def uses_tags(self) -> bool:
        return self in (PermVariant.POINTER, PermVariant.POINTER_SIMPLIFIED)


# Coarse part-of-speech groupings used by the pointer-simple variant.
# Keys are treebank tags; values are the coarse class.  Tags not listed
# map to themselves.

DPTB_POS_MAP = {
    "JJ": "JJ", "JJR": "JJ", "JJS": "JJ",
    "NN": "NN", "NNS": "NN", "NNP": "NN", "NNPS": "NN",
    "PRP": "PRP", "PRP$": "PRP",
    "RB": "RB", "RBR": "RB", "RBS": "RB",
    "VB": "V", "VBD": "V", "VBG": "V", "VBN": "V", "VBP": "V", "VBZ": "V",
    "WDT": "W", "WP": "W", "WP$": "W", "WRB": "W",
}

GERMAN_POS_MAP = {
    "NN": "N", "NE": "N",
    "ADJA": "ADJ", "ADJD": "ADJ",
    "VAFIN": "V", "VAIMP": "V", "VVFIN": "V", "VVIMP": "V", "VMFIN": "V",
    "VVINF": "V", "VAINF": "V", "VMINF": "V", "VVIZU": "V",
    "VVPP": "V", "VMPP": "V", "VAPP": "V",
    "PPER": "P", "PRF": "P", "PPOSAT": "P", "PPOSS": "P", "PDAT": "P",
    "PDS": "P", "PIDAT": "P", "PIS": "P", "PIAT": "P", "PRELAT": "P",
    "PRELS": "P", "PWAT": "P", "PWS": "P", "PWAV": "P", "PAV": "P",
    "ADV": "AD",
    "KOUI": "K", "KOUS": "K", "KON": "K", "KOKOM": "K",
    "APPR": "AP", "APPRART": "AP", "APPO": "AP", "APZR": "AP",
    "PTKZU": "PT", "PTKNEG": "PT", "PTKVZ": "PT", "PTKA": "PT",
    "PTKANT": "PT",
    "$,": "$", "$(": "$", "$.": "$",
}

POS_FAMILIES = {
    "none": {},
    "dptb": DPTB_POS_MAP,
    "tiger-negra": GERMAN_POS_MAP,
}


def simplify_pos(tag: str, family: str = "none") -> str:
    """Coarse class for a part-of-speech tag under the named grouping.

    Unlisted tags (and every tag under family "none") map to themselves.
    """
    try:
        table = POS_FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown tag family {family!r}") from None
    return table.get(tag, tag)


def pos_simplifier(family: str = "none") -> Callable[[str], str]:
    """A tag -> coarse class function for the named grouping."""
    table = POS_FAMILIES.get(family)
    if table is None:
        raise ValueError(f"unknown tag family {family!r}")
    return lambda tag: table.get(tag, tag)


def _invert(seq: Sequence[int]) -> list[int]:
    inv = [0] * len(seq)
    for i, v in enumerate(seq):
        inv[v] = i
    return inv


def _intern_tags(*tag_lists: Sequence[str]) -> list[list[int]]:
    ids: dict[str, int] = {}
    out = []
    for tags in tag_lists:
        out.append([ids.setdefault(t, len(ids)) for t in tags])
    return out


def encode_perm(
    perm: Permutation,
    variant: PermVariant,
    pos_tags: Optional[Sequence[str]] = None,
    pos_family: str = "none",
) -> list[PermLabel]:
    """One label per token describing the permutation under a variant.

    ``pos_tags`` (one tag per token, sentence order) is required for
    the pointer variants and ignored by the others.  The identity
    permutation always yields the variant's all-default column: INV
    for absolute/relative, 0 for the Lehmer family, NEXT for pointers.
    """
    tau = perm.mapping
    n = len(tau)
    K = _backend.kernels
    if variant is PermVariant.ABSOLUTE:
        return [INV if tau[i] == i else tau[i] for i in range(n)]
    if variant is PermVariant.RELATIVE:
        return [INV if tau[i] == i else i - tau[i] for i in range(n)]
    if variant is PermVariant.LEHMER:
        return K.lehmer_encode(_invert(tau))
    if variant is PermVariant.INVERSE_LEHMER:
        return K.lehmer_encode(tau)
    if variant.uses_tags:
        if pos_tags is None:
            raise ValueError(f"{variant.value} encoding needs pos_tags")
        if len(pos_tags) != n:
            raise ValueError("pos_tags length does not match permutation")
        if variant is PermVariant.POINTER_SIMPLIFIED:
            table = POS_FAMILIES.get(pos_family)
            if table is None:
                raise ValueError(f"unknown tag family {pos_family!r}")
            get = table.get
            pos_tags = [get(t, t) for t in pos_tags]
        (tag_ids,) = _intern_tags(pos_tags)
        js, preds = K.pointer_encode(tau, tag_ids)
        labels: list[PermLabel] = []
        for i in range(n):
            if js[i] == 0:
                labels.append(NEXT)
            else:
                labels.append((js[i], pos_tags[preds[i]]))
        return labels
    raise ValueError(f"unknown variant {variant!r}")


def decode_perm(
    labels: Sequence[PermLabel],
    variant: PermVariant,
    pos_tags: Optional[Sequence[str]] = None,
    forced_last: Optional[int] = None,
    pos_family: str = "none",
) -> Permutation:
    """Rebuild a permutation from per-token labels; never fails.

    Labels that cannot be honored (ranks out of range or already used,
    unresolvable pointers, values of a foreign type) are repaired:
    absolute/relative fall back to the nearest free rank, Lehmer codes
    out of range take the last remaining value, pointers degrade to
    NEXT.  ``forced_last`` pins that token to the final rank via a
    closing swap.
    """
    n = len(labels)
    K = _backend.kernels
    forced = -1 if forced_last is None else forced_last
    if forced >= n:
        forced = -1
    if variant in (PermVariant.ABSOLUTE, PermVariant.RELATIVE):
        # Targets beyond [-1, n] all behave alike (plain out of range), so
        # clamp them there; that also keeps the values inside C int range.
        targets = [0] * n
        is_inv = [0] * n
        for i, lab in enumerate(labels):
            if isinstance(lab, int):
                t = lab if variant is PermVariant.ABSOLUTE else i - lab
                targets[i] = -1 if t < -1 else (n if t > n else t)
            else:
                targets[i] = i
                is_inv[i] = 1
        # The repairing decoders always seat every token at exactly one
        # rank, so their output needs no re-validation.
        return Permutation._trusted(K.absrel_decode(targets, is_inv, forced))
    if variant in (PermVariant.LEHMER, PermVariant.INVERSE_LEHMER):
        codes = [
            (-1 if lab < -1 else (n if lab > n else lab))
            if isinstance(lab, int)
            else 0
            for lab in labels
        ]
        seq = K.lehmer_decode(codes, n)
        if variant is PermVariant.LEHMER:
            seq = _invert(seq)
        return Permutation._trusted(_force_last(seq, forced))
    if variant.uses_tags:
        if pos_tags is None:
            raise ValueError(f"{variant.value} decoding needs pos_tags")
        if len(pos_tags) != n:
            raise ValueError("pos_tags length does not match labels")
        js = [0] * n
        label_tags = [""] * n
        for i, lab in enumerate(labels):
            if (
                isinstance(lab, tuple)
                and len(lab) == 2
                and isinstance(lab[0], int)
                and lab[0] > 0
            ):
                js[i] = min(lab[0], n)
                label_tags[i] = str(lab[1])
        if variant is PermVariant.POINTER_SIMPLIFIED:
            table = POS_FAMILIES.get(pos_family)
            if table is None:
                raise ValueError(f"unknown tag family {pos_family!r}")
            get = table.get
            pos_tags = [get(t, t) for t in pos_tags]
            label_tags = [get(t, t) for t in label_tags]
        token_ids, label_ids = _intern_tags(pos_tags, label_tags)
        seq = K.pointer_decode(js, label_ids, token_ids)
        return Permutation._trusted(_force_last(seq, forced))
    raise ValueError(f"unknown variant {variant!r}")


def _force_last(seq: list[int], forced: int) -> list[int]:
    """Swap ranks so that seq[forced] is the largest, when forced >= 0."""
    n = len(seq)
    if forced < 0 or n == 0 or seq[forced] == n - 1:
        return seq
    r = seq[forced]
    m = seq.index(n - 1)
    seq[forced] = n - 1
    seq[m] = r
    return seq


def default_label(variant: PermVariant) -> PermLabel:
    """The label an identity mapping produces at every position."""
    if variant in (PermVariant.ABSOLUTE, PermVariant.RELATIVE):
        return INV
    if variant in (PermVariant.LEHMER, PermVariant.INVERSE_LEHMER):
        return 0
    return NEXT
