"""Codec between continuous trees and per-token label sequences.

Every token of a continuous tree gets a label (level, ancestor, chain):

* level     -- change in bracket depth of the lowest node covering both
               this token and the next one, relative to the previous
               token's such node (the first token counts from depth 0);
* ancestor  -- that node's label;
* chain     -- labels of nodes dominating only this token, top-down.

The last token has no next neighbor, so its level and ancestor are
None.  Chains of single-child nodes dominating more than one token are
squeezed into one label joined with "+" ("VROOT+S"); literal "+" and
"\\" inside labels are escaped, so the joining is reversible.

decode_continuous is total: out-of-range levels are clamped, missing
ancestors borrow the previous token's, and nodes left unlabeled get a
fallback label.  The one lossy spot is the root label of a one-token
sentence, which has no label slot to live in and decodes to the
fallback.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .errors import TreeStructureError
from .tree import ConstTree, Internal, Leaf, Node, Token

FALLBACK_LABEL = "X"


class ContinuousLabel(NamedTuple):
    """Per-token label describing a continuous tree."""

    level: Optional[int]
    ancestor: Optional[str]
    chain: tuple[str, ...] = ()

    @property
    def is_dummy(self) -> bool:
        """True for the end-of-sentence label (no bracket information)."""
        return self.level is None and self.ancestor is None


def _escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace("+", "\\+")


def join_chain(labels: Sequence[str]) -> str:
    """Join node labels into one reversible "+"-separated string."""
    if len(labels) == 1:
        lab = labels[0]
        if "+" not in lab and "\\" not in lab:
            return lab
    return "+".join(_escape(lab) for lab in labels)


def split_chain(joined: str) -> tuple[str, ...]:
    """Inverse of join_chain; tolerant of stray backslashes."""
    if "+" not in joined and "\\" not in joined:
        return (joined,)
    parts = []
    cur: list[str] = []
    i = 0
    n = len(joined)
    while i < n:
        ch = joined[i]
        if ch == "\\" and i + 1 < n and joined[i + 1] in "+\\":
            cur.append(joined[i + 1])
            i += 2
        elif ch == "+":
            parts.append("".join(cur))
            cur = []
            i += 1
        else:
            cur.append(ch)
            i += 1
    parts.append("".join(cur))
    return tuple(parts)


def _collapsed_view(node: Internal):
    """One collapsed node: its joined label and a list of child entries.

    The node must dominate two or more tokens.  Child entries are
    ("leaf", token, chain) for tokens (absorbing any run of nodes that
    dominate just that token) or ("node", child) for children covering
    several tokens.  Runs of single-child nodes above a multi-token
    child fold into the joined label.
    """
    labels = []
    cur = node
    while len(cur.children) == 1:
        # A single child of a multi-token node covers the same tokens,
        # so it is an Internal and always folds into the label.
        labels.append(cur.label)
        cur = cur.children[0]
    labels.append(cur.label)
    kids = []
    for child in cur.children:
        if isinstance(child, Leaf):
            kids.append(("leaf", child.token, child.unary))
            continue
        chain = []
        below = child
        single = False
        while len(below.children) == 1:
            chain.append(below.label)
            below = below.children[0]
            if isinstance(below, Leaf):
                single = True
                break
        if single:
            kids.append(("leaf", below.token, tuple(chain) + below.unary))
        else:
            kids.append(("node", child))
    return join_chain(labels), kids


def collapse_unary(tree: ConstTree) -> ConstTree:
    """Squeeze single-child chains out of a tree.

    Nodes dominating exactly one token move into that leaf's ``unary``
    chain (losing the root: a bare one-token tree keeps its root as a
    node).  Chains above multi-token nodes, the root included, merge
    into one "+"-joined label.  expand_unary inverts this exactly for
    trees that are not already collapsed.
    """
    root = tree.root
    if isinstance(root, Leaf):
        return tree
    if len(tree) == 1:
        # The root stays a node; everything below it joins the chain.
        chain = []
        below = root.children[0]
        while isinstance(below, Internal):
            chain.append(below.label)
            below = below.children[0]
        leaf = Leaf(below.token, tuple(chain) + below.unary)
        return ConstTree._from_canonical(Internal(root.label, (leaf,)), 1)
    label, kids = _collapsed_view(root)
    frames = [[label, kids, 0, []]]
    result: Optional[Node] = None
    while frames:
        frame = frames[-1]
        if frame[2] == len(frame[1]):
            frames.pop()
            node = Internal(frame[0], frame[3])
            if frames:
                frames[-1][3].append(node)
            else:
                result = node
            continue
        kid = frame[1][frame[2]]
        frame[2] += 1
        if kid[0] == "leaf":
            frame[3].append(Leaf(kid[1], kid[2]))
        else:
            sublabel, subkids = _collapsed_view(kid[1])
            frames.append([sublabel, subkids, 0, []])
    # Collapsing keeps yields and sibling order intact.
    return ConstTree._from_canonical(result, len(tree))


def _expand_node(root: Node) -> Node:
    """Undo collapsing on a raw node: split joined labels, unroll chains."""
    if isinstance(root, Leaf):
        return _expand_leaf(root)
    seq: list[Node] = []
    dfs: list[Node] = [root]
    while dfs:
        node = dfs.pop()
        seq.append(node)
        if isinstance(node, Internal):
            dfs.extend(reversed(node.children))
    built: dict[int, Node] = {}
    for node in reversed(seq):
        if isinstance(node, Leaf):
            built[id(node)] = _expand_leaf(node)
            continue
        children = [built[id(c)] for c in node.children]
        labels = split_chain(node.label)
        out = Internal(labels[-1], children)
        for lab in reversed(labels[:-1]):
            out = Internal(lab, [out])
        built[id(node)] = out
    return built[id(root)]


def _expand_leaf(leaf: Leaf) -> Node:
    if not leaf.unary:
        return leaf
    out: Node = Leaf(leaf.token)
    for lab in reversed(leaf.unary):
        out = Internal(lab, [out])
    return out


def expand_unary(tree: ConstTree) -> ConstTree:
    """Inverse of collapse_unary."""
    # Expansion keeps yields and sibling order intact.
    return ConstTree._from_canonical(_expand_node(tree.root), len(tree))


def _raise_discontinuous():
    raise TreeStructureError(
        "tree covers a non-contiguous span and cannot be "
        "encoded without a token rearrangement"
    )


def _emit_parts(tree: ConstTree, check_continuous: bool):
    """Walk a tree in canonical order and label each leaf rank.

    Returns (levels, ancestors, chains, original, poses): position r of
    the first four lists describes the leaf at depth-first rank r, and
    original[r] is that leaf's token index.  poses holds the tokens'
    part-of-speech tags in sentence order.  With check_continuous the
    walk insists rank == token index, i.e. that the tree is continuous
    everywhere.
    """
    root = tree.root
    n = len(tree)
    if isinstance(root, Leaf):
        tok = root.token
        return [None], [None], [root.unary], [tok.index], [tok.pos]
    if n == 1:
        # One token: the root label has no slot to live in (the lossy
        # case); the nodes below the root form the leaf's chain.
        chain = []
        below = root.children[0]
        while isinstance(below, Internal):
            chain.append(below.label)
            below = below.children[0]
        tok = below.token
        return [None], [None], [tuple(chain) + below.unary], [tok.index], [tok.pos]
    depths = [0] * n
    ancestors: list = [None] * n
    chains: list = [()] * n
    poses: list = [None] * n
    original: list[int] = []
    add_index = original.append
    names = []
    cur = root
    while len(cur.children) == 1:
        names.append(cur.label)
        cur = cur.children[0]
    names.append(cur.label)
    # Frames are [children, next_child, depth, joined_label] over the
    # collapsed view of the tree, computed on the fly.
    frames = [[cur.children, 0, 1, join_chain(names)]]
    rank = 0
    while frames:
        frame = frames[-1]
        kids = frame[0]
        idx = frame[1]
        if idx == len(kids):
            frames.pop()
            continue
        if idx:
            # Boundary between two children: the lowest node covering
            # ranks rank-1 and rank is this frame's node.
            depths[rank - 1] = frame[2]
            ancestors[rank - 1] = frame[3]
        frame[1] = idx + 1
        child = kids[idx]
        if isinstance(child, Leaf):
            tok = child.token
            if check_continuous and tok.index != rank:
                _raise_discontinuous()
            add_index(tok.index)
            poses[tok.index] = tok.pos
            if child.unary:
                chains[rank] = child.unary
            rank += 1
            continue
        # Internal child: either one token (absorbed into the leaf's
        # chain) or several (a frame of its own, chain folded into the
        # joined label).
        chain = []
        below = child
        single = False
        while len(below.children) == 1:
            chain.append(below.label)
            below = below.children[0]
            if isinstance(below, Leaf):
                single = True
                break
        if single:
            tok = below.token
            if check_continuous and tok.index != rank:
                _raise_discontinuous()
            add_index(tok.index)
            poses[tok.index] = tok.pos
            chains[rank] = tuple(chain) + below.unary
            rank += 1
        else:
            chain.append(below.label)
            frames.append([below.children, 0, frame[2] + 1, join_chain(chain)])
    levels: list = [None] * n
    prev = 0
    for r in range(n - 1):
        d = depths[r]
        levels[r] = d - prev
        prev = d
    return levels, ancestors, chains, original, poses


def encode_continuous(tree: ConstTree) -> list[ContinuousLabel]:
    """Labels for a continuous tree, one per token in sentence order.

    Raises TreeStructureError if any node covers a non-contiguous span.
    """
    levels, ancestors, chains, _, _ = _emit_parts(tree, check_continuous=True)
    return [
        ContinuousLabel(lvl, anc, chain)
        for lvl, anc, chain in zip(levels, ancestors, chains)
    ]


def _finish_item(item: list, fallback: str):
    """Close one open constituent: sort children, expand the label.

    Returns (smallest token index below the node, the built node).
    """
    label, mins, nodes = item
    if label is None:
        label = fallback
    mn = mins[0]
    prev = mn
    out_of_order = False
    for v in mins:
        if v < prev:
            out_of_order = True
        if v < mn:
            mn = v
        prev = v
    if out_of_order:
        by = sorted(range(len(mins)), key=mins.__getitem__)
        nodes = [nodes[k] for k in by]
    if "+" in label or "\\" in label:
        parts = split_chain(label)
        node = Internal(parts[-1], nodes)
        for name in reversed(parts[:-1]):
            node = Internal(name, (node,))
    else:
        node = Internal(label, nodes)
    return mn, node


def _decode_nodes(labels, tokens, order, fallback: str) -> Node:
    """Build a tree over the given tokens from bracket labels; total.

    ``labels`` are read by position: label[0] is the level, label[1]
    the ancestor, label[2] the chain.  ``order[rank]`` gives the token
    index standing at depth-first rank ``rank``; labels and tokens are
    indexed by token index.  Children come out sorted by smallest token
    index, so the returned root is in canonical order.

    Repairs applied to damaged input: a non-final dummy label acts as
    (level 0, previous token's ancestor), levels are clamped so the
    depth stays within what any genuine encoding can produce (1 to one
    less than the number of tokens), and any node no label ever named
    gets the fallback label.
    """
    n = len(labels)
    last = n - 1
    # Open constituents, root first.  Each item is [label_or_None,
    # smallest_token_indices, built_children]; an item is finished once
    # the walk returns to a shallower depth.
    path: list[list] = []
    depth_prev = 0
    anc_prev: Optional[str] = None
    for rank in range(n):
        i = order[rank]
        lab = labels[i]
        form, pos = tokens[i]
        node: Node = Leaf(Token(i, form, pos))
        chain = lab[2]
        if chain:
            for name in reversed(chain):
                node = Internal(name, (node,))
        if rank == last:
            if path:
                item = path[-1]
                item[1].append(i)
                item[2].append(node)
            else:
                path.append([None, [i], [node]])
            break
        rel = lab[0]
        anc = lab[1]
        if rel is None:
            rel = 0
        if anc is None:
            anc = anc_prev if anc_prev is not None else fallback
        depth = depth_prev + rel
        if depth < 1:
            depth = 1
        elif depth > last:
            depth = last
        depth_prev = depth
        anc_prev = anc
        size = len(path)
        while size < depth:
            path.append([None, [], []])
            size += 1
        item = path[-1]
        item[1].append(i)
        item[2].append(node)
        if size > depth:
            for j in range(size - 1, depth - 1, -1):
                mn, built = _finish_item(path[j], fallback)
                parent = path[j - 1]
                parent[1].append(mn)
                parent[2].append(built)
            del path[depth:]
        top = path[depth - 1]
        if top[0] is None:
            top[0] = anc
    for j in range(len(path) - 1, 0, -1):
        mn, built = _finish_item(path[j], fallback)
        parent = path[j - 1]
        parent[1].append(mn)
        parent[2].append(built)
    return _finish_item(path[0], fallback)[1]


def decode_continuous(
    labels: Sequence[ContinuousLabel],
    tokens: Sequence[tuple[str, str]],
    fallback: str = FALLBACK_LABEL,
) -> ConstTree:
    """Rebuild a continuous tree from labels and (form, pos) pairs; total.

    Repairs applied to damaged input: a non-final dummy label acts as
    (level 0, previous token's ancestor), levels are clamped so the
    depth never leaves the range a real tree could use, and any node no
    label ever named gets the fallback label.
    """
    n = len(labels)
    if n == 0:
        raise ValueError("cannot decode an empty sentence")
    if len(tokens) != n:
        raise ValueError(f"{len(tokens)} tokens for {n} labels")
    root = _decode_nodes(labels, tokens, range(n), fallback)
    return ConstTree._from_canonical(root, n)
