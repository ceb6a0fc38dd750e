"""Data model for constituency trees whose leaves may be reordered.

A tree is built from Leaf and Internal nodes and wrapped in a ConstTree,
which validates that the leaves carry the token indices 0..n-1 exactly
once and keeps children in canonical order (ascending smallest leaf
index).  Trees where some node covers a non-contiguous set of indices
are fully supported; block_degree() measures how fragmented a tree is.

All traversals here are iterative so that very deep trees (which can
arise when decoding corrupted label sequences) do not hit the
interpreter recursion limit.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Union

from .errors import TreeStructureError


class Token(NamedTuple):
    """One input token: position in the sentence, word form, part-of-speech tag."""

    index: int
    form: str
    pos: str


class Leaf:
    """Terminal node carrying a token.

    ``unary`` holds the labels of a collapsed chain of nodes that
    dominate only this leaf, outermost first.  It is empty on ordinary
    trees and only populated while a tree is in collapsed form.
    """

    __slots__ = ("token", "unary")

    def __init__(self, token: Token, unary: Iterable[str] = ()):
        self.token = token
        self.unary = tuple(unary)

    def __eq__(self, other):
        return (
            isinstance(other, Leaf)
            and self.token == other.token
            and self.unary == other.unary
        )

    def __hash__(self):
        return hash((self.token, self.unary))

    def __repr__(self):
        if self.unary:
            return f"Leaf({self.token!r}, unary={self.unary!r})"
        return f"Leaf({self.token!r})"


class Internal:
    """Non-terminal node with a label and a non-empty tuple of children."""

    __slots__ = ("label", "children")

    def __init__(self, label: str, children: Iterable["Node"]):
        self.label = label
        self.children = tuple(children)
        if not self.children:
            raise TreeStructureError(f"node {label!r} has no children")

    def __eq__(self, other):
        if not isinstance(other, Internal):
            return NotImplemented
        # Iterative comparison; == on deep trees must not recurse.
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if isinstance(a, Leaf) or isinstance(b, Leaf):
                if not (isinstance(a, Leaf) and isinstance(b, Leaf) and a == b):
                    return False
                continue
            if a.label != b.label or len(a.children) != len(b.children):
                return False
            stack.extend(zip(a.children, b.children))
        return True

    def __hash__(self):
        # Hash on the label and arity only; full equality does the rest.
        return hash((self.label, len(self.children)))

    def __repr__(self):
        return f"Internal({self.label!r}, {list(self.children)!r})"


Node = Union[Leaf, Internal]


def iter_nodes(root: Node) -> Iterator[Node]:
    """Yield every node under (and including) root, parents before children."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Internal):
            stack.extend(reversed(node.children))


def _leaf_indices(root: Node) -> list[int]:
    """Leaf token indices in depth-first order."""
    out = []
    stack = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node.token.index)
        else:
            stack.extend(reversed(node.children))
    return out


def yield_of(node: Node) -> frozenset[int]:
    """The set of token indices covered by node."""
    return frozenset(_leaf_indices(node))


def _is_interval(indices: Iterable[int]) -> bool:
    seq = sorted(indices)
    return not seq or seq[-1] - seq[0] + 1 == len(seq)


def is_continuous(node: Node) -> bool:
    """True when the yield of node is one contiguous interval."""
    return _is_interval(_leaf_indices(node))


def _count_blocks(indices: list[int]) -> int:
    """Number of maximal contiguous runs in a set of indices."""
    seq = sorted(indices)
    blocks = 0
    prev = None
    for i in seq:
        if prev is None or i != prev + 1:
            blocks += 1
        prev = i
    return blocks


def block_degree(tree: "ConstTree") -> int:
    """Largest number of contiguous blocks in any node's yield (1 = continuous)."""
    best = 1
    for node in iter_nodes(tree.root):
        if isinstance(node, Internal):
            best = max(best, _count_blocks(_leaf_indices(node)))
    return best


def _min_leaf_index(node: Node) -> int:
    """Smallest token index under node, without materializing the yield."""
    stack = [node]
    best = None
    while stack:
        cur = stack.pop()
        if isinstance(cur, Leaf):
            if best is None or cur.token.index < best:
                best = cur.token.index
        else:
            stack.extend(cur.children)
    return best


def _canonicalize(root: Node) -> Node:
    """Return an equivalent tree with children sorted by smallest leaf index.

    Shares subtrees that are already in canonical order.
    """
    # Post-order rebuild with an explicit stack.  Each frame is
    # (node, child_iter_position, rebuilt_children, min_indices).
    result: dict[int, tuple[Node, int]] = {}  # id(node) -> (new node, min index)
    stack: list[tuple[Node, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Leaf):
            result[id(node)] = (node, node.token.index)
            continue
        if not expanded:
            stack.append((node, True))
            for child in node.children:
                if id(child) not in result:
                    stack.append((child, False))
            continue
        rebuilt = [result[id(c)] for c in node.children]
        keys = [m for _, m in rebuilt]
        if all(keys[i] < keys[i + 1] for i in range(len(keys) - 1)):
            children = [c for c, _ in rebuilt]
            if all(c is orig for c, orig in zip(children, node.children)):
                result[id(node)] = (node, keys[0])
                continue
        else:
            rebuilt.sort(key=lambda pair: pair[1])
            children = [c for c, _ in rebuilt]
        new_node = Internal(node.label, children)
        result[id(new_node)] = result[id(node)] = (new_node, min(keys))
    return result[id(root)][0]


class ConstTree:
    """A validated constituency tree over tokens 0..n-1.

    The constructor checks that leaf token indices are exactly
    {0, .., n-1} and normalizes child order so that siblings appear by
    ascending smallest leaf index.  Two ConstTrees compare equal when
    their canonical forms match node for node.
    """

    __slots__ = ("root", "_length")

    def __init__(self, root: Node):
        indices = _leaf_indices(root)
        n = len(indices)
        seen = [False] * n
        for i in indices:
            if not 0 <= i < n:
                raise TreeStructureError(
                    f"leaf index {i} out of range for {n} leaves"
                )
            if seen[i]:
                raise TreeStructureError(f"duplicate leaf index {i}")
            seen[i] = True
        self.root = _canonicalize(root)
        self._length = n

    @classmethod
    def _from_canonical(cls, root: Node, n: int) -> "ConstTree":
        """Wrap a tree known to be valid and already in canonical order.

        Skips the index check and the re-canonicalization pass; callers
        must guarantee both properties hold.
        """
        tree = cls.__new__(cls)
        tree.root = root
        tree._length = n
        return tree

    def __len__(self) -> int:
        return self._length

    def __eq__(self, other):
        return isinstance(other, ConstTree) and self.root == other.root

    def __hash__(self):
        return hash((self._length, self.root))

    def __repr__(self):
        return f"ConstTree({self.root!r})"

    def leaves(self) -> list[Leaf]:
        """Leaves in depth-first (canonical) order."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Leaf):
                out.append(node)
            else:
                stack.extend(reversed(node.children))
        return out

    def tokens(self) -> list[Token]:
        """Tokens in sentence order (sorted by index)."""
        toks: list[Token] = [None] * self._length  # type: ignore[list-item]
        for leaf in self.leaves():
            toks[leaf.token.index] = leaf.token
        return toks

    def is_fully_continuous(self) -> bool:
        """True when every node in the tree covers a contiguous interval."""
        return block_degree(self) == 1


class Permutation:
    """A bijection of 0..n-1, stored as the image sequence.

    ``mapping[i]`` is where element i is sent.  Invalid mappings are
    rejected at construction time.
    """

    __slots__ = ("mapping",)

    def __init__(self, mapping: Iterable[int]):
        self.mapping = tuple(mapping)
        n = len(self.mapping)
        seen = [False] * n
        for v in self.mapping:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {self.mapping}")
            seen[v] = True

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(range(n))

    @classmethod
    def _trusted(cls, mapping: Iterable[int]) -> "Permutation":
        """Wrap a mapping known to be a bijection, skipping validation."""
        perm = cls.__new__(cls)
        perm.mapping = tuple(mapping)
        return perm

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return Permutation._trusted(inv)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.mapping))

    def __len__(self):
        return len(self.mapping)

    def __getitem__(self, i: int) -> int:
        return self.mapping[i]

    def __iter__(self):
        return iter(self.mapping)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.mapping == other.mapping
        return NotImplemented

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"Permutation({list(self.mapping)})"


def continuous_arrangement(tree: ConstTree) -> tuple[ConstTree, Permutation]:
    """Reindex leaves by their depth-first rank, making the tree continuous.

    Returns the rearranged tree and the permutation ``perm`` with
    ``perm[i] = rank of token i`` in the new order.  Because children
    are kept in canonical order, ``perm[0] == 0`` always holds, and a
    continuous tree maps to itself with the identity permutation.
    """
    n = len(tree)
    mapping = [0] * n
    new_leaves = []
    for rank, leaf in enumerate(tree.leaves()):
        mapping[leaf.token.index] = rank
        tok = leaf.token
        new_leaves.append(Leaf(Token(rank, tok.form, tok.pos), leaf.unary))
    rebuilt = _replace_leaves(tree.root, iter(new_leaves))
    # Renumbering by depth-first rank keeps sibling order canonical and
    # uses each rank exactly once, so the checks can be skipped.
    return ConstTree._from_canonical(rebuilt, n), Permutation._trusted(mapping)


def apply_permutation(tree: ConstTree, perm: Permutation) -> ConstTree:
    """Undo a rearrangement: the leaf at rank r gets token index inverse(r).

    ``apply_permutation(*continuous_arrangement(t))`` returns t.
    """
    if len(perm) != len(tree):
        raise ValueError(
            f"permutation length {len(perm)} != tree length {len(tree)}"
        )
    inv = perm.inverse()
    new_leaves = []
    for rank, leaf in enumerate(tree.leaves()):
        tok = leaf.token
        new_leaves.append(Leaf(Token(inv[rank], tok.form, tok.pos), leaf.unary))
    rebuilt = _replace_leaves(tree.root, iter(new_leaves))
    # Still a bijection over 0..n-1, but sibling order may have broken.
    return ConstTree._from_canonical(_canonicalize(rebuilt), len(perm))


def _replace_leaves(root: Node, replacements: Iterator[Leaf]) -> Node:
    """Rebuild a tree taking leaves from an iterator, in depth-first order."""
    if isinstance(root, Leaf):
        return next(replacements)
    # Preorder listing; walking it backwards visits children before parents.
    seq: list[Node] = []
    dfs: list[Node] = [root]
    while dfs:
        node = dfs.pop()
        seq.append(node)
        if isinstance(node, Internal):
            dfs.extend(reversed(node.children))
    out: dict[int, Node] = {}
    for node in seq:
        if isinstance(node, Leaf):
            out[id(node)] = next(replacements)
    for node in reversed(seq):
        if isinstance(node, Internal):
            out[id(node)] = Internal(node.label, [out[id(c)] for c in node.children])
    return out[id(root)]
