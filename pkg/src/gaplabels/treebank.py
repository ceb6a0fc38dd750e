"""Reading and writing trees and label files.

Trees use the one-line bracket format where each terminal carries its
sentence position: ``(S (NP (DT 0=the) (NN 1=dog)) (VBD 2=barked))``.
Crossing branches are expressed through the indices alone, so a node
may cover tokens that are far apart.  A tag node with exactly one
``index=form`` terminal is absorbed into the token as its
part-of-speech tag.

Label files are tab-separated, one token per row, sentences separated
by blank lines.  Columns: form, tag, level, ancestor, chain, perm.
"NONE" stands for an absent level/ancestor and for the empty chain
(consequently those literal strings cannot appear as treebank labels).
Chain cells join node labels with "+" (escaped as in contcodec); perm
cells hold INV, NEXT, an integer, or count~tag pairs.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .codec import TokenLabel
from .contcodec import join_chain, split_chain
from .errors import DiscbracketError, LabelFileError, TreeStructureError
from .permcodec import INV, NEXT
from .tree import ConstTree, Internal, Leaf, Node, Token

_TOKEN_RE = re.compile(r"\(|\)|[^()\s]+")

_CLOSE = object()
_SPACE = object()


class _RawTerminal(NamedTuple):
    index: int
    form: str
    column: int


def parse_discbracket(line: str, lineno: Optional[int] = None) -> ConstTree:
    """Parse one bracketed tree line; raises DiscbracketError on bad input."""
    stack: list[list] = []  # frames [label, children, open_column]
    root: Optional[Node] = None
    seen: dict[int, int] = {}
    expect_label = False
    for match in _TOKEN_RE.finditer(line):
        text = match.group()
        col = match.start()
        if root is not None:
            raise DiscbracketError("content after the tree ends", lineno, col)
        if text == "(":
            if expect_label:
                raise DiscbracketError("expected a node label", lineno, col)
            stack.append([None, [], col])
            expect_label = True
        elif text == ")":
            if expect_label:
                raise DiscbracketError("node has no label", lineno, col)
            if not stack:
                raise DiscbracketError("unbalanced ')'", lineno, col)
            label, children, open_col = stack.pop()
            node = _finish_node(label, children, open_col, lineno)
            if stack:
                stack[-1][1].append(node)
            else:
                root = node
        elif expect_label:
            stack[-1][0] = text
            expect_label = False
        else:
            if not stack:
                raise DiscbracketError("terminal outside brackets", lineno, col)
            stack[-1][1].append(_parse_terminal(text, col, seen, lineno))
    if stack:
        raise DiscbracketError("unbalanced '('", lineno, stack[-1][2])
    if root is None:
        raise DiscbracketError("no tree found", lineno, 0)
    try:
        return ConstTree(root)
    except TreeStructureError as exc:
        raise DiscbracketError(str(exc), lineno) from exc


def _parse_terminal(
    text: str, col: int, seen: dict[int, int], lineno: Optional[int]
) -> _RawTerminal:
    head, eq, form = text.partition("=")
    if not eq:
        raise DiscbracketError(
            f"expected index=form, got {text!r}", lineno, col
        )
    try:
        index = int(head)
    except ValueError:
        raise DiscbracketError(
            f"terminal index {head!r} is not an integer", lineno, col
        ) from None
    if index < 0:
        raise DiscbracketError(f"negative terminal index {index}", lineno, col)
    if not form:
        raise DiscbracketError("empty word form", lineno, col)
    if index in seen:
        raise DiscbracketError(f"duplicate leaf index {index}", lineno, col)
    seen[index] = col
    return _RawTerminal(index, form, col)


def _finish_node(label, children, open_col, lineno) -> Node:
    if not children:
        raise DiscbracketError(f"empty constituent {label!r}", lineno, open_col)
    if len(children) == 1 and isinstance(children[0], _RawTerminal):
        term = children[0]
        return Leaf(Token(term.index, term.form, label))
    kids = []
    for child in children:
        if isinstance(child, _RawTerminal):
            raise DiscbracketError(
                f"terminal {child.index}={child.form} needs its own tag node",
                lineno,
                child.column,
            )
        kids.append(child)
    return Internal(label, kids)


def _check_atom(text: str, what: str) -> str:
    if not text or re.search(r"[()\s]", text):
        raise DiscbracketError(f"{what} {text!r} cannot be written")
    return text


def write_discbracket(tree: ConstTree) -> str:
    """One-line bracket form of a tree (canonical child order)."""
    parts: list[str] = []
    stack: list = [tree.root]
    while stack:
        item = stack.pop()
        if item is _CLOSE:
            parts.append(")")
        elif item is _SPACE:
            parts.append(" ")
        elif isinstance(item, Leaf):
            text = (
                f"({_check_atom(item.token.pos, 'tag')} "
                f"{item.token.index}={_check_atom(item.token.form, 'form')})"
            )
            for lab in reversed(item.unary):
                text = f"({_check_atom(lab, 'label')} {text})"
            parts.append(text)
        else:
            parts.append(f"({_check_atom(item.label, 'label')}")
            stack.append(_CLOSE)
            for child in reversed(item.children):
                stack.append(child)
                stack.append(_SPACE)
    return "".join(parts)


def read_treebank(lines: Iterable[str]) -> Iterator[ConstTree]:
    """Parse a tree per non-empty line; line numbers go into errors."""
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        yield parse_discbracket(stripped, lineno)


def write_treebank(trees: Iterable[ConstTree]) -> Iterator[str]:
    """One bracket line per tree (no newlines included)."""
    for tree in trees:
        yield write_discbracket(tree)


NONE_FIELD = "NONE"


class LabelRow(NamedTuple):
    """One token of a labeled sentence: surface data plus its label."""

    form: str
    pos: str
    label: TokenLabel


def format_perm_label(value) -> str:
    if value == INV:
        return INV
    if value == NEXT:
        return NEXT
    if isinstance(value, int):
        return str(value)
    if isinstance(value, tuple) and len(value) == 2:
        return f"{value[0]}~{value[1]}"
    raise ValueError(f"unserializable perm label {value!r}")


def parse_perm_label(text: str, lineno: Optional[int] = None):
    if text == INV:
        return INV
    if text == NEXT:
        return NEXT
    try:
        return int(text)
    except ValueError:
        pass
    head, sep, tag = text.partition("~")
    if sep and tag:
        try:
            return (int(head), tag)
        except ValueError:
            pass
    raise LabelFileError(f"bad perm label {text!r}", lineno)


def format_label_row(row: LabelRow) -> str:
    lab = row.label
    level = NONE_FIELD if lab.level is None else str(lab.level)
    ancestor = NONE_FIELD if lab.ancestor is None else lab.ancestor
    chain = join_chain(lab.chain) if lab.chain else NONE_FIELD
    return "\t".join(
        (row.form, row.pos, level, ancestor, chain, format_perm_label(lab.perm))
    )


def parse_label_row(line: str, lineno: Optional[int] = None) -> LabelRow:
    cells = line.split("\t")
    if len(cells) != 6:
        raise LabelFileError(
            f"expected 6 tab-separated cells, got {len(cells)}", lineno
        )
    form, pos, level_s, ancestor_s, chain_s, perm_s = cells
    if not form:
        raise LabelFileError("empty form cell", lineno)
    if not pos:
        raise LabelFileError("empty tag cell", lineno)
    if level_s == NONE_FIELD:
        level = None
    else:
        try:
            level = int(level_s)
        except ValueError:
            raise LabelFileError(f"bad level {level_s!r}", lineno) from None
    if not ancestor_s:
        raise LabelFileError("empty ancestor cell", lineno)
    if not chain_s:
        raise LabelFileError("empty chain cell", lineno)
    ancestor = None if ancestor_s == NONE_FIELD else ancestor_s
    chain = () if chain_s == NONE_FIELD else split_chain(chain_s)
    perm = parse_perm_label(perm_s, lineno)
    return LabelRow(form, pos, TokenLabel(level, ancestor, chain, perm))


def read_labels(lines: Iterable[str]) -> Iterator[list[LabelRow]]:
    """Group label rows into sentences at blank lines."""
    sentence: list[LabelRow] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.rstrip("\r\n")
        if not stripped.strip():
            if sentence:
                yield sentence
                sentence = []
            continue
        sentence.append(parse_label_row(stripped, lineno))
    if sentence:
        yield sentence


def write_labels(sentences: Iterable[Sequence[LabelRow]]) -> Iterator[str]:
    """Rows for each sentence followed by one blank separator line."""
    for sentence in sentences:
        for row in sentence:
            yield format_label_row(row)
        yield ""


def rows_for_tree(tree: ConstTree, labels: Sequence[TokenLabel]) -> list[LabelRow]:
    """Pair a tree's tokens with their labels, in sentence order."""
    return [
        LabelRow(tok.form, tok.pos, lab)
        for tok, lab in zip(tree.tokens(), labels)
    ]
