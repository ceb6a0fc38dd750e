"""Corpus-level tooling around label files.

Everything here works on sentences of LabelRow (see treebank):
frequency statistics per label component, unseen-label reports between
a training and a test corpus, seeded random corruption of label
components (for robustness curves), and a part-of-speech-conditioned
most-frequent-label baseline.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .codec import TokenLabel
from .treebank import LabelRow, NONE_FIELD, format_perm_label
from .contcodec import join_chain

COMPONENTS = ("level", "ancestor", "chain", "perm")


def component_value(label: TokenLabel, component: str):
    """The raw value of one label component."""
    if component not in COMPONENTS:
        raise ValueError(f"unknown label component {component!r}")
    return getattr(label, component)


def serialize_component(component: str, value) -> str:
    """The file representation of one component value."""
    if component == "level":
        return NONE_FIELD if value is None else str(value)
    if component == "ancestor":
        return NONE_FIELD if value is None else value
    if component == "chain":
        return join_chain(value) if value else NONE_FIELD
    if component == "perm":
        return format_perm_label(value)
    raise ValueError(f"unknown label component {component!r}")


@dataclass
class LabelStats:
    """Per-component value frequencies over a label corpus."""

    sentences: int = 0
    tokens: int = 0
    counts: dict = field(
        default_factory=lambda: {c: Counter() for c in COMPONENTS}
    )

    def distinct(self, component: str) -> int:
        return len(self.counts[component])

    def format_text(self, top: int = 10) -> str:
        lines = [f"sentences  {self.sentences}", f"tokens     {self.tokens}"]
        for component in COMPONENTS:
            counter = self.counts[component]
            lines.append(f"{component}: {len(counter)} distinct values")
            for value, count in _ranked(counter)[:top]:
                lines.append(f"  {value}\t{count}")
        return "\n".join(lines)


def _ranked(counter: Counter) -> list:
    return sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))


def label_stats(sentences: Iterable[Sequence[LabelRow]]) -> LabelStats:
    """Count serialized component values across a label corpus."""
    stats = LabelStats()
    for sentence in sentences:
        stats.sentences += 1
        for row in sentence:
            stats.tokens += 1
            for component in COMPONENTS:
                value = component_value(row.label, component)
                stats.counts[component][
                    serialize_component(component, value)
                ] += 1
    return stats


@dataclass(frozen=True)
class UnseenReport:
    """How much of a test corpus a training vocabulary fails to cover."""

    component: str
    unseen_values: int
    unseen_tokens: int
    test_tokens: int

    @property
    def pct(self) -> float:
        if not self.test_tokens:
            return 0.0
        return 100.0 * self.unseen_tokens / self.test_tokens

    def format_text(self) -> str:
        pct = self.pct
        if 0.0 < pct < 0.01:
            pct_text = f"{pct:.1e} %"
        else:
            pct_text = f"{pct:.2f} %"
        return (
            f"{self.component}: {self.unseen_values} unseen values, "
            f"{self.unseen_tokens} of {self.test_tokens} test tokens "
            f"({pct_text})"
        )


def unseen_report(
    train: Iterable[Sequence[LabelRow]],
    test: Iterable[Sequence[LabelRow]],
    component: str,
) -> UnseenReport:
    """Values of one component found in test but never in train."""
    if component not in COMPONENTS:
        raise ValueError(f"unknown label component {component!r}")
    seen = set()
    for sentence in train:
        for row in sentence:
            seen.add(serialize_component(component, component_value(row.label, component)))
    unseen_counter: Counter = Counter()
    test_tokens = 0
    for sentence in test:
        for row in sentence:
            test_tokens += 1
            key = serialize_component(component, component_value(row.label, component))
            if key not in seen:
                unseen_counter[key] += 1
    return UnseenReport(
        component=component,
        unseen_values=len(unseen_counter),
        unseen_tokens=sum(unseen_counter.values()),
        test_tokens=test_tokens,
    )


def corrupt(
    sentences: Iterable[Sequence[LabelRow]],
    rate: float,
    seed: int = 0,
    components: Sequence[str] = COMPONENTS,
) -> list[list[LabelRow]]:
    """Randomly replace label components with other corpus values.

    Each chosen component of each token is, with probability ``rate``,
    replaced by a value drawn uniformly from the corpus vocabulary of
    that component (possibly the value already there).  Deterministic
    in (seed, corpus): each sentence gets its own noise stream keyed by
    its position, and the replacement pool is built from the whole
    corpus.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"corruption rate must be within [0, 1], got {rate}")
    for component in components:
        if component not in COMPONENTS:
            raise ValueError(f"unknown label component {component!r}")
    material = [list(sentence) for sentence in sentences]
    vocab = {}
    for component in components:
        values = {
            serialize_component(component, component_value(row.label, component)):
                component_value(row.label, component)
            for sentence in material
            for row in sentence
        }
        vocab[component] = [values[key] for key in sorted(values)]
    out = []
    for k, sentence in enumerate(material):
        rng = random.Random(f"{seed}:{k}")
        rows = []
        for row in sentence:
            label = row.label
            for component in components:
                if vocab[component] and rng.random() < rate:
                    label = label._replace(
                        **{component: rng.choice(vocab[component])}
                    )
            rows.append(LabelRow(row.form, row.pos, label))
        out.append(rows)
    return out


@dataclass
class BaselineModel:
    """Most-frequent label component per part-of-speech tag."""

    by_pos: dict
    fallback: dict

    def predict_label(self, pos: str) -> TokenLabel:
        parts = {}
        for component in COMPONENTS:
            table = self.by_pos[component]
            if pos in table:
                parts[component] = table[pos]
            else:
                parts[component] = self.fallback[component]
        return TokenLabel(
            parts["level"], parts["ancestor"], parts["chain"], parts["perm"]
        )


def baseline_fit(train: Iterable[Sequence[LabelRow]]) -> BaselineModel:
    """Tag-conditioned mode of every component, with a global mode backstop."""
    per_pos = {component: {} for component in COMPONENTS}
    overall = {component: Counter() for component in COMPONENTS}
    for sentence in train:
        for row in sentence:
            for component in COMPONENTS:
                value = component_value(row.label, component)
                per_pos[component].setdefault(row.pos, Counter())[value] += 1
                overall[component][value] += 1
    by_pos = {}
    fallback = {}
    for component in COMPONENTS:
        by_pos[component] = {
            pos: _mode(counter, component)
            for pos, counter in per_pos[component].items()
        }
        if not overall[component]:
            raise ValueError("cannot fit a baseline on an empty corpus")
        fallback[component] = _mode(overall[component], component)
    return BaselineModel(by_pos=by_pos, fallback=fallback)


def _mode(counter: Counter, component: str):
    return min(
        counter.items(),
        key=lambda kv: (-kv[1], serialize_component(component, kv[0])),
    )[0]


def baseline_predict(
    model: BaselineModel, tokens: Sequence[tuple[str, str]]
) -> list[TokenLabel]:
    """One predicted label per (form, pos) token."""
    return [model.predict_label(pos) for _, pos in tokens]
