"""Acceptance gate: ten checks covering the library's core guarantees.

Each test prints exactly one `[acceptance] ... PASS/FAIL` line so the
suite's verdict can be read straight off the terminal.
"""

import contextlib
import itertools
import random
import time

import pytest

from gaplabels import (
    ConstTree,
    ContinuousLabel,
    GenParams,
    INV,
    NEXT,
    Permutation,
    PermVariant,
    TokenLabel,
    corrupt,
    decode_continuous,
    decode_perm,
    decode_tree,
    default_label,
    encode_continuous,
    encode_perm,
    encode_tree,
    generate,
    get_backend,
    parse_discbracket,
    rows_for_tree,
    score,
    simplify_pos,
)
from gaplabels.bench import measure

from _helpers import minimal_crossing_tree, toks


V = PermVariant
ALL_VARIANTS = list(V)


@pytest.fixture
def check(capsys):
    """Announce one acceptance criterion's verdict on the real terminal."""

    @contextlib.contextmanager
    def _check(name):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"[acceptance] {name}: FAIL")
            raise
        with capsys.disabled():
            print(f"[acceptance] {name}: PASS")

    return _check


def tags_for(variant, n):
    return [f"P{i % 3}" for i in range(n)] if variant.uses_tags else None


def test_01_worked_permutation_examples(check):
    with check("01 worked rank-code examples"):
        # The arrangement lists the input words in the order 0,1,3,4,2,
        # so token 3 sits at slot 2, token 4 at slot 3, token 2 at slot 4.
        tau = Permutation([0, 1, 4, 2, 3])
        assert encode_perm(tau, V.LEHMER) == [0, 0, 1, 1, 0]
        assert encode_perm(tau, V.INVERSE_LEHMER) == [0, 0, 2, 0, 0]


def test_02_exhaustive_permutation_round_trip(check):
    with check("02 exhaustive length-7 permutation round trip"):
        start = time.perf_counter()
        total = 0
        for mapping in itertools.permutations(range(7)):
            tau = Permutation(mapping)
            for variant in ALL_VARIANTS:
                if variant.uses_tags and mapping[0] != 0:
                    continue
                tags = tags_for(variant, 7)
                labels = encode_perm(tau, variant, tags)
                assert decode_perm(labels, variant, tags) == tau
                total += 1
        elapsed = time.perf_counter() - start
        # 5040 permutations for the four index codes, 720 for each of the
        # two pointer codes (their first token is always a fixed point).
        assert total == 5040 * 4 + 720 * 2
        assert elapsed < 10.0, f"took {elapsed:.1f}s, limit 10s"


def test_03_tree_round_trip_ten_thousand(check):
    with check("03 ten-thousand-tree round trip, six variants"):
        start = time.perf_counter()
        trees = []
        for chunk, rate in ((3334, 0.0), (3333, 0.1), (3333, 0.3)):
            trees.extend(
                generate(
                    GenParams(
                        seed=int(rate * 100) + 7,
                        sentences=chunk,
                        min_tokens=1,
                        max_tokens=40,
                        disc_rate=rate,
                    )
                )
            )
        assert len(trees) == 10_000
        for tree in trees:
            tokens = toks(tree)
            for variant in ALL_VARIANTS:
                labels = encode_tree(tree, variant)
                assert decode_tree(labels, tokens, variant) == tree
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s, limit 60s"


def test_04_crossing_needs_the_permutation_component(check):
    with check("04 crossing fixture separates the full and plain codecs"):
        gold = minimal_crossing_tree()
        tokens = toks(gold)
        for variant in ALL_VARIANTS:
            labels = encode_tree(gold, variant)
            assert decode_tree(labels, tokens, variant) == gold
            # Dropping the permutation column and reading the remaining
            # columns in plain sentence order must lose the crossing.
            plain = [
                ContinuousLabel(lab.level, lab.ancestor, lab.chain)
                for lab in labels
            ]
            flattened = decode_continuous(plain, tokens)
            report = score([gold], [flattened])
            assert report.f1 < 100.0


def test_05_decode_is_total_on_random_labels(check):
    with check("05 ten-thousand random label sequences per variant decode"):
        rng = random.Random(99)
        names = ["S", "NP", "VP", "X", "A+B", "A\\+B"]
        tags = ["P0", "P1", "P2"]

        def random_label(variant, n):
            level = rng.choice(
                [None, rng.randint(-8, 8), 10**18, -(10**18)]
            )
            ancestor = rng.choice([None] + names)
            chain = tuple(
                rng.choice(names) for _ in range(rng.choice((0, 0, 1, 2)))
            )
            if variant.uses_tags:
                perm = rng.choice(
                    [
                        NEXT,
                        (rng.randint(-2, n + 2), rng.choice(tags)),
                        rng.randint(-3, n + 2),
                    ]
                )
            else:
                perm = rng.choice(
                    [INV, NEXT, rng.randint(-(10**9), 10**9), rng.randint(-3, n)]
                )
            return TokenLabel(level, ancestor, chain, perm)

        for variant in ALL_VARIANTS:
            for _ in range(10_000):
                n = rng.randint(1, 12)
                labels = [random_label(variant, n) for _ in range(n)]
                tokens = [(f"w{i}", tags[i % 3]) for i in range(n)]
                tree = decode_tree(labels, tokens, variant)
                # Revalidate from the raw root: leaf indices must be exactly
                # 0..n-1 and children must sit in canonical order.
                assert ConstTree(tree.root) == tree
                assert len(tree) == n
                assert toks(tree) == tokens


def test_06_continuous_trees_degenerate_to_the_plain_codec(check):
    with check("06 continuous trees use only default permutation labels"):
        trees = generate(
            GenParams(seed=41, sentences=1000, max_tokens=25, disc_rate=0.0)
        )
        assert len(trees) == 1000
        for tree in trees:
            plain = encode_continuous(tree)
            for variant in ALL_VARIANTS:
                labels = encode_tree(tree, variant)
                assert all(
                    lab.perm == default_label(variant) for lab in labels
                )
                assert [
                    ContinuousLabel(lab.level, lab.ancestor, lab.chain)
                    for lab in labels
                ] == plain


def test_07_evaluator_sanity(check):
    with check("07 evaluator: self-score 100, one relabel of four is 75"):
        corpus = generate(
            GenParams(seed=23, sentences=200, max_tokens=18, disc_rate=0.3)
        )
        self_report = score(corpus, corpus)
        assert self_report.f1 == 100.0
        assert self_report.disc_f1 == 100.0
        assert self_report.disc_gold_total > 0

        gold = [parse_discbracket(
            "(ROOT (A (B (D (X 0=x)) (Y 1=y)) (C (X 2=z) (Y 3=w))))"
        )]
        pred = [parse_discbracket(
            "(ROOT (A (B (E (X 0=x)) (Y 1=y)) (C (X 2=z) (Y 3=w))))"
        )]
        assert score(gold, pred).f1 == 75.0


def test_08_noise_degrades_scores_monotonically(check):
    with check("08 corruption rates 0 / 0.05 / 0.2 degrade F1 in order"):
        trees = generate(
            GenParams(seed=31, sentences=500, max_tokens=20, disc_rate=0.25)
        )
        variant = V.ABSOLUTE
        sentences = [
            rows_for_tree(tree, encode_tree(tree, variant)) for tree in trees
        ]

        def f1_at(rate):
            noisy = corrupt(sentences, rate, seed=13)
            decoded = [
                decode_tree(
                    [row.label for row in sent],
                    [(row.form, row.pos) for row in sent],
                    variant,
                )
                for sent in noisy
            ]
            return score(trees, decoded).f1

        clean, light, heavy = f1_at(0.0), f1_at(0.05), f1_at(0.2)
        assert clean == 100.0
        assert clean >= light >= heavy
        assert clean - heavy >= 1.0


def test_09_tag_simplification_tables(check):
    english_table = {
        "CC": "CC", "CD": "CD", "DT": "DT", "EX": "EX", "FW": "FW",
        "IN": "IN", "JJ": "JJ", "JJR": "JJ", "JJS": "JJ", "LS": "LS",
        "MD": "MD", "NN": "NN", "NNS": "NN", "NNP": "NN", "NNPS": "NN",
        "PDT": "PDT", "POS": "POS", "PRP": "PRP", "PRP$": "PRP",
        "RB": "RB", "RBR": "RB", "RBS": "RB", "RP": "RP", "SYM": "SYM",
        "TO": "TO", "UH": "UH", "VB": "V", "VBD": "V", "VBG": "V",
        "VBN": "V", "VBP": "V", "VBZ": "V", "WDT": "W", "WP": "W",
        "WP$": "W", "WRB": "W",
    }
    german_table = {
        "NN": "N", "NE": "N",
        "ADJA": "ADJ", "ADJD": "ADJ",
        "CARD": "CARD", "ART": "ART",
        "VAFIN": "V", "VAIMP": "V", "VVFIN": "V", "VVIMP": "V",
        "VMFIN": "V", "VVINF": "V", "VAINF": "V", "VMINF": "V",
        "VVIZU": "V", "VVPP": "V", "VMPP": "V", "VAPP": "V",
        "PPER": "P", "PRF": "P", "PPOSAT": "P", "PPOSS": "P",
        "PDAT": "P", "PDS": "P", "PIDAT": "P", "PIS": "P", "PIAT": "P",
        "PRELAT": "P", "PRELS": "P", "PWAT": "P", "PWS": "P", "PWAV": "P",
        "PAV": "P",
        "ADV": "AD",
        "KOUI": "K", "KOUS": "K", "KON": "K", "KOKOM": "K",
        "APPR": "AP", "APPRART": "AP", "APPO": "AP", "APZR": "AP",
        "PTKZU": "PT", "PTKNEG": "PT", "PTKVZ": "PT", "PTKA": "PT",
        "PTKANT": "PT",
        "$,": "$", "$(": "$", "$.": "$",
        "ITJ": "ITJ", "TRUNC": "TRUNC", "XY": "XY", "FM": "FM",
    }
    with check("09 full coarse-tag tables, both treebank families"):
        for fine, coarse in english_table.items():
            assert simplify_pos(fine, "dptb") == coarse, fine
        for fine, coarse in german_table.items():
            assert simplify_pos(fine, "tiger-negra") == coarse, fine


def test_10_codec_throughput(check):
    with check("10 encode+decode at 10k sentences/s, 20-token input"):
        slowest = None
        for variant in ALL_VARIANTS:
            result = measure(
                variant, sentences=500, length=20, seed=0, repeats=3
            )
            combined = 1.0 / (
                1.0 / result.encode_per_s + 1.0 / result.decode_per_s
            )
            if slowest is None or combined < slowest[1]:
                slowest = (variant.value, combined)
        name, rate = slowest
        assert rate >= 10_000, (
            f"{name} runs at {rate:.0f} sentences/s on the "
            f"{get_backend()} backend, need 10000"
        )
