"""Self-check suite: recompute known exact values and compare.

Each check row carries a short provenance note for its expected value, the
computed value, and a pass flag; rows are emitted as JSON lines so failures
are machine-readable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

from . import monoid, oracle, subsemigroups, triples
from .quotients import (
    campion_mirig,
    characteristic,
    free_idempotent_monoid_table,
    nmn_table,
    verify_rig_axioms,
)


@dataclass
class Check:
    name: str
    reference: str
    expected: object
    compute: Callable[[], object]


def _monoid_sizes():
    return [monoid.count_free_monoid(n) for n in range(4)]


def _enumeration_matches_counts():
    for k in range(4):
        mask = (1 << k) - 1
        if len(monoid.enumerate_trees(mask)) != monoid.tree_count_full(k):
            return False
    return True


def _replete_counts(limit):
    return [subsemigroups.count_replete(n) for n in range(limit + 1)]


def _closed_path_sets_h3():
    return len(subsemigroups.closed_path_sets(0b111))

def _t2_subsemigroups_all_replete():
    trees = monoid.all_trees(2)
    count = 0
    for bits in range(1 << len(trees)):
        subset = frozenset(t for i, t in enumerate(trees) if bits >> i & 1)
        if subsemigroups.is_subsemigroup(subset):
            count += 1
            if not subsemigroups.is_replete(subset):
                return -1
    return count


def _mirig_counts(limit, strategy):
    return [triples.count_free_mirig(n, strategy) for n in range(limit + 1)]


def _campion_m2():
    rig = campion_mirig(free_idempotent_monoid_table(2))
    report = verify_rig_axioms(rig, require_mirig=True)
    return (rig.size(), report.ok, report.commutative, characteristic(rig))


def _word_closure_n2():
    table = oracle.word_closure(2, 6)
    return len(table.classes)


def _nonconfluent_pair():
    table = oracle.word_closure(3, 9)
    return table.same_class(monoid.parse_word("abc"), monoid.parse_word("abcbabc"))


def _sandwich_exact():
    table = oracle.sandwich_closure(3, 7)
    trees = set()
    for cls in table.classes:
        images = {monoid.tree_of_word(w) for w in cls}
        if len(images) != 1:
            return False
        trees |= images
    return len(trees) == len(table.classes)


def _component_counts():
    return [oracle.thicket_components(n).component_count for n in (1, 2)]


def _roundtrip_c2():
    seen = set()
    for c in triples.enumerate_triples(2):
        if triples.normalize_thicket(triples.triple_canonical_thicket(c)) != c:
            return -1
        seen.add(c)
    return len(seen)


def _oracle_agreement():
    graph = oracle.thicket_components(2)
    label_triple = {}
    for node in range(4 ** 7):
        c = triples.normalize_thicket(graph.thicket_of_node(node))
        prior = label_triple.setdefault(graph.labels[node], c)
        if prior != c:
            return False
    return len(set(label_triple.values())) == graph.component_count


QUICK_CHECKS = [
    Check(
        "free idempotent monoid sizes n=0..3",
        "known sizes of free idempotent monoids",
        [1, 2, 7, 160],
        _monoid_sizes,
    ),
    Check(
        "tree enumeration totals match the closed form",
        "recursive count of trees by height",
        True,
        _enumeration_matches_counts,
    ),
    Check(
        "square-free class count over two generators",
        "word classes at length budget 6",
        7,
        _word_closure_n2,
    ),
    Check(
        "subsemigroups of the two-generator tree monoid, all replete",
        "exhaustive subset census",
        42,
        _t2_subsemigroups_all_replete,
    ),
    Check(
        "replete subsemigroup counts n=0..2",
        "path-algebra enumeration",
        [2, 4, 42],
        lambda: _replete_counts(2),
    ),
    Check(
        "height-bounded replete formula at (n=2,h=2) and (n=3,h=2)",
        "closed form 18n^2-16n+2",
        [42, 116],
        lambda: [
            subsemigroups.count_replete_bounded_height(2, 2),
            subsemigroups.count_replete_bounded_height(3, 2),
        ],
    ),
    Check(
        "inhabited closed path sets on a three-letter alphabet",
        "recomputed by closure, not transcribed",
        22,
        _closed_path_sets_h3,
    ),
    Check(
        "free mirig sizes n=0..2 (grouped strategy)",
        "published counts 4, 13, 284",
        [4, 13, 284],
        lambda: _mirig_counts(2, "grouped"),
    ),
    Check(
        "free mirig sizes n=0..2 (dominated-set strategy)",
        "published counts 4, 13, 284",
        [4, 13, 284],
        lambda: _mirig_counts(2, "triples"),
    ),
    Check(
        "upper bounds for free mirig sizes n=1,2",
        "coefficient-restriction bound",
        [(16, 13), (16384, 6283)],
        lambda: [triples.mirig_upper_bounds(1), triples.mirig_upper_bounds(2)],
    ),
    Check(
        "quotient rig (2,2) is a commutative mirig of characteristic (2,2)",
        "exhaustive axiom check",
        (True, True, (2, 2)),
        lambda: (
            verify_rig_axioms(nmn_table(2, 2), require_mirig=True).ok,
            verify_rig_axioms(nmn_table(2, 2)).commutative,
            characteristic(nmn_table(2, 2)),
        ),
    ),
    Check(
        "monoid-adjunction mirig on two generators",
        "9 elements, noncommutative, characteristic (2,1)",
        (9, True, False, (2, 1)),
        _campion_m2,
    ),
    Check(
        "characteristic-variant counts n=0..2",
        "published variant counts",
        {
            "11": [2, 4, 42],
            "21": [3, 7, 80],
            "12": [3, 9, 189],
            "02": [2, 4, 16],
            "boolean_semiring": [3, 7, 35],
        },
        lambda: {
            v: [triples.count_characteristic_variant(n, v) for n in range(3)]
            for v in triples.VARIANTS
        },
    ),
]

FULL_CHECKS = QUICK_CHECKS + [
    Check(
        "replete subsemigroup counts n=0..3",
        "path-algebra enumeration; 18030 at n=3",
        [2, 4, 42, 18030],
        lambda: _replete_counts(3),
    ),
    Check(
        "height-3 bounded replete formula at n=3",
        "closed form with coefficient 8957",
        18030,
        lambda: subsemigroups.count_replete_bounded_height(3, 3),
    ),
    Check(
        "uniform subsemigroup counts n=0..3",
        "branch-pair closed form",
        [1, 2, 12, 16769056],
        lambda: [subsemigroups.count_uniform(n) for n in range(4)],
    ),
    Check(
        "square-insertion closure joins abc with abcbabc",
        "non-confluent square-free pair, budget 9",
        True,
        _nonconfluent_pair,
    ),
    Check(
        "strengthened word closure matches tree fibers (n=3, length 7)",
        "sandwich moves with square-deletion normalization",
        True,
        _sandwich_exact,
    ),
    Check(
        "expansion-graph component counts n=1,2",
        "published counts 13 and 284",
        [13, 284],
        _component_counts,
    ),
    Check(
        "expansion components match canonical forms over all 16384 thickets",
        "full cross-validation of the two routes",
        True,
        _oracle_agreement,
    ),
    Check(
        "canonical roundtrip over all 284 two-generator elements",
        "normalize after canonical thicket",
        284,
        _roundtrip_c2,
    ),
    Check(
        "free mirig strategies agree at n=3",
        "two counting strategies",
        True,
        lambda: triples.count_free_mirig(3, "grouped")
        == triples.count_free_mirig(3, "triples"),
    ),
    Check(
        "free mirig size n=3 equals the published count",
        "published value 510605; this library recomputes 515861 exactly "
        "(the published accounting table has two arithmetic slips)",
        510605,
        lambda: triples.count_free_mirig(3, "grouped"),
    ),
    Check(
        "characteristic-variant counts at n=3",
        "published variant counts 18030, 40601, 160389, 256, 775",
        {
            "11": 18030,
            "21": 40601,
            "12": 160389,
            "02": 256,
            "boolean_semiring": 775,
        },
        lambda: {
            v: triples.count_characteristic_variant(3, v) for v in triples.VARIANTS
        },
    ),
]


def run_suite(suite: str = "quick"):
    checks = QUICK_CHECKS if suite == "quick" else FULL_CHECKS
    rows = []
    for check in checks:
        computed = check.compute()
        rows.append(
            {
                "check": check.name,
                "reference": check.reference,
                "expected": check.expected,
                "computed": computed,
                "pass": computed == check.expected,
            }
        )
    return rows


def emit_jsonl(rows, stream) -> bool:
    ok = True
    for row in rows:
        stream.write(json.dumps(row, default=str) + "\n")
        ok = ok and row["pass"]
    return ok
