#!/usr/bin/env python3
"""Heavy cross-validation runs between the structural code and the
brute-force engines.  Everything here is also covered by the test suite;
this script exists to rerun the expensive checks standalone.

Usage: python scripts/crosscheck.py [--pairs 10000]
"""

import argparse
import random
import time

from mirigs.oracle import sandwich_closure, thicket_components, word_closure
from mirigs.monoid import tree_of_word
from mirigs.triples import count_characteristic_variant, normalize_thicket


def check(name, ok):
    print(f"{'ok ' if ok else 'FAIL'} {name}")
    return ok


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--pairs", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    ok = True

    t0 = time.time()
    graph = thicket_components(2)
    rep = {}
    constant = True
    for node in range(4 ** 7):
        c = normalize_thicket(graph.thicket_of_node(node))
        prior = rep.setdefault(graph.labels[node], c)
        constant = constant and prior == c
    ok &= check(
        f"expansion components == canonical forms on all 16384 thickets "
        f"({graph.component_count} classes, {time.time()-t0:.1f}s)",
        constant and len(set(rep.values())) == graph.component_count == 284,
    )

    t0 = time.time()
    agree = True
    for _ in range(args.pairs):
        i, j = rng.randrange(4 ** 7), rng.randrange(4 ** 7)
        same = graph.labels[i] == graph.labels[j]
        agree &= same == (
            normalize_thicket(graph.thicket_of_node(i))
            == normalize_thicket(graph.thicket_of_node(j))
        )
    ok &= check(f"{args.pairs} random thicket pairs agree ({time.time()-t0:.1f}s)", agree)

    t0 = time.time()
    variant_ok = True
    for char, variant in (((1, 1), "11"), ((2, 1), "21"), ((1, 2), "12"), ((0, 2), "02")):
        for n in (0, 1, 2):
            variant_ok &= (
                thicket_components(n, char).component_count
                == count_characteristic_variant(n, variant)
            )
    ok &= check(f"variant graphs == variant formulas for n<=2 ({time.time()-t0:.1f}s)", variant_ok)

    t0 = time.time()
    table = sandwich_closure(3, 7)
    exact = all(len({tree_of_word(w) for w in cls}) == 1 for cls in table.classes)
    trees = {tree_of_word(next(iter(cls))) for cls in table.classes}
    ok &= check(
        f"strengthened word closure == tree fibers at n=3, length 7 ({time.time()-t0:.1f}s)",
        exact and len(trees) == len(table.classes),
    )

    joined = word_closure(3, 9).same_class((0, 1, 2), (0, 1, 2, 1, 0, 1, 2))
    ok &= check("plain closure joins abc with abcbabc at budget 9", joined)

    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
