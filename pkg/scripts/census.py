#!/usr/bin/env python3
"""Recompute every exact census the library knows and print them as tables.

Usage: python scripts/census.py [--max-n 3]
"""

import argparse
import itertools
import time
from collections import Counter

from mirigs.monoid import count_free_monoid, mask_members, mask_size
from mirigs.subsemigroups import (
    count_replete_bounded_height,
    count_uniform,
    enumerate_replete,
)
from mirigs.triples import (
    VARIANTS,
    count_characteristic_variant,
    count_free_mirig,
    mirig_upper_bounds,
)


def family_profile(n):
    """Replete subsemigroups grouped by canonical alphabet family."""
    counts = Counter()
    for s in enumerate_replete(n):
        if s.unit:
            continue
        fam = frozenset(m for m, _, _ in s.layers)
        best = None
        for perm in itertools.permutations(range(n)):
            mapped = tuple(
                sorted(sum(1 << perm[g] for g in mask_members(m)) for m in fam)
            )
            if best is None or mapped < best:
                best = mapped
        counts[best] += 1
    return counts


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=3)
    args = parser.parse_args()
    top = args.max_n

    print("free idempotent monoid sizes:")
    print("  ", [count_free_monoid(n) for n in range(top + 1)])

    print("inhabited uniform subsemigroups:")
    print("  ", [count_uniform(n) for n in range(top + 1)])

    print("replete subsemigroups (and height-bounded closed forms):")
    t0 = time.time()
    totals = [sum(1 for _ in enumerate_replete(n)) for n in range(min(top, 3) + 1)]
    print("  ", totals, f"({time.time()-t0:.2f}s)")
    for n in range(min(top, 3) + 1):
        print(f"   n={n}: h<=2 {count_replete_bounded_height(n, 2)}, h<=3 {count_replete_bounded_height(n, 3)}")

    print("replete subsemigroups of the 3-generator monoid, by alphabet family:")
    for fam, count in sorted(family_profile(3).items(), key=lambda kv: (len(kv[0]), kv[0])):
        names = ",".join("{" + "".join(chr(97 + g) for g in mask_members(m)) + "}" for m in fam)
        print(f"   {{{names}}}: {count}")

    print("free mirig sizes (grouped | dominated-set strategies):")
    for n in range(min(top, 3) + 1):
        t0 = time.time()
        a = count_free_mirig(n, "grouped")
        b = count_free_mirig(n, "triples")
        print(f"   n={n}: {a} | {b}  ({time.time()-t0:.2f}s)")

    print("upper bounds (crude, refined):")
    print("  ", [mirig_upper_bounds(n) for n in range(min(top, 3) + 1)])

    print("characteristic variants:")
    for variant in VARIANTS:
        values = [count_characteristic_variant(n, variant) for n in range(min(top, 3) + 1)]
        print(f"   {variant}: {values}")


if __name__ == "__main__":
    main()
