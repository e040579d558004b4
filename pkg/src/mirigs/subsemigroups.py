"""Subsemigroups of the tree monoid: uniform decomposition, branch sets,
internal factors, repleteness, and exact enumeration.

A subsemigroup is *replete* when every internal factor x\\S/y is again a
subsemigroup.  Repleteness is a fiberwise property: a uniform layer is
replete exactly when its branch sets are unions of extremal-path classes
closed under the suffix-product operations, which is what makes the compact
path representation below possible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterator

from .errors import CapacityError, NotASubsemigroupError
from .monoid import (
    LEAF,
    Tree,
    all_trees,
    letter,
    lmp,
    mask_members,
    mask_size,
    node,
    parse_word,
    rmp,
    star_right,
    tree_product,
    trees_with_lmp,
    trees_with_rmp,
)

TreeSet = FrozenSet[Tree]

# Exact replete enumeration is only promised up to three generators; the
# per-layer path-set catalogue grows super-exponentially after that.
MAX_REPLETE_N = 3


_product_closure_cache: dict[TreeSet, TreeSet] = {}


def close_under_product(trees) -> TreeSet:
    """Least product-closed superset of the given trees."""
    key = frozenset(trees)
    cached = _product_closure_cache.get(key)
    if cached is not None:
        return cached
    closed = set(key)
    frontier = list(closed)
    while frontier:
        fresh = []
        for t in frontier:
            for s in list(closed):
                for p in (tree_product(s, t), tree_product(t, s)):
                    if p not in closed:
                        closed.add(p)
                        fresh.append(p)
        frontier = fresh
    out = frozenset(closed)
    _product_closure_cache[key] = out
    return out


def is_subsemigroup(trees) -> bool:
    ts = set(trees)
    return all(tree_product(s, t) in ts for s in ts for t in ts)


def alphabet_family(trees) -> frozenset[int]:
    """The set of alphabets (as bitmasks) of a set of trees."""
    return frozenset(t.alpha for t in trees)


def layer_of(trees, mask: int) -> TreeSet:
    return frozenset(t for t in trees if t.alpha == mask)


def lonely_trees(trees) -> TreeSet:
    by_alpha = {}
    for t in trees:
        by_alpha.setdefault(t.alpha, []).append(t)
    return frozenset(ts[0] for ts in by_alpha.values() if len(ts) == 1)


def xy_factor(trees, x: Tree, y: Tree, n: int) -> TreeSet:
    """{t in T_n : x*t*y in trees}."""
    ts = set(trees)
    return frozenset(
        t for t in all_trees(n) if tree_product(tree_product(x, t), y) in ts
    )


# ---------------------------------------------------------------------------
# Branch sets of uniform layers


@dataclass(frozen=True)
class BranchSet:
    side: str  # "left" | "right"
    height: int
    branches: frozenset  # (Tree, gen) for left, (gen, Tree) for right; {()} at height 0


def branch_sets(trees, mask: int) -> tuple[BranchSet, BranchSet]:
    """Left and right branch sets of the uniform layer at the given alphabet."""
    layer = layer_of(trees, mask)
    if not layer:
        raise ValueError(f"empty fiber at alphabet {mask:#x}")
    if mask == 0:
        conv = frozenset({()})
        return BranchSet("left", 0, conv), BranchSet("right", 0, conv)
    k = mask_size(mask)
    lb = frozenset((t.left, t.a0) for t in layer)
    rb = frozenset((t.a1, t.right) for t in layer)
    return BranchSet("left", k, lb), BranchSet("right", k, rb)


def reconstruct_uniform(lb: BranchSet, rb: BranchSet) -> TreeSet:
    """The uniform subsemigroup with the given branch sets (full branch product)."""
    if lb.height == 0:
        return frozenset({LEAF})
    return frozenset(
        node(t0, a0, a1, t1) for (t0, a0) in lb.branches for (a1, t1) in rb.branches
    )


# ---------------------------------------------------------------------------
# Path classes and within-layer closure


def path_class_size(k: int) -> int:
    """Number of right branches sharing one rightmost path of length k."""
    out = 1
    for j in range(1, k):
        out *= j ** (2 ** (k - j) - 1)
    return out


def path_class(sigma: tuple[int, ...], side: str = "right"):
    """The branch class of an extremal path, with its closed-form cardinality."""
    k = len(sigma)
    count = path_class_size(k)
    if side == "right":
        branches = frozenset((sigma[0], t) for t in trees_with_rmp(sigma[1:]))
    else:
        branches = frozenset((t, sigma[-1]) for t in trees_with_lmp(sigma[:-1]))
    return branches, count


def _closed_right(paths) -> bool:
    """Within-layer repleteness of a set of equal-support right paths."""
    ps = set(paths)
    for rho in ps:
        for tau in ps:
            for j in range(1, len(tau) + 1):
                if star_right(rho, tau[j - 1:]) not in ps:
                    return False
    return True


def close_right(paths) -> frozenset:
    """Least within-layer-closed superset of equal-support right paths."""
    ps = set(paths)
    grew = True
    while grew:
        grew = False
        for rho, tau in itertools.product(list(ps), repeat=2):
            for j in range(1, len(tau) + 1):
                q = star_right(rho, tau[j - 1:])
                if q not in ps:
                    ps.add(q)
                    grew = True
    return frozenset(ps)


def _reverse_all(paths):
    return frozenset(tuple(reversed(p)) for p in paths)


def _closed_left(paths) -> bool:
    return _closed_right(_reverse_all(paths))


def close_left(paths) -> frozenset:
    return _reverse_all(close_right(_reverse_all(paths)))


@lru_cache(maxsize=None)
def closed_path_sets(mask: int) -> tuple[frozenset, ...]:
    """All inhabited within-layer-closed sets of right paths on an alphabet.

    Small alphabets only; the height-3 case recovers the 22 closed sets.
    """
    members = tuple(mask_members(mask))
    if len(members) > 3:
        raise CapacityError("path-set catalogue supported for alphabets of size <= 3")
    perms = list(itertools.permutations(members))
    out = []
    for r in range(1, len(perms) + 1):
        for combo in itertools.combinations(perms, r):
            if _closed_right(combo):
                out.append(frozenset(combo))
    return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))


def expand_layer(mask: int, left_paths, right_paths) -> TreeSet:
    """All trees on `mask` whose leftmost path lies in left_paths and whose
    rightmost path lies in right_paths."""
    if mask == 0:
        return frozenset({LEAF})
    out = set()
    for lam in left_paths:
        for t0 in trees_with_lmp(lam[:-1]):
            for rho in right_paths:
                for t1 in trees_with_rmp(rho[1:]):
                    out.add(node(t0, lam[-1], rho[0], t1))
    return frozenset(out)


def _layer_paths(layer):
    return frozenset(lmp(t) for t in layer), frozenset(rmp(t) for t in layer)


def is_replete(trees, require_subsemigroup: bool = True) -> bool:
    """Fiberwise repleteness check of a product-closed tree set."""
    ts = frozenset(trees)
    if require_subsemigroup and not is_subsemigroup(ts):
        raise NotASubsemigroupError("input is not product-closed")
    for mask in alphabet_family(ts):
        layer = layer_of(ts, mask)
        lp, rp = _layer_paths(layer)
        if not (_closed_left(lp) and _closed_right(rp)):
            return False
        if expand_layer(mask, lp, rp) != layer:
            return False
    return True


def is_replete_definitional(trees, n: int) -> bool:
    """Direct check of the defining property: every internal factor x\\S/y is
    product-closed.  Expensive; used as an oracle on small inputs.

    Contexts are pruned to left/right factors of members (the factor is
    empty, hence closed, for any other context) and repeated factors are
    checked once."""
    ts = frozenset(trees)
    if not is_subsemigroup(ts):
        raise NotASubsemigroupError("input is not product-closed")
    ambient = all_trees(n)
    lefts = [x for x in ambient if any(tree_product(x, s) is s for s in ts)]
    rights = [y for y in ambient if any(tree_product(s, y) is s for s in ts)]
    seen = set()
    for x in lefts:
        for y in rights:
            factor = xy_factor(ts, x, y, n)
            if factor in seen:
                continue
            seen.add(factor)
            if not is_subsemigroup(factor):
                return False
    return True


_replete_closure_cache: dict[TreeSet, TreeSet] = {}


def replete_closure_trees(trees) -> TreeSet:
    """Least replete subsemigroup containing the given trees, as a tree set."""
    key = frozenset(trees)
    cached = _replete_closure_cache.get(key)
    if cached is not None:
        return cached
    current = close_under_product(key)
    while True:
        grown = set(current)
        for mask in alphabet_family(current):
            if mask == 0:
                continue
            lp, rp = _layer_paths(layer_of(current, mask))
            grown |= expand_layer(mask, close_left(lp), close_right(rp))
        grown = close_under_product(grown)
        if grown == current:
            _replete_closure_cache[key] = current
            return current
        current = grown


# ---------------------------------------------------------------------------
# Compact representation of replete subsemigroups


@dataclass(frozen=True)
class RepleteSubsemigroup:
    """A replete subsemigroup stored as per-alphabet path algebras.

    layers is sorted by alphabet mask; each entry is
    (mask, sorted left paths, sorted right paths).  `unit` records whether
    the trivial tree is a member.
    """

    n: int
    unit: bool
    layers: tuple[tuple[int, tuple, tuple], ...]

    @staticmethod
    def from_layer_dict(n, unit, layer_dict) -> "RepleteSubsemigroup":
        layers = tuple(
            (mask, tuple(sorted(lp)), tuple(sorted(rp)))
            for mask, (lp, rp) in sorted(layer_dict.items())
        )
        return RepleteSubsemigroup(n, unit, layers)

    @staticmethod
    def from_trees(n, trees, validate: bool = True) -> "RepleteSubsemigroup":
        ts = frozenset(trees)
        if validate and not is_replete(ts):
            raise NotASubsemigroupError("tree set is not replete")
        layer_dict = {}
        for mask in alphabet_family(ts):
            if mask == 0:
                continue
            lp, rp = _layer_paths(layer_of(ts, mask))
            layer_dict[mask] = (lp, rp)
        return RepleteSubsemigroup.from_layer_dict(n, LEAF in ts, layer_dict)

    def alphabet_masks(self) -> frozenset[int]:
        masks = {mask for mask, _, _ in self.layers}
        if self.unit:
            masks.add(0)
        return frozenset(masks)

    def trees(self) -> TreeSet:
        return _expand_replete(self)

    def size(self) -> int:
        total = 1 if self.unit else 0
        for mask, lp, rp in self.layers:
            k = mask_size(mask)
            total += len(lp) * len(rp) * path_class_size(k) ** 2
        return total

    def to_json(self) -> dict:
        pos = [mask for mask, _, _ in self.layers]
        return {
            "v": 1,
            "n": self.n,
            "alphabets": ([0] if self.unit else []) + pos,
            "left": [["".join(letter(g) for g in p) for p in lp] for _, lp, _ in self.layers],
            "right": [["".join(letter(g) for g in p) for p in rp] for _, _, rp in self.layers],
        }

    @staticmethod
    def from_json(data: dict) -> "RepleteSubsemigroup":
        if data.get("v") != 1:
            raise ValueError("unsupported replete-subsemigroup schema version")
        n = data["n"]
        masks = list(data["alphabets"])
        unit = 0 in masks
        pos = [m for m in masks if m]
        layer_dict = {}
        for mask, lp, rp in zip(pos, data["left"], data["right"]):
            layer_dict[mask] = (
                frozenset(parse_word(p) for p in lp),
                frozenset(parse_word(p) for p in rp),
            )
        return RepleteSubsemigroup.from_layer_dict(n, unit, layer_dict)


@lru_cache(maxsize=None)
def _expand_replete(r: RepleteSubsemigroup) -> TreeSet:
    out = {LEAF} if r.unit else set()
    for mask, lp, rp in r.layers:
        out |= expand_layer(mask, lp, rp)
    return frozenset(out)


def replete_closure(trees, n: int) -> RepleteSubsemigroup:
    return RepleteSubsemigroup.from_trees(n, replete_closure_trees(trees), validate=False)


# ---------------------------------------------------------------------------
# Enumeration


def union_closed_families(n: int) -> list[frozenset[int]]:
    """All union-closed families of nonempty alphabets over [n]."""
    masks = [m for m in range(1, 1 << n)]
    out = []
    for r in range(len(masks) + 1):
        for combo in itertools.combinations(masks, r):
            fam = frozenset(combo)
            if all(a | b in fam for a in fam for b in fam):
                out.append(fam)
    return out


def _right_systems(family: list[int]) -> Iterator[dict]:
    """All assignments mask -> closed right path set over a union-closed family
    that are closed under cross-layer products."""
    if not family:
        yield {}
        return
    catalogs = [closed_path_sets(mask) for mask in family]
    for choice in itertools.product(*catalogs):
        system = dict(zip(family, choice))
        ok = True
        for a in family:
            for b in family:
                if a == b:
                    continue
                target = system[a | b]
                if not all(
                    star_right(p, q) in target for p in system[a] for q in system[b]
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield system


def enumerate_replete(n: int) -> Iterator[RepleteSubsemigroup]:
    """Every replete subsemigroup of T_n exactly once, compactly represented."""
    if n > MAX_REPLETE_N:
        raise CapacityError(f"replete enumeration supported for n <= {MAX_REPLETE_N}")
    for fam in sorted(union_closed_families(n), key=lambda f: (len(f), sorted(f))):
        family = sorted(fam)
        rights = list(_right_systems(family))
        lefts = [
            {mask: _reverse_all(paths) for mask, paths in system.items()}
            for system in rights
        ]
        for ls in lefts:
            for rs in rights:
                layer_dict = {mask: (ls[mask], rs[mask]) for mask in family}
                for unit in (False, True):
                    yield RepleteSubsemigroup.from_layer_dict(n, unit, layer_dict)


def count_replete(n: int) -> int:
    return sum(1 for _ in enumerate_replete(n))


def count_uniform(n: int) -> int:
    """Number of inhabited uniform subsemigroups of T_n, in closed form."""
    import math

    total = 0
    for k in range(n + 1):
        branches = 1
        for i in range(k):
            branches *= (k - i) ** (2 ** i)
        total += math.comb(n, k) * (2 ** branches - 1) ** 2
    return total


def count_replete_bounded_height(n: int, h: int) -> int:
    """Replete subsemigroups of T_n of height at most h, in closed form."""
    import math

    if h == 2:
        return 18 * n * n - 16 * n + 2
    if h == 3:
        return 2 * (
            math.comb(n, 0)
            + math.comb(n, 1)
            + 18 * math.comb(n, 2)
            + 8957 * math.comb(n, 3)
        )
    raise ValueError("closed forms are available for heights 2 and 3 only")
