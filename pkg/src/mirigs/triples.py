"""Complementary triples: exact canonical forms for free-mirig elements.

An element is written as (S, D, p): a replete subsemigroup S of trees, a
sparse set D of "straggler" trees dominated by S, and a parity function p
recording which per-alphabet coefficient sums are odd.  Addition and
multiplication act directly on triples; normalize_thicket sends any thicket
to the triple of its equivalence class.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import FrozenSet, Iterator

from .errors import CapacityError
from .expressions import Add, Const, Gen, Node, max_generator, parse_expression
from .monoid import (
    LEAF,
    Tree,
    count_free_monoid,
    gen_tree,
    mask_members,
    mask_size,
    node,
    parse_tree,
    render_tree,
    star_left,
    star_right,
    tree_product,
    trees_with_lmp,
    trees_with_rmp,
)
from .subsemigroups import (
    RepleteSubsemigroup,
    alphabet_family,
    close_under_product,
    enumerate_replete,
    is_replete,
    is_subsemigroup,
    layer_of,
    path_class_size,
    replete_closure_trees,
)
from .thickets import Thicket, apparity_by_alphabet
from .quotients import N22


@dataclass(frozen=True)
class ComplementaryTriple:
    n: int
    s: RepleteSubsemigroup
    d: FrozenSet[Tree]
    odd: FrozenSet[int]  # alphabets with odd coefficient sum, as bitmasks

    def s_trees(self) -> FrozenSet[Tree]:
        return self.s.trees()

    def carrier(self) -> FrozenSet[Tree]:
        return self.s_trees() | self.d

    def alphabet_masks(self) -> FrozenSet[int]:
        return self.s.alphabet_masks() | frozenset(t.alpha for t in self.d)

    def to_json(self) -> dict:
        return {
            "S": self.s.to_json(),
            "D": [render_tree(t) for t in sorted(self.d, key=Tree.sort_key)],
            "p": sorted(self.odd),
        }

    @staticmethod
    def from_json(data: dict) -> "ComplementaryTriple":
        s = RepleteSubsemigroup.from_json(data["S"])
        d = frozenset(parse_tree(t, s.n) for t in data["D"])
        return ComplementaryTriple(s.n, s, d, frozenset(data["p"]))


def _triple(n: int, s_trees, d, odd) -> ComplementaryTriple:
    s = RepleteSubsemigroup.from_trees(n, s_trees, validate=False)
    return ComplementaryTriple(n, s, frozenset(d), frozenset(odd))


def zero(n: int) -> ComplementaryTriple:
    return _triple(n, (), (), ())


def one(n: int) -> ComplementaryTriple:
    return _triple(n, (), {LEAF}, {0})


def gen(i: int, n: int) -> ComplementaryTriple:
    if not 0 <= i < n:
        raise ValueError(f"generator {i} out of range for n={n}")
    return _triple(n, (), {gen_tree(i)}, {1 << i})


def constant(k: int, n: int) -> ComplementaryTriple:
    if k < 0:
        raise ValueError("constants are natural numbers")
    if k == 0:
        return zero(n)
    if k == 1:
        return one(n)
    return _triple(n, {LEAF}, (), {0} if k % 2 else ())


def validate_triple(c: ComplementaryTriple) -> None:
    """Raise ValueError unless (S, D, p) is a complementary triple."""
    s_trees = c.s_trees()
    if not is_replete(s_trees):
        raise ValueError("S is not replete")
    d_alphas = [t.alpha for t in c.d]
    for t, u in itertools.combinations(c.d, 2):
        if t.alpha & u.alpha in (t.alpha, u.alpha):
            raise ValueError("D is not sparse")
    s_alphas = c.s.alphabet_masks()
    if s_alphas & frozenset(d_alphas):
        raise ValueError("S and D share an alphabet")
    if not is_subsemigroup(s_trees | c.d):
        raise ValueError("S and D are not jointly product-closed")
    all_alphas = s_alphas | frozenset(d_alphas)
    for a in d_alphas:
        if any(b & a == b for b in all_alphas if b != a):
            raise ValueError("a straggler alphabet is not minimal")
    if not frozenset(d_alphas) <= c.odd:
        raise ValueError("parity must be odd on straggler alphabets")
    if not c.odd <= all_alphas:
        raise ValueError("parity is odd outside the carrier alphabets")


# ---------------------------------------------------------------------------
# Normalization: thicket -> triple and triple -> canonical thicket


def normalize_thicket(f: Thicket) -> ComplementaryTriple:
    """The complementary triple of f's equivalence class.

    Works structurally: a coefficient-1 tree alone on a minimal alphabet can
    never participate in an expansion, so it is a straggler; everything else
    closes up to the replete subsemigroup, and per-alphabet coefficient
    parity is invariant.
    """
    if f.rig != N22:
        raise ValueError("normalization expects quotient coefficients (2,2)")
    if f.is_zero():
        return zero(f.n)
    support = f.support()
    closed = close_under_product(support)
    family = alphabet_family(closed)
    minimal = {
        a for a in family if not any(b != a and b & a == b for b in family)
    }
    stragglers = set()
    for t, coeff in f.items():
        if coeff == 1 and t.alpha in minimal and len(layer_of(support, t.alpha)) == 1:
            stragglers.add(t)
    s_trees = replete_closure_trees(closed - stragglers)
    parity = apparity_by_alphabet(f)
    odd = {a for a, value in parity.items() if value % 2 == 1}
    return _triple(f.n, s_trees, stragglers, odd)


def triple_canonical_thicket(c: ComplementaryTriple) -> Thicket:
    """The deterministic maximal thicket of a triple: stragglers get
    coefficient 1, replete trees get 2, and the least tree of an odd-parity
    layer gets bumped to 3."""
    validate_triple(c)
    coeffs = {t: 1 for t in c.d}
    s_trees = c.s_trees()
    for a in c.s.alphabet_masks():
        layer = sorted(layer_of(s_trees, a), key=Tree.sort_key)
        for t in layer:
            coeffs[t] = 2
        if a in c.odd:
            coeffs[layer[0]] = 3
    return Thicket(c.n, coeffs, N22)


# ---------------------------------------------------------------------------
# Arithmetic (operations on canonical forms)


def _check_same(c1, c2):
    if c1.n != c2.n:
        raise ValueError("triples over different generator counts")


def _product_stragglers(c1, c2):
    left, right = c1.carrier(), c2.carrier()
    out = set()
    for t in c1.d:
        for u in c2.d:
            a = t.alpha | u.alpha
            if all(
                (s is t and v is u) or (s.alpha | v.alpha) & ~a
                for s in left
                for v in right
            ):
                out.add(tree_product(t, u))
    return out


def triple_mul(c1: ComplementaryTriple, c2: ComplementaryTriple) -> ComplementaryTriple:
    _check_same(c1, c2)
    left, right = c1.carrier(), c2.carrier()
    products = {tree_product(s, v) for s in left for v in right}
    stragglers = _product_stragglers(c1, c2)
    # The stragglers stay lonely on minimal alphabets, so they can be split
    # off only after the pairwise products are closed up.
    s_trees = replete_closure_trees(close_under_product(products) - stragglers)
    odd = set()
    for a1 in c1.odd:
        for a2 in c2.odd:
            odd ^= {a1 | a2}
    return _triple(c1.n, s_trees, stragglers, odd)


def triple_add(c1: ComplementaryTriple, c2: ComplementaryTriple) -> ComplementaryTriple:
    _check_same(c1, c2)
    left, right = c1.carrier(), c2.carrier()
    stragglers = {
        t for t in c1.d if all(v.alpha & ~t.alpha for v in right)
    } | {
        u for u in c2.d if all(s.alpha & ~u.alpha for s in left)
    }
    s_trees = replete_closure_trees(close_under_product(left | right) - stragglers)
    return _triple(c1.n, s_trees, stragglers, c1.odd ^ c2.odd)


def eval_expression(expr, n: int) -> ComplementaryTriple:
    """Evaluate a rig expression (text or AST) in the free mirig on n generators."""
    if isinstance(expr, str):
        expr = parse_expression(expr)
    if max_generator(expr) >= n:
        raise ValueError(f"expression uses a generator out of range for n={n}")

    def walk(e: Node) -> ComplementaryTriple:
        if isinstance(e, Const):
            return constant(e.value, n)
        if isinstance(e, Gen):
            return gen(e.index, n)
        if isinstance(e, Add):
            return triple_add(walk(e.left), walk(e.right))
        return triple_mul(walk(e.left), walk(e.right))

    return walk(expr)


# ---------------------------------------------------------------------------
# Enumeration of dominated straggler sets and of whole triples


def _family_masks(s: RepleteSubsemigroup) -> frozenset[int]:
    return frozenset(mask for mask, _, _ in s.layers)


def _d_mask_candidates(s: RepleteSubsemigroup) -> list[int]:
    family = _family_masks(s)
    out = []
    for a in range(1, 1 << s.n):
        if a in family:
            continue
        if any(b & a == b for b in family if b != a):
            continue  # a strict subset is present, so a could not be minimal
        if any(a | b not in family for b in family):
            continue  # some product would land on a missing alphabet
        out.append(a)
    return out


def _d_path_options(s: RepleteSubsemigroup, a: int):
    """Per-candidate-alphabet choices of (leftmost, rightmost) paths for a
    straggler such that all products with S stay inside S."""
    lp_of = {mask: frozenset(lp) for mask, lp, _ in s.layers}
    rp_of = {mask: frozenset(rp) for mask, _, rp in s.layers}
    members = list(mask_members(a))
    rights, lefts = [], []
    for rho in itertools.permutations(members):
        if all(
            star_right(rho, sigma) in rp_of[a | b] and star_right(sigma, rho) in rp_of[a | b]
            for b, rp in rp_of.items()
            for sigma in rp
        ):
            rights.append(rho)
    for lam in itertools.permutations(members):
        if all(
            star_left(lam, sigma) in lp_of[a | b] and star_left(sigma, lam) in lp_of[a | b]
            for b, lp in lp_of.items()
            for sigma in lp
        ):
            lefts.append(lam)
    return lefts, rights


def _d_configs(s: RepleteSubsemigroup):
    """Yield (masks, left-path assignment, right-path assignment) for every
    nonempty straggler alphabet configuration dominated by s."""
    if s.unit:
        return
    family = _family_masks(s)
    candidates = _d_mask_candidates(s)
    options = {a: _d_path_options(s, a) for a in candidates}
    candidates = [a for a in candidates if options[a][0] and options[a][1]]
    rp_of = {mask: frozenset(rp) for mask, _, rp in s.layers}
    lp_of = {mask: frozenset(lp) for mask, lp, _ in s.layers}
    for r in range(1, len(candidates) + 1):
        for masks in itertools.combinations(candidates, r):
            if any(
                (a & b) in (a, b) or (a | b) not in family
                for a, b in itertools.combinations(masks, 2)
            ):
                continue
            right_assigns = []
            for combo in itertools.product(*(options[a][1] for a in masks)):
                assign = dict(zip(masks, combo))
                if all(
                    star_right(assign[a], assign[b]) in rp_of[a | b]
                    and star_right(assign[b], assign[a]) in rp_of[a | b]
                    for a, b in itertools.combinations(masks, 2)
                ):
                    right_assigns.append(assign)
            left_assigns = []
            for combo in itertools.product(*(options[a][0] for a in masks)):
                assign = dict(zip(masks, combo))
                if all(
                    star_left(assign[a], assign[b]) in lp_of[a | b]
                    and star_left(assign[b], assign[a]) in lp_of[a | b]
                    for a, b in itertools.combinations(masks, 2)
                ):
                    left_assigns.append(assign)
            for la in left_assigns:
                for ra in right_assigns:
                    yield masks, la, ra


def count_dominated(s: RepleteSubsemigroup) -> int:
    """Number of sparse sets dominated by s."""
    total = 1  # the empty set
    if s.unit:
        return total
    total += 1  # the trivial tree alone
    for masks, _, _ in _d_configs(s):
        total += math.prod(path_class_size(mask_size(a)) ** 2 for a in masks)
    return total


def _trees_with_paths(lam, rho):
    return [
        node(t0, lam[-1], rho[0], t1)
        for t0 in trees_with_lmp(lam[:-1])
        for t1 in trees_with_rmp(rho[1:])
    ]


def enumerate_dominated(s: RepleteSubsemigroup) -> Iterator[FrozenSet[Tree]]:
    yield frozenset()
    if s.unit:
        return
    yield frozenset({LEAF})
    for masks, la, ra in _d_configs(s):
        per_mask = [_trees_with_paths(la[a], ra[a]) for a in masks]
        for choice in itertools.product(*per_mask):
            yield frozenset(choice)


def enumerate_triples(n: int) -> Iterator[ComplementaryTriple]:
    """All elements of the free mirig on n generators, as triples."""
    if n > 2:
        raise CapacityError("exhaustive triple enumeration supported for n <= 2")
    for s in enumerate_replete(n):
        s_masks = sorted(s.alphabet_masks())
        for d in enumerate_dominated(s):
            d_masks = frozenset(t.alpha for t in d)
            for r in range(len(s_masks) + 1):
                for extra in itertools.combinations(s_masks, r):
                    yield ComplementaryTriple(n, s, d, d_masks | frozenset(extra))


def sample_triples(n: int, count: int, seed: int = 0) -> list[ComplementaryTriple]:
    """Random triples, for property tests at sizes where exhaustion is out."""
    rng = random.Random(seed)
    semis = list(enumerate_replete(n))
    out = []
    while len(out) < count:
        s = rng.choice(semis)
        ds = list(enumerate_dominated(s))
        d = rng.choice(ds)
        d_masks = frozenset(t.alpha for t in d)
        extra = frozenset(a for a in s.alphabet_masks() if rng.random() < 0.5)
        out.append(ComplementaryTriple(n, s, d, d_masks | extra))
    return out


# ---------------------------------------------------------------------------
# Counting


def mirig_upper_bounds(n: int) -> tuple[int, int]:
    """(crude, refined) upper bounds for the free mirig size."""
    m = count_free_monoid(n)
    return 4 ** m, 4 ** (m - 1) + 3 * 3 ** (m - 1)


def _minimal_single_path_masks(s: RepleteSubsemigroup) -> list[int]:
    family = _family_masks(s)
    out = []
    for mask, lp, rp in s.layers:
        if len(lp) == 1 == len(rp) and not any(
            b != mask and b & mask == b for b in family
        ):
            out.append(mask)
    return out


def count_free_mirig(n: int, strategy: str = "grouped") -> int:
    """Exact size of the free mirig on n generators.

    "triples" sums dominated-set counts over all replete subsemigroups;
    "grouped" groups triples by the replete subsemigroup their carrier
    generates, which only needs per-layer path multiplicities.
    """
    if strategy == "triples":
        return sum(
            count_dominated(s) * 2 ** len(s.alphabet_masks())
            for s in enumerate_replete(n)
        )
    if strategy != "grouped":
        raise ValueError("strategy must be 'triples' or 'grouped'")
    total = 0
    for s in enumerate_replete(n):
        if s.unit:
            continue
        n_alphas = len(s.layers)
        inner = 0
        singles = _minimal_single_path_masks(s)
        for r in range(len(singles) + 1):
            for e in itertools.combinations(singles, r):
                q = math.prod(path_class_size(mask_size(a)) ** 2 for a in e)
                inner += 2 ** (n_alphas - r) * q
        total += 3 * 2 ** n_alphas + inner
    return total


def _upward_closed_families(n: int) -> Iterator[frozenset[int]]:
    masks = list(range(1 << n))
    for r in range(len(masks) + 1):
        for combo in itertools.combinations(masks, r):
            fam = frozenset(combo)
            if all(
                b in fam
                for a in fam
                for b in masks
                if a & b == a
            ):
                yield fam


VARIANTS = ("11", "21", "12", "02", "boolean_semiring")


def count_characteristic_variant(n: int, variant) -> int:
    """Counts for the characteristic quotients and the Boolean-semiring one."""
    if isinstance(variant, tuple):
        variant = f"{variant[0]}{variant[1]}"
    if variant == "11":
        return sum(1 for _ in enumerate_replete(n))
    if variant == "21":
        total = 0
        for s in enumerate_replete(n):
            if s.unit:
                continue
            singles = _minimal_single_path_masks(s)
            inner = 0
            for r in range(len(singles) + 1):
                for e in itertools.combinations(singles, r):
                    inner += math.prod(
                        path_class_size(mask_size(a)) ** 2 for a in e
                    )
            total += 2 + inner
        return total
    if variant == "12":
        return 3 * sum(
            2 ** len(s.layers) for s in enumerate_replete(n) if not s.unit
        )
    if variant == "02":
        return 2 ** (2 ** n)
    if variant == "boolean_semiring":
        return sum(2 ** len(fam) for fam in _upward_closed_families(n))
    raise ValueError(f"unsupported variant {variant!r}")
