"""Brute-force engines, independent of the structural machinery.

word_closure saturates the square-insertion relation over all words up to a
length budget; sandwich_closure strengthens it with derived one-step moves
so that it converges where plain square zigzags would need unreachable
intermediate lengths; thicket_components explores the full space of
coefficient vectors over the tree monoid, connecting thickets related by one
squaring move.  Component counts and memberships serve as ground truth for
the canonical-form code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from typing import Optional

from .errors import CapacityError
from .monoid import Word, mask_members, monoid_table
from .thickets import Thicket


class UnionFind:
    """Path-halving union-find over arbitrary hashable keys."""

    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


# ---------------------------------------------------------------------------
# Word-level congruence closure


@dataclass
class WordClassTable:
    n: int
    max_length: int
    classes: tuple[frozenset, ...]
    index: dict  # word -> class position

    def class_of(self, w: Word) -> frozenset:
        return self.classes[self.index[w]]

    def same_class(self, w1: Word, w2: Word) -> bool:
        return self.index[w1] == self.index[w2]


MAX_CLOSURE_WORDS = 500_000


@lru_cache(maxsize=8)
def word_closure(n: int, max_length: int) -> WordClassTable:
    """Partition of all words of length <= max_length by square
    insertions/deletions that stay within the budget."""
    total = sum(n ** k for k in range(max_length + 1)) if n > 1 else max_length + 1
    if n == 0:
        return WordClassTable(0, max_length, (frozenset({()}),), {(): 0})
    if total > MAX_CLOSURE_WORDS:
        raise CapacityError(
            f"word closure over {total} words exceeds the {MAX_CLOSURE_WORDS} bound"
        )
    uf = UnionFind()
    words = []
    for length in range(max_length + 1):
        for w in itertools.product(range(n), repeat=length):
            words.append(w)
            uf.add(w)
    for w in words:
        room = max_length - len(w)
        if not room:
            continue
        for i in range(len(w)):
            for k in range(1, min(room, len(w) - i) + 1):
                squared = w[: i + k] + w[i : i + k] + w[i + k :]
                uf.add(squared)
                uf.union(w, squared)
    roots = {}
    members = []
    for w in words:
        r = uf.find(w)
        if r not in roots:
            roots[r] = len(members)
            members.append([])
        members[roots[r]].append(w)
    classes = tuple(frozenset(ms) for ms in members)
    index = {w: i for i, ms in enumerate(classes) for w in ms}
    return WordClassTable(n, max_length, classes, index)


def stable_classes(small: WordClassTable, reference: WordClassTable) -> list[int]:
    """Positions of small's classes that agree with a stronger reference table
    (a bigger plain budget, or a sandwich closure): the reference class cut
    back to the smaller budget is identical."""
    if small.n != reference.n or small.max_length > reference.max_length:
        raise ValueError("need tables for the same n with a larger second budget")
    out = []
    cutoff = small.max_length
    for pos, cls in enumerate(small.classes):
        w0 = next(iter(cls))
        restricted = frozenset(w for w in reference.class_of(w0) if len(w) <= cutoff)
        if restricted == cls:
            out.append(pos)
    return out


# The square congruence identifies w u w with w whenever alpha(u) is
# contained in alpha(w): the doubled copy absorbs the infix (the product of
# equal-alphabet trees keeps the outer branches, so tr(wuw) = tr(w)).
# Squares are the empty-infix case.  Searching with these "sandwich" moves,
# over states normalized by square deletion, reaches the join of word pairs
# whose plain square zigzags would blow past any feasible budget.


@lru_cache(maxsize=None)
def _squash(w: Word) -> Word:
    """Delete repeated adjacent blocks until none remain."""
    changed = True
    while changed:
        changed = False
        size = len(w)
        for k in range(1, size // 2 + 1):
            for i in range(size - 2 * k + 1):
                if w[i : i + k] == w[i + k : i + 2 * k]:
                    w = w[: i + k] + w[i + 2 * k :]
                    changed = True
                    break
            if changed:
                break
    return w


def _infixes(letters, max_len):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [u + (x,) for u in frontier for x in letters]
        out.extend(frontier)
    return out


def _sandwich_neighbors(w, cap, max_piece, max_infix):
    from .monoid import word_alphabet

    size = len(w)
    out = set()
    for i in range(size):
        for j in range(i + 1, min(i + max_piece, size) + 1):
            piece = w[i:j]
            pa = word_alphabet(piece)
            span = j - i
            # deletions  p piece u piece q -> p piece q
            for k in range(j, min(size - span, j + 2 * max_infix) + 1):
                ua = word_alphabet(w[j:k])
                if ua & pa != ua:
                    continue
                if w[k : k + span] == piece:
                    out.add(w[:j] + w[k + span :])
            # insertions  p piece q -> p piece u piece q
            room = cap - size - span
            if room >= 0:
                letters = [b for b in mask_members(pa)]
                for u in _infixes(letters, min(max_infix, room)):
                    out.add(w[:j] + u + piece + w[j:])
    return out


@lru_cache(maxsize=8)
def sandwich_closure(
    n: int,
    max_length: int,
    cap: Optional[int] = None,
    max_piece: int = 5,
    max_infix: int = 3,
) -> WordClassTable:
    """Partition of words up to max_length under sandwich moves explored up
    to `cap`, with states normalized by square deletion.

    Still a lower approximation of the congruence in general, but strong
    enough to converge where the plain square closure stalls; exactness on
    the tested ranges is verified against the independent tree route."""
    if cap is None:
        cap = 2 * max_length + 4
    if n == 0:
        return WordClassTable(0, max_length, (frozenset({()}),), {(): 0})
    total = sum(n ** k for k in range(max_length + 1)) if n > 1 else max_length + 1
    if total > MAX_CLOSURE_WORDS:
        raise CapacityError(
            f"sandwich closure over {total} words exceeds the {MAX_CLOSURE_WORDS} bound"
        )
    words = [
        w
        for length in range(max_length + 1)
        for w in itertools.product(range(n), repeat=length)
    ]
    label_of_norm: dict = {}
    for w0 in words:
        root = _squash(w0)
        if root in label_of_norm:
            continue
        label = len(label_of_norm)
        label_of_norm[root] = label
        queue = [root]
        while queue:
            w = queue.pop()
            for v in _sandwich_neighbors(w, cap, max_piece, max_infix):
                nv = _squash(v)
                if nv not in label_of_norm:
                    label_of_norm[nv] = label
                    queue.append(nv)
    members: dict = {}
    for w in words:
        members.setdefault(label_of_norm[_squash(w)], []).append(w)
    classes = tuple(frozenset(ms) for ms in members.values())
    index = {w: i for i, ms in enumerate(classes) for w in ms}
    return WordClassTable(n, max_length, classes, index)


# ---------------------------------------------------------------------------
# The expansion graph over all thickets of a small tree monoid


@dataclass
class ExpansionGraph:
    n: int
    char: tuple[int, int]  # coefficient quotient (m, q): carrier {0..m+q-1}
    elements: tuple  # trees in canonical order
    labels: list[int]  # node index -> component label
    component_count: int

    @property
    def base(self) -> int:
        return self.char[0] + self.char[1]

    def node_of_thicket(self, f: Thicket) -> int:
        if f.n != self.n:
            raise ValueError("thicket over the wrong generator count")
        position = {t: i for i, t in enumerate(self.elements)}
        node = 0
        for t, c in f.items():
            node += c * self.base ** position[t]
        return node

    def thicket_of_node(self, node: int) -> Thicket:
        from .quotients import CoefficientRig

        coeffs = {}
        for t in self.elements:
            node, c = divmod(node, self.base)
            if c:
                coeffs[t] = c
        rig = CoefficientRig(self.char)
        return Thicket(self.n, coeffs, rig)

    def same_component(self, f: Thicket, g: Thicket) -> bool:
        return self.labels[self.node_of_thicket(f)] == self.labels[self.node_of_thicket(g)]


def _move_templates(table, m):
    """Deduplicated squaring moves (t1, t2, s1, s2): with xuy and xvy present,
    bump xuvy and xvuy.  Contexts x, y and factors u, v range over the whole
    monoid (the unit included)."""
    templates = set()
    rng = range(m)
    for x in rng:
        row_x = table[x]
        for u in rng:
            xu = row_x[u]
            for v in rng:
                xv = row_x[v]
                xuv = table[xu][v]
                xvu = table[xv][u]
                for y in rng:
                    t1, t2 = table[xu][y], table[xv][y]
                    if t1 > t2:
                        t1, t2 = t2, t1
                    s1, s2 = table[xuv][y], table[xvu][y]
                    if s1 > s2:
                        s1, s2 = s2, s1
                    templates.add((t1, t2, s1, s2))
    return sorted(templates)


MAX_GRAPH_GENERATORS = 2


@lru_cache(maxsize=None)
def thicket_components(n: int, char: tuple[int, int] = (2, 2)) -> ExpansionGraph:
    """Connected components of the move graph on all base^|M_n| thickets.

    `char` selects the coefficient quotient; the default carries the free
    mirig, the others its characteristic variants.  A node admits a move
    when its source coefficients have a preimage under adding one copy
    (two, when both source trees coincide) in the quotient.
    """
    if n > MAX_GRAPH_GENERATORS:
        raise CapacityError(
            f"expansion graph supported for n <= {MAX_GRAPH_GENERATORS} generators"
        )
    from .quotients import reduce_nat

    cm, cq = char
    base = cm + cq
    bump1 = tuple(reduce_nat(c + 1, cm, cq) for c in range(base))
    bump2 = tuple(reduce_nat(c + 2, cm, cq) for c in range(base))
    can_take1 = tuple(c in set(bump1) for c in range(base))
    can_take2 = tuple(c in set(bump2) for c in range(base))

    elements, _, table, _ = monoid_table(n)
    m = len(elements)
    size = base ** m
    templates = _move_templates(table, m)

    digits = []
    for pos in range(m):
        block, stride = base ** pos, base ** (pos + 1)
        digits.append([(node % stride) // block for node in range(size)])

    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t1, t2, s1, s2 in templates:
        dig_t1, dig_t2 = digits[t1], digits[t2]
        dig_s1, dig_s2 = digits[s1], digits[s2]
        w1, w2 = base ** s1, base ** s2
        same_source = t1 == t2
        for node in range(size):
            if same_source:
                if not can_take2[dig_t1[node]]:
                    continue
            elif not (can_take1[dig_t1[node]] and can_take1[dig_t2[node]]):
                continue
            if s1 == s2:
                c = dig_s1[node]
                other = node + (bump2[c] - c) * w1
            else:
                ca, cb = dig_s1[node], dig_s2[node]
                other = node + (bump1[ca] - ca) * w1 + (bump1[cb] - cb) * w2
            if other != node:
                ra, rb = find(node), find(other)
                if ra != rb:
                    parent[rb] = ra

    labels = [0] * size
    label_of_root = {}
    for node in range(size):
        r = find(node)
        if r not in label_of_root:
            label_of_root[r] = len(label_of_root)
        labels[node] = label_of_root[r]
    return ExpansionGraph(n, char, tuple(elements), labels, len(label_of_root))


def oracle_equivalent(f: Thicket, g: Thicket) -> bool:
    """Ground-truth equivalence of two thickets, by expansion-graph component."""
    if f.n != g.n:
        raise ValueError("thickets over different generator counts")
    return thicket_components(f.n).same_component(f, g)
