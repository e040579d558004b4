"""Free idempotent monoids: words, canonical decompositions, and the tree model.

Words over n generators are tuples of integer indices.  Two words are
equivalent when one can be turned into the other by inserting/deleting
squares (ww <-> w); the quotient monoid is finite and its elements are
represented exactly by labelled rooted binary trees.  This module builds
those trees, multiplies them, and exposes the extremal-path algebra used
by the subsemigroup machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Literal, Optional

from .errors import CapacityError, ParseError

Word = tuple[int, ...]
Side = Literal["left", "right"]

MAX_GENERATORS = 26  # letter rendering a..z

# Practical exact-enumeration bound: a 5-letter alphabet already has
# 5^2 * 331776^2 trees of full height.
MAX_ENUM_ALPHABET = 4


def letter(i: int) -> str:
    return chr(ord("a") + i)


def parse_word(text: str, n: Optional[int] = None) -> Word:
    """Parse a word in the one-letter-per-generator format, e.g. "bcac".

    The empty string and "1" both denote the empty word.
    """
    if text == "1":
        return ()
    out = []
    for off, ch in enumerate(text):
        idx = ord(ch) - ord("a")
        if not (0 <= idx < MAX_GENERATORS):
            raise ParseError(f"invalid word character {ch!r}", off)
        if n is not None and idx >= n:
            raise ValueError(f"generator {ch!r} out of range for n={n}")
        out.append(idx)
    return tuple(out)


def render_word(w: Word) -> str:
    return "".join(letter(i) for i in w)


def word_alphabet(w: Word) -> int:
    """Bitmask of the generators occurring in w."""
    mask = 0
    for x in w:
        mask |= 1 << x
    return mask


def mask_size(mask: int) -> int:
    return bin(mask).count("1")


def mask_members(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(gens) -> int:
    out = 0
    for g in gens:
        out |= 1 << g
    return out


# ---------------------------------------------------------------------------
# Green-Rees decomposition of a word


@dataclass(frozen=True)
class GrfDecomposition:
    """w ~ p a b q with p the maximal prefix missing exactly the generator a
    and q the maximal suffix missing exactly the generator b."""

    p: Word
    a: int
    b: int
    q: Word


def grf(w: Word) -> GrfDecomposition:
    if not w:
        raise ValueError("the empty word has no Green-Rees decomposition")
    # p ends just before the first occurrence of the last generator to appear.
    seen = 0
    total = word_alphabet(w)
    for i, x in enumerate(w):
        if seen | (1 << x) == total and not seen & (1 << x):
            p, a = w[:i], x
            break
        seen |= 1 << x
    # q starts just after the last occurrence of the first generator to vanish.
    seen = 0
    for j in range(len(w) - 1, -1, -1):
        x = w[j]
        if seen | (1 << x) == total and not seen & (1 << x):
            q, b = w[j + 1:], x
            break
        seen |= 1 << x
    return GrfDecomposition(p, a, b, q)


# ---------------------------------------------------------------------------
# The tree model
#
# A tree is either the leaf or a node (left, a0, a1, right) subject to
#   a0 not in alpha(left),  a1 not in alpha(right),
#   alpha(left) | {a0} == {a1} | alpha(right).
# Nodes are interned, so equality is identity and hashing is cheap.


class Tree:
    __slots__ = ("left", "a0", "a1", "right", "alpha", "height", "_key")

    def __init__(self, left, a0, a1, right, alpha, height):
        self.left = left
        self.a0 = a0
        self.a1 = a1
        self.right = right
        self.alpha = alpha
        self.height = height
        self._key = None

    @property
    def is_leaf(self) -> bool:
        return self.height == 0

    def sort_key(self):
        # Total order: alphabet bitmask first (leaf least), then structure.
        if self._key is None:
            if self.is_leaf:
                self._key = (0,)
            else:
                self._key = (
                    self.alpha,
                    self.left.sort_key(),
                    self.a0,
                    self.a1,
                    self.right.sort_key(),
                )
        return self._key

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Tree({render_tree(self)})"


LEAF = Tree(None, -1, -1, None, 0, 0)

_node_cache: dict[tuple, Tree] = {}


def node(left: Tree, a0: int, a1: int, right: Tree) -> Tree:
    key = (id(left), a0, a1, id(right))
    t = _node_cache.get(key)
    if t is not None:
        return t
    if left.alpha & (1 << a0):
        raise ValueError("left generator already occurs in the left subtree")
    if right.alpha & (1 << a1):
        raise ValueError("right generator already occurs in the right subtree")
    alpha = left.alpha | (1 << a0)
    if alpha != right.alpha | (1 << a1):
        raise ValueError("subtree alphabets do not match")
    t = Tree(left, a0, a1, right, alpha, mask_size(alpha))
    _node_cache[key] = t
    return t


def gen_tree(i: int) -> Tree:
    """The height-1 tree of a single generator (shorthand "(a)")."""
    return node(LEAF, i, i, LEAF)


def tree_of_word(w: Word) -> Tree:
    if not w:
        return LEAF
    d = grf(w)
    return node(tree_of_word(d.p), d.a, d.b, tree_of_word(d.q))


def word_of_tree(t: Tree) -> Word:
    """Read the generators of the fully expanded tree in order."""
    if t.is_leaf:
        return ()
    return word_of_tree(t.left) + (t.a0, t.a1) + word_of_tree(t.right)


def words_equivalent(w1: Word, w2: Word) -> bool:
    return tree_of_word(w1) is tree_of_word(w2)


_product_cache: dict[tuple[int, int], Tree] = {}


def tree_product(s: Tree, t: Tree) -> Tree:
    """Monoid product; equals tree_of_word(word_of_tree(s) + word_of_tree(t))."""
    if s.is_leaf:
        return t
    if t.is_leaf:
        return s
    key = (id(s), id(t))
    out = _product_cache.get(key)
    if out is not None:
        return out
    if t.alpha & ~s.alpha & (1 << t.a0):
        left, a0 = tree_product(s, t.left), t.a0
    else:
        q = tree_product(s, t.left)
        left, a0 = q.left, q.a0
    if s.alpha & ~t.alpha & (1 << s.a1):
        right, a1 = tree_product(s.right, t), s.a1
    else:
        q = tree_product(s.right, t)
        right, a1 = q.right, q.a1
    out = node(left, a0, a1, right)
    _product_cache[key] = out
    return out


def product_of(trees) -> Tree:
    out = LEAF
    for t in trees:
        out = tree_product(out, t)
    return out


def is_left_factor(s: Tree, t: Tree) -> bool:
    """True iff t = s * t' for some t', i.e. s*t = t."""
    return tree_product(s, t) is t


def is_right_factor(s: Tree, t: Tree) -> bool:
    """True iff t = t' * s for some t', i.e. t*s = t."""
    return tree_product(t, s) is t


# ---------------------------------------------------------------------------
# Extremal paths
#
# The rightmost path of a tree lists its generators in order of last
# occurrence in any representing word, the leftmost path in order of first
# occurrence.  Both are total orders on the alphabet.


@dataclass(frozen=True)
class ExtremalPath:
    seq: tuple[int, ...]
    side: Side

    def __post_init__(self):
        if len(set(self.seq)) != len(self.seq):
            raise ValueError("extremal paths are duplicate-free")


def rmp(t: Tree) -> tuple[int, ...]:
    out = []
    while not t.is_leaf:
        out.append(t.a1)
        t = t.right
    return tuple(out)


def lmp(t: Tree) -> tuple[int, ...]:
    out = []
    while not t.is_leaf:
        out.append(t.a0)
        t = t.left
    out.reverse()
    return tuple(out)


def extremal_path(t: Tree, side: Side) -> ExtremalPath:
    return ExtremalPath(lmp(t) if side == "left" else rmp(t), side)


def star_right(rho, sigma):
    """rmp analogue of concatenation: rmp(s*t) = star_right(rmp s, rmp t).

    Keeps the entries of rho not occurring in sigma (in order), then sigma.
    """
    drop = set(sigma)
    return tuple(x for x in rho if x not in drop) + tuple(sigma)


def star_left(rho, sigma):
    """lmp analogue: lmp(s*t) = star_left(lmp s, lmp t)."""
    keep = set(rho)
    return tuple(rho) + tuple(x for x in sigma if x not in keep)


def star_right_j(rho, sigma, j):
    """star_right against the suffix of sigma starting at position j (1-based);
    identity on rho when j exceeds len(sigma)."""
    if not 1 <= j:
        raise ValueError("j is 1-based")
    if j > len(sigma):
        return tuple(rho)
    return star_right(rho, sigma[j - 1:])


def star_left_j(rho, sigma, j):
    """Mirror of star_right_j: uses the length-j prefix of sigma, prepended."""
    if not 1 <= j:
        raise ValueError("j is 1-based")
    if j > len(sigma):
        return tuple(rho)
    return star_left(sigma[:j], rho)


def path_star(rho: ExtremalPath, sigma: ExtremalPath, j: Optional[int] = None) -> ExtremalPath:
    if rho.side != sigma.side:
        raise ValueError("paths must lie on the same side")
    if rho.side == "right":
        seq = star_right(rho.seq, sigma.seq) if j is None else star_right_j(rho.seq, sigma.seq, j)
    else:
        seq = star_left(rho.seq, sigma.seq) if j is None else star_left_j(rho.seq, sigma.seq, j)
    return ExtremalPath(seq, rho.side)


# ---------------------------------------------------------------------------
# Enumeration and counting


def tree_count_full(k: int) -> int:
    """Number of trees whose alphabet is a given k-element set: c_k = k^2 c_{k-1}^2."""
    c = 1
    for j in range(1, k + 1):
        c = j * j * c * c
    return c


def count_free_monoid(n: int) -> int:
    """Size of the free idempotent monoid on n generators."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    import math

    return sum(math.comb(n, k) * tree_count_full(k) for k in range(n + 1))


@lru_cache(maxsize=None)
def _trees_on(mask: int) -> tuple[Tree, ...]:
    if mask_size(mask) > MAX_ENUM_ALPHABET:
        raise CapacityError(
            f"tree enumeration supports alphabets of at most {MAX_ENUM_ALPHABET} generators"
        )
    if mask == 0:
        return (LEAF,)
    out = []
    members = list(mask_members(mask))
    for a0 in members:
        for a1 in members:
            for l in _trees_on(mask & ~(1 << a0)):
                for r in _trees_on(mask & ~(1 << a1)):
                    out.append(node(l, a0, a1, r))
    out.sort(key=Tree.sort_key)
    return tuple(out)


def enumerate_trees(mask: int) -> list[Tree]:
    """All trees with alphabet exactly `mask`, in canonical order."""
    return list(_trees_on(mask))


def all_trees(n: int) -> list[Tree]:
    """All of T_n in canonical order (leaf first)."""
    ts = []
    for mask in range(1 << n):
        ts.extend(_trees_on(mask))
    ts.sort(key=Tree.sort_key)
    return ts


@lru_cache(maxsize=None)
def trees_with_rmp(sigma: tuple[int, ...]) -> tuple[Tree, ...]:
    """All trees with alphabet support(sigma) and rightmost path sigma."""
    if not sigma:
        return (LEAF,)
    mask = mask_of(sigma)
    out = []
    for a0 in mask_members(mask):
        for l in _trees_on(mask & ~(1 << a0)):
            for r in trees_with_rmp(sigma[1:]):
                out.append(node(l, a0, sigma[0], r))
    return tuple(sorted(out, key=Tree.sort_key))


@lru_cache(maxsize=None)
def trees_with_lmp(lam: tuple[int, ...]) -> tuple[Tree, ...]:
    """All trees with alphabet support(lam) and leftmost path lam."""
    if not lam:
        return (LEAF,)
    mask = mask_of(lam)
    out = []
    for a1 in mask_members(mask):
        for l in trees_with_lmp(lam[:-1]):
            for r in _trees_on(mask & ~(1 << a1)):
                out.append(node(l, lam[-1], a1, r))
    return tuple(sorted(out, key=Tree.sort_key))


def monoid_elements(n: int) -> list[Tree]:
    return all_trees(n)


# Shortest-word search walks the whole submonoid on the word's alphabet,
# which is out of reach beyond three generators (|M_4| = 332381).
MAX_SHORTEST_ALPHABET = 3


@lru_cache(maxsize=None)
def _shortest_words_on(mask: int) -> dict:
    gens = [(g, gen_tree(g)) for g in mask_members(mask)]
    words = {id(LEAF): ()}
    trees = {id(LEAF): LEAF}
    frontier = [LEAF]
    while frontier:
        fresh = []
        for t in frontier:
            for g, gt in gens:
                u = tree_product(t, gt)
                if id(u) not in words:
                    words[id(u)] = words[id(t)] + (g,)
                    trees[id(u)] = u
                    fresh.append(u)
        frontier = fresh
    return {trees[i]: w for i, w in words.items()}


def shortest_word(t: Tree) -> Word:
    """A minimum-length word representing the tree."""
    if t.height > MAX_SHORTEST_ALPHABET:
        raise CapacityError(
            f"shortest-word search supports alphabets of at most {MAX_SHORTEST_ALPHABET} generators"
        )
    return _shortest_words_on(t.alpha)[t]


@lru_cache(maxsize=None)
def monoid_table(n: int):
    """(elements, index map, product table, unit index) for the full monoid on n generators."""
    elements = all_trees(n)
    index = {id(t): i for i, t in enumerate(elements)}
    table = [
        [index[id(tree_product(s, t))] for t in elements] for s in elements
    ]
    return elements, index, table, index[id(LEAF)]


# ---------------------------------------------------------------------------
# Tree s-expressions:  tree := "()" | "(" gen ")" | "(" tree " " gen " " gen " " tree ")"
# The one-letter shorthand is accepted on input and expanded on output.


def render_tree(t: Tree) -> str:
    if t.is_leaf:
        return "()"
    return "({} {} {} {})".format(
        render_tree(t.left), letter(t.a0), letter(t.a1), render_tree(t.right)
    )


def parse_tree(text: str, n: Optional[int] = None) -> Tree:
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expect(ch):
        nonlocal pos
        if pos >= len(text) or text[pos] != ch:
            raise ParseError(f"expected {ch!r}", pos)
        pos += 1

    def gen() -> int:
        nonlocal pos
        if pos >= len(text) or not text[pos].islower():
            raise ParseError("expected a generator letter", pos)
        idx = ord(text[pos]) - ord("a")
        if idx >= MAX_GENERATORS or (n is not None and idx >= n):
            raise ParseError("generator out of range", pos)
        pos += 1
        return idx

    def tree() -> Tree:
        nonlocal pos
        skip_ws()
        expect("(")
        skip_ws()
        if pos < len(text) and text[pos] == ")":
            pos += 1
            return LEAF
        if pos < len(text) and text[pos].islower():
            # could be shorthand "(a)" or the start of nothing else: a node
            # always begins with "(" for its left subtree
            g = gen()
            skip_ws()
            expect(")")
            return gen_tree(g)
        left = tree()
        skip_ws()
        a0 = gen()
        skip_ws()
        a1 = gen()
        skip_ws()
        right = tree()
        skip_ws()
        expect(")")
        try:
            return node(left, a0, a1, right)
        except ValueError as e:
            raise ParseError(str(e), pos) from None

    out = tree()
    skip_ws()
    if pos != len(text):
        raise ParseError("trailing input after tree", pos)
    return out
