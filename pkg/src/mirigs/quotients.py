"""Quotient rigs of the naturals, finite rig tables, and axiom checking.

N_{m,n} has carrier {0, ..., m+n-1}; sums and products are computed in the
naturals and any overflow is reduced modulo n into the window
[m, m+n-1].  The subrig generated by 1 in any rig is one of these, which
is what the characteristic of a rig records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


def reduce_nat(k: int, m: int, n: int) -> int:
    if k <= m + n - 1:
        return k
    return m + (k - m) % n


@dataclass(frozen=True)
class QNat:
    """An element of N_{m,n}."""

    value: int
    m: int
    n: int

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise ValueError("need m >= 0 and n >= 1")
        if not 0 <= self.value <= self.m + self.n - 1:
            raise ValueError("value out of range")

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError(
                f"mismatched quotient parameters {(self.m, self.n)} vs {(other.m, other.n)}"
            )

    def __add__(self, other):
        self._check(other)
        return QNat(reduce_nat(self.value + other.value, self.m, self.n), self.m, self.n)

    def __mul__(self, other):
        self._check(other)
        return QNat(reduce_nat(self.value * other.value, self.m, self.n), self.m, self.n)


def qnat(value: int, m: int = 2, n: int = 2) -> QNat:
    return QNat(reduce_nat(value, m, n), m, n)


def qnat_add(x: QNat, y: QNat) -> QNat:
    return x + y


def qnat_mul(x: QNat, y: QNat) -> QNat:
    return x * y


class CoefficientRig:
    """Thicket coefficient arithmetic: N_{m,n}, or the naturals when unbounded."""

    def __init__(self, char: Optional[tuple[int, int]] = (2, 2)):
        self.char = char

    def reduce(self, k: int) -> int:
        if self.char is None:
            return k
        return reduce_nat(k, *self.char)

    def add(self, x: int, y: int) -> int:
        return self.reduce(x + y)

    def mul(self, x: int, y: int) -> int:
        return self.reduce(x * y)

    def __eq__(self, other):
        return isinstance(other, CoefficientRig) and self.char == other.char

    def __hash__(self):
        return hash(self.char)

    def __repr__(self):
        return f"CoefficientRig({self.char})"


N22 = CoefficientRig((2, 2))
NATURALS = CoefficientRig(None)


# ---------------------------------------------------------------------------
# Finite rig tables


@dataclass
class FiniteRigTable:
    elements: list[str]
    add: list[list[int]]
    mul: list[list[int]]
    zero: int
    one: int

    def size(self) -> int:
        return len(self.elements)


@dataclass
class MonoidTable:
    elements: list[str]
    mul: list[list[int]]
    one: int


RIG_AXIOMS = (
    "add_assoc",
    "add_unit_left",
    "add_unit_right",
    "add_comm",
    "mul_assoc",
    "mul_unit_left",
    "mul_unit_right",
    "zero_absorb_left",
    "zero_absorb_right",
    "distrib_left",
    "distrib_right",
)


@dataclass
class AxiomReport:
    violations: list[tuple[str, tuple]] = field(default_factory=list)
    commutative: bool = True
    mirig: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_rig_axioms(table: FiniteRigTable, require_mirig: bool = False) -> AxiomReport:
    """Exhaustively check the eleven rig axioms (and optionally x^2 = x)."""
    add, mul, z, o = table.add, table.mul, table.zero, table.one
    rng = range(table.size())
    report = AxiomReport()
    bad = report.violations.append
    for x in rng:
        if add[x][z] != x:
            bad(("add_unit_right", (x,)))
        if add[z][x] != x:
            bad(("add_unit_left", (x,)))
        if mul[x][o] != x:
            bad(("mul_unit_right", (x,)))
        if mul[o][x] != x:
            bad(("mul_unit_left", (x,)))
        if mul[x][z] != z:
            bad(("zero_absorb_right", (x,)))
        if mul[z][x] != z:
            bad(("zero_absorb_left", (x,)))
        if require_mirig and mul[x][x] != x:
            bad(("mul_idempotent", (x,)))
        if mul[x][x] != x:
            report.mirig = False
    for x in rng:
        for y in rng:
            if add[x][y] != add[y][x]:
                bad(("add_comm", (x, y)))
            if mul[x][y] != mul[y][x]:
                report.commutative = False
            for w in rng:
                if add[add[x][y]][w] != add[x][add[y][w]]:
                    bad(("add_assoc", (x, y, w)))
                if mul[mul[x][y]][w] != mul[x][mul[y][w]]:
                    bad(("mul_assoc", (x, y, w)))
                if mul[x][add[y][w]] != add[mul[x][y]][mul[x][w]]:
                    bad(("distrib_left", (x, y, w)))
                if mul[add[x][y]][w] != add[mul[x][w]][mul[y][w]]:
                    bad(("distrib_right", (x, y, w)))
    return report


def nmn_table(m: int, n: int) -> FiniteRigTable:
    size = m + n
    elems = [str(k) for k in range(size)]
    add = [[reduce_nat(i + j, m, n) for j in range(size)] for i in range(size)]
    mul = [[reduce_nat(i * j, m, n) for j in range(size)] for i in range(size)]
    # (0, 1) is the degenerate rig where 0 = 1
    return FiniteRigTable(elems, add, mul, zero=0, one=min(1, size - 1))


def characteristic(table: FiniteRigTable) -> tuple[int, int]:
    """(m, n) such that the subrig generated by 1 is N_{m,n}."""
    seen = {}
    x = table.zero
    i = 0
    while x not in seen:
        seen[x] = i
        x = table.add[x][table.one]
        i += 1
    return seen[x], i - seen[x]


def is_idempotent_monoid(table: MonoidTable) -> bool:
    rng = range(len(table.elements))
    mul, one = table.mul, table.one
    if any(mul[one][x] != x or mul[x][one] != x for x in rng):
        return False
    if any(mul[x][x] != x for x in rng):
        return False
    return all(
        mul[mul[x][y]][w] == mul[x][mul[y][w]] for x in rng for y in rng for w in rng
    )


def campion_mirig(monoid: MonoidTable) -> FiniteRigTable:
    """Adjoin a zero and an additively absorbing element to an idempotent
    monoid, making every sum of monoid elements absorb.  The result is a
    mirig of characteristic (2,1), noncommutative iff the monoid is.

    The zero annihilates multiplicatively (forced by the rig axioms)."""
    if not is_idempotent_monoid(monoid):
        raise ValueError("input is not an idempotent monoid")
    size = len(monoid.elements)
    # layout: 0, the monoid, then the absorbing element "2"
    elems = ["0"] + list(monoid.elements) + ["2"]
    zero, top = 0, size + 1
    total = size + 2

    def mul(i, j):
        if i == zero or j == zero:
            return zero
        if i == top or j == top:
            return top
        return monoid.mul[i - 1][j - 1] + 1

    def add(i, j):
        if i == zero:
            return j
        if j == zero:
            return i
        return top

    return FiniteRigTable(
        elems,
        [[add(i, j) for j in range(total)] for i in range(total)],
        [[mul(i, j) for j in range(total)] for i in range(total)],
        zero=zero,
        one=monoid.one + 1,
    )


def free_idempotent_monoid_table(n: int) -> MonoidTable:
    """Multiplication table of the free idempotent monoid on n generators."""
    from .monoid import monoid_table, render_word, shortest_word

    elements, _, table, unit = monoid_table(n)
    names = [render_word(shortest_word(t)) or "1" for t in elements]
    return MonoidTable(names, [list(row) for row in table], unit)
