"""Closure operators, Moore families and least fixed points on finite powersets.

Subsets are :class:`~rtclosure.relation.Subset` values. Relations enter
through :func:`square_universe`, which views a relation on ``X`` as a subset
of ``X x X`` using the same bit numbering as :attr:`Relation.code`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from rtclosure.relation import (
    Relation,
    Subset,
    Universe,
    UniverseTooLarge,
    is_transitive,
)

__all__ = [
    "TABLE_BOUND",
    "NotMonotone",
    "NotMooreFamily",
    "MooreFamily",
    "ClosureTable",
    "square_universe",
    "relation_to_subset",
    "subset_to_relation",
    "all_subsets",
    "is_closure_operator",
    "is_moore_family",
    "closure_from_family",
    "family_from_closure",
    "closure_from_family_as_table",
    "transitive_family",
    "least_fixed_point",
    "meet_of_prefixed_points",
    "is_monotone",
]

TABLE_BOUND = 10
TRANSITIVE_FAMILY_BOUND = 3

SubsetMap = Callable[[Subset], Subset]


class NotMonotone(ValueError):
    pass


class NotMooreFamily(ValueError):
    pass


def _guard(what: str, u: Universe, bound: int = TABLE_BOUND) -> None:
    if len(u) > bound:
        raise UniverseTooLarge(what, len(u), bound)


def square_universe(u: Universe) -> Universe:
    """``X x X`` with pair ``(x, y)`` at position ``index(x) * n + index(y)``."""
    return Universe(f"({x},{y})" for x in u for y in u)


def relation_to_subset(r: Relation, square: Universe | None = None) -> Subset:
    return Subset(square or square_universe(r.universe), r.code)


def subset_to_relation(s: Subset, u: Universe) -> Relation:
    if len(s.universe) != len(u) ** 2:
        raise ValueError("subset does not live on the square of the given universe")
    return Relation.from_code(u, s.bits)


def all_subsets(u: Universe) -> Iterator[Subset]:
    for bits in range(1 << len(u)):
        yield Subset(u, bits)


@dataclass(frozen=True)
class MooreFamily:
    universe: Universe
    members: frozenset[int]

    @classmethod
    def of(cls, universe: Universe, members: Iterable[Subset | int]) -> MooreFamily:
        return cls(universe, frozenset(m.bits if isinstance(m, Subset) else m for m in members))

    def __contains__(self, s: object) -> bool:
        if isinstance(s, Subset):
            return s.universe == self.universe and s.bits in self.members
        return s in self.members

    def __len__(self) -> int:
        return len(self.members)

    def subsets(self) -> list[Subset]:
        return [Subset(self.universe, m) for m in sorted(self.members)]


@dataclass(frozen=True)
class ClosureTable:
    """A subset operator tabulated over every subset, indexed by bitmask."""

    universe: Universe
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != 1 << len(self.universe):
            raise ValueError("closure table must have one entry per subset")

    @classmethod
    def from_function(cls, u: Universe, f: SubsetMap) -> ClosureTable:
        _guard("closure table", u)
        return cls(u, tuple(f(s).bits for s in all_subsets(u)))

    def __call__(self, s: Subset) -> Subset:
        return Subset(self.universe, self.table[s.bits])


def _supersets(bits: int, full: int) -> Iterator[int]:
    free = full & ~bits
    sub = free
    while True:
        yield bits | sub
        if sub == 0:
            return
        sub = (sub - 1) & free


def is_closure_operator(c: ClosureTable) -> bool:
    """Inflationary, idempotent and monotone on every subset (and pair)."""
    _guard("is_closure_operator", c.universe)
    table = c.table
    full = c.universe.full_mask
    for a, ca in enumerate(table):
        if a & ~ca:
            return False
        if table[ca] != ca:
            return False
        for b in _supersets(a, full):
            if ca & ~table[b]:
                return False
    return True


def is_moore_family(f: MooreFamily) -> bool:
    """Closed under all intersections, the empty one (the full set) included.

    Closure under pairwise intersection plus the full set is equivalent on a
    finite carrier.
    """
    members = f.members
    if f.universe.full_mask not in members:
        return False
    ms = sorted(members)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if a & b not in members:
                return False
    return True


def closure_from_family(f: MooreFamily, a: Subset) -> Subset:
    """The least member of ``f`` containing ``a``."""
    if not is_moore_family(f):
        raise NotMooreFamily("closure_from_family needs a Moore family")
    meet = f.universe.full_mask
    for m in f.members:
        if a.bits & ~m == 0:
            meet &= m
    return Subset(f.universe, meet)


def family_from_closure(c: ClosureTable) -> MooreFamily:
    """The fixed points of ``c``."""
    _guard("family_from_closure", c.universe)
    return MooreFamily(c.universe, frozenset(a for a, ca in enumerate(c.table) if a == ca))


def closure_from_family_as_table(f: MooreFamily) -> ClosureTable:
    _guard("closure_from_family_as_table", f.universe)
    if not is_moore_family(f):
        raise NotMooreFamily("closure_from_family_as_table needs a Moore family")
    full = f.universe.full_mask
    members = sorted(f.members)
    table = []
    for a in range(full + 1):
        meet = full
        for m in members:
            if a & ~m == 0:
                meet &= m
        table.append(meet)
    return ClosureTable(f.universe, tuple(table))


def transitive_family(u: Universe) -> MooreFamily:
    """All transitive relations on ``u``, as subsets of ``u x u``."""
    _guard("transitive_family", u, TRANSITIVE_FAMILY_BOUND)
    square = square_universe(u)
    codes = (code for code in range(1 << len(square)) if is_transitive(Relation.from_code(u, code)))
    return MooreFamily(square, frozenset(codes))


def least_fixed_point(f: SubsetMap, u: Universe, max_steps: int | None = None) -> Subset:
    """Iterate ``f`` from the empty set until it stops growing.

    A monotone map on a powerset of ``n`` points produces a strictly growing
    chain, so at most ``n + 1`` steps are needed. A step that drops a point
    proves ``f`` is not monotone and raises :class:`NotMonotone`.
    """
    limit = len(u) + 1 if max_steps is None else max_steps
    current = Subset(u, 0)
    for _ in range(limit + 1):
        nxt = f(current)
        if nxt.bits == current.bits:
            return current
        if current.bits & ~nxt.bits:
            raise NotMonotone(f"iteration shrank from {current} to {nxt}")
        current = nxt
    raise NotMonotone(f"no fixed point after {limit} steps")


def meet_of_prefixed_points(f: SubsetMap, u: Universe) -> Subset:
    """Intersection of every ``A`` with ``f(A) <= A``, by enumeration."""
    _guard("meet_of_prefixed_points", u, 16)
    meet = u.full_mask
    for a in all_subsets(u):
        if f(a).bits & ~a.bits == 0:
            meet &= a.bits
    return Subset(u, meet)


def is_monotone(f: SubsetMap, u: Universe) -> bool:
    _guard("is_monotone", u)
    full = u.full_mask
    images = [f(Subset(u, a)).bits for a in range(full + 1)]
    for a, fa in enumerate(images):
        for b in _supersets(a, full):
            if fa & ~images[b]:
                return False
    return True
