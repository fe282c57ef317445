"""Finite binary relations over a labelled universe.

A relation on a universe of ``n`` labels is stored as ``n`` row bitmasks:
bit ``j`` of row ``i`` is set when ``labels[i]`` is related to ``labels[j]``.
Composition is then an OR over rows, which keeps the exhaustive oracles
(``closure_by_intersection`` and ``closure_by_hereditary``) fast enough to
sweep every relation on small universes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "INTERSECTION_BOUND",
    "HEREDITARY_BOUND",
    "UniverseMismatch",
    "UniverseTooLarge",
    "UnknownElement",
    "Universe",
    "Relation",
    "Subset",
    "identity",
    "empty",
    "full",
    "compose",
    "union",
    "intersect",
    "is_subset",
    "image",
    "is_transitive",
    "is_dense",
    "power",
    "closure_by_powers",
    "closure_by_intersection",
    "closure_by_hereditary",
    "is_rt_closed_superset",
    "descendants",
    "all_relations",
]

INTERSECTION_BOUND = 3
HEREDITARY_BOUND = 12


class UniverseMismatch(ValueError):
    pass


class UniverseTooLarge(ValueError):
    """An exhaustive construction was asked for on a universe above its bound."""

    def __init__(self, method: str, size: int, bound: int) -> None:
        super().__init__(f"{method}: universe has {size} elements, bound is {bound}")
        self.method = method
        self.size = size
        self.bound = bound


class UnknownElement(KeyError):
    def __str__(self) -> str:
        return f"unknown element {self.args[0]!r}"


@dataclass(frozen=True)
class Universe:
    """An ordered set of distinct labels; the order fixes every index."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str] = ()) -> None:
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in universe: {labels!r}")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._positions

    def index(self, label: str) -> int:
        try:
            return self._positions[label]
        except KeyError:
            raise UnknownElement(label) from None

    @property
    def _positions(self) -> dict[str, int]:
        return _positions(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1


@lru_cache(maxsize=256)
def _positions(labels: tuple[str, ...]) -> dict[str, int]:
    return {label: i for i, label in enumerate(labels)}


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Subset:
    universe: Universe
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> len(self.universe):
            raise ValueError(f"subset bits {self.bits:#b} exceed universe of size {len(self.universe)}")

    @classmethod
    def of(cls, universe: Universe, labels: Iterable[str]) -> Subset:
        bits = 0
        for label in labels:
            bits |= 1 << universe.index(label)
        return cls(universe, bits)

    def labels(self) -> list[str]:
        return [self.universe.labels[i] for i in _bits(self.bits)]

    def __contains__(self, label: object) -> bool:
        return label in self.universe and bool(self.bits >> self.universe.index(label) & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __le__(self, other: Subset) -> bool:
        _same(self.universe, other.universe)
        return self.bits & ~other.bits == 0

    def __repr__(self) -> str:
        return "Subset({%s})" % ", ".join(self.labels())


@dataclass(frozen=True)
class Relation:
    """A relation stored as one bitmask row per source element."""

    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.universe)
        if len(self.rows) != n:
            raise ValueError(f"relation has {len(self.rows)} rows, universe has {n} elements")
        if any(row < 0 or row >> n for row in self.rows):
            raise ValueError("relation row has bits outside the universe")

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> Relation:
        rows = [0] * len(universe)
        for x, y in pairs:
            rows[universe.index(x)] |= 1 << universe.index(y)
        return cls(universe, tuple(rows))

    @classmethod
    def from_code(cls, universe: Universe, code: int) -> Relation:
        """Decode the row-major bit numbering used by :attr:`code`."""
        n = len(universe)
        mask = (1 << n) - 1
        return cls(universe, tuple((code >> (i * n)) & mask for i in range(n)))

    @property
    def code(self) -> int:
        """Pair ``(i, j)`` as bit ``i * n + j``: the relation as a subset of X x X."""
        n = len(self.universe)
        out = 0
        for i, row in enumerate(self.rows):
            out |= row << (i * n)
        return out

    def index_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in _bits(row)]

    def pairs(self) -> list[tuple[str, str]]:
        labels = self.universe.labels
        return [(labels[i], labels[j]) for i, j in self.index_pairs()]

    def holds(self, x: str, y: str) -> bool:
        return bool(self.rows[self.universe.index(x)] >> self.universe.index(y) & 1)

    def __contains__(self, pair: object) -> bool:
        try:
            x, y = pair  # type: ignore[misc]
            return self.holds(x, y)
        except (TypeError, ValueError, UnknownElement):
            return False

    def __len__(self) -> int:
        return sum(bin(row).count("1") for row in self.rows)

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.pairs())

    def __le__(self, other: Relation) -> bool:
        return is_subset(self, other)

    def __or__(self, other: Relation) -> Relation:
        return union(self, other)

    def __and__(self, other: Relation) -> Relation:
        return intersect(self, other)

    def __matmul__(self, other: Relation) -> Relation:
        return compose(self, other)

    def __repr__(self) -> str:
        return "Relation({%s})" % ", ".join(f"({x},{y})" for x, y in self.pairs())


def _same(u: Universe, v: Universe) -> None:
    if u != v:
        raise UniverseMismatch(f"{u.labels!r} != {v.labels!r}")


def identity(u: Universe) -> Relation:
    return Relation(u, tuple(1 << i for i in range(len(u))))


def empty(u: Universe) -> Relation:
    return Relation(u, (0,) * len(u))


def full(u: Universe) -> Relation:
    return Relation(u, (u.full_mask,) * len(u))


def _compose_rows(r: Sequence[int], s: Sequence[int]) -> tuple[int, ...]:
    out = []
    for row in r:
        acc = 0
        for y in _bits(row):
            acc |= s[y]
        out.append(acc)
    return tuple(out)


def compose(r: Relation, s: Relation) -> Relation:
    """``x (r;s) z`` iff ``x r y`` and ``y s z`` for some ``y``."""
    _same(r.universe, s.universe)
    return Relation(r.universe, _compose_rows(r.rows, s.rows))


def union(r: Relation, s: Relation) -> Relation:
    _same(r.universe, s.universe)
    return Relation(r.universe, tuple(a | b for a, b in zip(r.rows, s.rows)))


def intersect(r: Relation, s: Relation) -> Relation:
    _same(r.universe, s.universe)
    return Relation(r.universe, tuple(a & b for a, b in zip(r.rows, s.rows)))


def is_subset(r: Relation, s: Relation) -> bool:
    _same(r.universe, s.universe)
    return all(a & ~b == 0 for a, b in zip(r.rows, s.rows))


def image(r: Relation, a: Subset) -> Subset:
    """``R[A]``: everything some member of ``a`` is related to."""
    _same(r.universe, a.universe)
    out = 0
    for i in _bits(a.bits):
        out |= r.rows[i]
    return Subset(r.universe, out)


def is_transitive(r: Relation) -> bool:
    return is_subset(compose(r, r), r)


def is_dense(r: Relation) -> bool:
    return is_subset(r, compose(r, r))


def power(r: Relation, k: int) -> Relation:
    if k < 0:
        raise ValueError("power exponent must be a natural number")
    out = identity(r.universe)
    for _ in range(k):
        out = compose(r, out)
    return out


def closure_by_powers(r: Relation) -> Relation:
    """Union of ``R^0 .. R^n`` with ``n = |X|``.

    A path with more than ``n`` steps repeats a vertex, so longer powers add
    nothing new.
    """
    acc = step = identity(r.universe)
    for _ in range(len(r.universe)):
        step = compose(r, step)
        acc = union(acc, step)
    return acc


@lru_cache(maxsize=None)
def _rt_closed_codes(n: int) -> tuple[int, ...]:
    """Codes of every relation S on an n-element universe with 1 <= S and S;S <= S."""
    u = Universe(str(i) for i in range(n))
    ident = identity(u).code
    out = []
    for code in range(1 << (n * n)):
        if code & ident != ident:
            continue
        s = Relation.from_code(u, code)
        if is_transitive(s):
            out.append(code)
    return tuple(out)


def closure_by_intersection(r: Relation) -> Relation:
    """Intersection of every S with ``1 | R | S;S <= S``, by exhaustive search.

    Enumerates all ``2**(n*n)`` relations, so only universes of at most
    three elements are accepted.
    """
    n = len(r.universe)
    if n > INTERSECTION_BOUND:
        raise UniverseTooLarge("intersection", n, INTERSECTION_BOUND)
    want = r.code
    meet = (1 << (n * n)) - 1
    for code in _rt_closed_codes(n):
        if code & want == want:
            meet &= code
    return Relation.from_code(r.universe, meet)


def closure_by_hereditary(r: Relation) -> Relation:
    """``x R* y`` iff ``y`` lies in every hereditary subset that contains ``x``.

    A subset ``A`` is hereditary when ``R[A] <= A``. All ``2**n`` subsets are
    enumerated.
    """
    n = len(r.universe)
    if n > HEREDITARY_BOUND:
        raise UniverseTooLarge("hereditary", n, HEREDITARY_BOUND)
    rows = list(r.rows)
    fullmask = r.universe.full_mask
    meets = [fullmask] * n
    for a in range(1 << n):
        succ = 0
        for i in _bits(a):
            succ |= rows[i]
        if succ & ~a:
            continue
        for x in _bits(a):
            meets[x] &= a
    return Relation(r.universe, tuple(meets))


def is_rt_closed_superset(r: Relation, s: Relation) -> bool:
    """Does ``s`` contain ``r`` and the identity, and is it closed under composition?"""
    _same(r.universe, s.universe)
    return is_subset(r, s) and is_subset(identity(s.universe), s) and is_transitive(s)


def descendants(r: Relation, x: str) -> Subset:
    i = r.universe.index(x)
    return Subset(r.universe, closure_by_powers(r).rows[i])


def all_relations(u: Universe) -> Iterator[Relation]:
    """Every relation on ``u``, in code order."""
    for code in range(1 << (len(u) ** 2)):
        yield Relation.from_code(u, code)
