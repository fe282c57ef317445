"""Unital quantales, star as a least fixed point, and two finite instances.

``star(q, a)`` iterates ``S -> 1 v a.S`` from the bottom element until it
stabilises. In the relation quantale that is the reflexive-transitive
closure; in the language quantale it is Kleene star.

The language quantale over ``A*`` is infinite, so :class:`LanguageQuantale`
works on words of length at most ``k`` and drops longer concatenations. That
quotient is still a unital quantale, and star terminates on it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, Iterable, Iterator, TypeVar

from rtclosure.relation import (
    Relation,
    Universe,
    compose,
    empty,
    full,
    identity,
    is_subset,
)

__all__ = [
    "EXHAUSTIVE_CARRIER_BOUND",
    "StarDiverged",
    "AlphabetMismatch",
    "Quantale",
    "RelationQuantale",
    "Language",
    "LanguageQuantale",
    "LawResult",
    "check_laws",
    "star",
    "star_step",
    "check_monoid_object",
    "check_freeness",
    "lang_concat",
    "lang_star",
    "words_up_to",
]

EXHAUSTIVE_CARRIER_BOUND = 1 << 16

T = TypeVar("T")


class StarDiverged(RuntimeError):
    pass


class AlphabetMismatch(ValueError):
    pass


class Quantale(Generic[T]):
    """A finite unital quantale.

    Subclasses provide ``bottom``, ``top``, ``unit``, ``join2``, ``multiply``,
    ``random_element`` and, when the carrier is small, ``elements``.
    """

    name = "quantale"
    carrier_size: int
    height: int

    bottom: T
    top: T
    unit: T

    def join2(self, a: T, b: T) -> T:
        raise NotImplementedError

    def multiply(self, a: T, b: T) -> T:
        raise NotImplementedError

    def elements(self) -> Iterator[T]:
        raise NotImplementedError

    def random_element(self, rng: random.Random) -> T:
        raise NotImplementedError

    def join(self, items: Iterable[T]) -> T:
        out = self.bottom
        for x in items:
            out = self.join2(out, x)
        return out

    def leq(self, a: T, b: T) -> bool:
        return self.join2(a, b) == b


@dataclass(frozen=True)
class RelationQuantale(Quantale[Relation]):
    """Relations on a finite universe under union and composition."""

    universe: Universe

    name = "relations"

    @property
    def carrier_size(self) -> int:  # type: ignore[override]
        return 1 << (len(self.universe) ** 2)

    @property
    def height(self) -> int:  # type: ignore[override]
        return len(self.universe) ** 2

    @property
    def bottom(self) -> Relation:  # type: ignore[override]
        return empty(self.universe)

    @property
    def top(self) -> Relation:  # type: ignore[override]
        return full(self.universe)

    @property
    def unit(self) -> Relation:  # type: ignore[override]
        return identity(self.universe)

    def join2(self, a: Relation, b: Relation) -> Relation:
        return a | b

    def multiply(self, a: Relation, b: Relation) -> Relation:
        return compose(a, b)

    def leq(self, a: Relation, b: Relation) -> bool:
        return is_subset(a, b)

    def elements(self) -> Iterator[Relation]:
        for code in range(self.carrier_size):
            yield Relation.from_code(self.universe, code)

    def random_element(self, rng: random.Random) -> Relation:
        return Relation.from_code(self.universe, rng.getrandbits(len(self.universe) ** 2))


def words_up_to(alphabet: Iterable[str], k: int) -> list[str]:
    """Every word over ``alphabet`` of length at most ``k``, shortest first."""
    alphabet = tuple(alphabet)
    return ["".join(w) for n in range(k + 1) for w in itertools.product(alphabet, repeat=n)]


@dataclass(frozen=True)
class Language:
    """A finite set of words over single-character symbols, each of length <= max_len."""

    alphabet: tuple[str, ...]
    max_len: int
    words: frozenset[str] = field(default=frozenset())

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet) or any(len(a) != 1 for a in self.alphabet):
            raise ValueError(f"alphabet must be distinct single characters: {self.alphabet!r}")
        if self.max_len < 0:
            raise ValueError("max_len must be a natural number")
        allowed = set(self.alphabet)
        for w in self.words:
            if len(w) > self.max_len:
                raise ValueError(f"word {w!r} is longer than {self.max_len}")
            if not set(w) <= allowed:
                raise ValueError(f"word {w!r} uses symbols outside {''.join(self.alphabet)!r}")

    @classmethod
    def of(cls, alphabet: Iterable[str], max_len: int, words: Iterable[str] = ()) -> Language:
        return cls(tuple(alphabet), max_len, frozenset(words))

    def sorted_words(self) -> list[str]:
        """Words ordered by length, then lexicographically in alphabet order."""
        rank = {a: i for i, a in enumerate(self.alphabet)}
        return sorted(self.words, key=lambda w: (len(w), [rank[c] for c in w]))

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __repr__(self) -> str:
        shown = ", ".join(repr(w) if w else "eps" for w in self.sorted_words())
        return f"Language({{{shown}}}, k={self.max_len})"


def _same_space(a: Language, b: Language) -> None:
    if a.alphabet != b.alphabet or a.max_len != b.max_len:
        raise AlphabetMismatch(
            f"languages over ({''.join(a.alphabet)!r}, k={a.max_len}) and ({''.join(b.alphabet)!r}, k={b.max_len})"
        )


def lang_concat(left: Language, right: Language) -> Language:
    """All ``uv`` with ``u`` in ``left``, ``v`` in ``right`` and ``|uv| <= k``."""
    _same_space(left, right)
    k = left.max_len
    words = frozenset(u + v for u in left.words for v in right.words if len(u) + len(v) <= k)
    return Language(left.alphabet, k, words)


@dataclass(frozen=True)
class LanguageQuantale(Quantale[Language]):
    alphabet: tuple[str, ...]
    max_len: int

    name = "languages"

    def __init__(self, alphabet: Iterable[str], max_len: int) -> None:
        object.__setattr__(self, "alphabet", tuple(alphabet))
        object.__setattr__(self, "max_len", max_len)
        Language(self.alphabet, max_len)

    @property
    def _words(self) -> list[str]:
        return words_up_to(self.alphabet, self.max_len)

    @property
    def height(self) -> int:  # type: ignore[override]
        return len(self._words)

    @property
    def carrier_size(self) -> int:  # type: ignore[override]
        return 1 << self.height

    @property
    def bottom(self) -> Language:  # type: ignore[override]
        return Language(self.alphabet, self.max_len)

    @property
    def top(self) -> Language:  # type: ignore[override]
        return Language(self.alphabet, self.max_len, frozenset(self._words))

    @property
    def unit(self) -> Language:  # type: ignore[override]
        return Language(self.alphabet, self.max_len, frozenset([""]))

    def language(self, words: Iterable[str]) -> Language:
        return Language(self.alphabet, self.max_len, frozenset(words))

    def join2(self, a: Language, b: Language) -> Language:
        _same_space(a, b)
        return Language(self.alphabet, self.max_len, a.words | b.words)

    def multiply(self, a: Language, b: Language) -> Language:
        return lang_concat(a, b)

    def leq(self, a: Language, b: Language) -> bool:
        _same_space(a, b)
        return a.words <= b.words

    def elements(self) -> Iterator[Language]:
        words = self._words
        for mask in range(1 << len(words)):
            yield self.language(w for i, w in enumerate(words) if mask >> i & 1)

    def random_element(self, rng: random.Random) -> Language:
        return self.language(w for w in self._words if rng.random() < 0.5)


def star_step(q: Quantale[T], a: T, s: T) -> T:
    """One application of ``S -> 1 v a.S``."""
    return q.join2(q.unit, q.multiply(a, s))


def star(q: Quantale[T], a: T, max_steps: int | None = None) -> T:
    """Least fixed point of ``S -> 1 v a.S``, iterated up from the bottom.

    The iterates form an increasing chain, so ``q.height + 1`` steps always
    suffice for a monotone step function; that is the default cap.
    """
    limit = q.height + 1 if max_steps is None else max_steps
    s = q.bottom
    for _ in range(limit + 1):
        nxt = star_step(q, a, s)
        if nxt == s:
            return s
        s = nxt
    raise StarDiverged(f"star did not stabilise within {limit} steps")


def lang_star(lang: Language) -> Language:
    return star(LanguageQuantale(lang.alphabet, lang.max_len), lang)


def check_monoid_object(q: Quantale[T], a: T) -> bool:
    """``1 <= a*``, ``a <= a*`` and ``a* a* <= a*``."""
    s = star(q, a)
    return q.leq(q.unit, s) and q.leq(a, s) and q.leq(q.multiply(s, s), s)


def check_freeness(q: Quantale[T], a: T, b: T) -> bool:
    """If ``1 v a v bb <= b`` then ``a* <= b``; vacuously true otherwise."""
    hypothesis = q.join([q.unit, a, q.multiply(b, b)])
    if not q.leq(hypothesis, b):
        return True
    return q.leq(star(q, a), b)


@dataclass
class LawResult:
    law: str
    passed: bool
    checked: int
    witness: tuple[Any, ...] | None = None

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.law} ({self.checked} cases)"
        if self.witness is not None:
            line += f" witness={self.witness!r}"
        return line


def _laws(q: Quantale[T]) -> list[tuple[str, int, Callable[..., bool]]]:
    j, m = q.join2, q.multiply
    return [
        ("join-associative", 3, lambda x, y, z: j(j(x, y), z) == j(x, j(y, z))),
        ("join-commutative", 2, lambda x, y: j(x, y) == j(y, x)),
        ("join-idempotent", 1, lambda x: j(x, x) == x),
        ("join-bottom", 1, lambda x: j(q.bottom, x) == x),
        ("multiply-associative", 3, lambda x, y, z: m(m(x, y), z) == m(x, m(y, z))),
        ("unit-left", 1, lambda x: m(q.unit, x) == x),
        ("unit-right", 1, lambda x: m(x, q.unit) == x),
        ("distribute-left", 3, lambda x, y, z: m(x, j(y, z)) == j(m(x, y), m(x, z))),
        ("distribute-right", 3, lambda x, y, z: m(j(x, y), z) == j(m(x, z), m(y, z))),
        ("annihilate-left", 1, lambda x: m(q.bottom, x) == q.bottom),
        ("annihilate-right", 1, lambda x: m(x, q.bottom) == q.bottom),
    ]


def check_laws(q: Quantale[T], sample_budget: int = 20000, seed: int = 0) -> list[LawResult]:
    """Check the unital-quantale laws, exhaustively when the budget allows.

    Distributivity over arbitrary joins reduces, on a finite carrier, to the
    binary case plus annihilation by the empty join (bottom). A law with
    arity ``k`` is swept over every ``k``-tuple when ``carrier_size ** k``
    fits in ``sample_budget`` and the carrier is at most 2**16 elements;
    otherwise ``sample_budget`` random tuples are drawn.
    """
    rng = random.Random(seed)
    carrier: list[T] | None = None
    results = []
    for law, arity, holds in _laws(q):
        exhaustive = q.carrier_size <= EXHAUSTIVE_CARRIER_BOUND and q.carrier_size**arity <= sample_budget
        if exhaustive:
            if carrier is None:
                carrier = list(q.elements())
            cases: Iterable[tuple[T, ...]] = itertools.product(carrier, repeat=arity)
        else:
            cases = (tuple(q.random_element(rng) for _ in range(arity)) for _ in range(sample_budget))
        checked = 0
        witness = None
        for case in cases:
            checked += 1
            if not holds(*case):
                witness = case
                break
        results.append(LawResult(law, witness is None, checked, witness))
    return results
