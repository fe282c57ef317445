"""Random relations, derivations, languages and weighted digraphs."""

from __future__ import annotations

import random
import string
from collections import deque

from rtclosure.derivation import Derivation, id_rule, in_rule, trx_rule, tx_rule
from rtclosure.quantale import Language, words_up_to
from rtclosure.relation import Relation, Universe, _bits

__all__ = [
    "letters",
    "random_relation",
    "random_derivation",
    "random_language",
    "random_digraph",
]


def letters(n: int) -> Universe:
    """The universe ``a, b, c, ...`` of size ``n``, spilling into ``x26`` labels."""
    return Universe(string.ascii_lowercase[i] if i < 26 else f"x{i}" for i in range(n))


def random_relation(rng: random.Random, u: Universe, density: float | None = None) -> Relation:
    p = rng.random() if density is None else density
    n = len(u)
    rows = tuple(sum(1 << j for j in range(n) if rng.random() < p) for _ in range(n))
    return Relation(u, rows)


def _distances(r: Relation) -> list[list[int | None]]:
    n = len(r.universe)
    out: list[list[int | None]] = []
    for s in range(n):
        dist: list[int | None] = [None] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            i = queue.popleft()
            for j in _bits(r.rows[i]):
                if dist[j] is None:
                    dist[j] = dist[i] + 1  # type: ignore[operator]
                    queue.append(j)
        out.append(dist)
    return out


def random_derivation(
    rng: random.Random,
    r: Relation,
    max_height: int,
    require_trx: bool = True,
    trx_weight: float = 0.4,
) -> Derivation | None:
    """A random valid derivation over ``r`` of height at most ``max_height``.

    Trees grow top-down. A rule is only chosen when every premise it needs is
    derivable within the remaining height, so the result always checks (with
    ``trx`` allowed). With ``require_trx`` the root is a ``trx`` node.
    Returns None when ``r`` has no judgment reachable that way.
    """
    labels = r.universe.labels
    n = len(labels)
    if n == 0:
        return None
    dist = _distances(r)

    def min_height(i: int, j: int) -> int | None:
        d = dist[i][j]
        return None if d is None else max(d, 1)

    def fits(i: int, j: int, h: int) -> bool:
        m = min_height(i, j)
        return m is not None and m <= h

    def grow(i: int, j: int, h: int) -> Derivation:
        options: list[tuple[float, str, int]] = []
        if i == j:
            options.append((1.0, "id", -1))
        if r.rows[i] >> j & 1:
            options.append((1.0, "in", -1))
        if h >= 2:
            for u in _bits(r.rows[i]):
                if fits(u, j, h - 1):
                    options.append((1.0, "tx", u))
            for y in range(n):
                if fits(i, y, h - 1) and fits(y, j, h - 1):
                    options.append((trx_weight, "trx", y))
        weights = [w for w, _, _ in options]
        _, rule, mid = rng.choices(options, weights)[0]
        if rule == "id":
            return id_rule(labels[i])
        if rule == "in":
            return in_rule(labels[i], labels[j])
        if rule == "tx":
            return tx_rule(labels[i], labels[mid], grow(mid, j, h - 1))
        return trx_rule(grow(i, mid, h - 1), grow(mid, j, h - 1))

    if require_trx and max_height < 2:
        return None
    pairs = [(i, j) for i in range(n) for j in range(n) if fits(i, j, max_height - 1 if require_trx else max_height)]
    if not pairs:
        return None
    i, j = rng.choice(pairs)
    if not require_trx:
        return grow(i, j, max_height)
    mids = [y for y in range(n) if fits(i, y, max_height - 1) and fits(y, j, max_height - 1)]
    y = rng.choice(mids)
    return trx_rule(grow(i, y, max_height - 1), grow(y, j, max_height - 1))


def random_language(rng: random.Random, alphabet: str, word_len: int, max_len: int, size: int | None = None) -> Language:
    """A language of words no longer than ``word_len``, living in bound ``max_len``."""
    pool = words_up_to(alphabet, min(word_len, max_len))
    count = rng.randint(0, min(len(pool), 5)) if size is None else size
    return Language.of(alphabet, max_len, rng.sample(pool, count))


def random_digraph(rng: random.Random, n: int, max_weight: int = 9, density: float | None = None) -> list[tuple[int, int, int]]:
    p = rng.random() if density is None else density
    return [(i, j, rng.randint(0, max_weight)) for i in range(n) for j in range(n) if rng.random() < p]
