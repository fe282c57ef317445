"""Proof trees for judgments ``x ->* y`` over a base relation.

Four rules are available::

    ------- id        x R y              x R u   u ->* z          x ->* y   y ->* z
    x ->* x          ------- in          ---------------- tx      ------------------ trx
                     x ->* y                 x ->* z                    x ->* z

``id``, ``in`` and ``tx`` make up the base system. ``trx`` (transitivity,
a cut) is admissible: :func:`eliminate_trx` removes it. ``in`` is redundant:
:func:`eliminate_in` removes it.

Side facts of ``in`` and ``tx`` are stored in the node, so :func:`check`
never searches.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from rtclosure.relation import Relation, _bits

__all__ = [
    "ID",
    "IN",
    "TX",
    "TRX",
    "InvalidDerivation",
    "CertificateError",
    "Derivation",
    "id_rule",
    "in_rule",
    "tx_rule",
    "trx_rule",
    "check",
    "explain",
    "derive",
    "height",
    "count_rule",
    "eliminate_trx",
    "eliminate_in",
    "theorems",
    "to_certificate",
    "parse_certificate",
]

ID, IN, TX, TRX = "id", "in", "tx", "trx"
_ARITY = {ID: 0, IN: 0, TX: 1, TRX: 2}


class InvalidDerivation(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: tuple[str, str]
    side: tuple[str, str] | None = None
    premises: tuple[Derivation, ...] = field(default=())

    def __repr__(self) -> str:
        return to_certificate(self)

    def nodes(self) -> Iterator[Derivation]:
        stack = [self]
        while stack:
            d = stack.pop()
            yield d
            stack.extend(reversed(d.premises))


def id_rule(x: str) -> Derivation:
    return Derivation(ID, (x, x))


def in_rule(x: str, y: str) -> Derivation:
    return Derivation(IN, (x, y), (x, y))


def tx_rule(x: str, u: str, premise: Derivation) -> Derivation:
    return Derivation(TX, (x, premise.conclusion[1]), (x, u), (premise,))


def trx_rule(left: Derivation, right: Derivation) -> Derivation:
    return Derivation(TRX, (left.conclusion[0], right.conclusion[1]), None, (left, right))


def explain(d: Derivation, r: Relation, allow_trx: bool = False, allow_in: bool = True) -> str | None:
    """Return why ``d`` is not a valid derivation over ``r``, or None if it is."""
    u = r.universe
    for node in d.nodes():
        x, z = node.conclusion
        for label in node.conclusion:
            if label not in u:
                return f"{node.rule}: unknown element {label!r}"
        if node.rule not in _ARITY:
            return f"unknown rule {node.rule!r}"
        if len(node.premises) != _ARITY[node.rule]:
            return f"{node.rule} at ({x},{z}): expected {_ARITY[node.rule]} premises, got {len(node.premises)}"
        if node.rule in (IN, TX):
            if node.side is None:
                return f"{node.rule} at ({x},{z}): missing side fact"
            a, b = node.side
            if a not in u or b not in u:
                return f"{node.rule} at ({x},{z}): side fact ({a},{b}) names an unknown element"
            if not r.holds(a, b):
                return f"{node.rule} at ({x},{z}): side fact ({a},{b}) is not in the relation"
        elif node.side is not None:
            return f"{node.rule} at ({x},{z}): unexpected side fact"

        if node.rule == ID:
            if x != z:
                return f"id concludes ({x},{z}) with distinct ends"
        elif node.rule == IN:
            if not allow_in:
                return "rule in is not allowed"
            if node.side != (x, z):
                return f"in concludes ({x},{z}) from side fact {node.side}"
        elif node.rule == TX:
            a, b = node.side  # type: ignore[misc]
            p = node.premises[0].conclusion
            if a != x or p != (b, z):
                return f"tx concludes ({x},{z}) from side fact ({a},{b}) and premise {p}"
        else:
            if not allow_trx:
                return "rule trx is not allowed"
            left, right = (p.conclusion for p in node.premises)
            if left[0] != x or right[1] != z or left[1] != right[0]:
                return f"trx concludes ({x},{z}) from premises {left} and {right}"
    return None


def check(d: Derivation, r: Relation, allow_trx: bool = False, allow_in: bool = True) -> bool:
    return explain(d, r, allow_trx=allow_trx, allow_in=allow_in) is None


def height(d: Derivation) -> int:
    return 1 + max((height(p) for p in d.premises), default=0)


def count_rule(d: Derivation, rule: str) -> int:
    return sum(1 for node in d.nodes() if node.rule == rule)


def derive(r: Relation, x: str, y: str) -> Derivation | None:
    """A derivation of ``x ->* y`` using only ``id`` and ``tx``, or None.

    The derivation follows a shortest path, found breadth-first with
    successors visited in universe order.
    """
    u = r.universe
    src, dst = u.index(x), u.index(y)
    parent = {src: src}
    queue = deque([src])
    while queue and dst not in parent:
        i = queue.popleft()
        for j in _bits(r.rows[i]):
            if j not in parent:
                parent[j] = i
                queue.append(j)
    if dst not in parent:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    labels = u.labels
    d = id_rule(labels[dst])
    for a, b in zip(reversed(path[:-1]), reversed(path[1:])):
        d = tx_rule(labels[a], labels[b], d)
    return d


def _cut(left: Derivation, right: Derivation) -> Derivation:
    # Both arguments are trx-free; recursion is on the height of ``left``.
    if left.rule == ID:
        return right
    if left.rule == IN:
        x, y = left.conclusion
        return tx_rule(x, y, right)
    if left.rule == TX:
        x, u = left.side  # type: ignore[misc]
        return tx_rule(x, u, _cut(left.premises[0], right))
    raise InvalidDerivation(f"cannot cut on a {left.rule} node")


def _strip_trx(d: Derivation) -> Derivation:
    if d.rule == TRX:
        return _cut(_strip_trx(d.premises[0]), _strip_trx(d.premises[1]))
    if d.rule == TX:
        x, u = d.side  # type: ignore[misc]
        return tx_rule(x, u, _strip_trx(d.premises[0]))
    return d


def eliminate_trx(d: Derivation, r: Relation) -> Derivation:
    """Rewrite ``d`` into a derivation of the same judgment with no ``trx``.

    Innermost ``trx`` nodes go first, so each rewrite sees trx-free
    premises. The left premise decides the case: ``id`` yields the right
    premise, ``in`` becomes one ``tx`` over the right premise, and ``tx``
    pushes the cut into its own premise, which is one step shorter.
    """
    reason = explain(d, r, allow_trx=True)
    if reason is not None:
        raise InvalidDerivation(reason)
    return _strip_trx(d)


def _strip_in(d: Derivation) -> Derivation:
    if d.rule == IN:
        x, y = d.conclusion
        return tx_rule(x, y, id_rule(y))
    if not d.premises:
        return d
    return Derivation(d.rule, d.conclusion, d.side, tuple(_strip_in(p) for p in d.premises))


def eliminate_in(d: Derivation, r: Relation) -> Derivation:
    """Replace every ``in`` leaf for ``x R y`` by ``tx`` over ``id(y)``."""
    reason = explain(d, r, allow_trx=True)
    if reason is not None:
        raise InvalidDerivation(reason)
    return _strip_in(d)


def theorems(r: Relation, use_in: bool = True) -> Relation:
    """Every derivable judgment, by saturating the rules to a fixed point."""
    u = r.universe
    n = len(u)
    preds: list[list[int]] = [[] for _ in range(n)]
    for a, b in r.index_pairs():
        preds[b].append(a)
    derived: set[tuple[int, int]] = set()
    work: deque[tuple[int, int]] = deque()

    def add(pair: tuple[int, int]) -> None:
        if pair not in derived:
            derived.add(pair)
            work.append(pair)

    for i in range(n):
        add((i, i))
    if use_in:
        for pair in r.index_pairs():
            add(pair)
    while work:
        b, z = work.popleft()
        for a in preds[b]:
            add((a, z))
    rows = [0] * n
    for a, b in derived:
        rows[a] |= 1 << b
    return Relation(u, tuple(rows))


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_certificate(d: Derivation) -> str:
    """Canonical prefix form, e.g. ``(tx "a" "b" (id "b"))``."""
    if d.rule == ID:
        return f"(id {_quote(d.conclusion[0])})"
    if d.rule == IN:
        return f"(in {_quote(d.conclusion[0])} {_quote(d.conclusion[1])})"
    if d.rule == TX:
        a, b = d.side  # type: ignore[misc]
        return f"(tx {_quote(a)} {_quote(b)} {to_certificate(d.premises[0])})"
    if d.rule == TRX:
        return f"(trx {to_certificate(d.premises[0])} {to_certificate(d.premises[1])})"
    raise CertificateError(f"unknown rule {d.rule!r}")


_TOKEN = re.compile(r'\s*(?:(\()|(\))|"((?:[^"\\]|\\.)*)"|([A-Za-z]+))')


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise CertificateError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("(", "("))
        elif m.group(2):
            out.append((")", ")"))
        elif m.group(3) is not None:
            out.append(("str", re.sub(r"\\(.)", r"\1", m.group(3))))
        else:
            out.append(("word", m.group(4)))
    return out


def parse_certificate(text: str) -> Derivation:
    """Inverse of :func:`to_certificate`; whitespace between tokens is free."""
    tokens = _tokens(text)
    pos = 0

    def expect(kind: str) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise CertificateError(f"unexpected end of certificate, expected {kind}")
        got, value = tokens[pos]
        if got != kind:
            raise CertificateError(f"expected {kind}, got {value!r}")
        pos += 1
        return value

    def node() -> Derivation:
        expect("(")
        rule = expect("word")
        if rule == ID:
            d = id_rule(expect("str"))
        elif rule == IN:
            d = in_rule(expect("str"), expect("str"))
        elif rule == TX:
            a, b = expect("str"), expect("str")
            d = tx_rule(a, b, node())
        elif rule == TRX:
            d = trx_rule(node(), node())
        else:
            raise CertificateError(f"unknown rule {rule!r}")
        expect(")")
        return d

    d = node()
    if pos != len(tokens):
        raise CertificateError("trailing tokens after certificate")
    return d
