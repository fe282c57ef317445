"""Square matrices over a path algebra, and closure algorithms on them.

A path algebra here is an idempotent semiring with a scalar star. Two
instances ship: :data:`BOOLEAN` (reachability) and :data:`TROPICAL`
(min-plus over nonnegative integers, shortest paths).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from rtclosure.relation import Relation, Universe

__all__ = [
    "INF",
    "ORACLE_BOUND",
    "AlgebraMismatch",
    "PathAlgebra",
    "BOOLEAN",
    "TROPICAL",
    "SemiringMatrix",
    "identity_matrix",
    "zero_matrix",
    "to_matrix",
    "from_matrix",
    "tropical_matrix",
    "mat_add",
    "mat_mul",
    "mat_power",
    "closure_naive",
    "warshall",
    "floyd_warshall",
    "shortest_path_oracle",
    "format_distance",
    "check_algebra_laws",
]

INF = math.inf
ORACLE_BOUND = 7


class AlgebraMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PathAlgebra:
    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    zero: Any
    one: Any
    scalar_star: Callable[[Any], Any] | None = None
    validate: Callable[[Any], bool] = lambda a: True

    def __repr__(self) -> str:
        return f"PathAlgebra({self.name})"


def _tropical_mul(a, b):
    # saturating: INF absorbs
    if a == INF or b == INF:
        return INF
    return a + b


def _tropical_star(a):
    if a < 0:
        raise ValueError(f"tropical star is undefined for negative weight {a}")
    return 0


def _tropical_valid(a) -> bool:
    return a == INF or (isinstance(a, int) and not isinstance(a, bool) and a >= 0)


BOOLEAN = PathAlgebra(
    "boolean",
    add=lambda a, b: a or b,
    mul=lambda a, b: a and b,
    zero=False,
    one=True,
    scalar_star=lambda a: True,
    validate=lambda a: isinstance(a, bool),
)

TROPICAL = PathAlgebra(
    "tropical",
    add=min,
    mul=_tropical_mul,
    zero=INF,
    one=0,
    scalar_star=_tropical_star,
    validate=_tropical_valid,
)


@dataclass(frozen=True)
class SemiringMatrix:
    algebra: PathAlgebra
    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            for x in row:
                if not self.algebra.validate(x):
                    raise ValueError(f"{x!r} is not an element of the {self.algebra.name} algebra")

    @classmethod
    def of(cls, algebra: PathAlgebra, rows: Iterable[Iterable[Any]]) -> SemiringMatrix:
        return cls(algebra, tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.entries[i][j]

    def __repr__(self) -> str:
        return f"SemiringMatrix({self.algebra.name}, {[list(r) for r in self.entries]})"


def _check(x: SemiringMatrix, y: SemiringMatrix) -> None:
    if x.algebra is not y.algebra:
        raise AlgebraMismatch(f"{x.algebra.name} vs {y.algebra.name}")
    if x.n != y.n:
        raise AlgebraMismatch(f"order {x.n} vs {y.n}")


def identity_matrix(algebra: PathAlgebra, n: int) -> SemiringMatrix:
    return SemiringMatrix.of(algebra, [[algebra.one if i == j else algebra.zero for j in range(n)] for i in range(n)])


def zero_matrix(algebra: PathAlgebra, n: int) -> SemiringMatrix:
    return SemiringMatrix.of(algebra, ((algebra.zero,) * n for _ in range(n)))


def to_matrix(r: Relation) -> SemiringMatrix:
    n = len(r.universe)
    return SemiringMatrix.of(BOOLEAN, [[bool(row >> j & 1) for j in range(n)] for row in r.rows])


def from_matrix(u: Universe, m: SemiringMatrix) -> Relation:
    if m.algebra is not BOOLEAN:
        raise AlgebraMismatch("only Boolean matrices correspond to relations")
    if m.n != len(u):
        raise AlgebraMismatch(f"matrix order {m.n} vs universe size {len(u)}")
    return Relation(u, tuple(sum(1 << j for j, v in enumerate(row) if v) for row in m.entries))


def tropical_matrix(n: int, edges: Iterable[tuple[int, int, int]]) -> SemiringMatrix:
    """Adjacency matrix of a weighted digraph; parallel edges keep the lightest."""
    rows = [[INF] * n for _ in range(n)]
    for i, j, w in edges:
        if not _tropical_valid(w) or w == INF:
            raise ValueError(f"edge weight must be a nonnegative integer, got {w!r}")
        rows[i][j] = min(rows[i][j], w)
    return SemiringMatrix.of(TROPICAL, rows)


def mat_add(x: SemiringMatrix, y: SemiringMatrix) -> SemiringMatrix:
    _check(x, y)
    add = x.algebra.add
    return SemiringMatrix.of(x.algebra, [[add(a, b) for a, b in zip(rx, ry)] for rx, ry in zip(x.entries, y.entries)])


def mat_mul(x: SemiringMatrix, y: SemiringMatrix) -> SemiringMatrix:
    _check(x, y)
    alg = x.algebra
    n = x.n
    cols = list(zip(*y.entries))
    out = []
    for row in x.entries:
        out_row = []
        for col in cols:
            acc = alg.zero
            for k in range(n):
                acc = alg.add(acc, alg.mul(row[k], col[k]))
            out_row.append(acc)
        out.append(out_row)
    return SemiringMatrix.of(alg, out)


def mat_power(m: SemiringMatrix, k: int) -> SemiringMatrix:
    out = identity_matrix(m.algebra, m.n)
    for _ in range(k):
        out = mat_mul(m, out)
    return out


def closure_naive(m: SemiringMatrix) -> SemiringMatrix:
    """Sum of ``M^0 .. M^n``."""
    acc = step = identity_matrix(m.algebra, m.n)
    for _ in range(m.n):
        step = mat_mul(m, step)
        acc = mat_add(acc, step)
    return acc


def warshall(m: SemiringMatrix) -> SemiringMatrix:
    if m.algebra is not BOOLEAN:
        raise AlgebraMismatch("warshall needs a Boolean matrix")
    n = m.n
    a = [list(row) for row in m.entries]
    for i in range(n):
        a[i][i] = True
    for k in range(n):
        for i in range(n):
            if a[i][k]:
                row_i, row_k = a[i], a[k]
                for j in range(n):
                    row_i[j] = row_i[j] or row_k[j]
    return SemiringMatrix.of(BOOLEAN, a)


def floyd_warshall(m: SemiringMatrix) -> SemiringMatrix:
    """Pivot closure ``M_ij <- M_ij + M_ik . (M_kk)* . M_kj`` over ``M + I``."""
    alg = m.algebra
    if alg.scalar_star is None:
        raise AlgebraMismatch(f"{alg.name} algebra has no scalar star")
    add, mul, star = alg.add, alg.mul, alg.scalar_star
    n = m.n
    a = [list(row) for row in mat_add(m, identity_matrix(alg, n)).entries]
    for k in range(n):
        loop = star(a[k][k])
        for i in range(n):
            through = mul(a[i][k], loop)
            for j in range(n):
                a[i][j] = add(a[i][j], mul(through, a[k][j]))
    return SemiringMatrix.of(alg, a)


def shortest_path_oracle(n: int, edges: Iterable[tuple[int, int, int]]) -> SemiringMatrix:
    """All-pairs distances by enumerating every simple path."""
    if n > ORACLE_BOUND:
        raise ValueError(f"shortest_path_oracle enumerates simple paths; n={n} exceeds {ORACLE_BOUND}")
    weight: dict[tuple[int, int], int] = {}
    for i, j, w in edges:
        if not isinstance(w, int) or w < 0:
            raise ValueError(f"edge weight must be a nonnegative integer, got {w!r}")
        weight[i, j] = min(weight.get((i, j), w), w)
    succ: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), w in sorted(weight.items()):
        succ[i].append((j, w))
    best = [[INF] * n for _ in range(n)]

    def walk(source: int, node: int, total: int, seen: int) -> None:
        if total < best[source][node]:
            best[source][node] = total
        for nxt, w in succ[node]:
            if not seen >> nxt & 1:
                walk(source, nxt, total + w, seen | 1 << nxt)

    for s in range(n):
        walk(s, s, 0, 1 << s)
    return SemiringMatrix.of(TROPICAL, best)


def format_distance(d: Any) -> str:
    return "INF" if d == INF else str(d)


def check_algebra_laws(alg: PathAlgebra, samples: Sequence[Any]):
    """Semiring and scalar-star laws over every tuple drawn from ``samples``."""
    from rtclosure.quantale import LawResult

    add, mul, zero, one = alg.add, alg.mul, alg.zero, alg.one
    laws: list[tuple[str, int, Callable[..., bool]]] = [
        ("add-associative", 3, lambda a, b, c: add(add(a, b), c) == add(a, add(b, c))),
        ("add-commutative", 2, lambda a, b: add(a, b) == add(b, a)),
        ("add-idempotent", 1, lambda a: add(a, a) == a),
        ("add-zero", 1, lambda a: add(zero, a) == a),
        ("mul-associative", 3, lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c))),
        ("mul-one", 1, lambda a: mul(one, a) == a == mul(a, one)),
        ("zero-annihilates", 1, lambda a: mul(zero, a) == zero == mul(a, zero)),
        ("distribute-left", 3, lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c))),
        ("distribute-right", 3, lambda a, b, c: mul(add(a, b), c) == add(mul(a, c), mul(b, c))),
    ]
    if alg.scalar_star is not None:
        star = alg.scalar_star
        laws.append(("star-unfold", 1, lambda a: star(a) == add(one, mul(a, star(a)))))
    results = []
    for name, arity, holds in laws:
        checked, witness = 0, None
        for case in itertools.product(samples, repeat=arity):
            checked += 1
            if not holds(*case):
                witness = case
                break
        results.append(LawResult(name, witness is None, checked, witness))
    return results
