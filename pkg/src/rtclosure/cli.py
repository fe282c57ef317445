"""The ``rtclosure`` command.

Exit codes: 0 success, 1 negative answer (not derivable, FAIL),
2 usage or parse error, 3 size-guard violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Callable, Sequence, TextIO

from rtclosure import derivation, lattice, path_algebra, quantale
from rtclosure.relation import (
    Relation,
    Universe,
    UniverseTooLarge,
    UnknownElement,
    closure_by_hereditary,
    closure_by_intersection,
    closure_by_powers,
)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

METHODS = ("powers", "intersection", "hereditary", "derivation", "fixpoint", "warshall")
EPSILON = "<eps>"


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class EdgeListDocument:
    labels: list[str] = field(default_factory=list)
    edges: list[tuple[str, str, int | None]] = field(default_factory=list)

    @property
    def universe(self) -> Universe:
        return Universe(self.labels)

    @property
    def weighted(self) -> bool:
        return bool(self.edges) and self.edges[0][2] is not None

    def relation(self) -> Relation:
        return Relation.from_pairs(self.universe, ((s, t) for s, t, _ in self.edges))


def parse_edge_list(text: str) -> EdgeListDocument:
    """Parse ``u v`` or ``u v w`` lines; ``#`` starts a comment."""
    doc = EdgeListDocument()
    seen_labels: set[str] = set()
    seen_edges: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) not in (2, 3):
            raise ParseError(lineno, f"expected 'source target [weight]', got {raw.strip()!r}")
        source, target = tokens[0], tokens[1]
        weight = None
        if len(tokens) == 3:
            try:
                weight = int(tokens[2])
            except ValueError:
                raise ParseError(lineno, f"weight {tokens[2]!r} is not an integer") from None
            if weight < 0:
                raise ParseError(lineno, f"negative weight {weight}")
        if doc.edges and (doc.edges[0][2] is None) != (weight is None):
            raise ParseError(lineno, "mixed weighted and unweighted edges")
        if weight is None:
            if (source, target) in seen_edges:
                raise ParseError(lineno, f"duplicate edge {source} {target}")
            seen_edges.add((source, target))
        for label in (source, target):
            if label not in seen_labels:
                seen_labels.add(label)
                doc.labels.append(label)
        doc.edges.append((source, target, weight))
    return doc


def _closure_fixpoint(r: Relation) -> Relation:
    u = r.universe
    square = lattice.square_universe(u)
    ident = quantale.RelationQuantale(u).unit

    def step(s):
        return lattice.relation_to_subset(ident | (r @ lattice.subset_to_relation(s, u)), square)

    return lattice.subset_to_relation(lattice.least_fixed_point(step, square), u)


def _closure_warshall(r: Relation) -> Relation:
    return path_algebra.from_matrix(r.universe, path_algebra.warshall(path_algebra.to_matrix(r)))


CLOSURES: dict[str, Callable[[Relation], Relation]] = {
    "powers": closure_by_powers,
    "intersection": closure_by_intersection,
    "hereditary": closure_by_hereditary,
    "derivation": derivation.theorems,
    "fixpoint": _closure_fixpoint,
    "warshall": _closure_warshall,
}


def format_pairs(r: Relation) -> str:
    return "".join(f"{x} {y}\n" for x, y in r.pairs())


def format_dot(original: Relation, closed: Relation) -> str:
    lines = ["digraph closure {"]
    for label in closed.universe:
        lines.append(f'  "{label}";')
    for x, y in closed.pairs():
        style = "solid" if original.holds(x, y) else "dashed"
        lines.append(f'  "{x}" -> "{y}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_close(text: str, method: str, dot: bool = False) -> str:
    if method not in CLOSURES:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    r = parse_edge_list(text).relation()
    closed = CLOSURES[method](r)
    return format_dot(r, closed) if dot else format_pairs(closed)


def cmd_certify(text: str, x: str, y: str) -> str | None:
    r = parse_edge_list(text).relation()
    d = derivation.derive(r, x, y)
    return None if d is None else derivation.to_certificate(d) + "\n"


def cmd_check_cert(text: str, certificate: str, allow_trx: bool = False, allow_in: bool = False) -> tuple[bool, str]:
    r = parse_edge_list(text).relation()
    d = derivation.parse_certificate(certificate)
    reason = derivation.explain(d, r, allow_trx=allow_trx, allow_in=allow_in)
    if reason is None:
        x, y = d.conclusion
        return True, f"PASS {x} {y}\n"
    return False, f"FAIL {reason}\n"


def cmd_shortest(text: str) -> str:
    doc = parse_edge_list(text)
    if doc.edges and not doc.weighted:
        raise ValueError("shortest needs a weighted edge list ('source target weight')")
    u = doc.universe
    m = path_algebra.tropical_matrix(len(u), ((u.index(s), u.index(t), w) for s, t, w in doc.edges))
    closed = path_algebra.floyd_warshall(m)
    if not len(u):
        return ""
    lines = ["# " + " ".join(u.labels)]
    for i, label in enumerate(u.labels):
        lines.append(" ".join([label] + [path_algebra.format_distance(d) for d in closed.entries[i]]))
    return "\n".join(lines) + "\n"


def parse_words(text: str) -> list[str]:
    words = []
    for raw in text.splitlines():
        token = raw.split("#", 1)[0].strip()
        if not token:
            continue
        words.append("" if token == EPSILON else token)
    return words


def cmd_star_lang(alphabet: str, text: str, k: int) -> str:
    if k < 0:
        raise ValueError("--max-len must be a natural number")
    words = parse_words(text)
    for w in words:
        bad = set(w) - set(alphabet)
        if bad:
            raise ValueError(f"word {w!r} uses symbols outside the alphabet: {''.join(sorted(bad))}")
    lang = quantale.Language.of(alphabet, k, (w for w in words if len(w) <= k))
    result = quantale.lang_star(lang)
    return "".join((w or EPSILON) + "\n" for w in result.sorted_words())


def _closure_operator_laws(n: int) -> list[quantale.LawResult]:
    from rtclosure.sampling import letters

    u = letters(n)
    square = lattice.square_universe(u)
    table = lattice.ClosureTable.from_function(
        square, lambda s: lattice.relation_to_subset(closure_by_powers(lattice.subset_to_relation(s, u)), square)
    )
    ok = lattice.is_closure_operator(table)
    return [quantale.LawResult("closure-operator", ok, len(table.table))]


LAW_TARGETS: dict[str, Callable[[], list[quantale.LawResult]]] = {
    "quantale-relation-n2": lambda: quantale.check_laws(quantale.RelationQuantale(Universe("ab"))),
    "quantale-relation-n3": lambda: quantale.check_laws(quantale.RelationQuantale(Universe("abc")), sample_budget=2000),
    "quantale-language-a1-k3": lambda: quantale.check_laws(quantale.LanguageQuantale("a", 3)),
    "quantale-language-a2-k2": lambda: quantale.check_laws(quantale.LanguageQuantale("ab", 2), sample_budget=5000),
    "path-boolean": lambda: path_algebra.check_algebra_laws(path_algebra.BOOLEAN, [False, True]),
    "path-tropical": lambda: path_algebra.check_algebra_laws(path_algebra.TROPICAL, [0, 1, 2, 3, 7, path_algebra.INF]),
    "closure-operator-n2": lambda: _closure_operator_laws(2),
}


def cmd_laws(target: str) -> tuple[bool, str]:
    if target not in LAW_TARGETS:
        raise ValueError(f"unknown law target {target!r}; choose from {', '.join(LAW_TARGETS)}")
    results = LAW_TARGETS[target]()
    return all(r.passed for r in results), "".join(f"{r}\n" for r in results)


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rtclosure", description="Reflexive-transitive closure toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("-i", "--input", default="-", help="edge-list file (default: stdin)")
        return p

    p = with_input(sub.add_parser("close", help="print the reflexive-transitive closure"))
    p.add_argument("--method", choices=METHODS, default="powers")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of an edge list")

    p = with_input(sub.add_parser("certify", help="print a derivation certificate for X ->* Y"))
    p.add_argument("x")
    p.add_argument("y")

    p = with_input(sub.add_parser("check-cert", help="check a derivation certificate"))
    p.add_argument("certificate")
    p.add_argument("--allow-trx", action="store_true")
    p.add_argument("--allow-in", action="store_true")

    with_input(sub.add_parser("shortest", help="all-pairs shortest distances of a weighted edge list"))

    p = with_input(sub.add_parser("star-lang", help="Kleene star of a finite language, truncated at --max-len"))
    p.add_argument("--alphabet", required=True)
    p.add_argument("--max-len", type=int, required=True)

    p = sub.add_parser("laws", help="run an algebraic law suite")
    p.add_argument("target", choices=sorted(LAW_TARGETS))
    return parser


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "close":
            out.write(cmd_close(_read(args.input, stdin), args.method, args.dot))
        elif args.command == "certify":
            cert = cmd_certify(_read(args.input, stdin), args.x, args.y)
            if cert is None:
                out.write(f"not derivable: {args.x} {args.y}\n")
                return EXIT_NO
            out.write(cert)
        elif args.command == "check-cert":
            with open(args.certificate, encoding="utf-8") as fh:
                certificate = fh.read()
            ok, message = cmd_check_cert(_read(args.input, stdin), certificate, args.allow_trx, args.allow_in)
            out.write(message)
            return EXIT_OK if ok else EXIT_NO
        elif args.command == "shortest":
            out.write(cmd_shortest(_read(args.input, stdin)))
        elif args.command == "star-lang":
            out.write(cmd_star_lang(args.alphabet, _read(args.input, stdin), args.max_len))
        elif args.command == "laws":
            ok, report = cmd_laws(args.target)
            out.write(report)
            return EXIT_OK if ok else EXIT_NO
    except UniverseTooLarge as exc:
        print(f"rtclosure: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, UnknownElement, OSError) as exc:
        print(f"rtclosure: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
