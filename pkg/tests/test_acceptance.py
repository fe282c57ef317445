"""Exit criteria. Each test prints one ``PASS``/``FAIL`` line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python
tests/test_acceptance.py``) to see the report.
"""

import io
import random
import sys
import time
from contextlib import contextmanager

import pytest

import oracles
from rtclosure.cli import METHODS, main
from rtclosure.derivation import IN, TRX, check, count_rule, eliminate_in, eliminate_trx, height, theorems
from rtclosure.lattice import (
    ClosureTable,
    MooreFamily,
    closure_from_family_as_table,
    family_from_closure,
    is_closure_operator,
    is_moore_family,
    least_fixed_point,
    meet_of_prefixed_points,
    relation_to_subset,
    square_universe,
    subset_to_relation,
    transitive_family,
)
from rtclosure.path_algebra import floyd_warshall, from_matrix, shortest_path_oracle, to_matrix, tropical_matrix, warshall
from rtclosure.quantale import (
    Language,
    LanguageQuantale,
    RelationQuantale,
    check_freeness,
    check_laws,
    check_monoid_object,
    lang_star,
    star,
)
from rtclosure.relation import (
    Relation,
    Subset,
    Universe,
    all_relations,
    closure_by_hereditary,
    closure_by_intersection,
    closure_by_powers,
    compose,
    identity,
    image,
    is_subset,
    union,
)
from rtclosure.sampling import letters, random_derivation, random_digraph, random_language, random_relation


@contextmanager
def criterion(capsys, number, title, budget=None):
    """Time the block, then print one report line, pass or fail."""
    start = time.perf_counter()
    failure = None
    try:
        yield
    except AssertionError as exc:
        failure = exc
    elapsed = time.perf_counter() - start
    if failure is None and budget is not None and elapsed >= budget:
        failure = AssertionError(f"took {elapsed:.1f}s, budget {budget}s")
    status = "PASS" if failure is None else "FAIL"
    with capsys.disabled():
        limit = f" (limit {budget}s)" if budget is not None else ""
        print(f"\n[{status}] AC{number:02d} {title}: {elapsed:.2f}s{limit}")
    if failure is not None:
        raise failure


def rt_step(r):
    u = r.universe
    square = square_universe(u)
    ident = identity(u)
    return square, lambda s: relation_to_subset(union(ident, compose(r, subset_to_relation(s, u))), square)


def test_ac01_theorem_exhaustive(capsys):
    with criterion(capsys, 1, "six closure routes agree on all 512 relations over 3 points", 30):
        u = letters(3)
        q = RelationQuantale(u)
        count = 0
        for r in all_relations(u):
            expected = closure_by_powers(r)
            assert closure_by_intersection(r) == expected, r
            assert closure_by_hereditary(r) == expected, r
            assert theorems(r) == expected, r
            assert star(q, r) == expected, r
            assert from_matrix(u, warshall(to_matrix(r))) == expected, r
            count += 1
        assert count == 512


def test_ac02_theorem_randomized(capsys):
    with criterion(capsys, 2, "1000 random relations |X|<=10 plus hereditary up to |X|=12", 30):
        rng = random.Random(20260102)
        for _ in range(1000):
            u = letters(rng.randint(0, 10))
            r = random_relation(rng, u)
            expected = closure_by_powers(r)
            m = to_matrix(r)
            assert from_matrix(u, warshall(m)) == expected
            assert from_matrix(u, floyd_warshall(m)) == expected
            assert theorems(r) == expected
            assert closure_by_hereditary(r) == expected
        for _ in range(100):
            r = random_relation(rng, letters(rng.randint(11, 12)))
            assert closure_by_hereditary(r) == closure_by_powers(r)


def test_ac03_worked_example(capsys):
    with criterion(capsys, 3, "worked example a->b->c and its hereditary-subset images"):
        u = Universe("abc")
        r = Relation.from_pairs(u, [("a", "b"), ("b", "c")])
        expected = {("a", "a"), ("a", "b"), ("a", "c"), ("b", "b"), ("b", "c"), ("c", "c")}
        for closure in (closure_by_powers, closure_by_intersection, closure_by_hereditary, theorems):
            assert set(closure(r).pairs()) == expected
        images = [image(r, Subset.of(u, a)) for a in ("a", "ab", "ac", "abc")]
        assert [set(s.labels()) for s in images] == [{"b"}, {"b", "c"}, {"b"}, {"b", "c"}]
        b_images = [image(r, Subset.of(u, b)) for b in ("b", "ab", "bc", "abc")]
        assert [set(s.labels()) for s in b_images] == [{"c"}, {"b", "c"}, {"c"}, {"b", "c"}]
        hereditary_a = [a for a in ("a", "ab", "ac", "abc") if image(r, Subset.of(u, a)) <= Subset.of(u, a)]
        hereditary_b = [b for b in ("b", "ab", "bc", "abc") if image(r, Subset.of(u, b)) <= Subset.of(u, b)]
        assert hereditary_a == ["abc"]
        assert hereditary_b == ["bc", "abc"]


def test_ac04_trx_admissible(capsys):
    with criterion(capsys, 4, "eliminate_trx on 500 random derivations with trx", 10):
        rng = random.Random(4)
        done = 0
        while done < 500:
            r = random_relation(rng, letters(rng.randint(1, 6)))
            d = random_derivation(rng, r, rng.randint(2, 8))
            assert d is not None
            assert height(d) <= 8 and count_rule(d, TRX) > 0
            assert check(d, r, allow_trx=True)
            out = eliminate_trx(d, r)
            assert check(out, r)
            assert count_rule(out, TRX) == 0
            assert out.conclusion == d.conclusion
            done += 1


def test_ac05_in_redundant(capsys):
    with criterion(capsys, 5, "rule (in) is redundant"):
        for n in range(4):
            for r in all_relations(letters(n)):
                assert theorems(r, use_in=True) == theorems(r, use_in=False)
        rng = random.Random(5)
        for _ in range(500):
            r = random_relation(rng, letters(rng.randint(1, 6)))
            d = random_derivation(rng, r, rng.randint(1, 8), require_trx=False)
            out = eliminate_in(d, r)
            assert out.conclusion == d.conclusion
            assert count_rule(out, IN) == 0
            assert check(out, r, allow_trx=True, allow_in=False)


def test_ac06_closure_operator(capsys):
    with criterion(capsys, 6, "R -> R* is inflationary, idempotent and monotone"):
        u = letters(2)
        rels = list(all_relations(u))
        assert len(rels) == 16
        for r in rels:
            c = closure_by_powers(r)
            assert is_subset(r, c)
            assert closure_by_powers(c) == c
        pairs = 0
        for r in rels:
            for s in rels:
                pairs += 1
                if is_subset(r, s):
                    assert is_subset(closure_by_powers(r), closure_by_powers(s))
        assert pairs == 256
        square = square_universe(u)
        table = ClosureTable.from_function(square, lambda s: relation_to_subset(closure_by_powers(subset_to_relation(s, u)), square))
        assert is_closure_operator(table)
        rng = random.Random(6)
        for _ in range(500):
            v = letters(rng.randint(0, 6))
            r = random_relation(rng, v)
            s = union(r, random_relation(rng, v))
            cr = closure_by_powers(r)
            assert is_subset(r, cr)
            assert closure_by_powers(cr) == cr
            assert is_subset(cr, closure_by_powers(s))


def _moore_families(n):
    points = 1 << n
    full = points - 1
    for fam in range(1 << points):
        if not fam >> full & 1:
            continue
        members = [s for s in range(points) if fam >> s & 1]
        if all(fam >> (a & b) & 1 for a in members for b in members):
            yield members


def test_ac07_moore_correspondence(capsys):
    with criterion(capsys, 7, "closure tables and Moore families round-trip"):
        counts = []
        for n in range(5):
            u = letters(n)
            count = 0
            for members in _moore_families(n):
                fam = MooreFamily(u, frozenset(members))
                assert is_moore_family(fam)
                table = closure_from_family_as_table(fam)
                assert is_closure_operator(table)
                assert family_from_closure(table) == fam
                assert closure_from_family_as_table(family_from_closure(table)) == table
                count += 1
            counts.append(count)
        assert counts == [1, 2, 7, 61, 2480]
        for n in range(4):
            assert is_moore_family(transitive_family(letters(n)))


def test_ac08_tarski(capsys):
    with criterion(capsys, 8, "iterated least fixed point equals the meet of pre-fixed points"):
        for r in all_relations(letters(2)):
            square, f = rt_step(r)
            lfp = least_fixed_point(f, square)
            assert f(lfp) == lfp
            assert lfp == meet_of_prefixed_points(f, square)
            assert subset_to_relation(lfp, r.universe) == closure_by_powers(r)
        rng = random.Random(8)
        for _ in range(100):
            r = random_relation(rng, letters(rng.randint(0, 3)))
            square, f = rt_step(r)
            lfp = least_fixed_point(f, square)
            assert f(lfp) == lfp
            assert lfp == meet_of_prefixed_points(f, square)


def test_ac09_language_star(capsys):
    with criterion(capsys, 9, "lang_star matches the breadth-first oracle; truncation is coherent", 20):
        rng = random.Random(9)
        for _ in range(200):
            alphabet = "abc"[: rng.randint(1, 3)]
            lang = random_language(rng, alphabet, 3, 8)
            full = lang_star(lang)
            assert full.words == oracles.language_star(lang.words, 8)
            for k in (4, 6):
                small = lang_star(Language.of(alphabet, k, (w for w in lang.words if len(w) <= k)))
                assert small.words == {w for w in full.words if len(w) <= k}


def test_ac10_quantale_laws(capsys):
    with criterion(capsys, 10, "quantale laws, monoid-object inequations and freeness"):
        rq = RelationQuantale(letters(2))
        lq = LanguageQuantale("a", 3)
        for q in (rq, lq):
            assert q.carrier_size == 16
            results = check_laws(q)
            assert all(res.passed for res in results), [str(res) for res in results if not res.passed]
            elements = list(q.elements())
            for a in elements:
                assert check_monoid_object(q, a)
                for b in elements:
                    assert check_freeness(q, a, b)
        rng = random.Random(10)
        for n in (3, 4):
            q = RelationQuantale(letters(n))
            for _ in range(100):
                a = q.random_element(rng)
                assert check_monoid_object(q, a)
                b = closure_by_powers(q.join2(a, q.random_element(rng)))
                assert check_freeness(q, a, b)
                assert check_freeness(q, a, q.random_element(rng))


def test_ac11_shortest_paths(capsys):
    with criterion(capsys, 11, "tropical Floyd-Warshall equals simple-path enumeration on 300 digraphs", 10):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(1, 7)
            edges = random_digraph(rng, n, max_weight=9)
            assert floyd_warshall(tropical_matrix(n, edges)) == shortest_path_oracle(n, edges)


def _run(argv, stdin=""):
    out = io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


def test_ac12_cli(capsys, tmp_path):
    with criterion(capsys, 12, "CLI close/certify/check-cert on the worked example"):
        example = tmp_path / "example.txt"
        example.write_text("a b\nb c\n")
        outputs = {_run(["close", "--method", m, "-i", str(example)]) for m in METHODS}
        assert outputs == {(0, "a a\na b\na c\nb b\nb c\nc c\n")}
        code, cert = _run(["certify", "a", "c", "-i", str(example)])
        assert (code, cert) == (0, '(tx "a" "b" (tx "b" "c" (id "c")))\n')
        cert_file = tmp_path / "cert.txt"
        cert_file.write_text(cert)
        assert _run(["check-cert", str(cert_file), "-i", str(example)]) == (0, "PASS a c\n")
        assert _run(["certify", "b", "a", "-i", str(example)])[0] == 1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
