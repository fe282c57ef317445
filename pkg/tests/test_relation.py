import random

import pytest
from hypothesis import given, settings

import oracles
from strategies import relation_tuples, relations
from rtclosure.relation import (
    Relation,
    Subset,
    Universe,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownElement,
    all_relations,
    closure_by_hereditary,
    closure_by_intersection,
    closure_by_powers,
    compose,
    descendants,
    empty,
    full,
    identity,
    image,
    intersect,
    is_dense,
    is_rt_closed_superset,
    is_subset,
    is_transitive,
    power,
    union,
)
from rtclosure.sampling import letters, random_relation

CLOSED_CHAIN = {("a", "a"), ("a", "b"), ("a", "c"), ("b", "b"), ("b", "c"), ("c", "c")}


def rel(u, *pairs):
    return Relation.from_pairs(u, pairs)


class TestUniverse:
    def test_labels_must_be_distinct(self):
        with pytest.raises(ValueError):
            Universe("aba")

    def test_size(self):
        assert Universe("abc").size == 3
        assert len(Universe()) == 0

    def test_unknown_label(self, abc):
        with pytest.raises(UnknownElement):
            abc.index("z")


class TestRelationValue:
    def test_rows_must_match_universe(self, abc):
        with pytest.raises(ValueError):
            Relation(abc, (0, 0))
        with pytest.raises(ValueError):
            Relation(abc, (8, 0, 0))

    def test_code_round_trip(self):
        u = letters(3)
        for code in range(512):
            assert Relation.from_code(u, code).code == code

    def test_pairs_are_in_universe_order(self):
        u = Universe("cab")
        r = rel(u, ("a", "c"), ("c", "b"), ("c", "c"))
        assert r.pairs() == [("c", "c"), ("c", "b"), ("a", "c")]

    def test_contains(self, chain):
        assert ("a", "b") in chain
        assert ("a", "c") not in chain
        assert ("a", "zz") not in chain


class TestIdentity:
    def test_three(self, abc):
        assert set(identity(abc).pairs()) == {("a", "a"), ("b", "b"), ("c", "c")}

    def test_empty_universe(self):
        assert identity(Universe()).pairs() == []

    def test_singleton(self):
        assert identity(Universe("a")).pairs() == [("a", "a")]


class TestCompose:
    def test_chain_squared(self, chain):
        assert compose(chain, chain).pairs() == [("a", "c")]

    def test_identity_is_unit(self, chain, abc):
        assert compose(chain, identity(abc)) == chain
        assert compose(identity(abc), chain) == chain

    def test_empty_annihilates(self, chain, abc):
        assert compose(empty(abc), chain) == empty(abc)

    def test_universe_mismatch(self, chain):
        with pytest.raises(UniverseMismatch):
            compose(chain, identity(Universe("ab")))

    @given(relation_tuples(count=2))
    def test_matches_set_oracle(self, rs):
        r, s = rs
        assert set(compose(r, s).pairs()) == oracles.compose(oracles.pairs_of(r), oracles.pairs_of(s))

    @given(relation_tuples(count=3))
    def test_associative(self, rs):
        r, s, t = rs
        assert compose(compose(r, s), t) == compose(r, compose(s, t))


class TestSetOperations:
    def test_union_disjoint(self, abc):
        assert union(rel(abc, ("a", "b")), rel(abc, ("b", "c"))) == rel(abc, ("a", "b"), ("b", "c"))

    def test_intersect_idempotent(self, chain):
        assert intersect(chain, chain) == chain

    def test_empty_is_subset(self, chain, abc):
        assert is_subset(empty(abc), chain)
        assert not is_subset(chain, empty(abc))

    def test_mismatch(self, chain):
        with pytest.raises(UniverseMismatch):
            union(chain, empty(Universe("xyz")))


class TestImage:
    # The four subsets containing a, from the worked example.
    @pytest.mark.parametrize(
        "a, expected",
        [("a", "b"), ("ab", "bc"), ("ac", "b"), ("abc", "bc")],
    )
    def test_worked_example(self, chain, abc, a, expected):
        assert image(chain, Subset.of(abc, a)) == Subset.of(abc, expected)

    def test_empty(self, chain, abc):
        assert image(chain, Subset(abc)) == Subset(abc)


class TestTransitiveDense:
    def test_chain_not_transitive(self, chain):
        assert not is_transitive(chain)

    def test_triangle_transitive_not_dense(self, abc):
        t = rel(abc, ("a", "b"), ("b", "c"), ("a", "c"))
        assert is_transitive(t)
        assert not is_dense(t)

    def test_identity(self, abc):
        assert is_transitive(identity(abc))
        assert is_dense(identity(abc))

    def test_single_edge_not_dense(self):
        assert not is_dense(rel(Universe("ab"), ("a", "b")))

    def test_transitive_matches_triple_enumeration(self):
        for n in range(4):
            u = letters(n)
            for r in all_relations(u):
                assert is_transitive(r) == oracles.is_transitive(u.labels, oracles.pairs_of(r))


class TestPower:
    def test_zero_is_identity(self, chain, abc):
        assert power(chain, 0) == identity(abc)

    def test_one(self, chain):
        assert power(chain, 1) == chain

    def test_two(self, chain):
        assert power(chain, 2).pairs() == [("a", "c")]

    def test_negative(self, chain):
        with pytest.raises(ValueError):
            power(chain, -1)


CLOSURES = [closure_by_powers, closure_by_intersection, closure_by_hereditary]


class TestClosures:
    @pytest.mark.parametrize("closure", CLOSURES)
    def test_chain(self, chain, closure):
        assert set(closure(chain).pairs()) == CLOSED_CHAIN

    @pytest.mark.parametrize("closure", CLOSURES)
    def test_empty_relation(self, closure):
        for n in range(4):
            u = letters(n)
            assert closure(empty(u)) == identity(u)

    @pytest.mark.parametrize("closure", CLOSURES)
    def test_full_and_identity_fixed(self, closure, abc):
        assert closure(full(abc)) == full(abc)
        assert closure(identity(abc)) == identity(abc)

    def test_hereditary_rows_of_chain(self, chain):
        closed = closure_by_hereditary(chain)
        assert [p for p in closed.pairs() if p[0] == "a"] == [("a", "a"), ("a", "b"), ("a", "c")]
        assert [p for p in closed.pairs() if p[0] == "b"] == [("b", "b"), ("b", "c")]
        assert [p for p in closed.pairs() if p[0] == "c"] == [("c", "c")]

    def test_guards(self):
        with pytest.raises(UniverseTooLarge):
            closure_by_intersection(empty(letters(4)))
        with pytest.raises(UniverseTooLarge):
            closure_by_hereditary(empty(letters(13)))

    def test_all_agree_exhaustively(self):
        for n in range(4):
            u = letters(n)
            for r in all_relations(u):
                expected = closure_by_powers(r)
                assert closure_by_intersection(r) == expected
                assert closure_by_hereditary(r) == expected

    def test_powers_match_search_oracle(self):
        rng = random.Random(7)
        for _ in range(200):
            u = letters(rng.randint(0, 12))
            r = random_relation(rng, u)
            assert set(closure_by_powers(r).pairs()) == oracles.reach(u.labels, oracles.pairs_of(r))

    def test_hereditary_matches_powers_random(self):
        rng = random.Random(11)
        for _ in range(100):
            r = random_relation(rng, letters(rng.randint(0, 12)))
            assert closure_by_hereditary(r) == closure_by_powers(r)


class TestClosureProperties:
    @given(relations())
    def test_is_least_closed_superset(self, r):
        assert is_rt_closed_superset(r, closure_by_powers(r))

    @given(relation_tuples(count=2))
    def test_least(self, rs):
        r, s = rs
        if is_rt_closed_superset(r, s):
            assert is_subset(closure_by_powers(r), s)

    @given(relation_tuples(count=2, max_size=4))
    @settings(max_examples=300)
    def test_least_on_closed_supersets(self, rs):
        # Force the hypothesis: close s and add r, then check leastness.
        r, s = rs
        s = closure_by_powers(union(r, s))
        assert is_rt_closed_superset(r, s)
        assert is_subset(closure_by_powers(r), s)

    @given(relation_tuples(count=2))
    def test_monotone(self, rs):
        r, s = rs
        s = union(r, s)
        assert is_subset(closure_by_powers(r), closure_by_powers(s))

    @given(relations())
    def test_idempotent_and_inflationary(self, r):
        c = closure_by_powers(r)
        assert closure_by_powers(c) == c
        assert is_subset(r, c)


class TestRtClosedSuperset:
    def test_closure(self, chain):
        assert is_rt_closed_superset(chain, closure_by_powers(chain))

    def test_not_reflexive(self):
        r = rel(Universe("ab"), ("a", "b"))
        assert not is_rt_closed_superset(r, r)

    def test_full(self, chain, abc):
        assert is_rt_closed_superset(chain, full(abc))


class TestDescendants:
    def test_chain(self, chain):
        assert descendants(chain, "a").labels() == ["a", "b", "c"]
        assert descendants(chain, "c").labels() == ["c"]

    def test_empty(self, abc):
        assert descendants(empty(abc), "b").labels() == ["b"]

    def test_unknown(self, chain):
        with pytest.raises(UnknownElement):
            descendants(chain, "q")
