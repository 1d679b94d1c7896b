import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import permutations, words
from trisectlab.algebra import (
    Permutation,
    Presentation,
    Representation,
    Word,
    compose,
    cycle_structure,
    evaluate,
    free_reduce,
    generated_group_order,
    orbits,
    verify_representation,
)


def P(text, n=None):
    return Permutation.parse(text, n)


def test_parse_and_print():
    p = P("(1 2)(3 4)")
    assert p.images == (2, 1, 4, 3)
    assert str(p) == "(1 2)(3 4)"
    assert str(P("()", 3)) == "()"
    assert P("(2 3)", 3).degree == 3


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        P("(1 2) x")
    with pytest.raises(ValueError):
        P("(1 1)")
    with pytest.raises(ValueError):
        P("(1 5)", 3)


def test_compose_applies_right_factor_first():
    p, q = P("(1 2)", 3), P("(2 3)", 3)
    assert compose(p, q)(2) == p(q(2)) == 3
    assert compose(p, q)(1) == 2
    assert str(compose(p, q)) == "(1 2 3)"


def test_cycle_structure_and_orbits():
    assert cycle_structure(P("(1 2)", 3)) == [2, 1]
    assert cycle_structure(P("(1 2 3)(4 5)", 6)) == [3, 2, 1]
    assert orbits([P("(1 2)", 4), P("(3 4)", 4)], 4) == [frozenset({1, 2}), frozenset({3, 4})]
    assert len(orbits([P("(1 2)", 3), P("(2 3)", 3)], 3)) == 1


def test_orbit_degree_mismatch():
    with pytest.raises(ValueError):
        orbits([P("(1 2)", 3)], 4)


def test_generated_order():
    assert generated_group_order([P("(1 2)", 3), P("(2 3)", 3)], 3) == 6
    assert generated_group_order([P("(1 2)", 4), P("(3 4)", 4)], 4) == 4


def test_word_parse_and_print():
    w = Word.parse("y^-1 b^2 a")
    assert w.letters == (("y", -1), ("b", 1), ("b", 1), ("a", 1))
    assert str(w) == "y^-1 b^2 a"
    assert Word.parse("1") == Word()
    assert str(Word()) == "1"


def test_free_reduce():
    assert free_reduce(Word.parse("a b b^-1 a^-1 x")) == Word.parse("x")


def test_substitute():
    w = Word.parse("a b^-1").substitute({"b": Word.parse("x y")})
    assert w == Word.parse("a y^-1 x^-1")


def test_evaluate_examples():
    rep = Representation.from_strings(3, {"y": "(1 2)", "b": "(2 3)", "a": "()", "x": "(1 2)"})
    assert evaluate(Word.parse("y b"), rep) == compose(rep["y"], rep["b"])
    assert evaluate(Word.parse("y b y b^-1 y^-1 b^-1"), rep).is_identity()


def test_verify_representation_reports_failures():
    pres = Presentation(("s",), (Word.parse("s^2"),))
    ok = verify_representation(pres, Representation.from_strings(3, {"s": "(1 2)"}))
    assert ok.passed and not ok.transitive and ok.image_order == 2
    bad = verify_representation(pres, Representation.from_strings(3, {"s": "(1 2 3)"}))
    assert not bad.passed and bad.failing_relators == [Word.parse("s^2")]


def test_verify_requires_every_generator():
    pres = Presentation(("s", "t"), ())
    with pytest.raises(KeyError):
        verify_representation(pres, Representation.from_strings(2, {"s": "(1 2)"}))


def test_presentation_rejects_unknown_generators():
    with pytest.raises(ValueError):
        Presentation(("a",), (Word.parse("b"),))


def test_representation_degree_mismatch():
    with pytest.raises(ValueError):
        Representation(3, {"a": P("(1 2)", 2)})


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(permutations(n), permutations(n), permutations(n))))
def test_composition_is_associative_with_inverses(triple):
    p, q, r = triple
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(p, p.inverse()).is_identity()


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(*(permutations(n) for _ in range(4)))), words(), words())
def test_evaluate_is_a_homomorphism(perms, u, v):
    rep = Representation(perms[0].degree, dict(zip("abxy", perms)))
    assert evaluate(u + v, rep) == compose(evaluate(u, rep), evaluate(v, rep))
    assert evaluate(u.inverse(), rep) == evaluate(u, rep).inverse()
    assert evaluate(free_reduce(u), rep) == evaluate(u, rep)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(permutations(n), min_size=1, max_size=3)))
def test_orbits_partition_and_are_invariant(gens):
    n = gens[0].degree
    orb = orbits(gens, n)
    assert sorted(x for o in orb for x in o) == list(range(1, n + 1))
    for o in orb:
        for g in gens:
            assert {g(x) for x in o} == set(o)


@given(permutations())
def test_cycles_round_trip(p):
    assert Permutation.from_cycles(p.cycles(), p.degree) == p
    assert Permutation.parse(str(p), p.degree) == p
    assert sum(cycle_structure(p)) == p.degree
