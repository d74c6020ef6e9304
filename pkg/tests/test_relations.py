import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soficovers import BudgetExceededError, exit_code_for, load_fixture
from soficovers.relations import (
    BoolRelation,
    identity_relation,
    omega_power,
    stabilized_domain,
    stabilized_range,
    symbol_relation,
    transition_monoid,
    word_relation,
)


def relation(rows):
    return BoolRelation(len(rows), tuple(rows))


def test_symbol_relation_matches_edges(example_b):
    s = example_b.symbols.index
    r = symbol_relation(example_b, s("1"))
    # label 1: a->a and b->a
    assert r.ran() == frozenset({0})
    assert r.dom() == frozenset({0, 1})


def test_word_relation_is_composition(example_a):
    s = example_a.symbols.index
    word = (s("0"), s("2"), s("3"))
    step = symbol_relation(example_a, word[0])
    for a in word[1:]:
        step = step.compose(symbol_relation(example_a, a))
    assert word_relation(example_a, word) == step


def test_identity_is_neutral():
    r = relation([0b10, 0b01, 0b110])
    ident = identity_relation(3)
    assert ident.compose(r) == r
    assert r.compose(ident) == r


def test_omega_power_idempotent(example_a):
    for a in range(len(example_a.symbols)):
        e = omega_power(symbol_relation(example_a, a))
        assert e.is_idempotent()
        assert e.compose(e) == e


def test_omega_power_needs_iteration():
    chain = load_fixture("chain_stabilization")
    s = chain.symbols.index
    r = symbol_relation(chain, s("a"))
    assert r.ran() == frozenset({1, 2})  # one step reaches {2,3}
    assert stabilized_range(r) == frozenset({2})  # only 3 survives the tail
    e = omega_power(r)
    assert e.is_idempotent()
    assert e != r


def test_monoid_closed_under_composition(example_b):
    monoid = transition_monoid(example_b)
    elements = set(monoid.elements)
    for x in monoid.elements:
        for y in monoid.elements:
            product = x.compose(y)
            if not product.is_empty():
                assert product in elements


def test_monoid_words_reproduce_elements(example_a):
    monoid = transition_monoid(example_a)
    for rel, word in zip(monoid.elements, monoid.words):
        assert word_relation(example_a, word) == rel


def test_monoid_budget_exceeded(example_a):
    with pytest.raises(BudgetExceededError) as exc:
        transition_monoid(example_a, budget=2)
    assert exit_code_for(exc.value) == 3


def test_stabilized_range_is_omega_limit(example_a):
    s = example_a.symbols.index
    for word in ((s("0"),), (s("2"), s("3")), (s("0"), s("1"), s("2"))):
        rel = word_relation(example_a, word)
        assert stabilized_range(rel) == omega_power(rel).ran()
        assert stabilized_domain(rel) == omega_power(rel).dom()


masks = st.integers(0, 15)
relations4 = st.builds(lambda rows: relation(rows), st.lists(masks, min_size=4, max_size=4))


@settings(max_examples=60, deadline=None)
@given(relations4, relations4, relations4)
def test_compose_associative(r1, r2, r3):
    assert r1.compose(r2).compose(r3) == r1.compose(r2.compose(r3))


@settings(max_examples=60, deadline=None)
@given(relations4)
def test_omega_power_property(r):
    e = omega_power(r)
    assert e.is_idempotent()
    # omega power is a power of r, hence commutes with it
    assert e.compose(r) == r.compose(e)
