import random

import pytest
from hypothesis import given, settings, strategies as st

from dyngal.errors import (BudgetExceeded, DegreeMismatch, IndexLimitExceeded, NotASubgroup,
                           NotInGroup, ParseError)
from dyngal.perm import (GeneratedGroup, Permutation, closure, conjugate, coset_action,
                         cycle_pattern, enumerate_elements, induced_permutation, parse_cycles)


def test_composition_is_functional():
    a = Permutation.parse("(1,2)", 3)
    b = Permutation.parse("(2,3)", 3)
    # (a*b)(x) = a(b(x)): 1 -> 1 -> 2
    assert (a * b)(0) == 1
    assert str(a * b) == "(1,2,3)"


def test_parse_and_print_roundtrip():
    p = Permutation.parse(" (1, 3,5)(2,4) ", 6)
    assert str(p) == "(1,3,5)(2,4)"
    assert str(Permutation.identity(4)) == "()"
    assert parse_cycles("()") == []


@pytest.mark.parametrize("bad", ["", "(1,2", "1,2)", "(a,b)", "(1,,2)"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_cycles(bad)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Permutation.identity(3) * Permutation.identity(4)


def test_order_and_power():
    p = Permutation.parse("(1,2,3)(4,5)", 5)
    assert p.order() == 6
    assert (p ** 6).is_identity()
    assert p ** -1 == p.inverse()
    assert cycle_pattern(p) == (3, 2)
    q = Permutation.parse("(1,4)", 5)
    assert cycle_pattern(conjugate(p, q)) == (3, 2)


def _random_perm(rng, n):
    img = list(range(n))
    rng.shuffle(img)
    return Permutation(img)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 7), st.integers(1, 3))
def test_bsgs_order_matches_closure(seed, n, k):
    rng = random.Random(seed)
    gens = [_random_perm(rng, n) for _ in range(k)]
    group = GeneratedGroup(gens)
    elements = closure(gens, n)
    assert group.order() == len(elements)
    for _ in range(10):
        g = _random_perm(rng, n)
        assert group.contains(g) == (g.images in elements)


def test_enumeration_is_exact_and_budgeted():
    gens = [Permutation.parse("(1,2,3,4,5)", 6), Permutation.parse("(1,2)", 6)]
    group = GeneratedGroup(gens)
    elems = list(enumerate_elements(group, budget=200))
    assert len(elems) == 120 == len(set(elems))
    with pytest.raises(BudgetExceeded):
        list(enumerate_elements(group, budget=100))


def _sym(n):
    return GeneratedGroup([Permutation.from_cycles([tuple(range(1, n + 1))], n),
                           Permutation.from_cycles([(1, 2)], n)])


@pytest.mark.parametrize("method", ["key", "scan"])
def test_coset_action_point_stabilizer(method):
    g = _sym(5)
    h = GeneratedGroup([Permutation.parse("(2,3,4,5)", 5), Permutation.parse("(2,3)", 5)])
    act = coset_action(g, h, method=method)
    assert act.size == 5
    perm = induced_permutation(act, Permutation.parse("(1,2,3)", 5))
    assert sorted(cycle_pattern(perm)) == [1, 1, 3]


def test_key_and_scan_agree_on_random_subgroups():
    rng = random.Random(3)
    g = _sym(6)
    for _ in range(8):
        h = GeneratedGroup([_random_perm(rng, 6) for _ in range(1)] or [], degree=6)
        a1 = coset_action(g, h, method="key")
        a2 = coset_action(g, h, method="scan")
        assert a1.size == a2.size == 720 // h.order()
        x = _random_perm(rng, 6)
        assert cycle_pattern(induced_permutation(a1, x)) == cycle_pattern(induced_permutation(a2, x))


def test_coset_action_errors():
    g = GeneratedGroup([Permutation.parse("(1,2,3)", 4)])
    with pytest.raises(NotASubgroup):
        coset_action(g, GeneratedGroup([Permutation.parse("(1,2)", 4)]))
    with pytest.raises(IndexLimitExceeded):
        coset_action(_sym(6), GeneratedGroup([], degree=6), limit=100)
    act = coset_action(g, GeneratedGroup([], degree=4))
    with pytest.raises(NotInGroup):
        induced_permutation(act, Permutation.parse("(1,2)", 4))


def test_bsgs_deterministic():
    gens = [Permutation.parse("(1,2,3,4,5,6,7)", 7), Permutation.parse("(1,2)", 7)]
    a, b = GeneratedGroup(gens), GeneratedGroup(gens)
    assert a.bsgs.base == b.bsgs.base and a.order() == b.order() == 5040
