import random
from collections import Counter

import pytest

from dyngal.errors import IndexOutOfRange, InvalidParameters, NotInWreathGroup, ParseError
from dyngal.perm import Permutation, cycle_pattern
from dyngal.wreath import (WreathElement, WreathParams, all_elements, centralizer_order,
                           classify, from_perm, gamma_j, induced_cycle_pattern, is_conjugate,
                           rho, sigma, swap_product, tau, to_perm, type_of, wreath_group)

SMALL = [WreathParams(2, 2), WreathParams(3, 2), WreathParams(2, 3), WreathParams(3, 3)]


def _random_element(rng, params):
    pi = list(range(params.r))
    rng.shuffle(pi)
    return WreathElement([rng.randrange(params.n) for _ in range(params.r)], pi, params.n)


@pytest.mark.parametrize("params", SMALL)
def test_to_perm_is_homomorphism(params):
    rng = random.Random(params.D)
    for _ in range(50):
        a, b = _random_element(rng, params), _random_element(rng, params)
        assert to_perm(a * b) == to_perm(a) * to_perm(b)
        assert to_perm(a.inverse()) == to_perm(a).inverse()
        assert from_perm(to_perm(a), params) == a
        assert a ** 5 == a * a * a * a * a


@pytest.mark.parametrize("params", SMALL)
def test_wreath_is_centralizer_of_sigma(params):
    group = wreath_group(params)
    assert group.order() == params.order == sum(1 for _ in all_elements(params))
    s = sigma(params)
    for w in all_elements(params):
        assert to_perm(w) * s == s * to_perm(w)


def test_from_perm_rejects_outsiders():
    params = WreathParams(3, 2)
    with pytest.raises(NotInWreathGroup):
        from_perm(Permutation.parse("(1,2)", 6), params)


@pytest.mark.parametrize("params", SMALL)
def test_types_are_conjugacy_classes(params):
    # brute-force oracle: class sizes and membership by explicit conjugation
    elems = list(all_elements(params))
    by_type = Counter(type_of(w) for w in elems)
    for t, size in by_type.items():
        assert size * centralizer_order(t, params) == params.order
    rng = random.Random(1)
    for _ in range(30):
        w = rng.choice(elems)
        g = rng.choice(elems)
        conj = g * w * g.inverse()
        assert is_conjugate(w, conj)
        assert cycle_pattern(to_perm(w)) == induced_cycle_pattern(type_of(w), params)


def test_parse_roundtrip_and_errors():
    w = WreathElement.parse("[1,0,2];(1,3)", 3)
    assert str(w) == "[1,0,2];(1,3)"
    assert WreathElement.parse(str(w), 3, r=3) == w
    for bad in ["1,0;()", "[1,x];()", "[1,0];(1,5)"]:
        with pytest.raises(ParseError):
            WreathElement.parse(bad, 3)
    with pytest.raises(ParseError):
        WreathElement.parse("[1,0];()", 3, r=3)


def test_named_elements():
    params = WreathParams(4, 3)
    assert cycle_pattern(to_perm(rho(2, params))) == (4, 1, 1, 1, 1, 1, 1, 1, 1)
    assert cycle_pattern(to_perm(tau(1, 3, params))) == (2, 2, 2, 2, 1, 1, 1, 1)
    with pytest.raises(IndexOutOfRange):
        rho(4, params)
    with pytest.raises(IndexOutOfRange):
        tau(2, 2, params)
    g = gamma_j(1, params)
    assert g.f == (2, 0, 0) and g.pi.images == (0, 2, 1)
    with pytest.raises(InvalidParameters):
        gamma_j(1, WreathParams(3, 3))
    with pytest.raises(InvalidParameters):
        swap_product(params)
    with pytest.raises(InvalidParameters):
        WreathParams(0, 2)


def test_classify_cases():
    params = WreathParams(4, 2)
    assert classify(swap_product(params)).case == "Case1a"
    assert classify(gamma_j(0, params)).case == "Case1b"
    p3 = WreathParams(4, 3)
    assert classify(rho(1, p3) ** 2 * rho(3, p3) ** 2).data == (1, 3)
    assert str(classify(tau(1, 2, p3))) == "Case2b(1, 2, 0)"
    w = tau(1, 2, p3) * rho(1, p3) * rho(2, p3) ** 3
    assert classify(w).case == "Case2b"
    assert cycle_pattern(to_perm(w))[:5] == (2, 2, 2, 2, 1)
    assert classify(rho(2, WreathParams(3, 3))).data == (2, 1)
    assert classify(WreathElement.identity(params)).case == "Other"
