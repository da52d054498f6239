from fractions import Fraction

import pytest

from dyngal.bounds import (contribution_bound, genus_lower_bound, lambda_set, psi_set,
                           theta_set, theta_subset, u_nd, unramified_count)
from dyngal.catalog import build_sum_kernel, load_bundled, point_stabilizer_spec
from dyngal.errors import NotADivisor, UnsupportedN
from dyngal.genus import genus_of, inertia_system
from dyngal.perm import coset_action, cycle_pattern, induced_permutation
from dyngal.wreath import WreathParams, rho, tau, to_perm, type_of, wreath_group


def test_witness_set_sizes():
    p = WreathParams(7, 18)
    assert len(theta_set(p)) == 108
    assert len(lambda_set(p)) == 7 * 18 * 17 // 2
    p6 = WreathParams(6, 9)
    assert sum(len(theta_subset(p6, d)) for d in (1, 2, 3)) == len(theta_set(p6))
    assert len(psi_set(p6)) == 36
    with pytest.raises(NotADivisor):
        theta_subset(p6, 4)


def test_witness_sets_are_single_classes():
    p = WreathParams(5, 6)
    assert len({type_of(w) for w in lambda_set(p)}) == 1
    # one W-class per nonzero rotation amount
    types = {type_of(w) for w in theta_subset(p, 1)}
    assert len(types) == 4 and type_of(rho(1, p)) in types


def _fixed_cosets(spec, gamma):
    action = coset_action(wreath_group(spec.params), spec.group)
    return cycle_pattern(induced_permutation(action, to_perm(gamma))).count(1)


@pytest.mark.parametrize("spec", [build_sum_kernel(5, 6, 5), point_stabilizer_spec(5, 6),
                                  build_sum_kernel(3, 2, 3), point_stabilizer_spec(3, 2)],
                         ids=["sumker5", "stab5", "sumker3", "stab3"])
def test_unramified_count_equals_fixed_cosets(spec):
    p = spec.params
    for gamma in (rho(1, p), tau(1, 2, p), rho(2, p) ** 2):
        assert unramified_count(spec, gamma, p) == _fixed_cosets(spec, gamma)


def test_contribution_bound():
    assert contribution_bound(10, 4) == 3
    assert contribution_bound(10, Fraction(5, 1)) == 3
    assert contribution_bound(1, 1) == 0


def test_even_n_requires_flag():
    spec = build_sum_kernel(6, 9, 2)
    with pytest.raises(UnsupportedN):
        u_nd(spec, 6, spec.params)
    assert u_nd(spec, 6, spec.params, experimental_even=True) >= 0
    assert u_nd(spec, 2, spec.params) >= 0


def test_bound_below_genus_n5():
    system = inertia_system(5)
    for spec in load_bundled(5):
        rep = genus_lower_bound(spec)
        assert rep.lower_bound <= genus_of(spec, system).genus
        assert set(rep.g_prime) == {1, 5}
