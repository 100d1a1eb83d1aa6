from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod

import pytest

from parking_vertex.combinatorics import catalan, fixed_parking_functions
from parking_vertex.errors import DomainError
from parking_vertex.symfun import (
    MonomialExpansion,
    SetRepresentation,
    canonical_partition,
    character_table,
    class_sizes,
    compose,
    cycle_type,
    decompose,
    format_polynomial,
    frobenius_monomial_expansion,
    inner_product,
    parking_function_rep,
    partitions,
    permutation_character,
    permutation_of_type,
    project_to_variables,
    value_at_ones,
    young_subgroup_orbits,
)


def young_subgroup(mu):
    """Every element of S_mu, enumerated block by block."""
    blocks = []
    start = 1
    for part in mu:
        blocks.append(list(range(start, start + part)))
        start += part
    for choice in product(*(permutations(b) for b in blocks)):
        images = [0] * sum(mu)
        for block, img in zip(blocks, choice):
            for src, dst in zip(block, img):
                images[src - 1] = dst
        yield tuple(images)


def brute_orbits(rep, mu):
    group = list(young_subgroup(mu))
    seen = set()
    orbits = 0
    for x in rep.elements:
        if x in seen:
            continue
        orbits += 1
        seen.update(rep.action(g, x) for g in group)
    return orbits


def test_partitions():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert canonical_partition([1, 3, 2]) == (3, 2, 1)
    with pytest.raises(DomainError):
        canonical_partition([2, 0])


def test_action_is_a_group_action():
    rep = parking_function_rep(3)
    group = list(permutations(range(1, 4)))
    for x in rep.elements:
        assert rep.action((1, 2, 3), x) == x
        for s in group:
            for t in group:
                assert rep.action(compose(s, t), x) == rep.action(s, rep.action(t, x))


def test_orbit_examples():
    pf2 = parking_function_rep(2)
    assert young_subgroup_orbits(pf2, (2,)) == 2
    assert young_subgroup_orbits(pf2, (1, 1)) == 3
    assert young_subgroup_orbits(parking_function_rep(3), (3,)) == 5
    with pytest.raises(DomainError):
        young_subgroup_orbits(pf2, (3,))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_orbits_match_full_group_enumeration(n):
    rep = parking_function_rep(n)
    for mu in partitions(n):
        assert young_subgroup_orbits(rep, mu) == brute_orbits(rep, mu)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_orbits_by_burnside(n):
    rep = parking_function_rep(n)
    for mu in partitions(n):
        group = list(young_subgroup(mu))
        fixed = sum(sum(1 for x in rep.elements if rep.action(g, x) == x) for g in group)
        assert Fraction(fixed, len(group)) == young_subgroup_orbits(rep, mu)


def test_frobenius_examples():
    assert frobenius_monomial_expansion(parking_function_rep(1)).coeffs == {(1,): 1}
    assert frobenius_monomial_expansion(parking_function_rep(2)).coeffs == {(2,): 2, (1, 1): 3}
    assert frobenius_monomial_expansion(parking_function_rep(3))[(3,)] == 5


@pytest.mark.parametrize("n", range(1, 8))
def test_top_coefficient_is_catalan(n):
    rep = parking_function_rep(n)
    assert young_subgroup_orbits(rep, (n,)) == catalan(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_bottom_coefficient_and_specialisation(n):
    exp = frobenius_monomial_expansion(parking_function_rep(n))
    assert exp[(1,) * n] == (n + 1) ** (n - 1)
    assert value_at_ones(project_to_variables(exp, n)) >= (n + 1) ** (n - 1)
    # sum over mu of coeff * (number of distinct rearrangements in n variables)
    total = 0
    for mu, c in exp.coeffs.items():
        padded = mu + (0,) * (n - len(mu))
        mult = factorial(n) // prod(factorial(padded.count(v)) for v in set(padded))
        total += c * mult
    assert value_at_ones(project_to_variables(exp, n)) == total


def test_projection_examples():
    exp = MonomialExpansion(2, {(2,): 2, (1, 1): 3})
    assert project_to_variables(exp, 2) == {(2, 0): 2, (1, 1): 3, (0, 2): 2}
    assert format_polynomial(project_to_variables(exp, 2)) == "2*x1^2 + 3*x1*x2 + 2*x2^2"
    assert project_to_variables(MonomialExpansion(2, {(1, 1): 1}), 1) == {}
    assert project_to_variables(MonomialExpansion(1, {(1,): 1}), 3) == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}


def test_monomial_expansion_json():
    exp = frobenius_monomial_expansion(parking_function_rep(3))
    text = exp.to_json()
    assert text.startswith('{"n": 3, "coeffs": [{"mu": [3], "c": 5}')
    assert MonomialExpansion.from_json(text) == exp
    with pytest.raises(DomainError):
        MonomialExpansion(3, {(2,): 1})


def test_permutation_character_examples():
    pf2 = parking_function_rep(2)
    assert permutation_character(pf2, (1, 1)) == 3
    assert permutation_character(pf2, (2,)) == 1
    rep = parking_function_rep(4)
    assert permutation_character(rep, (1, 1, 1, 1)) == len(rep.elements)


@pytest.mark.parametrize("n", range(1, 6))
def test_permutation_character_matches_fixed_counts(n):
    rep = parking_function_rep(n)
    for mu in partitions(n):
        assert permutation_character(rep, mu) == fixed_parking_functions(permutation_of_type(mu), n)


def test_class_sizes():
    assert class_sizes(4) == {(1, 1, 1, 1): 1, (2, 1, 1): 6, (2, 2): 3, (3, 1): 8, (4,): 6}
    assert cycle_type((2, 3, 1, 5, 4)) == (3, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_character_table_orthonormal(n):
    table = character_table(n)
    assert len(table) == len(partitions(n))
    for lam, chi in table.items():
        for mu, psi in table.items():
            assert inner_product(chi, psi, n) == (1 if lam == mu else 0)
    # degrees squared sum to n!
    assert sum(chi[(1,) * n] ** 2 for chi in table.values()) == factorial(n)


def test_character_table_s3():
    table = character_table(3)
    assert table[(3,)] == {(3,): 1, (2, 1): 1, (1, 1, 1): 1}
    assert table[(2, 1)] == {(3,): -1, (2, 1): 0, (1, 1, 1): 2}
    assert table[(1, 1, 1)] == {(3,): 1, (2, 1): -1, (1, 1, 1): 1}


@pytest.mark.parametrize("n", range(1, 5))
def test_pf_character_decomposes_nonnegatively(n):
    rep = parking_function_rep(n)
    chi = {mu: permutation_character(rep, mu) for mu in partitions(n)}
    mults = decompose(chi, n)
    assert all(v.denominator == 1 and v >= 0 for v in mults.values())
    table = character_table(n)
    rebuilt = {mu: sum(mults[lam] * table[lam][mu] for lam in table) for mu in chi}
    assert rebuilt == chi


@pytest.mark.parametrize("n", range(1, 5))
def test_orbit_counts_by_frobenius_reciprocity(n):
    # <fixed-point character, tabloid character of shape mu> = #orbits of S_mu
    rep = parking_function_rep(n)
    chi = {mu: permutation_character(rep, mu) for mu in partitions(n)}
    exp = frobenius_monomial_expansion(rep)
    for shape in partitions(n):
        content = [lab for lab, part in enumerate(shape) for _ in range(part)]
        tabloids = set(permutations(content))
        ind = {}
        for mu in partitions(n):
            pi = permutation_of_type(mu)
            ind[mu] = sum(1 for w in tabloids if all(w[pi[j] - 1] == w[j] for j in range(n)))
        assert inner_product(chi, ind, n) == exp[shape]


def test_generic_set_representation():
    # S_3 acting on the 3 points
    rep = SetRepresentation(3, (1, 2, 3), lambda pi, x: pi[x - 1])
    assert frobenius_monomial_expansion(rep).coeffs == {(3,): 1, (2, 1): 2, (1, 1, 1): 3}
    assert permutation_character(rep, (2, 1)) == 1
