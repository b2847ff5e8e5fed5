"""Permutation arithmetic, stabilizer chains, and the intersection set."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indres.catalog import build, perm_from_cycles
from indres.groupcore import (
    BudgetExceeded,
    PermGroup,
    Permutation,
    conjugacy_classes,
    centralizer,
    group_from_generators,
    intersection_set_maxima,
    normalizer,
    prime_factors,
    product_group,
    split_product_images,
    sylow_subgroup,
    v_p,
)

perms6 = st.permutations(range(6)).map(Permutation)


@given(perms6, perms6, perms6)
def test_permutation_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    e = Permutation.identity(6)
    assert a * e == a and e * a == a
    assert a * a.inverse() == e


@given(perms6)
def test_order_matches_iteration(a):
    n = a.order()
    e = Permutation.identity(6)
    assert a**n == e
    assert all(a**k != e for k in range(1, n))


@given(perms6, perms6)
def test_conjugate_is_homomorphism_in_x(g, x):
    assert g.conjugate(x) == g * x * g.inverse()


@given(perms6, st.integers(min_value=-6, max_value=6))
def test_power_agrees_with_repeated_product(a, k):
    e = Permutation.identity(6)
    expected = e
    base = a if k >= 0 else a.inverse()
    for _ in range(abs(k)):
        expected = expected * base
    assert a**k == expected


def test_cycle_notation_round_trip():
    g = perm_from_cycles([(1, 2, 3), (4, 5)], 6)
    assert g.images == (1, 2, 0, 4, 3, 5)
    assert repr(g) == "(1 2 3)(4 5)"
    assert g.order() == 6


@pytest.mark.parametrize(
    "name,order",
    [
        ("S3", 6),
        ("S4", 24),
        ("A5", 60),
        ("Q8", 8),
        ("D8", 8),
        ("SL2_3", 24),
        ("M11", 7920),
        ("C2xA4", 24),
    ],
)
def test_catalog_orders(name, order):
    assert build(name).order() == order


@given(st.lists(perms6, min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_chain_order_matches_brute_closure(gens):
    G = PermGroup(6, gens)
    closure = {Permutation.identity(6)}
    frontier = list(closure)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in closure:
                    closure.add(y)
                    new.append(y)
        frontier = new
    assert G.order() == len(closure)
    assert all(x in G for x in closure)


def test_membership_and_element_listing():
    S4 = build("S4")
    assert perm_from_cycles([(1, 2, 3, 4)], 4) in S4
    assert len(S4.element_keys()) == 24
    A4 = S4.subgroup(
        [perm_from_cycles([(1, 2, 3)], 4), perm_from_cycles([(1, 2), (3, 4)], 4)]
    )
    assert A4.order() == 12
    assert A4.is_subgroup_of(S4)
    assert perm_from_cycles([(1, 2)], 4) not in A4


def test_conjugacy_classes_s4():
    # classes come out sorted by (element order, size)
    data = conjugacy_classes(build("S4"))
    assert [(c.rep_order, c.size) for c in data] == [
        (1, 1),
        (2, 3),
        (2, 6),
        (3, 8),
        (4, 6),
    ]
    assert sum(c.size for c in data) == 24


def test_class_of_key_consistency():
    G = build("A5")
    data = conjugacy_classes(G)
    for i, c in enumerate(data):
        assert G.class_of(c.representative) == i


def test_centralizer_orbit_stabilizer():
    G = build("S5")
    for c in conjugacy_classes(G):
        C = centralizer(G, c.representative)
        assert C.order() * c.size == G.order()


def test_sylow_and_normalizer():
    S4 = build("S4")
    P2 = sylow_subgroup(S4, 2)
    assert P2.order() == 8
    assert normalizer(S4, P2).order() == 8
    P3 = sylow_subgroup(S4, 3)
    assert P3.order() == 3
    assert normalizer(S4, P3).order() == 6
    S6 = build("S6")
    assert sylow_subgroup(S6, 2).order() == 16
    assert sylow_subgroup(S6, 3).order() == 9


def test_vp_and_prime_factors():
    assert v_p(48, 2) == 4
    assert v_p(48, 3) == 1
    assert v_p(1, 7) == 0
    assert prime_factors(360) == [2, 3, 5]


def test_intersection_set_maxima_s4():
    """With H = N_G(P) of index 3 the overlap set is generated by one
    conjugate intersection of order 4."""
    G = build("S4")
    P = sylow_subgroup(G, 2)
    H = normalizer(G, P)
    sm = intersection_set_maxima(G, P, H)
    assert sorted(S.order() for S in sm.maxima) == [4]
    for S in sm.maxima:
        assert S.is_subgroup_of(P)


def test_intersection_set_maxima_s5():
    G = build("S5")
    P = sylow_subgroup(G, 2)
    H = normalizer(G, P)
    assert H.order() == 8
    sm = intersection_set_maxima(G, P, H)
    assert sorted(S.order() for S in sm.maxima) == [2, 2, 4]


def test_intersection_set_empty_when_h_is_g():
    G = build("S4")
    P = sylow_subgroup(G, 2)
    sm = intersection_set_maxima(G, P, G)
    assert list(sm.maxima) == []


def test_key_sets_are_downward_closed_markers():
    # every maximal overlap really arises as P meet some outside conjugate
    G = build("A5")
    P = sylow_subgroup(G, 2)
    H = normalizer(G, P)
    sm = intersection_set_maxima(G, P, H)
    pkeys = set(P.element_keys())
    for ks in sm.key_sets():
        assert set(ks) <= pkeys


def test_product_group_and_splitting():
    A = build("S3")
    B = build("S3")
    AB = product_group(A, B)
    assert AB.order() == 36
    assert AB.degree == A.degree + B.degree
    for g in AB.generators:
        left, right = split_product_images(g.images, A.degree)
        assert A.contains_images(left)
        assert B.contains_images(right)


def test_group_from_generators_one_based():
    data = {"degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]}
    G = group_from_generators(data)
    assert G.order() == 6


def test_group_from_generators_rejects_garbage():
    with pytest.raises(ValueError):
        group_from_generators({"degree": 3, "generators": [[1, 1, 2]]})


def test_conjugacy_budget_enforced():
    with pytest.raises(BudgetExceeded):
        conjugacy_classes(build("M11"), budget_order=100)
