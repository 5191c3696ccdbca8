from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpalg import _kernels as K
from qpalg.permgrp import (CycleSyntaxError, OrderLimitExceeded, Perm, alternating, characters, cyclic, dihedral,
                           find_isomorphism, generated_subgroup, group_closure, parse_cycles, parse_group,
                           point_stabilizer, small_generating_set, subgroups, symmetric)
from qpalg.matchedpair import stable_subgroups
from conftest import pair


def brute_force_subgroups(G):
    """Every subset containing 1 and closed under products; feasible for |G| <= 8."""
    els = list(G.elements)
    rest = els[1:]
    found = set()
    for r in range(len(rest) + 1):
        for sub in combinations(rest, r):
            S = {els[0], *sub}
            if all(a * b in S for a in S for b in S):
                found.add(frozenset(S))
    return found


def test_composition_is_right_to_left():
    a = parse_cycles("(12)", 3)
    b = parse_cycles("(23)", 3)
    # (12)(23) sends 3 -> 2 -> 1; points are 1-based
    assert (a * b)(3) == 1
    assert (a * b)(2) == 3
    assert str(a * b) == "(123)"


def test_cycle_parser_errors():
    for bad in ("(12", "(1 1)", "(14)", "12"):
        with pytest.raises(CycleSyntaxError):
            parse_cycles(bad, 3)
    assert parse_cycles("()", 4).is_identity()
    assert parse_cycles("(1 2)(3 4)", 4) == parse_cycles("(12)(34)", 4)


def test_s3_closure_order_six():
    assert len(parse_group(3, ["(12)", "(123)"])) == 6


def test_cyclic_closure():
    G = parse_group(4, ["(1234)"])
    assert len(G) == 4 and G.is_abelian()


def test_s5_factorization_orders():
    S5 = symmetric(5)
    C5 = parse_group(5, ["(12345)"])
    F = point_stabilizer(S5, 5)
    assert (len(C5), len(F)) == (5, 24)
    assert set(C5.elements) & set(F.elements) == {Perm.identity(5)}


def test_order_cap():
    with pytest.raises(OrderLimitExceeded):
        group_closure(6, [parse_cycles("(123456)", 6), parse_cycles("(12)", 6)], cap=100)


def test_elements_sorted_identity_first():
    G = symmetric(4)
    assert G.elements[0].is_identity()
    assert list(G.elements) == sorted(G.elements)


@pytest.mark.parametrize("G", [symmetric(3), cyclic(4), dihedral(4), parse_group(4, ["(12)", "(34)"])],
                         ids=["S3", "Z4", "D4", "V4"])
def test_subgroups_match_brute_force(G):
    got = {frozenset(H.elements) for H in subgroups(G)}
    assert got == brute_force_subgroups(G)


def test_subgroup_counts():
    assert len(subgroups(symmetric(3))) == 6
    assert len(subgroups(cyclic(4))) == 3
    assert len(subgroups(symmetric(4))) == 30


def test_abelian_subgroups_of_s4_contain_1342():
    target = set(parse_group(4, ["(1342)"]).elements)
    assert any(set(H.elements) == target for H in subgroups(symmetric(4), "abelian"))


def test_cyclic_filter():
    subs = subgroups(symmetric(4), "cyclic")
    assert all(len(small_generating_set(H, np.ones(len(H), dtype=bool))) <= 1 for H in subs)
    assert len(subs) == 17


def test_generated_subgroup():
    S3 = symmetric(3)
    parts = [parse_group(3, ["(12)"]), parse_group(3, ["(123)"])]
    assert len(generated_subgroup(S3, parts)) == 6
    assert len(generated_subgroup(S3, [])) == 1


def test_join_of_stable_abelian_in_s5_pair():
    mp = pair("s5_c5")
    parts = stable_subgroups(mp, "abelian")
    J = generated_subgroup(mp.F, parts)
    assert len(J) <= 4 and len(J) < len(mp.F)
    assert set(J.elements) <= set(parse_group(5, ["(1342)"]).elements)


def test_characters_of_klein_and_cyclic():
    e, chars = characters(parse_group(4, ["(12)", "(34)"]))
    assert e == 2 and len(chars) == 4
    e, chars = characters(symmetric(3))
    assert e == 6 and len(chars) == 2


def test_find_isomorphism_dihedral():
    D4 = dihedral(4)
    other = parse_group(4, ["(1234)", "(13)"])
    assert find_isomorphism(D4.table, 0, other.table, 0) is not None
    Q = cyclic(8)
    assert find_isomorphism(D4.table, 0, Q.table, 0) is None


def test_alternating_order():
    assert len(alternating(5)) == 60


@settings(max_examples=30)
@given(st.integers(2, 6), st.data())
def test_cayley_table_backends_agree(d, data):
    imgs = [data.draw(st.permutations(range(d))) for _ in range(2)]
    G = group_closure(d, [Perm(i) for i in imgs])
    perms = np.array([g.img for g in G.elements], dtype=np.int64)
    keys = K.perm_keys(perms)
    order = np.argsort(keys, kind="stable").astype(np.int64)
    a = K._cayley_table_nb(perms, keys[order], order, d)
    b = K._cayley_table_np(perms, keys[order], order, d)
    assert np.array_equal(a, b)
    # oracle: direct composition
    for i, g in enumerate(G.elements):
        for j, h in enumerate(G.elements):
            assert G.elements[a[i, j]] == g * h


@settings(max_examples=30)
@given(st.data())
def test_closure_backends_agree(data):
    G = symmetric(4)
    mask = np.array(data.draw(st.lists(st.booleans(), min_size=24, max_size=24)), dtype=np.bool_)
    mask[0] = True
    a = K._closure_nb(G.table, mask.copy())
    b = K._closure_np(G.table, mask.copy())
    assert np.array_equal(a, b)
    ref = group_closure(4, [g for g, m in zip(G.elements, mask) if m])
    assert set(G.elements[i] for i in np.nonzero(a)[0]) == set(ref.elements)
