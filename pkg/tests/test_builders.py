import pytest

from qpalg.builders import (Bicharacter, IncompatibleCocycles, NotAbelian, NotBicharacter, build_bicrossed,
                            build_twisted_group_algebra, central_image, zn_zn, zn_zn_bicharacter)
from qpalg.exactnum import ONE, Cyclotomic
from qpalg.hopf import NoAntipode, verify_hopf
from qpalg.io import bicharacter_of, cocycles_of, load_spec, matched_pair_of, parse_spec_text, resolve
from qpalg.matchedpair import derive_matched_pair
from qpalg.permgrp import direct_product, parse_group, symmetric
from conftest import S3, double
import oracles

MINUS_ONE = Cyclotomic.rational(-1)


def test_c4s3_is_24_dimensional_hopf(c4s3):
    assert c4s3.dim == 24 and verify_hopf(c4s3).is_hopf
    rep = c4s3.structure.exact_sequence
    assert rep["dims"] == [4, 24, 6] and rep["image_equals_coinvariants"]


def test_trivial_actions_give_tensor_product():
    Gm = parse_group(3, ["(123)"])
    F = parse_group(2, ["(12)"])
    P, Fp, Gp = direct_product(F, Gm)
    mp = derive_matched_pair(P, Fp, Gp)
    H = build_bicrossed(mp)
    st = H.structure
    # oracle: (e_g # x)(e_h # y) = delta_gh e_g # xy and Delta(e_g # x) = sum_st e_s # x (x) e_t # x
    for g in range(3):
        for x in range(2):
            for h in range(3):
                for y in range(2):
                    want = {st.pos(g, int(mp.F.table[x, y])): ONE} if g == h else {}
                    assert H.multiply({st.pos(g, x): ONE}, {st.pos(h, y): ONE}) == want
            want = {(st.pos(s, x), st.pos(t, x)): ONE for s in range(3) for t in range(3)
                    if int(mp.Gamma.table[s, t]) == g}
            assert H.delta({st.pos(g, x): ONE}) == want
    assert verify_hopf(H).commutative is mp.F.is_abelian()


def test_double_of_abelian_group_is_commutative_and_cocommutative():
    D, _ = double("(123)", 3)
    rep = verify_hopf(D)
    assert rep.is_hopf and rep.commutative and rep.cocommutative and D.dim == 9


def test_double_of_s3():
    D, Ds = double(*S3)
    assert D.dim == Ds.dim == 36
    for H in (D, Ds):
        assert verify_hopf(H).is_hopf
    assert central_image(Ds)
    assert Ds.structure.exact_sequence["dims"] == [6, 36, 6]


def test_kac_paljutkin_fixture(kac_paljutkin):
    H = kac_paljutkin
    rep = verify_hopf(H)
    assert H.dim == 8 and rep.is_hopf and rep.s_squared_identity
    assert not rep.commutative and not rep.cocommutative
    ref = oracles.hopf_flags(H)
    assert all(ref[k] for k in ("associative", "coassociative", "bialgebra", "antipode", "s_squared_identity"))
    assert H.structure.mp.right_action_trivial()


def test_corrupted_cocycle_table_is_rejected():
    text = resolve("kac_paljutkin").read_text()
    # flip one sigma value so the cocycle condition fails
    bad = text.replace('["(12)(34)", "(13)", "(13)", "1*z"]', '["(12)(34)", "(13)", "(13)", "-1"]', 1)
    assert bad != text
    spec = parse_spec_text(bad, "bad.toml")
    mp = matched_pair_of(spec)
    with pytest.raises((IncompatibleCocycles, NoAntipode)):
        build_bicrossed(mp, cocycles_of(spec, mp))


def test_clifford_twisted_group_algebra():
    bc = bicharacter_of(load_spec("clifford"))
    A = build_twisted_group_algebra(bc.group, bc)
    t1, t2 = ({A.labels.index(n): ONE} for n in ("t1", "t2"))
    one = {A.labels.index("1"): ONE}
    assert A.multiply(t1, t2) == {k: -v for k, v in A.multiply(t2, t1).items()}
    assert A.multiply(t1, t1) == one and A.multiply(t2, t2) == one
    assert A.associative and A.center_dim == 1


def test_klein_four_bicharacter_anticommutes():
    bc = bicharacter_of(load_spec("klein_four"))
    A = build_twisted_group_algebra(bc.group, bc)
    assert A.dim == 4 and A.center_dim == 1


def test_trivial_bicharacter_gives_group_algebra():
    G = parse_group(4, ["(12)", "(34)"])
    A = build_twisted_group_algebra(G, Bicharacter.trivial(G))
    assert A.commutative and A.center_dim == 4


def test_zn_zn_twisted_group_algebra_is_central_simple():
    bc = zn_zn_bicharacter(3)
    A = build_twisted_group_algebra(bc.group, bc)
    assert A.dim == 9 and A.center_dim == 1 and A.associative
    assert bicharacter_of(load_spec("zn_zn")).table == bc.table


def test_bicharacter_value_checks():
    G = parse_group(4, ["(12)", "(34)"])
    with pytest.raises(NotBicharacter):
        Bicharacter.from_generator_values(G, G.generators, [[ONE, Cyclotomic.zeta(4)], [ONE, ONE]])
    with pytest.raises(NotAbelian):
        Bicharacter.from_generator_values(symmetric(3), symmetric(3).generators, [[ONE, ONE], [ONE, ONE]])


def test_zn_zn_group_shape():
    P, (a, b) = zn_zn(4)
    assert len(P) == 16 and a.order() == b.order() == 4 and a * b == b * a
    bc = zn_zn_bicharacter(4)
    assert bc(P.index[b], P.index[a]) == Cyclotomic.zeta(4)
    assert bc(P.index[a], P.index[b]) == ONE
    assert bc(P.index[b], P.index[b * b]) == ONE
    assert bc(P.index[b * b], P.index[a]) == MINUS_ONE
