import json

import pytest

from qpalg.exactnum import ONE, Cyclotomic
from qpalg.magic import (GenerationFailure, RelationFailure, block_compose, cayley_magic, cert_from_json,
                         cert_to_json, double_inclusions, double_magic, fourier_magic, identity_magic,
                         magic_failures, permutation_magic, verify_magic)
from qpalg.permgrp import parse_group
from conftest import S3, double, fun, grp
import oracles


def test_identity_magic_is_magic(k_fun_s3):
    cert = identity_magic(k_fun_s3, 3)
    assert cert.size == 3
    assert oracles.is_magic(k_fun_s3, cert.entries)
    # only the unit is generated
    assert cert.generated_dim == 1 and not cert.is_full_certificate


def test_cayley_degree_equals_group_order(k_fun_s3):
    cert = cayley_magic(k_fun_s3)
    assert cert.degree == 6 == k_fun_s3.dim
    assert cert.is_full_certificate
    assert oracles.is_magic(k_fun_s3, cert.entries)


def test_permutation_magic_on_points(k_fun_s3):
    cert = permutation_magic(k_fun_s3)
    assert cert.degree == 3 and cert.is_full_certificate
    assert oracles.is_magic(k_fun_s3, cert.entries)


def test_cayley_rejects_group_algebra(k_grp_s3):
    with pytest.raises(ValueError):
        cayley_magic(k_grp_s3)


def test_row_sum_violation_is_reported(k_fun_s3):
    u = [[dict(v) for v in row] for row in cayley_magic(k_fun_s3).entries]
    u[0][0], u[0][1] = u[0][1], u[0][0]
    assert magic_failures(k_fun_s3, u)
    assert not oracles.is_magic(k_fun_s3, u)
    u = [[dict(v) for v in row] for row in cayley_magic(k_fun_s3).entries]
    u[0][0] = {}
    with pytest.raises(RelationFailure) as exc:
        verify_magic(k_fun_s3, u)
    assert "row sum" in exc.value.identity


def test_non_square_rejected(k_fun_s3):
    assert magic_failures(k_fun_s3, [[k_fun_s3.unit, {}]]) == ["matrix is not square"]


def test_fourier_of_identity_is_one_by_one(k_grp_s3, s3_group):
    cert = fourier_magic(k_grp_s3, s3_group.identity)
    assert cert.size == 1 and cert.entries == [[k_grp_s3.unit]]


def test_fourier_transposition_and_three_cycle(k_grp_s3, s3_group):
    t = parse_group(3, ["(12)"]).generators[0]
    c = parse_group(3, ["(123)"]).generators[0]
    ct = fourier_magic(k_grp_s3, t)
    assert ct.size == 2
    # diagonal entries (1 +- g)/2
    half = Cyclotomic.rational(1) / 2
    assert ct.entries[0][0] == {0: half, s3_group.index[t]: half}
    assert ct.entries[0][1] == {0: half, s3_group.index[t]: -half}
    cc = fourier_magic(k_grp_s3, c)
    assert cc.size == 3 and cc.generated_dim == 3
    for cert in (ct, cc):
        assert oracles.is_magic(k_grp_s3, cert.entries)


def test_fourier_blocks_give_degree_five(k_grp_s3):
    G = k_grp_s3.structure
    certs = [fourier_magic(k_grp_s3, g) for g in G.generators]
    block = block_compose(certs)
    assert block.degree == sum(c.degree for c in certs) == 5
    assert block.is_full_certificate
    assert oracles.is_magic(k_grp_s3, block.entries)


def test_block_degrees_add(k_fun_s3):
    cert = block_compose([cayley_magic(k_fun_s3), identity_magic(k_fun_s3)])
    assert cert.degree == 7
    assert cert.is_full_certificate
    assert [p["kind"] for p in cert.provenance] == ["cayley", "identity"]


def test_block_compose_needs_shared_parent(k_fun_s3, k_grp_s3):
    with pytest.raises(ValueError):
        block_compose([identity_magic(k_fun_s3), identity_magic(k_grp_s3)])
    with pytest.raises(ValueError):
        block_compose([])


@pytest.mark.parametrize("text,degree,bound", [("(12)", 2, 4), ("", 1, 1), (*S3, 11)])
def test_double_magic(text, degree, bound):
    D, _ = double(text, degree)
    cert = double_magic(D)
    assert cert.is_full_certificate and cert.generated_dim == D.dim
    n = int(round(D.dim ** 0.5))
    assert cert.degree == bound <= n * (n + 1)


def test_double_magic_s3_is_magic_under_oracle(double_s3):
    D, _ = double_s3
    assert oracles.is_magic(D, double_magic(D).entries)


def test_double_inclusions_are_hopf_maps(double_s3):
    D, _ = double_s3
    Hf, Hg, jf, jg = double_inclusions(D)
    assert Hf.dim == Hg.dim == 6
    for f in (jf, jg):
        assert f.is_hopf_map()


def test_double_magic_without_group_blocks_fails(double_s3):
    D, _ = double_s3
    with pytest.raises(GenerationFailure):
        double_magic(D, group_certs=[])


def test_json_round_trip(k_grp_s3):
    G = k_grp_s3.structure
    cert = block_compose([fourier_magic(k_grp_s3, g) for g in G.generators])
    doc = json.loads(json.dumps(cert_to_json(cert, {"value": 5, "derivation": "2 + 3"})))
    assert doc["format"] == "qpalg.magic/1" and doc["full"] and doc["size"] == 5
    back = cert_from_json(doc)
    assert back.entries == cert.entries
    assert back.generated_dim == cert.generated_dim
    assert cert_to_json(back) == cert_to_json(cert)


def test_json_rejects_tampered_entry():
    H = fun(*S3)
    doc = cert_to_json(cayley_magic(H))
    doc["entries"][0][0] = []
    with pytest.raises(RelationFailure):
        cert_from_json(doc)
    with pytest.raises(ValueError):
        cert_from_json({"format": "other"})


def test_cert_without_verification_keeps_stored_fields():
    H = grp(*S3)
    doc = cert_to_json(identity_magic(H, 2), embed_parent=False)
    back = cert_from_json(doc, parent=H, verify=False)
    assert back.generated_dim == 1 and back.entries[0][0] == {0: ONE}
