import json

import pytest

from qpalg.builders import build_bicrossed
from qpalg.coideal import PreconditionViolated
from qpalg.magic import cert_from_json
from qpalg.matchedpair import derive_matched_pair
from qpalg.permgrp import parse_group
from qpalg.qpacert import (NOT_QPA_REFUTED, QPA_CERTIFIED, UNDECIDED, CriterionNotMet, StructureMismatch,
                           bound_from_provenance, certify_central, certify_split_abelian, envelope,
                           full_pipeline, refute_c4_s3, refute_prime, replay)
from conftest import S3, bicrossed, double, dual_of, fun, grp, verdict


def _small(G_gens, F_gens, Gamma_gens, degree):
    G = parse_group(degree, G_gens)
    mp = derive_matched_pair(G, parse_group(degree, F_gens), parse_group(degree, Gamma_gens))
    return build_bicrossed(mp)


def _check_cert(v, dim):
    assert v.status == QPA_CERTIFIED and v.dim == dim
    cert = v.certificate
    assert cert.is_full_certificate and cert.generated_dim == dim
    assert v.degree_bound == bound_from_provenance(cert.provenance) == cert.degree


# -- positive certificates ------------------------------------------------


def test_central_on_dual_double_s3(double_s3):
    _, Dstar = double_s3
    v = certify_central(Dstar)
    _check_cert(v, 36)
    # 6 from k^Gamma, then |Gamma| |x| for a transposition and a 3-cycle
    assert v.certificate.degree == 36 <= 216
    assert "216" in v.derivation


def test_central_on_kac_paljutkin(kac_paljutkin):
    v = certify_central(kac_paljutkin)
    _check_cert(v, 8)
    assert v.certificate.degree == 10 <= 2 * 4 ** 2


def test_central_needs_trivial_right_action(c4s3):
    with pytest.raises(PreconditionViolated):
        certify_central(c4s3)


def test_split_abelian_on_dual_of_c4s3():
    v = verdict("certify_split_abelian", "s4_c4", True)
    _check_cert(v, 24)
    # Cayley block of k^S3 and the cyclic C4 block
    assert v.certificate.degree == 6 + 4


@pytest.mark.slow
def test_split_abelian_on_dual_of_c5s4():
    v = verdict("certify_split_abelian", "s5_c5", True)
    _check_cert(v, 120)
    assert v.certificate.degree == 24 + 5


def test_split_abelian_fails_on_c4s3(c4s3):
    with pytest.raises(CriterionNotMet, match=r"\(13\)"):
        certify_split_abelian(c4s3)


def test_split_abelian_needs_split_extension(kac_paljutkin):
    with pytest.raises(PreconditionViolated):
        certify_split_abelian(kac_paljutkin)


def test_s3_as_c3_s2_is_certified_but_not_refuted():
    H = _small(["(123)", "(12)"], ["(12)"], ["(123)"], 3)
    assert refute_prime(H).status == UNDECIDED
    v = certify_split_abelian(H)
    _check_cert(v, 6)
    assert full_pipeline(H).status == QPA_CERTIFIED


# -- refutations ------------------------------------------------------------


@pytest.mark.parametrize("name,dim", [("s5_c5", 120), ("a5_c5", 60)])
def test_refute_prime(name, dim):
    v = verdict("refute_prime", name)
    assert v.status == NOT_QPA_REFUTED and v.dim == dim
    assert all(replay(bicrossed(name), v.refutation))


def test_refute_prime_names_the_cyclic_join():
    v = verdict("refute_prime", "s5_c5")
    claims = [e["claim"] for e in v.refutation]
    assert any("contained in" in c and "<(1342)>" in c for c in claims)
    join = next(e["result"] for e in v.refutation if e["kind"] == "join_of_stable_abelian")
    assert join["order"] == 4 and "(1342)" in join["cyclic_generators"]


def test_refute_prime_needs_prime_gamma(c4s3):
    with pytest.raises(PreconditionViolated):
        refute_prime(c4s3)


def test_replay_detects_a_forged_result():
    v = verdict("refute_prime", "s5_c5")
    log = json.loads(json.dumps(v.refutation))
    log[-1]["result"] = not log[-1]["result"]
    assert replay(bicrossed("s5_c5"), log)[-1] is False


def test_refute_c4_s3(c4s3):
    v = refute_c4_s3(c4s3)
    assert v.status == NOT_QPA_REFUTED and v.dim == 24
    assert all(replay(c4s3, v.refutation))
    gl = next(e["result"] for e in v.refutation if e["kind"] == "grouplikes")
    assert gl == {"count": 8, "isomorphic_to": "D4"}
    assert v.refutation[-1]["kind"] == "conclusion"


def test_refute_c4_s3_rejects_other_structures():
    D4 = _small(["(1234)", "(13)"], ["(13)"], ["(1234)"], 4)
    with pytest.raises(StructureMismatch):
        refute_c4_s3(D4)
    with pytest.raises(StructureMismatch):
        refute_c4_s3(bicrossed("s5_c5"))


# -- envelopes --------------------------------------------------------------


def test_envelope_c5s4():
    env = envelope(bicrossed("s5_c5")).envelope
    assert env.dim == 20
    assert env.facts["cocommutative"] and env.facts["hopf_subalgebra"]
    assert env.facts["grouplikes_in_envelope"] == 20
    assert env.facts["group"] == "F5 x| F5^*"


def test_envelope_c4s3_is_grouplike_span(c4s3):
    v = envelope(c4s3)
    assert v.envelope.dim == 8 and v.envelope.facts["hopf_subalgebra"]
    assert v.envelope.facts["isomorphic_to"] == "D4"


def test_envelope_c5a4_is_proper():
    v = envelope(bicrossed("a5_c5"))
    assert v.status == NOT_QPA_REFUTED
    assert v.envelope.dim == 10 < 60


# -- dispatcher and serialization -------------------------------------------


def test_pipeline_function_algebra():
    v = full_pipeline(fun(*S3))
    assert v.method == "commutative" and v.certificate.degree == 6


def test_pipeline_group_algebra():
    v = full_pipeline(grp(*S3))
    assert v.method == "cocommutative" and v.certificate.degree == 5


def test_pipeline_double():
    D, _ = double(*S3)
    v = full_pipeline(D)
    _check_cert(v, 36)
    assert v.certificate.degree == 11 <= 42


def test_pipeline_on_c4s3_refutes(c4s3):
    v = full_pipeline(c4s3)
    assert v.status == NOT_QPA_REFUTED and v.method == "refute_c4_s3"
    assert any("do not generate" in n for n in v.notes)


def test_verdict_json_reverifies():
    v = verdict("certify_split_abelian", "s4_c4", True)
    doc = json.loads(json.dumps(v.to_json()))
    assert doc["status"] == QPA_CERTIFIED and doc["degree"] == 10
    assert doc["certificate"]["degree_bound"]["value"] == 10
    back = cert_from_json(doc["certificate"], parent=dual_of("s4_c4"))
    assert back.is_full_certificate and back.entries == v.certificate.entries
