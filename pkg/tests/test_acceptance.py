"""End-to-end acceptance criteria; each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys

import pytest

from qpalg.builders import build_twisted_group_algebra, exponent_coordinates
from qpalg.exactnum import Cyclotomic
from qpalg.hopf import verify_hopf
from qpalg.io import bicharacter_of, load_spec
from qpalg.magic import block_compose, cayley_magic, fourier_magic, identity_magic, verify_magic
from qpalg.matchedpair import orbits_and_stabilizers, power_labels
from qpalg.qpacert import NOT_QPA_REFUTED, QPA_CERTIFIED, certify_central, certify_double, envelope, replay
from qpalg.twist import CocycleForm, check_suff_twist, doi_twist, suff_twist_violation
from conftest import S3, bicrossed, double, dual_of, fun, grp, pair, verdict
from instances import check_instance, random_instances
from test_twist import SHIPPED, _certs, shipped
import oracles


def criterion_1():
    mp = pair("s5_c5")
    lab = power_labels(mp.Gamma)
    orbits = orbits_and_stabilizers(mp, "right")
    names = sorted(sorted(lab(mp.Gamma.elements[m]) for m in o.members) for o in orbits)
    assert names == [["1"], ["z", "z^2", "z^3", "z^4"]], names
    z = mp.Gamma.generators[0]
    for j in range(1, 5):
        m = mp.Gamma.index[z ** j]
        stab = {x for xi, x in enumerate(mp.F.elements) if mp.tle(m, xi) == m}
        assert stab == {x for x in mp.F.elements if x(5 - j) == 5 - j}
        assert len(stab) == 6 and any(x.order() == 3 for x in stab) and not _abelian(stab)
    return "orbits {1}, {z..z^4}; stabilizers fix 5-j, order 6, nonabelian"


def _abelian(xs) -> bool:
    return all(a * b == b * a for a in xs for b in xs)


def criterion_2():
    mp = pair("s4_c4")
    got = sorted(sorted(mp.fname(x) for x in o.members) for o in orbits_and_stabilizers(mp, "left"))
    want = [["()"], ["(12)", "(123)", "(132)", "(23)"], ["(13)"]]
    assert got == want, got
    return "orbits {1}, {(13)}, {(12),(23),(123),(132)}"


def criterion_3():
    out = []
    for name, dims in (("s4_c4", [4, 24, 6]), ("s5_c5", [5, 120, 24])):
        H = bicrossed(name)
        rep = verify_hopf(H)
        assert rep.is_hopf and rep.s_squared_identity, rep.first_failure()
        seq = H.structure.exact_sequence
        assert all(v for k, v in seq.items() if k != "dims"), seq
        assert seq["dims"] == dims and dims[0] * dims[2] == dims[1]
        out.append(f"{dims[0]}*{dims[2]}={dims[1]}")
    return "all axioms and S^2 = id; sequences " + ", ".join(out)


def criterion_4():
    for name, dim in (("s5_c5", 120), ("a5_c5", 60)):
        v = verdict("refute_prime", name)
        assert v.status == NOT_QPA_REFUTED and v.dim == dim
        assert all(replay(bicrossed(name), v.refutation))
    claims = [e["claim"] for e in verdict("refute_prime", "s5_c5").refutation]
    hit = [c for c in claims if "contained in" in c and "<(1342)>" in c]
    assert hit, claims
    return f"both refuted, logs replay; '{hit[0]}'"


def criterion_5():
    H = bicrossed("s4_c4")
    v = verdict("refute_c4_s3", "s4_c4")
    assert v.status == NOT_QPA_REFUTED and v.dim == 24
    ok = replay(H, v.refutation)
    assert all(ok)
    gl = next(e["result"] for e in v.refutation if e["kind"] == "grouplikes")
    assert gl == {"count": 8, "isomorphic_to": "D4"}, gl
    return f"refuted; {len(ok)} logged assertions replay true; |G(H)| = 8, G(H) = D4"


def criterion_6():
    env = envelope(bicrossed("s5_c5")).envelope
    assert env.dim == 20 and env.facts["cocommutative"]
    assert env.facts["grouplikes_in_envelope"] == 20 and env.facts.get("group") == "F5 x| F5^*"
    env4 = envelope(bicrossed("s4_c4")).envelope
    assert env4.dim == 8 and env4.facts["hopf_subalgebra"] and env4.facts["isomorphic_to"] == "D4"
    return "dim 20 cocommutative, G(H) of order 20; C4.S3 envelope = kG(H) of dim 8"


def criterion_7():
    parts = []
    for name, dim in (("s4_c4", 24), ("s5_c5", 120)):
        v = verdict("certify_split_abelian", name, True)
        assert v.status == QPA_CERTIFIED and v.certificate.generated_dim == dim
        assert verdict("refute_prime" if name == "s5_c5" else "refute_c4_s3", name).status == NOT_QPA_REFUTED
        _reverify(dual_of(name), v.certificate)
        parts.append(f"dual of {name} degree {v.certificate.degree}")
    D, Dstar = double(*S3)
    vc = certify_central(Dstar)
    assert vc.status == QPA_CERTIFIED and vc.certificate.degree <= 216
    vd = certify_double(D)
    assert vd.status == QPA_CERTIFIED and vd.certificate.degree <= 42
    for H, v in ((Dstar, vc), (D, vd)):
        assert v.certificate.generated_dim == 36
        _reverify(H, v.certificate)
    parts += [f"D(S3)* degree {vc.certificate.degree} <= 216", f"D(S3) degree {vd.certificate.degree} <= 42"]
    return "; ".join(parts)


def _reverify(H, cert):
    again = verify_magic(H, cert.entries)
    assert again.is_full_certificate and again.generated_dim == H.dim


def criterion_8():
    Hf, Hg = fun(*S3), grp(*S3)
    cay = cayley_magic(Hf)
    assert cay.degree == 6 == Hf.dim and cay.is_full_certificate
    blocks = [fourier_magic(Hg, g) for g in Hg.structure.generators]
    four = block_compose(blocks)
    assert four.degree == 5 and four.is_full_certificate
    assert four.degree == sum(b.degree for b in blocks)
    mixed = block_compose([cay, identity_magic(Hf, 2)])
    assert mixed.degree == cay.degree + 2
    return "Cayley degree 6; Fourier blocks 2 + 3 = 5, full; block degrees add"


def criterion_9():
    H = fun(*S3)
    T = doi_twist(H, CocycleForm.trivial(H))
    assert (T.mult, T.comult, T.unit, T.counit, T.antipode) == (H.mult, H.comult, H.unit, H.counit, H.antipode)
    _, _, K = shipped("klein_four.toml")
    rep = verify_hopf(K)
    assert K.dim == 24 and rep.is_hopf and not rep.commutative
    passed = 0
    for name in SHIPPED:
        Hs, sigma, Ts = shipped(name)
        for cert in _certs(Hs):
            if suff_twist_violation(cert, sigma) is None:
                out = check_suff_twist(cert, sigma, Ts)
                assert oracles.is_magic(Ts, out.entries)
                passed += 1
    assert passed > 0
    return f"trivial twist is the identity; Klein lift 24-dim noncommutative Hopf; {passed} twisted matrices magic"


def criterion_10():
    bc = bicharacter_of(load_spec("clifford"))
    A = build_twisted_group_algebra(bc.group, bc)
    t1, t2 = ({A.labels.index(n): Cyclotomic.rational(1)} for n in ("t1", "t2"))
    one = {A.labels.index("1"): Cyclotomic.rational(1)}
    assert A.multiply(t1, t2) == {k: -v for k, v in A.multiply(t2, t1).items()}
    assert A.multiply(t1, t1) == one and A.multiply(t2, t2) == one
    bz = bicharacter_of(load_spec("zn_zn"))
    coords = exponent_coordinates(bz.group, bz.gens)
    for a, (i, j) in enumerate(coords):
        for b, (t, l) in enumerate(coords):
            assert bz(a, b) == Cyclotomic.zeta(3, j * t)
    Z = build_twisted_group_algebra(bz.group, bz)
    assert Z.dim == 9 and Z.center_dim == 1
    return "Clifford relations exact; Z3xZ3 values zeta^(jt), dim 9, center dim 1"


def criterion_11():
    bad = []
    orders = set()
    for n, (G, pick) in enumerate(random_instances(200, seed=2024)):
        orders.add(len(G))
        res = check_instance(G, pick)
        if not all(res.values()):
            bad.append((n, len(G), res))
    assert not bad, bad[:3]
    return f"200 instances, group orders {sorted(orders)}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11]


def _run(i: int) -> tuple[bool, str]:
    try:
        return True, CRITERIA[i]()
    except AssertionError as exc:
        return False, f"{type(exc).__name__}: {exc}"[:300]


@pytest.mark.parametrize("i", range(len(CRITERIA)), ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(i, capsys):
    ok, detail = _run(i)
    with capsys.disabled():
        print(f"\ncriterion {i + 1:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    results = [_run(i) for i in range(len(CRITERIA))]
    for i, (ok, detail) in enumerate(results):
        print(f"criterion {i + 1:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    sys.exit(0 if all(ok for ok, _ in results) else 1)
