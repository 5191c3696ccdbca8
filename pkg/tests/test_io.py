import pytest

from qpalg.builders import NotBicharacter
from qpalg.exactnum import Cyclotomic
from qpalg.io import (SpecError, bicharacter_of, cocycles_of, fixture_path, group_of, load_spec,
                      matched_pair_of, parse_spec_text, resolve)
from qpalg.permgrp import OrderLimitExceeded

FACTORIZATION = """\
kind = "factorization"
degree = 4
group = ["(1234)", "(12)"]
F = ["(12)", "(123)"]
Gamma = ["(1234)"]
"""


def test_shipped_fixtures_load():
    for name in ("s4_c4", "s5_c5", "a5_c5", "kac_paljutkin", "klein_four", "zn_zn", "clifford", "trivial"):
        spec = load_spec(name)
        assert spec.kind


def test_resolve_prefers_local_files(tmp_path, monkeypatch):
    (tmp_path / "s4_c4.toml").write_text(FACTORIZATION.replace("degree = 4", "degree = 4\nname = \"local\""))
    monkeypatch.chdir(tmp_path)
    assert load_spec("s4_c4.toml").data["name"] == "local"
    monkeypatch.chdir("/")
    assert resolve("trivial.json") == fixture_path("trivial.json")


def test_missing_file():
    with pytest.raises(SpecError, match="file not found"):
        resolve("no_such_input.toml")


def test_toml_syntax_error_has_line_and_column():
    with pytest.raises(SpecError) as exc:
        parse_spec_text('kind = "group"\ndegree = 3\ngens = ["(12)"\n', "bad.toml")
    assert exc.value.path == "bad.toml" and exc.value.line is not None and exc.value.col is not None
    assert str(exc.value).startswith(f"bad.toml:{exc.value.line}:{exc.value.col}:")


def test_unknown_kind_points_at_key():
    with pytest.raises(SpecError) as exc:
        parse_spec_text('# comment\nkind = "sheaf"\n', "k.toml")
    assert exc.value.line == 2 and exc.value.col == 1


def test_missing_kind():
    with pytest.raises(SpecError, match="missing key 'kind'"):
        parse_spec_text("degree = 3\n")


def test_bad_cycle_notation_located():
    text = FACTORIZATION.replace('F = ["(12)", "(123)"]', 'F = ["(12)", "(15)"]')
    with pytest.raises(SpecError) as exc:
        matched_pair_of(parse_spec_text(text, "f.toml"))
    assert exc.value.line == 4


def test_degree_range():
    with pytest.raises(SpecError, match="1..15"):
        matched_pair_of(parse_spec_text(FACTORIZATION.replace("degree = 4", "degree = 16")))


def test_wrong_type():
    with pytest.raises(SpecError, match="expected int"):
        matched_pair_of(parse_spec_text(FACTORIZATION.replace("degree = 4", 'degree = "4"')))


def test_order_cap():
    spec = load_spec("s5_c5")
    with pytest.raises(OrderLimitExceeded):
        matched_pair_of(spec, cap=60)


def test_not_a_factorization():
    text = FACTORIZATION.replace('Gamma = ["(1234)"]', 'Gamma = ["(12)(34)"]')
    with pytest.raises(SpecError):
        matched_pair_of(parse_spec_text(text))


def test_kac_paljutkin_cocycles():
    spec = load_spec("kac_paljutkin")
    mp = matched_pair_of(spec)
    cc = cocycles_of(spec, mp)
    assert len(cc.sigma) == 6 and not cc.tau
    vals = sorted(str(v) for v in cc.sigma.values())
    assert vals.count(str(Cyclotomic.rational(-1))) == 2


def test_cocycle_row_shape_checked():
    text = load_spec("kac_paljutkin").text.replace('["(12)(34)", "(13)(24)", "(13)", "-1"]',
                                                     '["(12)(34)", "(13)(24)", "-1"]')
    spec = parse_spec_text(text, "kp.toml")
    with pytest.raises(SpecError, match="rows are"):
        cocycles_of(spec, matched_pair_of(spec))


def test_bad_scalar():
    text = load_spec("clifford").text.replace('"-1"', '"-1*w"')
    with pytest.raises(SpecError, match="bad scalar"):
        bicharacter_of(parse_spec_text(text))


def test_bicharacter_order_mismatch():
    text = load_spec("clifford").text.replace('"-1"', '"1*z"').replace("conductor = 2", "conductor = 3")
    with pytest.raises(NotBicharacter):
        bicharacter_of(parse_spec_text(text))


def test_klein_four_subgroup():
    spec = load_spec("klein_four")
    bc = bicharacter_of(spec)
    assert len(bc.group) == 4 and len(group_of(spec)) == 24
    assert not bc.is_trivial()
