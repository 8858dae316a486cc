import json

import pytest

from adhm_lab.cli import main
from adhm_lab.corpus import (list_example_names, load_example, roundtrip_ok)
from adhm_lab.serialize import render_json


@pytest.fixture
def p2_files(tmp_path):
    record = load_example("p2_ideal_point")
    datum = tmp_path / "datum.json"
    variety = tmp_path / "variety.json"
    datum.write_text(render_json(record.datum.to_json()))
    variety.write_text(render_json(record.variety.to_json()))
    return str(datum), str(variety)


def test_check_solution(p2_files, capsys):
    datum, variety = p2_files
    assert main(["check", "--data", datum, "--variety", variety]) == 0
    assert capsys.readouterr().out.strip() == "solution: true"


def test_check_defaults_to_ambient(p2_files, capsys):
    datum, _ = p2_files
    assert main(["check", "--data", datum]) == 0
    assert "solution: true" in capsys.readouterr().out


def test_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert main(["check", "--data", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "malformed JSON" in err and "line 1" in err


def test_missing_file_exits_2(capsys):
    assert main(["check", "--data", "/nonexistent/x.json"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_stability_report_json(p2_files, capsys):
    datum, variety = p2_files
    assert main(["stability", "--data", datum, "--variety", variety,
                 "--samples", "5", "--seed", "1"]) == 0
    captured = capsys.readouterr()
    assert "seed: 1" in captured.err
    obj = json.loads(captured.out)
    assert obj["verdicts"]["stable"] == "true"
    assert obj["verdicts"]["globally_weak_stable"] == "certified_true"


def test_monad_emit_and_degeneration(p2_files, capsys):
    datum, variety = p2_files
    assert main(["monad", "--data", datum, "--variety", variety,
                 "--emit", "--degeneration", "--line"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["complex_ok"] is True
    assert obj["maps"]["alpha"] == [["x"], ["y"], ["0"]]
    assert obj["maps"]["beta"] == [["-y", "x", "z0"]]
    assert obj["degeneration"]["codim"] == 2
    assert obj["line_restriction"]["canonical"] is True


def test_cohomology_table_and_markdown(p2_files, capsys):
    datum, _ = p2_files
    assert main(["cohomology", "--data", datum, "--kmin", "-1",
                 "--kmax", "1"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["table"]["dims"]["-1"] == [0, 1, 0]
    assert obj["rank_and_charge"] == [1, 1]
    assert main(["cohomology", "--data", datum, "--markdown"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("| q \\ k |")


def test_cohomology_classify_certified(p2_files, capsys):
    datum, variety = p2_files
    assert main(["cohomology", "--data", datum, "--variety", variety,
                 "--classify", "--strict"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["classification"]["verdict"] == "instanton sheaf"


def test_strict_inconclusive_exits_3(tmp_path, capsys):
    record = load_example("scroll")
    datum = tmp_path / "d.json"
    variety = tmp_path / "v.json"
    datum.write_text(render_json(record.datum.to_json()))
    variety.write_text(render_json(record.variety.to_json()))
    code = main(["stability", "--data", str(datum), "--variety", str(variety),
                 "--strict", "--samples", "6"])
    assert code == 3


def test_equiv_found(p2_files, capsys):
    datum, _ = p2_files
    assert main(["equiv", "--a", datum, "--b", datum]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["status"] == "found"


def test_moduli_dim_output(capsys):
    assert main(["moduli-dim", "--r", "2", "--d", "1", "--trials", "5"]) == 0
    out = capsys.readouterr().out
    assert "dim M = 8, Jacobian full rank 5/5" in out


def test_random_prints_seed_and_valid_datum(capsys):
    assert main(["random", "--mode", "pn_solution_c1", "--c", "1", "--r", "3",
                 "--d", "1", "--seed", "7"]) == 0
    captured = capsys.readouterr()
    assert "seed: 7" in captured.err
    obj = json.loads(captured.out)
    from adhm_lab.adhm import AdhmDatum
    from adhm_lab.fields import QQ
    from adhm_lab.variety import VarietySpec
    datum = AdhmDatum.from_json(obj, QQ)
    assert datum.is_adhm_solution(VarietySpec.projective_space(3, QQ))


def test_examples_listing_and_verify(capsys):
    assert main(["examples", "--list"]) == 0
    names = capsys.readouterr().out.split()
    assert set(names) == set(list_example_names())
    assert main(["examples", "--name", "quadric", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "roundtrip-byte-identical" in out
    assert main(["examples", "--name", "missing"]) == 2


def test_examples_emit_matches_file(capsys):
    assert main(["examples", "--name", "scroll"]) == 0
    out = capsys.readouterr().out
    from adhm_lab.corpus import example_text
    assert out == example_text("scroll")


def test_roundtrips_bit_identical():
    for name in list_example_names():
        assert roundtrip_ok(name), name


def test_field_option_prime(p2_files, capsys):
    datum, variety = p2_files
    assert main(["check", "--data", datum, "--variety", variety,
                 "--field", "fp:101"]) == 0
    assert "solution: true" in capsys.readouterr().out
