import json

import pytest

from fqdyn.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_analyze(capsys, tmp_path):
    out_json = tmp_path / "a.json"
    code, cap = run(capsys, "analyze", "--p", 13, "--n", 2, "--a", 3, "--c", 1, "--json", out_json)
    assert code == 0
    assert "census: {1: 3, 2: 5, 6: 4}" in cap.out
    doc = json.loads(out_json.read_text())
    assert doc["census"] == {"1": 3, "2": 5, "6": 4}
    assert doc["zero_profile"]["size"] == 25


def test_predict(capsys, tmp_path):
    out_json = tmp_path / "p.json"
    code, cap = run(capsys, "predict", "--p", 13, "--n", 5, "--a", 3, "--c", 1, "--json", out_json)
    assert code == 0
    assert "census: {1: 1, 4: 3, 12: 12}" in cap.out
    assert "tau0 = 4" in cap.out
    doc = json.loads(out_json.read_text())
    assert doc["provenance"]["census[4]"] == "Theoj"


def test_verify_match_and_files(capsys, tmp_path):
    code, cap = run(capsys, "verify", "--p", 13, "--n", 3, "--a", 3, "--c", 1,
                    "--json", tmp_path / "v.json", "--csv", tmp_path / "v.csv",
                    "--dot", tmp_path / "v.dot")
    assert code == 0
    assert "census_match=True" in cap.out
    assert (tmp_path / "v_census.svg").exists()
    assert (tmp_path / "v.dot").read_text().count("->") == 169


def test_verify_mismatch_exit_codes(capsys, tmp_path):
    empty = tmp_path / "none.txt"
    empty.write_text("# schema_version: 1\n")
    args = ["verify", "--p", 13, "--n", 4, "--a", 2, "--c", 10]
    code, cap = run(capsys, *args, "--known", empty)
    assert code == 1
    assert "census[1] [zero_component+OddCycle]: predicted 3, observed 7" in cap.out
    code, cap = run(capsys, *args)
    assert code == 0
    assert "documented" in cap.out
    code, _ = run(capsys, *args, "--mode", "corrected", "--known", empty)
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["analyze", "--p", "4", "--n", "2", "--a", "1", "--c", "1"],
    ["analyze", "--p", "7", "--n", "2", "--a", "9", "--c", "1"],
    ["analyze", "--p", "7", "--n", "1", "--a", "1", "--c", "1"],
    ["analyze", "--p", "7", "--n", "2", "--a", "1", "--c", "1", "--modulus", "1,0,1"],
    ["analyze", "--p", "13", "--s", "2", "--n", "2", "--a", "1", "--c", "1", "--cap", "100"],
    ["verify", "--p", "7", "--n", "2", "--a", "1", "--c", "1", "--b", "2"],
])
def test_bad_input(capsys, argv):
    code, cap = run(capsys, *argv)
    assert code == 2
    assert cap.err.startswith("error:")


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--p", "3,x", "--n", "2"])
    assert exc.value.code == 2


def test_sweep(capsys, tmp_path):
    code, cap = run(capsys, "sweep", "--p", "3,5", "--n", "2-3",
                    "--csv", tmp_path / "s.csv", "--no-plots")
    assert code == 0
    assert "instances=64" in cap.out
    assert "unexplained=0" in cap.out
    assert len((tmp_path / "s.csv").read_text().splitlines()) == 66
    code, cap = run(capsys, "sweep", "--p", "5", "--s", "2", "--n", "4", "--sample", "10",
                    "--seed", "3", "--known", tmp_path / "s.csv")
    assert code == 2


def test_render(capsys, tmp_path):
    code, cap = run(capsys, "render", "--p", 13, "--n", 4, "--a", 3, "--c", 7, "--component", "0+0*B")
    assert code == 0
    assert cap.out.count("->") == 25
    code, cap = run(capsys, "render", "--p", 7, "--n", 2, "--a", 3, "--c", 3,
                    "--component", 0, "--dot", tmp_path / "g.dot")
    assert (tmp_path / "g.dot").read_text().count("->") == 49
    code, cap = run(capsys, "render", "--p", 7, "--n", 2, "--a", 3, "--c", 3, "--component", "9+0*B")
    assert code == 2
