import json

import pytest

from freebool.cli import main

HALVES = '{"atoms":[["0","1/2"],["2","1/2"]]}'
DIRAC1 = '{"atoms":[["1","1"]]}'


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_bbp1_from_file(tmp_path, capsys):
    f = tmp_path / "halves.json"
    f.write_text(HALVES)
    status, out, _ = run(capsys, "transform", "--op", "bbp1", "--in", str(f), "--order", "6")
    assert status == 0
    assert json.loads(out)["result"]["list"][:5] == ["1", "2", "5", "14", "42"]


def test_psi_example(capsys):
    status, out, _ = run(capsys, "diagonal", "psi", "--sigma1", DIRAC1, "--sigma2", DIRAC1, "--order", "6")
    assert status == 0
    assert json.loads(out)["moments"]["zz"][:4] == ["1", "2", "5", "14"]


def test_verify_example(capsys):
    status, out, err = run(capsys, "verify", "thm-2.8", "--order", "8", "--cases", "25", "--seed", "7")
    report = json.loads(out)
    assert status == 0 and report["ok"] and report["failures"] == []
    assert report["theorem"] == "thm-2.8" and report["seed"] == 7 and report["cases"] == 25
    assert "wall time" in err


def test_output_is_deterministic(capsys):
    argv = ["verify", "cor-7.3", "--cases", "5", "--seed", "3"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_parse_error_has_location(capsys):
    status, _, err = run(capsys, "transform", "--op", "r", "--in", '{"atoms": [["1",}', "--order", "3")
    assert status == 2
    assert "line 1, column" in err


def test_unknown_subcommand_and_flag(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "--frobnicate"])
    assert e.value.code == 2
    capsys.readouterr()


def test_unknown_suite(capsys):
    status, _, err = run(capsys, "verify", "thm-9.9")
    assert status == 2 and "unknown suite" in err


def test_failed_check_exits_one(capsys):
    status, out, _ = run(capsys, "diagonal", "infdiv", "--pair", '{"alpha":["1","1","0"],"beta":["1","0","0"]}')
    assert status == 1
    assert json.loads(out)["infinitely_divisible"]["side"] == "alpha"
    status, _, _ = run(capsys, "diagonal", "kms", "--pair", '{"alpha":["1","2"],"beta":["1","1"]}', "--t", "1")
    assert status == 1
    status, _, _ = run(capsys, "diagonal", "kms", "--pair", '{"alpha":["1/2","1"],"beta":["1","2"]}', "--t", "1/2")
    assert status == 0


def test_convolve_and_multconv(capsys):
    status, out, _ = run(capsys, "convolve", "--kind", "mult", "--a", HALVES, "--b", '{"atoms":[["3","1"]]}', "-N", "4")
    assert status == 0 and json.loads(out)["result"]["list"] == ["3", "18", "108", "648"]
    status, out, _ = run(capsys, "convolve", "--kind", "free", "--a", DIRAC1, "--power", "2", "-N", "3")
    assert json.loads(out)["result"]["list"] == ["2", "4", "8"]
    pair = '{"alpha":["1/2","0","0"],"beta":["1","0","0"]}'
    status, out, _ = run(capsys, "multconv", "--pair1", pair, "--pair2", pair)
    res = json.loads(out)
    assert status == 0 and res["kms_parameter"] == "1/4"


def test_opmodel_table(capsys):
    status, out, _ = run(capsys, "opmodel", "--sigma1", HALVES, "--sigma2", DIRAC1, "--order", "4")
    res = json.loads(out)
    assert status == 0 and res["ok"] and len(res["moments"]) == 30


def test_pretty_output(capsys):
    status, out, _ = run(capsys, "transform", "--op", "measure-moments", "--in", HALVES, "--order", "3", "--pretty")
    assert status == 0
    assert "n  coefficient" in out and "3  4" in out


def test_transform_ops_roundtrip(capsys):
    nc = '{"kind":"nc2","order":2,"coeffs":{"1":"1","1*":"2","*1":"1"}}'
    _, out, _ = run(capsys, "transform", "--op", "r", "--in", nc)
    r = json.dumps(json.loads(out)["result"])
    _, out, _ = run(capsys, "transform", "--op", "moments-from-r", "--in", r)
    back = json.loads(out)["result"]["coeffs"]
    assert back["1*"] == {"re": "2", "im": "0"}
    _, out, _ = run(capsys, "transform", "--op", "decomplexify", "--in", '{"kind":"nc2","order":1,"coeffs":{"1":"1"}}')
    assert json.loads(out)["result"]["coeffs"]["2"] == {"re": "0", "im": "-1/2"}


def test_list(capsys):
    _, out, _ = run(capsys, "verify", "--list")
    ids = json.loads(out)["suites"]
    for want in ["thm-2.8", "thm-5.2/prop-5.7", "prop-7.13", "eq-7.1a-vs-7.2a"]:
        assert want in ids
