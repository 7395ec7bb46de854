import json
import subprocess
import sys

import numpy as np
import pytest

from modframe import cli
from modframe.errors import InputError
from modframe.frame import assemble_frame_operator, validate_instance
from modframe.instances import (PROFILES, generate, instances_equal, load_instance,
                                paper_example_bundle, parse_instance, serialize_instance)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def example_text():
    return serialize_instance(paper_example_bundle())


@pytest.mark.parametrize("profile", PROFILES)
def test_round_trip(profile):
    for seed in range(3):
        b = generate(seed, profile)
        text = serialize_instance(b)
        back = parse_instance(text)
        assert instances_equal(b, back)
        assert serialize_instance(back) == text


def test_generate_is_deterministic():
    for profile in PROFILES:
        assert serialize_instance(generate(11, profile)) == serialize_instance(generate(11, profile))
    assert serialize_instance(generate(1, "free_commuting")) != serialize_instance(generate(2, "free_commuting"))
    with pytest.raises(InputError):
        generate(0, "no_such_profile")


def test_generated_hypotheses():
    for seed in range(10):
        inst = generate(seed, "free_commuting").instance
        assert all(v.certified for v in validate_instance(inst).values())
        assert assemble_frame_operator(inst).commuting
        b = generate(seed, "orthogonal_ranges")
        K1, K2 = b.extras["K1"], b.extras["K2"]
        assert np.abs((K2.H @ K1).matrix).max() <= 1e-12
        inst = generate(seed, "noncommuting_adversarial").instance
        assert not assemble_frame_operator(inst).commuting


def test_malformed_matrix_row_is_line_precise(tmp_path):
    lines = example_text().splitlines()
    k = next(i for i, l in enumerate(lines) if l.startswith(' "C"')) + 2  # second row of C
    lines[k] = lines[k].replace(", [0.0, 0.0]],", "],", 1)
    path = tmp_path / "bad.json"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(InputError) as exc:
        load_instance(path)
    msg = str(exc.value)
    assert f"bad.json:{k + 1}:" in msg and "C" in msg
    assert cli.main(["check", str(path)]) == cli.EXIT_INPUT


def test_invalid_json_is_line_precise():
    text = example_text().replace('"rows": 2,', '"rows": 2', 1)
    with pytest.raises(InputError) as exc:
        parse_instance(text, "x.json")
    line = next(i for i, l in enumerate(text.splitlines()) if '"cols"' in l) + 1
    assert str(exc.value).startswith(f"x.json:{line}:")


def test_schema_errors():
    doc = json.loads(example_text())
    doc["version"] = "9.9"
    with pytest.raises(InputError):
        parse_instance(json.dumps(doc))
    doc = json.loads(example_text())
    del doc["C"]
    with pytest.raises(InputError, match="C"):
        parse_instance(json.dumps(doc))
    doc = json.loads(example_text())
    doc["module"]["pattern"].append([5, 5])
    with pytest.raises(InputError):
        parse_instance(json.dumps(doc))


def test_paper_example_command(capsys):
    code, out, _ = run(["paper-example"], capsys)
    assert code == cli.EXIT_OK
    rep = json.loads(out)
    b = rep["bounds"]
    assert abs(b["B_opt"] - 1 / 3) <= 1e-12 and abs(b["A_opt"] - 1 / 3) <= 1e-12
    assert all(f["holds"] for f in rep["facts"].values())


def test_paper_example_trapezoid(capsys):
    vals = []
    for N in (16, 32, 64):
        code, out, _ = run(["paper-example", "--alpha", "2", "--beta", "3", "--rule", "trapezoid",
                            "--n", str(N)], capsys)
        assert code == cli.EXIT_OK
        vals.append(json.loads(out)["bounds"]["B_opt"])
    assert abs(vals[-1] - 2.0) <= 1e-3
    errs = [v - 2.0 for v in vals]
    assert 3.7 <= errs[0] / errs[1] <= 4.3


def test_check_exit_codes(tmp_path, capsys):
    good = tmp_path / "ex.json"
    good.write_text(example_text())
    code, out, _ = run(["check", str(good)], capsys)
    assert code == cli.EXIT_OK
    doc = json.loads(example_text())
    del doc["K"]
    plain = tmp_path / "plain.json"
    plain.write_text(json.dumps(doc))
    code, out, _ = run(["check", str(plain)], capsys)
    assert code == cli.EXIT_FALSIFIED
    rep = json.loads(out)
    for v in rep["checks"].values():
        assert v["status"] == "Falsified"
    code, _, err = run(["check", str(tmp_path / "missing.json")], capsys)
    assert code == cli.EXIT_INPUT and err


def test_bounds_labels(tmp_path, capsys):
    path = tmp_path / "ex31.json"
    path.write_text(serialize_instance(paper_example_bundle(3.0, 1.0)))
    code, out, _ = run(["bounds", str(path)], capsys)
    assert code == 0 and json.loads(out)["classification"] == "Parseval"
    path.write_text(example_text())
    code, out, _ = run(["bounds", str(path)], capsys)
    assert json.loads(out)["classification"] == "Tight"


def test_verify_exit_codes(tmp_path, capsys):
    path = tmp_path / "ex.json"
    path.write_text(example_text())
    assert run(["verify", "single_controller_reduction", str(path)], capsys)[0] == cli.EXIT_OK
    code, _, err = run(["verify", "no_such_tag", str(path)], capsys)
    assert code == cli.EXIT_INPUT and "combine_orthogonal" in err
    adv = tmp_path / "adv.json"
    adv.write_text(serialize_instance(generate(0, "noncommuting_adversarial")))
    code, out, _ = run(["verify", "compose_K_adjoint", str(adv)], capsys)
    assert code == cli.EXIT_UNDETERMINED
    assert json.loads(out)["theorem"]["status"] == "HypothesesNotMet"


def test_generate_and_output_file(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert cli.main(["generate", "--seed", "5", "--profile", "range_included", "--out", str(out)]) == 0
    assert out.read_text() == serialize_instance(generate(5, "range_included"))
    rep = tmp_path / "r.json"
    assert cli.main(["bounds", str(out), "-o", str(rep)]) == 0
    assert json.loads(rep.read_text())["command"] == "bounds"


def test_reports_are_deterministic(tmp_path, capsys):
    path = tmp_path / "i.json"
    path.write_text(serialize_instance(generate(8, "free_commuting")))
    a = run(["check", str(path)], capsys)[1]
    b = run(["check", str(path)], capsys)[1]
    assert a == b
    assert json.loads(a)["report_sha256"]


def test_tolerance_scale_env(tmp_path, capsys, monkeypatch):
    path = tmp_path / "i.json"
    path.write_text(example_text())
    monkeypatch.setenv("MODFRAME_TOL_SCALE", "10")
    rep = json.loads(run(["bounds", str(path)], capsys)[1])
    assert rep["tolerances"]["tol_psd"] == pytest.approx(1e-8)
    monkeypatch.setenv("MODFRAME_TOL_SCALE", "zero")
    assert run(["bounds", str(path)], capsys)[0] == cli.EXIT_INPUT


def test_bad_arguments(capsys):
    assert cli.main(["paper-example", "--alpha", "-1"]) == cli.EXIT_INPUT
    assert cli.main(["frobnicate"]) == cli.EXIT_INPUT


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "modframe", "paper-example"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["tool"] == "modframe"
