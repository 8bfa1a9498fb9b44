import json
import os
import subprocess
import sys

import pytest

from psdiv.cli import ABORTED, BAD_INPUT, OK, VERIFY_FAILED, execute, main


def run(*argv):
    return execute([str(a) for a in argv])


def test_a3_worked_example():
    out = run("a3", 2, 3, 6, "--section=-1,1,0")
    assert out.code == OK
    assert out.payload["divisor"] == "{-1/3}D1 + {1/2}D2 + [0,1/6]E"


def test_a3_default_section_with_oracle():
    out = run("a3", 1, 1, 1, "--oracle")
    assert out.code == OK and out.payload["oracle"]["agrees"]


def test_a3_oracle_disagreement_is_a_verification_failure():
    # (1, 2, 4): the closed form assumes c = gcd(a, c) * gcd(b, c), here 4 != 1 * 2
    out = run("a3", 1, 2, 4, "--oracle")
    assert out.code == VERIFY_FAILED and out.payload["oracle"]["agrees"] is False


@pytest.mark.parametrize("argv", [
    ("a3", 2, 4, 6),
    ("a3", 0, 1, 1),
    ("a3", 2, 3, 6, "--section=1,1"),
    ("family", 1, 2, 4, "v"),
    ("family", 1, 2, 3, "v+"),
    ("rectifiability", "u", "u*w"),
    ("bogus",),
    ("a3", "x", 1, 1),
])
def test_invalid_input_exit_code(argv):
    out = run(*argv)
    assert out.code == BAD_INPUT and "error" in out.payload


@pytest.mark.parametrize("params,divisor", [
    ((1, 2, 3), "{1/2}D1 + {-1/3}D2 + [0,1/6]E"),
    ((2, 3, 5), "{1/3}D1 + {-3/5}D2 + [0,1/15]E"),
])
def test_family(params, divisor):
    out = run("family", *params, "v+v^2")
    assert out.code == OK
    assert out.payload["divisor"] == divisor
    assert out.payload["smoothness"]["verdict"] == "smooth"


def test_family_singular_witness():
    out = run("family", 1, 2, 3, "v+2*v^2+v^3")
    assert out.payload["smoothness"] == {"verdict": "singular", "witness": "v + 1"}


def test_present():
    out = run("present", 1, 1, -1, "--section=1,0,0")
    assert out.code == OK and out.payload["segments"][2] == "[0,1]"


def test_rectifiability_commands():
    out = run("rectifiability", "u+(v+u^2)^2", "v*(v-1)+u")
    assert out.code == OK and out.payload["verdict"] == "NOT_RECTIFIABLE"
    out = run("rectifiability", "u", "v")
    assert out.payload["km_status"] == "minus_infinity" and out.payload["verdict"] == "INCONCLUSIVE"
    out = run("rectifiability", "u", "u+v+v^2")
    assert out.payload["verdict"] == "INCONCLUSIVE"
    assert out.payload["rectification"]["map"] == "rectify_phi"


def test_rectifiability_with_boundary_line():
    out = run("rectifiability", "u+(v+u^2)^2", "v*(v-1)+u", "--with-infinity")
    assert out.payload["kumar_murthy_class"] == "E4 + 2E5 + E'1 + 2E'2"
    assert len(out.payload["cluster"]["points"]) == 7


def test_rectifiability_nonrational_center_aborts():
    out = run("rectifiability", "(v^2-2*u^2)^2-u^5", "u-1")
    assert out.code == ABORTED
    assert len(out.payload["partial_cluster"]["points"]) == 1


def test_verify_maps_default_reports_failures():
    out = run("verify-maps")
    failed = sorted({r["map"] for r in out.payload["results"] if not r["pass"]})
    assert failed == ["psi2"]
    assert out.code == VERIFY_FAILED


def test_verify_maps_only_second_kind():
    out = run("verify-maps", "--only=second_kind_phi", "--d=2")
    assert out.code == OK and [r["map"] for r in out.payload["results"]] == ["second_kind_phi"]


def test_verify_maps_perturbed_fixture():
    out = run("verify-maps", "--only=psi1", "--fixture=perturbed_inverse")
    rows = out.payload["results"]
    assert out.code == VERIFY_FAILED
    assert rows[-1]["map"] == "psi1_perturbed" and rows[-1]["residues"]


@pytest.mark.parametrize("fixture,verdict", [
    ("kumar_murthy_pair", "NOT_GM_RATIONAL"),
    ("elliptic_support", "NOT_GM_RATIONAL"),
    ("rectifiable_family", "GM_LINEARLY_RATIONAL"),
])
def test_report_fixtures(fixture, verdict):
    out = run("report", fixture)
    assert out.code == OK and out.payload["verdict"] == verdict


def test_report_incomplete_geometry(tmp_path):
    data = {"presentation": {"surface": "S", "components": [
        {"label": "D1", "kind": "strict-transform", "meets_exceptional": "yes", "lo": "1/2", "hi": "1/2"}]},
        "curves": {}}
    path = tmp_path / "p.json"
    path.write_text(json.dumps(data))
    assert run("report", path).code == BAD_INPUT


def test_selftest_seeded():
    out = run("selftest", "--seed=7")
    assert out.code == OK and out.payload["all_pass"]


def test_batch_mode(tmp_path):
    jobs = tmp_path / "jobs.json"
    jobs.write_text(json.dumps([
        {"command": "a3", "args": [2, 3, 6, "--section=-1,1,0"]},
        {"command": "a3", "args": [2, 4, 6]},
    ]))
    out = run("run", jobs)
    assert [j["exit_code"] for j in out.payload["jobs"]] == [OK, BAD_INPUT]
    assert out.code == BAD_INPUT


def test_main_writes_json_and_summary(capsys):
    assert main(["a3", "2", "3", "6", "--section=-1,1,0"]) == OK
    cap = capsys.readouterr()
    assert json.loads(cap.out)["divisor"] == "{-1/3}D1 + {1/2}D2 + [0,1/6]E"
    assert cap.err.strip() == "{-1/3}D1 + {1/2}D2 + [0,1/6]E"


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "psdiv", "rectifiability", "u+(v+u^2)^2", "v*(v-1)+u"]
    a, b = (subprocess.run(cmd, capture_output=True, check=True,
                           env={**os.environ, "PYTHONHASHSEED": seed}).stdout for seed in ("1", "2"))
    assert a == b and a
