import json
import subprocess
import sys

import pytest

from freeshift import Group
from freeshift.cli import main
from freeshift.io import (family_from_json, family_to_json, group_from_json, group_to_json,
                          pattern_from_json, pattern_to_json, plan_from_json,
                          window_from_json)
from freeshift.errors import ValidationError

from instances import F2, z_family


def run(tmp_path, command, job, *flags, name="job"):
    src = tmp_path / f"{name}.json"
    out = tmp_path / f"{name}.out.json"
    src.write_text(json.dumps(job) if not isinstance(job, str) else job)
    code = main([command, "--input", str(src), "--output", str(out), *flags])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, out


def z(bits):
    return {"support": [[i] for i in range(len(bits))], "values": [int(b) for b in bits]}


def test_breadth_empty_family(tmp_path):
    code, rep, _ = run(tmp_path, "breadth", {"k": 2, "family": []})
    assert code == 0
    assert rep["result"]["h"] == pytest.approx(1.0, abs=1e-6)
    assert rep["command"] == "breadth"
    assert {"version", "schema_version", "seed", "tol"} <= rep.keys()


def test_width_full_patterns(tmp_path):
    fam = [z(f"{a}{b}") for a in "01" for b in "01"]
    code, rep, _ = run(tmp_path, "width", {"k": 2, "family": fam})
    assert code == 0
    assert rep["result"]["width"] == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("text", ["{not json", "[1, 2]", '{"k": 1}', '{"k": "two"}',
                                  '{"group": {"kind": "torus"}}',
                                  '{"family": [{"support": [[0]], "values": [5]}]}',
                                  '{"family": [{"support": [[0], [0]], "values": [0, 1]}]}',
                                  '{"schema_version": 99}'])
def test_malformed_input_exit_2_no_report(tmp_path, text):
    code, rep, out = run(tmp_path, "width", text)
    assert code == 2
    assert not out.exists()


def test_missing_input_file(tmp_path):
    assert main(["width", "--input", str(tmp_path / "nope.json")]) == 2


def test_certify_pass(tmp_path):
    code, rep, _ = run(tmp_path, "certify",
                       {"family": [z("00000")], "window": [[i] for i in range(12)]})
    assert code == 0
    res = rep["result"]
    assert res["ok"] and res["worst_slack"] > 0
    assert res["log2_lower_bound"] <= 12


def test_certify_failure_exit_4_with_report(tmp_path):
    job = {"family": [z("000")], "window": [[i] for i in range(8)], "h": 1.0}
    code, rep, _ = run(tmp_path, "certify", job)
    assert code == 4
    assert rep["result"]["ok"] is False


def test_count_pinned(tmp_path):
    code, rep, _ = run(tmp_path, "count", {"family": [z("000")],
                                           "window": [[i] for i in range(8)]})
    assert code == 0
    assert rep["result"]["count"] == 149
    assert rep["result"].get("witness_ok") in (None, False)


def test_count_scale_gate_exit_3(tmp_path):
    code, rep, out = run(tmp_path, "count", {"family": [z("00000")], "window_radius": 20})
    assert code == 3 and not out.exists()


def test_folner_free_group_exit_2(tmp_path):
    code, _, _ = run(tmp_path, "folner-entropy",
                     {"group": {"kind": "free", "rank": 2}, "family": [], "n": 1})
    assert code == 2


def test_sample_and_budget_exit_5(tmp_path):
    job = {"family": [z("00000")], "window_radius": 300}
    code, rep, _ = run(tmp_path, "sample", job, "--seed", "1")
    assert code == 0
    att = rep["result"]["attestation"]
    assert att["verified"] and att["resamples"] > 1
    code, rep, out = run(tmp_path, "sample", job, "--seed", "1", "--max-resamples", "1",
                         name="tight")
    assert code == 5 and not out.exists()


def test_sample_threads_identical(tmp_path):
    job = {"family": [z("000000"), z("111111")], "window_radius": 30}
    _, _, a = run(tmp_path, "sample", job, "--seed", "9", "--threads", "1", name="a")
    _, _, b = run(tmp_path, "sample", job, "--seed", "9", "--threads", "8", name="b")
    assert a.read_bytes() == b.read_bytes()


def test_threads_env_default(monkeypatch):
    from freeshift.cli import build_parser
    monkeypatch.setenv("FREESHIFT_THREADS", "3")
    assert build_parser().parse_args(["width", "--input", "x"]).threads == 3


CONSTRUCT = {"k": 2, "h": 0.8, "freeness_radius": 2, "window_radius": 60,
             "bad_families": [[z("0000000000")], [z("1010101010"), z("0101010101")]]}


def test_construct_free_end_to_end(tmp_path):
    code, rep, _ = run(tmp_path, "construct-free", CONSTRUCT, "--seed", "1")
    assert code == 0
    res = rep["result"]
    cert = res["certificate"]
    assert cert["slack"] > 0
    assert res["attestation"]["verified"]
    assert [r["gamma"] for r in res["period_check"]] == [[1], [-1], [2], [-2]]
    assert all(r["periodic"] is False for r in res["period_check"])
    assert len(res["orbit_escape"]) == 2 * (4 + 2)
    assert all(r["escapes"] is True for r in res["orbit_escape"])
    assert len(res["configuration"]["values"]) == 121


def test_reports_byte_identical(tmp_path):
    _, _, a = run(tmp_path, "construct-free", CONSTRUCT, "--seed", "1", name="a")
    _, _, b = run(tmp_path, "construct-free", CONSTRUCT, "--seed", "1", name="b")
    assert a.read_bytes() == b.read_bytes()


def test_construct_free_width_too_big_exit_4(tmp_path):
    job = {"k": 2, "h": 0.3, "freeness_radius": 1, "window_radius": 10}
    code, _, out = run(tmp_path, "construct-free", job)
    assert code == 4 and not out.exists()


def test_sofic_bound(tmp_path):
    pat = {"support": [[i - 5] for i in range(10)], "values": [0] * 10}
    job = {"family": [pat], "h": 0.9, "S_radius": 5, "epsilon": 0.1, "F": [0, 1, 2],
           "action": {"kind": "cyclic", "n": 40}}
    code, rep, _ = run(tmp_path, "sofic-bound", job)
    assert code == 0
    res = rep["result"]
    assert res["prop_S3"]["n_proper"] == 40
    assert res["bound"]["per_vertex"] >= res["log2k_minus_sigma"] > 0.9
    assert res["coloring"] is None  # 2^40 colorings is past the scale gate


def test_sofic_bound_perm(tmp_path):
    job = {"group": {"kind": "free", "rank": 2}, "family": [], "h": 0.5, "S_radius": 1,
           "F": [""], "action": {"kind": "perm", "v": 12, "seed": 3}}
    code, rep, _ = run(tmp_path, "sofic-bound", job)
    assert code == 0
    assert rep["result"]["coloring"]["col_count"] == 2 ** 12


def test_folner_entropy(tmp_path):
    code, rep, _ = run(tmp_path, "folner-entropy", {"family": [], "n": 2})
    assert code == 0 and rep["result"]["estimate"] == 1.0
    code, rep, _ = run(tmp_path, "folner-entropy", {"family": [z("0"), z("1")], "n": 1},
                       name="empty")
    assert code == 0 and rep["result"]["estimate"] == "-inf" and rep["result"]["empty"]


def test_module_entry_point(tmp_path):
    src = tmp_path / "job.json"
    src.write_text(json.dumps({"k": 4, "family": []}))
    proc = subprocess.run([sys.executable, "-m", "freeshift", "breadth", "--input", str(src)],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"]["h"] == pytest.approx(2.0, abs=1e-6)


# ---- io round trips --------------------------------------------------------

def test_group_roundtrip():
    for g in (Group.zd(1), Group.zd(3), Group.free(2)):
        assert group_from_json(group_to_json(g)) == g


def test_pattern_family_roundtrip():
    fam = z_family("010", "11")
    assert family_from_json(family_to_json(fam), fam.group, 2).members == fam.members
    p = pattern_from_json({"support": ["", "a", "aB"], "values": [0, 1, 1]}, F2, 2)
    assert pattern_from_json(pattern_to_json(p), F2, 2) == p


def test_window_and_plan():
    G = Group.zd(1)
    assert len(window_from_json({"window_radius": 3}, G)) == 7
    assert len(window_from_json({"window": [0, 2, 5]}, G)) == 3
    assert len(window_from_json({}, G, radius=1)) == 3
    with pytest.raises(ValidationError):
        window_from_json({"window_radius": -1}, G)
    plan = plan_from_json({"h": 0.8, "bad_families": [[z("01"), z("10")]]}, G, 2)
    assert plan.k == 2 and len(plan.bad_families) == 1
