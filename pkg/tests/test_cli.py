"""CLI behaviour: determinism, exit codes, formats, file round-trips."""

from __future__ import annotations

import json

import pytest

from knotcensus import cli
from knotcensus.geometry import (
    moment_curve_embedding,
    random_rectilinear_embedding,
    write_embedding,
)
from knotcensus.theorems import IdentityReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_moment_k6_passes(capsys):
    code, out, err = run(capsys, "verify", "--n", "6", "--kind", "moment")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert {r["identity_id"] for r in doc["identities"]} >= {
        "k6-identity",
        "main-identity",
        "mod2-parity",
    }


def test_output_is_byte_deterministic(capsys):
    args = ("verify", "--n", "6", "--kind", "moment", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert (code1, code2) == (0, 0)
    assert out1 == out2
    assert "generated_at" not in out1


def test_timestamps_are_opt_in(capsys):
    code, out, _ = run(
        capsys, "verify", "--n", "6", "--kind", "moment", "--timestamps"
    )
    assert code == 0
    assert "generated_at" in json.loads(out)


def test_embed_then_verify_file_round_trip(tmp_path, capsys):
    path = tmp_path / "e.json"
    code, out, _ = run(
        capsys, "embed", "--n", "6", "--seed", "5", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    lib = random_rectilinear_embedding(6, seed=5)
    stored = json.loads(path.read_text())
    assert stored["n"] == 6
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    assert doc["rectilinear"] is True
    # The CLI seed "5" reproduces the library's embedding for seed 5.
    assert stored["vertices"][0][0] == int(lib.vertex_positions[1][0])


def test_embed_csv_lists_vertices(capsys):
    code, out, _ = run(capsys, "embed", "--n", "6", "--kind", "moment", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "vertex,x,y,z"
    assert lines[1] == "1,1,1,1"
    assert len(lines) == 7


def test_verify_csv_format(capsys):
    code, out, _ = run(
        capsys, "verify", "--n", "6", "--kind", "moment", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "identity_id,n,lhs,rhs,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_identity_subset_selection(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--n", "6", "--kind", "moment",
        "--identities", "k6-identity,mod2-parity",
    )
    assert code == 0
    doc = json.loads(out)
    assert [r["identity_id"] for r in doc["identities"]] == [
        "k6-identity",
        "mod2-parity",
    ]


def test_unknown_identity_is_usage_error(capsys):
    code, _, err = run(
        capsys, "verify", "--n", "6", "--kind", "moment", "--identities", "zorp"
    )
    assert code == 2
    assert "zorp" in err


def test_sampling_exhaustion_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--n", "9", "--range", "1")
    assert code == 3
    assert "attempts" in err


def test_corrupt_file_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 6}')
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2
    notjson = tmp_path / "notjson.json"
    notjson.write_text("pensive clouds")
    code, _, _ = run(capsys, "verify", str(notjson))
    assert code == 2
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_file_and_n_together_is_usage_error(tmp_path, capsys):
    path = tmp_path / "e.json"
    write_embedding(moment_curve_embedding(6), path)
    code, _, err = run(capsys, "verify", str(path), "--n", "6")
    assert code == 2


def test_missing_input_is_usage_error(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2
    assert "--n" in err


def test_moment_on_tripartite_is_usage_error(capsys):
    code, _, _ = run(capsys, "embed", "--graph", "k331", "--kind", "moment")
    assert code == 2


def test_tripartite_verify(capsys):
    code, out, _ = run(capsys, "verify", "--graph", "k331", "--seed", "3")
    assert code == 0
    doc = json.loads(out)
    assert [r["identity_id"] for r in doc["identities"]] == ["k331-identity"]


def test_census_subcommand(capsys):
    code, out, _ = run(capsys, "census", "--n", "7", "--kind", "moment")
    assert code == 0
    doc = json.loads(out)
    assert doc["hopf_count"] == 7
    assert doc["positive_a2_count"] == 1
    code, out, _ = run(
        capsys, "census", "--n", "6", "--kind", "moment", "--format", "csv"
    )
    assert code == 0
    assert out.startswith("key,value\nn,6\n")


def test_census_on_tripartite_is_usage_error(capsys):
    code, _, _ = run(capsys, "census", "--graph", "k331")
    assert code == 2


def test_rn_table(capsys):
    code, out, _ = run(capsys, "rn-table", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,r_n"
    assert lines[1] == "7,1"
    assert lines[-1] == "15,10015889"
    code, out, _ = run(capsys, "rn-table", "--start", "8", "--stop", "9")
    assert code == 0
    assert json.loads(out)["table"] == [{"n": 8, "r_n": 2}, {"n": 9, "r_n": 12}]
    code, _, _ = run(capsys, "rn-table", "--start", "6")
    assert code == 2


def test_invariant_knot_and_link(capsys):
    code, out, _ = run(
        capsys,
        "invariant", "--n", "7", "--kind", "moment",
        "--cycle", "1,3,5,7,2,4,6", "--audit",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "knot"
    assert doc["a2"] == 1
    assert doc["audited"] is True
    code, out, _ = run(
        capsys,
        "invariant", "--n", "6", "--kind", "moment",
        "--pair", "1,3,5;2,4,6",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "link"
    assert abs(doc["lk"]) == 1


def test_invariant_usage_errors(capsys):
    code, _, _ = run(capsys, "invariant", "--n", "6", "--kind", "moment")
    assert code == 2
    code, _, _ = run(
        capsys,
        "invariant", "--n", "6", "--kind", "moment",
        "--cycle", "1,2,3", "--pair", "1,2,3;4,5,6",
    )
    assert code == 2
    # (1, 3) joins two vertices of the same part: not an edge.
    code, _, err = run(
        capsys, "invariant", "--graph", "k331", "--cycle", "1,3,5"
    )
    assert code == 2
    code, _, _ = run(
        capsys, "invariant", "--n", "6", "--kind", "moment", "--pair", "1,2,3;3,4,5"
    )
    assert code == 2
    code, _, _ = run(
        capsys, "invariant", "--n", "6", "--kind", "moment", "--cycle", "1,2,x"
    )
    assert code == 2


def test_failing_report_exit_code_and_witness_bundle(tmp_path, capsys, monkeypatch):
    bundle = tmp_path / "bundle.json"
    fake = IdentityReport(
        identity_id="k6-identity",
        n=6,
        sums={"sum_a2_6": 0},
        lhs=0,
        rhs=5,
        passed=False,
        witnesses=(),
    )

    def fake_verify(e, identities=None, analysis=None, raise_on_fail=False):
        return [fake], analysis

    monkeypatch.setattr(cli, "verify_embedding", fake_verify)
    code, out, _ = run(
        capsys,
        "verify", "--n", "6", "--kind", "moment",
        "--witness-bundle", str(bundle),
    )
    assert code == 1
    assert json.loads(out)["pass"] is False
    stored = json.loads(bundle.read_text())
    assert stored["reports"][0]["identity_id"] == "k6-identity"
    assert stored["embedding"]["n"] == 6


def test_missing_subcommand_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 2


def test_allow_large_flag_is_wired(capsys):
    code, _, err = run(capsys, "census", "--n", "11", "--kind", "moment")
    assert code == 2
    assert "override" in err
