"""Command-line surface: JSON shapes, exit codes, gate policy, registries."""

import json

import pytest

from fksupport.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_support_simple_descriptor(capsys):
    code, out, _ = run(capsys, "support-simple", "--group", "SL2",
                       "--p", "5", "--r", "2", "--lambda", "14")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert doc["descriptor"]["coords"] == [{"kind": "full_cone"}, {"kind": "zero"}]
    assert doc["complexity_upper"] == 2
    assert doc["dimension"] == 2


def test_support_block_descriptor(capsys):
    code, out, _ = run(capsys, "support-block", "--group", "SL2",
                       "--p", "5", "--r", "2", "--lambda", "24")
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 3
    assert doc["descriptor"]["coords"] == [{"kind": "zero"}, {"kind": "zero"}]


def test_blocks_classes(capsys):
    code, out, _ = run(capsys, "blocks", "--group", "SL2", "--p", "5", "--r", "1")
    assert code == 0
    classes = json.loads(out)
    members = sorted(tuple(m[0] for m in cls["members"]) for cls in classes)
    assert members == [(0, 3), (1, 2), (4,)]


def test_phi_lambda(capsys):
    code, out, _ = run(capsys, "phi-lambda", "--group", "SL3",
                       "--p", "13", "--lambda", "12,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 2
    assert sorted(map(tuple, doc["roots"])) == [(-1, 0), (1, 0)]
    assert doc["levi"] == [1]


def test_verify_dist(capsys):
    code, out, err = run(capsys, "verify-dist", "--p", "3", "--r", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["residual_terms"] > 0
    assert "pass" in err


def test_verify_dist_dump(capsys):
    code, out, _ = run(capsys, "verify-dist", "--p", "3", "--r", "2", "--dump")
    assert code == 0
    doc = json.loads(out)
    assert doc["expansion"] == "u1(x)1 + 1(x)u0"


def test_oracle_verify(capsys):
    code, out, err = run(capsys, "oracle", "verify", "--p", "3", "--r", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert [rep["check"] for rep in doc["reports"]] == ["simple", "equal", "block"]
    assert err.count("pass") == 3


def test_oracle_verify_single_check(capsys):
    code, out, _ = run(capsys, "oracle", "verify", "--p", "3", "--r", "1",
                       "--check", "h0-remark")
    assert code == 0
    doc = json.loads(out)
    assert doc["reports"][0]["informational"] is True


def test_gate_refusal_and_override(capsys):
    code, out, err = run(capsys, "support-simple", "--group", "SL2",
                         "--p", "2", "--r", "1", "--lambda", "1")
    assert code == 3 and out == "" and "refused" in err

    code, out, err = run(capsys, "support-simple", "--group", "SL2",
                         "--p", "2", "--r", "1", "--lambda", "1", "--unsafe")
    assert code == 3  # advisory status even though it ran
    assert "WARNING" in err
    doc = json.loads(out)
    assert doc["descriptor"]["coords"] == [{"kind": "zero"}]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "support-simple", "--group", "E8",
                       "--p", "5", "--r", "1", "--lambda", "1")
    assert code == 2 and "E8" in err

    code, _, err = run(capsys, "support-simple", "--group", "SL2",
                       "--p", "6", "--r", "1", "--lambda", "1")
    assert code == 2 and "prime" in err

    code, _, err = run(capsys, "support-simple", "--group", "SL3",
                       "--p", "7", "--r", "1", "--lambda", "1")
    assert code == 2 and "rank" in err

    code, _, err = run(capsys, "support-simple", "--group", "SL2",
                       "--p", "5", "--r", "0", "--lambda", "1")
    assert code == 2

    code = main(["no-such-command"])
    assert code == 2


def test_blocks_refuses_so_groups(capsys):
    code, _, err = run(capsys, "blocks", "--group", "SO7", "--p", "37", "--r", "1")
    assert code == 2 and "types A and C" in err


def test_registry_flag(tmp_path, capsys):
    reg = tmp_path / "reg.json"
    reg.write_text(json.dumps({
        "A2|p=13|(12,0)": {"kind": "orbit_closure", "levi": [1]},
        "A2|p=13|(0,1)": {"kind": "full_cone"},
    }))
    code, out, _ = run(capsys, "support-simple", "--group", "SL3",
                       "--p", "13", "--r", "2", "--lambda", "12,13",
                       "--registry", str(reg))
    assert code == 0
    doc = json.loads(out)
    # digits of (12,13) base 13 are (12,0) and (0,1)
    assert doc["descriptor"]["coords"] == [
        {"kind": "full_cone"}, {"kind": "orbit_closure", "levi": [1]}]
    assert doc["dimension"] == 6 + 4

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"A1|p=5|(4)": {"kind": "full_cone"}}))
    code, _, err = run(capsys, "support-simple", "--group", "SL2",
                       "--p", "5", "--r", "1", "--lambda", "1",
                       "--registry", str(bad))
    assert code == 2 and "projective" in err


def test_descriptor_roundtrip_through_cli_json(capsys):
    from fksupport.rootsys import build_root_system
    from fksupport.varieties import tuple_variety_from_dict, block_variety
    from fksupport.rootsys import Weight
    code, out, _ = run(capsys, "support-block", "--group", "SL2",
                       "--p", "5", "--r", "2", "--lambda", "14")
    assert code == 0
    doc = json.loads(out)
    rs = build_root_system("A", 1)
    parsed = tuple_variety_from_dict(doc["descriptor"], rs.rank)
    assert parsed == block_variety(rs, Weight((14,)), 5, 2)


def test_out_file_and_text_format(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, err = run(capsys, "support-simple", "--group", "SL2",
                         "--p", "5", "--r", "1", "--lambda", "2",
                         "--out", str(target))
    assert code == 0 and out == "" and str(target) in err
    doc = json.loads(target.read_text())
    assert doc["descriptor"]["coords"] == [{"kind": "full_cone"}]

    code, out, _ = run(capsys, "blocks", "--group", "SL2", "--p", "5",
                       "--r", "1", "--format", "text")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 3 and all("representative" in ln for ln in lines)


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "blocks", "--group", "SL2", "--p", "3", "--r", "2")
    _, second, _ = run(capsys, "blocks", "--group", "SL2", "--p", "3", "--r", "2")
    assert first == second


def test_oracle_field_extension_flag(capsys):
    code, out, _ = run(capsys, "oracle", "verify", "--p", "3", "--r", "1",
                       "--check", "simple", "--field-ext", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["reports"][0]["field"] == 9
    assert doc["reports"][0]["passed"] is True


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
