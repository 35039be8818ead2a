import json

from sexpansion.cli import main
from sexpansion.lie_algebra import LieAlgebra, make_named


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_expand_pipeline_recovers_lorentz_algebra(tmp_path, capsys):
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "so3",
        "steps": [{"op": "h_reduce", "n": 2}],
    })
    out = tmp_path / "out"
    assert main(["expand", "--config", cfg, "--out", str(out)]) == 0
    dumped = LieAlgebra.from_json((out / "algebra.json").read_text())
    assert dumped.constants_equal(make_named("so31"))
    table = (out / "commutators.txt").read_text()
    assert "[J(1)@0, J(2)@0] = 1 J(3)@0" in table


def test_expand_empty_pipeline_echoes(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {"algebra": "so3", "steps": []})
    out = tmp_path / "out"
    assert main(["expand", "--config", cfg, "--out", str(out)]) == 0
    dumped = LieAlgebra.from_json((out / "algebra.json").read_text())
    assert dumped.constants_equal(make_named("so3"))


def test_expand_resonant_pipeline(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "ads5",
        "steps": [
            {"op": "s_expand", "semigroup": "SE3"},
            {"op": "resonant", "resonance": "b5"},
            {"op": "zero_reduce"},
        ],
    })
    out = tmp_path / "out"
    assert main(["expand", "--config", cfg, "--out", str(out)]) == 0
    dumped = LieAlgebra.from_json((out / "algebra.json").read_text())
    assert dumped.dim == 30


def test_expand_type_error_is_usage_error(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "so3",
        "steps": [{"op": "zero_reduce"}],
    })
    assert main(["expand", "--config", cfg]) == 2


def test_missing_config_is_usage_error():
    assert main(["expand", "--config", "/nonexistent/cfg.json"]) == 2


def test_invariants_emits_table_and_json(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "b5", "tensor": "b5", "verify": True,
    })
    out = tmp_path / "out"
    assert main(["invariants", "--config", cfg, "--out", str(out),
                 "--format", "both"]) == 0
    tensor = json.loads((out / "tensor.json").read_text())
    assert tensor["rank"] == 3 and tensor["entries"]
    assert r"\langle" in (out / "tensor_table.tex").read_text()


def test_invariants_failure_exits_one(tmp_path):
    # general-alpha halved lift is not invariant; the command must fail
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "c5", "tensor": "c5", "verify": True,
    })
    assert main(["invariants", "--config", cfg, "--out", str(tmp_path / "o")]) == 1


def test_invariants_zero_alphas_gives_empty_table(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "c5", "tensor": "c5", "verify": True, "alphas": [0, 0, 0, 0],
    })
    out = tmp_path / "out"
    assert main(["invariants", "--config", cfg, "--out", str(out)]) == 0
    assert json.loads((out / "tensor.json").read_text())["entries"] == []


def test_lagrangian_sector_comparison_passes(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "dimension": 3, "algebra": "c3_rotated", "tensor": "c3_rotated",
        "fields": ["w", "e"], "compare": ["c3_lagrangian_kh0_sector"],
    })
    out = tmp_path / "out"
    assert main(["lagrangian", "--config", cfg, "--out", str(out)]) == 0
    report = (out / "comparison.txt").read_text()
    assert "matched=True" in report


def test_lagrangian_full_3d_golden(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "dimension": 3, "algebra": "c3_rotated", "tensor": "c3_rotated",
        "compare": ["c3_lagrangian"],
    })
    assert main(["lagrangian", "--config", cfg, "--out", str(tmp_path / "o")]) == 0


def test_lagrangian_compare_flag(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "dimension": 3, "algebra": "c3_rotated", "tensor": "c3_rotated",
        "fields": ["w", "e", "k"],
    })
    out = tmp_path / "out"
    assert main(["lagrangian", "--config", cfg, "--out", str(out),
                 "--compare", "c3_lagrangian_h0_sector"]) == 0
    assert "matched=True" in (out / "comparison.txt").read_text()


def test_lagrangian_deterministic_output(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "dimension": 3, "algebra": "c3_rotated", "tensor": "c3_rotated",
    })
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert main(["lagrangian", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["lagrangian", "--config", cfg, "--out", str(out2)]) == 0
    assert (out1 / "lagrangian.json").read_bytes() == (out2 / "lagrangian.json").read_bytes()


def test_lagrangian_emits_lovelock_dictionary(tmp_path):
    cfg = write_config(tmp_path, "cfg.json", {
        "dimension": 5, "algebra": "c5_rotated", "tensor": "c5_rotated",
        "fields": ["w", "e"],
    })
    out = tmp_path / "out"
    assert main(["lagrangian", "--config", cfg, "--out", str(out)]) == 0
    payload = json.loads((out / "lagrangian.json").read_text())
    assert payload["lovelock"]["beta0"] == [
        {"alpha": 0, "ell_pow": 0, "q": "1/2"},
        {"alpha": 1, "ell_pow": 0, "q": "1/2"},
    ]


def test_lagrangian_mismatch_exits_one(tmp_path):
    # the 3d vielbein sector against the 5d golden is a usage error (dims),
    # while comparing the wrong sector content is a verification failure
    cfg = write_config(tmp_path, "cfg.json", {
        "dimension": 3, "algebra": "c3_rotated", "tensor": "c3_rotated",
        "fields": ["w", "e"], "compare": ["c3_lagrangian"],
    })
    assert main(["lagrangian", "--config", cfg, "--out", str(tmp_path / "o")]) == 1
    cfg2 = write_config(tmp_path, "cfg2.json", {
        "dimension": 3, "algebra": "c3_rotated", "tensor": "c3_rotated",
        "compare": ["c5_lagrangian_kh0_sector"],
    })
    assert main(["lagrangian", "--config", cfg2, "--out", str(tmp_path / "o2")]) == 2


def test_semigroup_construct_verify_isomorphism(tmp_path):
    cfg = write_config(tmp_path, "s.json", {"action": "construct", "semigroup": "Z4"})
    out = tmp_path / "out"
    assert main(["semigroup", "--config", cfg, "--out", str(out)]) == 0
    z4 = json.loads((out / "semigroup.json").read_text())
    assert z4["order"] == 4 and z4["zero"] is None

    bad = write_config(tmp_path, "bad.json", {
        "action": "verify",
        "semigroup": {"name": "bad", "order": 2, "table": [[0, 1], [0, 1]], "zero": None},
    })
    assert main(["semigroup", "--config", bad]) == 1

    iso = write_config(tmp_path, "iso.json", {
        "action": "isomorphism", "first": "D4", "second": "Z4",
    })
    assert main(["semigroup", "--config", iso, "--out", str(out)]) == 1
    assert json.loads((out / "isomorphism.json").read_text())["isomorphic"] is False


def test_check_command(tmp_path):
    cfg = write_config(tmp_path, "c.json", {"algebra": "ads5", "tensor": "ads5_eps"})
    assert main(["check", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
    cfg_bad = write_config(tmp_path, "cb.json", {"algebra": "c5", "tensor": "c5"})
    assert main(["check", "--config", cfg_bad, "--out", str(tmp_path / "o2")]) == 1


def test_algebra_round_trip_through_files(tmp_path):
    out = tmp_path / "out"
    cfg = write_config(tmp_path, "cfg.json", {
        "algebra": "so31", "steps": [],
    })
    assert main(["expand", "--config", cfg, "--out", str(out)]) == 0
    cfg2 = write_config(tmp_path, "cfg2.json", {
        "algebra": {"path": str(out / "algebra.json")}, "steps": [],
    })
    out2 = tmp_path / "out2"
    assert main(["expand", "--config", cfg2, "--out", str(out2)]) == 0
    assert (out / "algebra.json").read_bytes() == (out2 / "algebra.json").read_bytes()
