import json
import subprocess
import sys

import pytest

from polarkit import cli, forms, gf, group


def run_cli(*argv):
    """Invoke main() in process, capturing stdout lines and the exit code."""
    import io
    from contextlib import redirect_stderr, redirect_stdout

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_space_summary():
    code, out, _ = run_cli("space", "--kind", "Q", "--dim", "6", "--q", "3")
    assert code == 0
    assert "r=3" in out and "theta=28" in out and "points=364" in out


def test_space_json():
    code, out, _ = run_cli("space", "--kind", "W", "--dim", "3", "--q", "3",
                           "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["points"] == 40 and rec["r"] == 2


def test_space_grid_refused_and_allowed():
    code, _, err = run_cli("space", "--kind", "Q+", "--dim", "3", "--q", "4")
    assert code == 2 and "grid" in err
    code, out, _ = run_cli("space", "--kind", "Q+", "--dim", "3", "--q", "4",
                           "--allow-grid")
    assert code == 0 and "points=25" in out


def test_space_bad_kind():
    code, _, err = run_cli("space", "--kind", "Z", "--dim", "4", "--q", "3")
    assert code == 2 and "error:" in err


def test_orbits_with_generator_file(tmp_path, w33):
    gens = group.classical_generators("Sp", 4, w33.field)
    path = tmp_path / "sp43.json"
    gens.save(path)
    code, out, _ = run_cli("orbits", "--kind", "W", "--dim", "3", "--q", "3",
                           "--gens", str(path))
    assert code == 0
    assert "size=40" in out and "tight_i=10" in out


def test_orbits_empty_generator_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    code, out, _ = run_cli("orbits", "--kind", "W", "--dim", "3", "--q", "3",
                           "--gens", str(path))
    assert code == 0
    assert "orbits=40" in out


def test_orbits_hand_written_file(tmp_path):
    # bare matrices with int codes, no sigma_power wrapper
    g = [[0, 0, 1, 0], [0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 1]]
    path = tmp_path / "hand.json"
    path.write_text(json.dumps({"q": 3, "d": 4, "generators": [g]}))
    code, out, _ = run_cli("orbits", "--kind", "W", "--dim", "3", "--q", "3",
                           "--gens", str(path))
    assert code == 0
    assert "orbits=" in out


def test_orbits_rejects_out_of_range_code(tmp_path):
    g = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 7, 0], [0, 0, 0, 1]]
    path = tmp_path / "range.json"
    path.write_text(json.dumps({"q": 3, "d": 4, "generators": [g]}))
    code, _, err = run_cli("orbits", "--kind", "W", "--dim", "3", "--q", "3",
                           "--gens", str(path))
    assert code == 2
    assert "out of range" in err


def test_orbits_rejects_corrupted_generator(tmp_path, w33):
    gens = group.classical_generators("Sp", 4, w33.field, self_check=False)
    data = gens.serialize()
    cell = data["generators"][0]["matrix"][0][0]
    data["generators"][0]["matrix"][0][0] = [(cell[0] + 1) % 3]  # break invariance
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = run_cli("orbits", "--kind", "W", "--dim", "3", "--q", "3",
                           "--gens", str(path))
    assert code == 2
    assert "rejected" in err


def test_orbits_missing_file():
    code, _, err = run_cli("orbits", "--kind", "W", "--dim", "3", "--q", "3",
                           "--gens", "/no/such/file.json")
    assert code == 2 and "error:" in err


def test_classify_set_file(tmp_path):
    path = tmp_path / "set.json"
    path.write_text(json.dumps(list(range(20))))
    code, out, _ = run_cli("classify", "--kind", "W", "--dim", "3", "--q", "3",
                           "--set", str(path))
    assert code == 0
    assert "intriguing=no" in out or "h1=None" in out


def test_classify_full_set(tmp_path):
    path = tmp_path / "full.json"
    path.write_text(json.dumps({"indices": list(range(40))}))
    code, out, _ = run_cli("classify", "--kind", "W", "--dim", "3", "--q", "3",
                           "--set", str(path), "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["tight_i"] == 10 and rec["ovoid_m"] == 4


def test_classify_out_of_range(tmp_path):
    path = tmp_path / "set.json"
    path.write_text(json.dumps([0, 99]))
    code, _, err = run_cli("classify", "--kind", "W", "--dim", "3", "--q", "3",
                           "--set", str(path))
    assert code == 2


def test_reduce_row2():
    code, out, _ = run_cli("reduce", "--row", "2", "--q", "2", "--b", "2",
                           "--dim", "3")
    assert code == 0
    assert "Q+(7,2)" in out and "tight_i=5" in out


def test_reduce_alpha_changes_the_small_gram():
    code1, out1, _ = run_cli("reduce", "--row", "1", "--q", "3", "--b", "2",
                             "--dim", "1", "--json")
    code2, out2, _ = run_cli("reduce", "--row", "1", "--q", "3", "--b", "2",
                             "--dim", "1", "--alpha", "3", "--json")
    assert code1 == code2 == 0
    # M1 is the full space either way; only the embedded form differs
    assert json.loads(out1)["m1"]["tight_i"] == 10
    assert json.loads(out2)["m1"]["tight_i"] == 10


def test_reduce_bad_alpha():
    code, _, err = run_cli("reduce", "--row", "1", "--q", "3", "--b", "2",
                           "--dim", "1", "--alpha", "9")
    assert code == 2 and "alpha" in err


def test_construct_names():
    code, out, _ = run_cli("construct", "adjoint-sl3", "--q", "3")
    assert code == 0
    assert "52" in out and "312" in out
    code, out, _ = run_cli("construct", "sl2-5")
    assert code == 0
    assert "tight_i=5" in out


def test_construct_dlength():
    code, out, _ = run_cli("construct", "dlength", "--kind", "H", "--q", "4",
                           "--t", "5")
    assert code == 0
    assert "30" in out and "135" in out


def test_verify_single_target():
    code, out, _ = run_cli("verify", "space-counts")
    assert code == 0 and "PASS" in out


def test_verify_fast_suite_json_deterministic():
    code1, out1, _ = run_cli("verify", "fast", "--json")
    code2, out2, _ = run_cli("verify", "fast", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert len(lines) == 13
    for line in lines:
        assert json.loads(line)["match"] is True


def test_verify_parallel_matches_serial():
    _, serial, _ = run_cli("verify", "fast", "--json")
    _, par, _ = run_cli("verify", "fast", "--json", "--parallel")
    assert serial == par


def test_verify_unknown_target():
    code, _, err = run_cli("verify", "does-not-exist")
    assert code == 2 and "unknown" in err


def test_console_script_end_to_end():
    proc = subprocess.run(
        [sys.executable, "-m", "polarkit.cli", "space", "--kind", "Q-",
         "--dim", "5", "--q", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "points=27" in proc.stdout


def test_console_script_usage_error():
    proc = subprocess.run([sys.executable, "-m", "polarkit.cli", "space"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
