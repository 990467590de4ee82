import json
import subprocess


def run(cli, *args):
    return subprocess.run([cli, *map(str, args)], capture_output=True, text=True)


def test_version(cli):
    r = run(cli, "--version")
    assert r.returncode == 0
    assert "0.1.0" in r.stdout


def test_synth_then_identify(cli, examples, tmp_path):
    r = run(cli, "--out", tmp_path, "synth", examples / "synth_bt.json")
    assert r.returncode == 0, r.stderr
    campaign = tmp_path / "campaign.json"
    assert run(cli, "validate", campaign).returncode == 0
    r = run(cli, "identify", campaign)
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["metadata"]["tool"] == "stiffid"
    assert "timestamp" not in report["metadata"]
    assert run(cli, "identify", campaign).stdout == r.stdout


def test_identify_csv_and_plots(cli, examples, tmp_path):
    run(cli, "--out", tmp_path, "synth", examples / "synth_bt.json")
    out = tmp_path / "report"
    r = run(cli, "--out", out, "--format", "csv", "--plots", "identify", tmp_path / "campaign.json")
    assert r.returncode == 0, r.stderr
    assert (out / "K.csv").exists()
    assert list(out.glob("fit_*.svg"))


def test_assemble_warns_on_complex_pair(cli, fixtures):
    r = run(cli, "assemble", fixtures / "k_bt.json", fixtures / "kf_bw.json")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["warnings"]


def test_center(cli, fixtures):
    r = run(cli, "center", fixtures / "center_table.json")
    assert r.returncode == 0, r.stderr
    json.loads(r.stdout)


def test_size_fixture(cli, examples):
    r = run(cli, "size-fixture", "--config", examples / "fixture.json")
    assert r.returncode == 0, r.stderr
    r = run(cli, "size-fixture", "--force-n", 1000, "--length-mm", 180, "--diameter-mm", 60)
    assert r.returncode == 1


def test_exit_codes(cli, tmp_path):
    assert run(cli, "validate", tmp_path / "missing.json").returncode == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{\"schema_version\": 1}")
    assert run(cli, "validate", bad).returncode == 1
    singular = tmp_path / "singular.json"
    singular.write_text(json.dumps({
        "schema_version": 1,
        "K_true": [[1 if i == j and i < 5 else 0 for j in range(6)] for i in range(6)],
        "cases": [],
    }))
    assert run(cli, "synth", singular).returncode in (1, 2)
