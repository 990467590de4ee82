import math

import pytest

import stiffid


def test_synth_identify_round_trip(examples):
    spec = (examples / "synth_bw.json").read_text()
    campaign = stiffid.synth(spec)
    info = stiffid.validate_campaign(campaign)
    assert info["block_id"] == "BW"
    assert info["cases"] == 3
    report = stiffid.identify(campaign)
    assert report["translation_only"] is True
    assert len(report["K_F"]) == 3


def test_synth_is_deterministic(examples):
    spec = (examples / "synth_bt.json").read_text()
    assert stiffid.synth(spec) == stiffid.synth(spec)
    report = stiffid.identify(stiffid.synth(spec))
    assert len(report["K"]) == 6
    assert report["error_matrix"]["max_percent"] < 6


def test_normalize_is_idempotent(examples):
    campaign = stiffid.synth((examples / "synth_bw.json").read_text())
    once = stiffid.normalize_campaign(campaign)
    assert stiffid.normalize_campaign(once) == once


def test_center_table(fixtures):
    report = stiffid.center((fixtures / "center_table.json").read_text())
    assert [a["axis"] for a in report["axes"]] == ["x", "y", "z"]
    assert len(report["CR_m"]) == 3
    assert report["residual_m"] >= 0
    assert 0 <= report["v3_angle_deg"] <= 90


def test_eigen3_diagonal():
    values, vectors = stiffid.eigen3([[3, 0, 0], [0, -1, 0], [0, 0, 2]])
    assert values == pytest.approx([-1, 2, 3])
    assert vectors[0] == pytest.approx([0, 1, 0])


def test_eigen3_complex_pair():
    with pytest.raises(stiffid.NumericalError):
        stiffid.eigen3([[0, -1, 0], [1, 0, 0], [0, 0, 1]])


def test_assemble_parallel():
    total = stiffid.assemble_parallel([[1, 0, 0], [0, 2, 0], [0, 0, 3]], [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert total == [[2, 1, 0], [0, 3, 0], [0, 0, 4]]


def test_deflection():
    d = stiffid.deflection(1000, 180, 2.1e5, 60)
    assert d["inertia_mm4"] == pytest.approx(math.pi * 60**4 / 64)
    assert d["stiffness_n_per_m"] == pytest.approx(6.9e7, rel=0.02)
    with pytest.raises(stiffid.ValidationError):
        stiffid.deflection(1000, 180, 0, 60)


def test_validation_error():
    with pytest.raises(stiffid.ValidationError):
        stiffid.validate_campaign("{}")
    with pytest.raises(stiffid.StiffidError):
        stiffid.validate_campaign("not json")


def test_fnv1a():
    assert stiffid.fnv1a("") == "cbf29ce484222325"
