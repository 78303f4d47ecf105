import io
import json
import pathlib

import pytest

from mdrc.cli import main, run_config, run_example1, run_pmdc
from mdrc.config import ParseError, ValidationError, parse_config
from mdrc.io import BASE_COLUMNS, ESO_COLUMNS, read_report

CONFIGS = pathlib.Path(__file__).resolve().parents[1] / "configs"


def _example1_doc():
    return json.loads((CONFIGS / "example1_known_preview.json").read_text())


def test_example1_exit_and_outputs(tmp_path):
    out = io.StringIO()
    assert run_example1(tmp_path, verify=True, stream=out) == 0
    assert "FAIL" not in out.getvalue()
    for name in ("known_preview", "gesobc_baseline", "feedback_only"):
        header = (tmp_path / f"{name}.csv").read_text().splitlines()[0]
        assert header == ",".join(BASE_COLUMNS)
    gains = read_report(tmp_path / "gains.txt")
    assert float(gains["g0"]) == pytest.approx(95.0, abs=1e-6)
    assert float(gains["g1"]) == pytest.approx(-100.0, abs=1e-6)
    assert float(gains["gesobc_K_d"]) == pytest.approx(-5.0, abs=1e-6)


def test_pmdc_exit_and_header(tmp_path):
    out = io.StringIO()
    assert run_pmdc(tmp_path, verify=True, stream=out) == 0
    text = out.getvalue()
    assert "FAIL" not in text
    assert "DIFFERS K_d_near_5.3" in text
    lines = (tmp_path / "pmdc.csv").read_text().splitlines()
    assert lines[0] == ",".join(BASE_COLUMNS + ESO_COLUMNS)
    assert len(lines) == 1202
    assert all(len(line.split(",")) == 13 for line in lines)


def test_pmdc_zoh_fails_validation(tmp_path, capsys):
    assert main(["pmdc", "--discretization", "zoh", "--out", str(tmp_path)]) == 1
    assert "Assumption 1" in capsys.readouterr().err


def test_reruns_are_byte_identical(tmp_path):
    for d in ("a", "b"):
        run_example1(tmp_path / d, stream=io.StringIO())
        run_pmdc(tmp_path / d, stream=io.StringIO())
    for name in ("known_preview.csv", "gesobc_baseline.csv", "feedback_only.csv", "pmdc.csv", "metrics.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_no_negative_zero_in_csv(tmp_path):
    run_example1(tmp_path, stream=io.StringIO())
    for field in (tmp_path / "feedback_only.csv").read_text().replace("\n", ",").split(","):
        assert field != "-0"


@pytest.mark.parametrize(
    "config, builtin, csv",
    [("example1_known_preview.json", run_example1, "known_preview.csv"), ("pmdc_eso.json", run_pmdc, "pmdc.csv")],
)
def test_config_reproduces_builtin(tmp_path, config, builtin, csv):
    builtin(tmp_path / "builtin", stream=io.StringIO())
    assert run_config(CONFIGS / config, tmp_path / "cfg", stream=io.StringIO()) == 0
    assert (tmp_path / "cfg" / csv).read_bytes() == (tmp_path / "builtin" / csv).read_bytes()


def test_config_poles_give_same_gain():
    doc = _example1_doc()
    doc["gains"] = {"poles": [[0.975, 0.0396862696659689], [0.975, -0.0396862696659689]]}
    cfg = parse_config(json.dumps(doc))
    assert cfg.K.ravel().tolist() == pytest.approx([-20.0, -4.0], abs=1e-6)


def test_assumption1_violation_rejected():
    doc = _example1_doc()
    doc["plant"]["c_o"] = [0.0, 1.0]
    with pytest.raises(ValidationError) as info:
        parse_config(json.dumps(doc))
    assert any("Assumption 1" in p for p in info.value.problems)


def test_unstable_poles_rejected():
    doc = _example1_doc()
    doc["gains"] = {"poles": [1.2, 0.5]}
    with pytest.raises(ValidationError) as info:
        parse_config(json.dumps(doc))
    assert any("unit circle" in p for p in info.value.problems)


def test_unstable_observer_rejected():
    doc = _example1_doc()
    doc["law"] = "eso_state_feedback"
    doc["observer"] = {"L_bar": [[0, 0], [0, 0], [0, 0]]}
    with pytest.raises(ValidationError) as info:
        parse_config(json.dumps(doc))
    assert any("observer" in p for p in info.value.problems)


def test_observer_designed_from_poles():
    doc = _example1_doc()
    doc["law"] = "eso_output_feedback"
    doc["plant"]["C_m"] = [[1.0, 0.0]]
    doc["observer"] = {"poles": [0.3, 0.4, 0.5]}
    assert parse_config(json.dumps(doc)).L_bar.shape == (3, 1)


def test_parse_error_reports_position():
    with pytest.raises(ParseError, match=r"line 3, column"):
        parse_config('{\n  "law": "known_preview",\n  "sim": {horizon: 3}\n}')


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda d: d.update(law="pid"), "law"),
        (lambda d: d.update(extra=1), "unknown top-level"),
        (lambda d: d["sim"].pop("horizon"), "sim.horizon"),
        (lambda d: d["sim"].update(horizon=0), "sim.horizon"),
        (lambda d: d["plant"].update(A=[[1, 2, 3]]), "plant.A"),
        (lambda d: d["disturbance"].update(kind="chirp"), "disturbance.kind"),
        (lambda d: d.update(gains={"K": [1, 1], "poles": [0.1, 0.2]}), "gains"),
    ],
)
def test_parse_errors(mutate, message):
    doc = _example1_doc()
    mutate(doc)
    with pytest.raises(ParseError, match=message):
        parse_config(json.dumps(doc))


def test_main_exit_codes(tmp_path, capsys):
    assert main(["simulate", "--config", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["simulate", "--config", str(bad), "--out", str(tmp_path)]) == 1
    assert main(["example1", "--out", str(tmp_path / "e1")]) == 0
    capsys.readouterr()
