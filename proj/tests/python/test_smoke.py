import math
import os
import pathlib

import pytest

import whext

SCENARIOS = pathlib.Path(os.environ.get("WHEXT_SCENARIO_DIR", pathlib.Path(__file__).parents[2] / "scenarios"))

SINGLE = """\
space = c01
n = 11
assembly = single
mode = clamp
theta = 0.1
target = quad_integral

[segment]
type = band
phi = const:-1
psi = const:1
delta = 0.5
"""


def test_transition_values():
    assert whext.transition(0.0) == 0.0
    assert whext.transition(1.0) == 1.0
    assert whext.transition(0.5) == 0.5
    assert whext.transition(0.25) == pytest.approx(1 / (1 + math.exp(8 / 3)), rel=1e-14)
    assert whext.transition_d1(0.5) == pytest.approx(2.0, rel=1e-14)


def test_bump_and_clamp():
    assert whext.bump(-1, 1, 0.5, 0.0) == 1.0
    assert whext.bump(-1, 1, 0.5, 1.25) == 0.5
    assert whext.bump(-1, 1, 0.5, 1.6) == 0.0
    assert whext.clamp_upper(0.5, 1, 0.25) == 0.5
    assert whext.clamp_upper(5.0, 1, 0.25) == 1.0


def test_operator_from_config():
    op = whext.Operator.from_config(SINGLE)
    assert op.dim == 11
    assert op.segment_count == 1
    assert op.assembly == "single"
    x = [0.5] * 11
    assert op.extend(x) == op.target(x)
    assert op.extend([7.0] * 11) == pytest.approx(1.0)
    assert op.weights(x) == [1.0]
    with pytest.raises(ValueError):
        op.extend([0.0] * 3)


def test_config_errors():
    with pytest.raises(whext.ConfigError, match="line 1"):
        whext.Operator.from_config("space = nowhere\n")


def test_roundtrip():
    text = whext.roundtrip_config(SINGLE)
    assert whext.roundtrip_config(text) == text


def test_checks_pass():
    op = whext.Operator.from_config(SINGLE)
    reports = op.check(seed=3, samples=100)
    assert reports
    assert all(r["passed"] or r["informational"] for r in reports)


def test_oracle_suite():
    results = whext.oracle_suite(samples=200)
    assert len(results) >= 5
    assert all(r["passed"] for r in results)
    assert max(r["worst_error"] for r in results) <= 1e-12


def test_validate_commands(tmp_path):
    ok = whext.validate(str(SCENARIOS / "validate_ordered.cfg"), str(tmp_path / "a"))
    assert ok["exit_code"] == 0
    bad = whext.validate(str(SCENARIOS / "validate_crossing.cfg"), str(tmp_path / "b"))
    assert bad["exit_code"] == 1
    rows = (tmp_path / "b" / "violations.csv").read_text().splitlines()
    assert rows[1] == "1,2,1,0.5,-0.5"


def test_check_command_deterministic(tmp_path):
    cfg = str(SCENARIOS / "band_1d_literal.cfg")
    a = whext.check(cfg, str(tmp_path / "a"), seed=7)
    b = whext.check(cfg, str(tmp_path / "b"), seed=7)
    assert a["exit_code"] == 0
    assert (tmp_path / "a" / "report.csv").read_bytes() == (tmp_path / "b" / "report.csv").read_bytes()


def test_extend_and_plotdata(tmp_path):
    cfg = str(SCENARIOS / "band_1d_literal.cfg")
    out = whext.extend(cfg, str(tmp_path), samples=30)
    assert out["exit_code"] == 0
    lines = (tmp_path / "extend.csv").read_text().splitlines()
    assert len(lines) == 31
    plot = whext.plotdata(cfg, str(tmp_path))
    assert plot["exit_code"] == 0
    assert (tmp_path / "plot.csv").read_text().startswith("s,weight_1,out\n")
