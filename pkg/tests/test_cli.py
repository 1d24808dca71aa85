"""CLI end-to-end: subcommands, exit codes, output formats."""
import math

import pytest

from secrelay.cli import main
from secrelay.config import DEFAULT_CONFIG_TEXT

FAST_VALIDATE_CONFIG = DEFAULT_CONFIG_TEXT.replace("samples = 100000",
                                                   "samples = 20000")


def test_rules_stdout(capsys):
    assert main(["rules", "--kind", "laguerre", "--order", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "index,node,weight"
    assert len(out) == 3
    idx, node, weight = out[1].split(",")
    assert idx == "0"
    assert float(node) == pytest.approx(2.0 - math.sqrt(2.0), rel=1e-15)
    assert float(weight) == pytest.approx((2.0 + math.sqrt(2.0)) / 4.0, rel=1e-15)


def test_rules_17_significant_digits(capsys):
    main(["rules", "--kind", "hermite", "--order", "3"])
    out = capsys.readouterr().out.splitlines()
    node = out[3].split(",")[1]
    assert len(node.replace("-", "").replace(".", "").lstrip("0")) >= 16


def test_rules_to_file(tmp_path):
    path = tmp_path / "rule.csv"
    assert main(["rules", "--kind", "hermite", "--order", "24",
                 "--output", str(path)]) == 0
    assert path.read_text().startswith("index,node,weight\n")


def test_rules_bad_order_is_config_error():
    assert main(["rules", "--kind", "laguerre", "--order", "300"]) == 2


def test_rate_sweep_with_config(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("power_dbm = 30:50:10\ndelta_db = -80,-90\nsamples = 2000\n")
    out = tmp_path / "rate.csv"
    code = main(["rate-sweep", "--config", str(cfg), "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 3 * 2


def test_outage_sweep_with_methods(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("power_dbm = 40\nrs_target = 1,2\nsamples = 2000\n")
    out = tmp_path / "outage.csv"
    code = main(["outage-sweep", "--config", str(cfg), "--output", str(out),
                 "--method", "analytic", "--method", "mc-ln", "--seed", "5"])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 2 * 2


def test_sweep_same_bytes_for_workers(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("power_dbm = 30:40:10\ndelta_db = -80\nsamples = 2000\n")
    out1, out4 = tmp_path / "w1.csv", tmp_path / "w4.csv"
    main(["rate-sweep", "--config", str(cfg), "--output", str(out1),
          "--method", "mc-ln", "--workers", "1"])
    main(["rate-sweep", "--config", str(cfg), "--output", str(out4),
          "--method", "mc-ln", "--workers", "4"])
    assert out1.read_bytes() == out4.read_bytes()


def test_sweep_preset_runs(tmp_path):
    out = tmp_path / "fig2.csv"
    code = main(["rate-sweep", "--preset", "paper-fig2", "--output", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 + 14 * 3 * 3  # powers x deltas x antennas


def test_malformed_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("power_dbm = 40\ndelta_db=abc\n")
    code = main(["rate-sweep", "--config", str(cfg),
                 "--output", str(tmp_path / "x.csv")])
    assert code == 2
    err = capsys.readouterr().err
    assert "delta_db" in err and "2" in err


def test_unwritable_output_exits_3(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("power_dbm = 40\n")
    code = main(["rate-sweep", "--config", str(cfg),
                 "--output", str(tmp_path / "missing" / "x.csv")])
    assert code == 3


def test_validate_default_config_passes(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(FAST_VALIDATE_CONFIG)
    code = main(["validate", "--config", str(cfg)])
    out = capsys.readouterr().out
    assert code == 0
    assert "FAIL" not in out
    assert "PASS" in out


def test_validate_low_order_fails(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(FAST_VALIDATE_CONFIG.replace("quadrature_order = 24",
                                                "quadrature_order = 2"))
    code = main(["validate", "--config", str(cfg)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL" in out
    # the reported rate-agreement deviation is far above 1e-6
    line = next(ln for ln in out.splitlines() if "rate-quadrature-agreement" in ln)
    measured = float(line.split("measured")[1].split()[0])
    assert measured > 1e-6


def test_validate_missing_config_is_io_error(tmp_path):
    assert main(["validate", "--config", str(tmp_path / "nope.cfg")]) == 3
