"""CSV and JSON round-trips plus the command-line entry points."""

import json

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from scbands import (
    FunctionalSample,
    Grid1D,
    Grid2D,
    format_report_table,
    read_sample,
    scb_one_sample,
    substream,
    write_band,
    write_report_csv,
    write_report_json,
    write_sample,
)
from scbands.cli import main


def test_curve_sample_round_trip_is_exact(tmp_path):
    g = Grid1D(np.linspace(0.0, 1.0, 17))
    s = FunctionalSample(substream(70, 0).standard_normal((5, 17)), g)
    path = tmp_path / "curves.csv"
    write_sample(path, s)
    back = read_sample(path)
    assert_array_equal(back.values, s.values)
    assert_array_equal(back.grid.points, g.points)


def test_surface_sample_round_trip_is_exact(tmp_path):
    g = Grid2D(np.linspace(0.0, 1.0, 4), np.linspace(0.0, 2.0, 5))
    s = FunctionalSample(substream(70, 1).standard_normal((3, 20)), g)
    path = tmp_path / "surfaces.csv"
    write_sample(path, s)
    back = read_sample(path)
    assert isinstance(back.grid, Grid2D)
    assert_array_equal(back.values, s.values)
    assert_array_equal(back.grid.x_points, g.x_points)
    assert_array_equal(back.grid.y_points, g.y_points)


def test_read_errors_name_the_offending_row(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("0.0,0.5,1.0\n1,2,3\n4,5\n")
    with pytest.raises(ValueError, match="row 3 has 2 values, expected 3"):
        read_sample(p)
    p.write_text("0.0,0.5,1.0\n1,2,3\n3,oops,5\n")
    with pytest.raises(ValueError, match="row 3 holds a non-numeric value"):
        read_sample(p)
    p.write_text("0.0,0.5,1.0\ninf,2,3\n")
    with pytest.raises(ValueError, match="row 2 holds a non-finite value"):
        read_sample(p)


def test_read_rejects_degenerate_files(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("")
    with pytest.raises(ValueError, match="empty"):
        read_sample(p)
    p.write_text("0.0,0.5,1.0\n")
    with pytest.raises(ValueError, match="no data rows"):
        read_sample(p)
    p.write_text("0:0,0:1,1:0\n1,2,3\n")
    with pytest.raises(ValueError, match="rectangular lattice"):
        read_sample(p)


def test_band_json_file(tmp_path):
    g = Grid1D(np.linspace(0.0, 1.0, 20))
    s = FunctionalSample(substream(71, 0).standard_normal((10, 20)), g)
    band = scb_one_sample(s, method="tgkf", alpha=0.1)
    path = tmp_path / "band.json"
    write_band(path, band)
    doc = json.loads(path.read_text())
    assert doc["method"] == "tgkf"
    assert doc["alpha"] == 0.1
    assert len(doc["center"]) == 20
    assert doc["grid"]["points"][0] == 0.0


def test_report_files_and_table(tmp_path):
    report = {
        "kind": "coverage",
        "config": {"alpha": 0.05},
        "cells": [
            {
                "n": 50,
                "method": "tgkf",
                "replications": 200,
                "failures": 0,
                "hits": 190,
                "coverage": 0.95,
                "se": 0.0154,
            },
            {
                "n": 50,
                "method": "rmult-t",
                "replications": 200,
                "failures": 200,
                "hits": 0,
                "coverage": None,
                "se": None,
            },
        ],
    }
    jpath = tmp_path / "report.json"
    write_report_json(jpath, report)
    assert json.loads(jpath.read_text())["cells"][0]["coverage"] == 0.95
    cpath = tmp_path / "report.csv"
    write_report_csv(cpath, report)
    lines = cpath.read_text().strip().splitlines()
    assert lines[0] == "n,method,replications,failures,hits,coverage,se"
    assert lines[1].startswith("50,tgkf,200,0,190,")
    # a failed cell serializes with empty numeric fields
    assert lines[2] == "50,rmult-t,200,200,0,,"
    table = format_report_table(report)
    assert "tgkf" in table and "0.9500" in table
    assert "-" in table.splitlines()[-1]


def _write_config(path, **overrides):
    doc = {
        "model": {"name": "A", "resolution": 40},
        "n_values": [12],
        "methods": ["tgkf"],
        "alpha": 0.1,
        "replications": 4,
        "true_replications": 50,
        "seed": 3,
    }
    doc.update(overrides)
    path.write_text(json.dumps(doc))
    return path


def test_cli_generate_then_band(tmp_path, capsys):
    cfg = _write_config(tmp_path / "cfg.json")
    sample_path = tmp_path / "sample.csv"
    assert main(["generate", "--config", str(cfg), "--out", str(sample_path)]) == 0
    s = read_sample(sample_path)
    assert s.values.shape == (12, 40)

    band_path = tmp_path / "band.json"
    cfg2 = _write_config(tmp_path / "cfg2.json", input=str(sample_path))
    assert main(["scb", "--config", str(cfg2), "--out", str(band_path)]) == 0
    doc = json.loads(band_path.read_text())
    assert doc["method"] == "tgkf"
    assert len(doc["center"]) == 40
    capsys.readouterr()


def test_cli_generate_seed_changes_data(tmp_path):
    cfg = _write_config(tmp_path / "cfg.json")
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main(["generate", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["generate", "--config", str(cfg), "--out", str(b), "--seed", "99"]) == 0
    assert not np.array_equal(read_sample(a).values, read_sample(b).values)


def test_cli_two_group_band(tmp_path):
    cfg = _write_config(tmp_path / "cfg.json")
    ya = tmp_path / "y.csv"
    xa = tmp_path / "x.csv"
    main(["generate", "--config", str(cfg), "--out", str(ya)])
    main(["generate", "--config", str(cfg), "--out", str(xa), "--seed", "8"])
    cfg2 = _write_config(
        tmp_path / "cfg2.json", input=str(ya), input_x=str(xa), two_sample=True
    )
    out = tmp_path / "diff.json"
    assert main(["scb", "--config", str(cfg2), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["center"]) == 40


def test_cli_scale_space_band(tmp_path):
    measure = (np.arange(50) + 0.5) / 50.0
    raw = FunctionalSample(
        substream(72, 0).standard_normal((15, 50)), Grid1D(measure)
    )
    raw_path = tmp_path / "raw.csv"
    write_sample(raw_path, raw)
    cfg = _write_config(
        tmp_path / "cfg.json",
        input=str(raw_path),
        scale_grid=[0.05, 0.2, 4],
    )
    out = tmp_path / "scale_band.json"
    assert main(["scale-scb", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["center"]) == 50 * 4


def test_cli_coverage_writes_tables(tmp_path, capsys):
    cfg = _write_config(tmp_path / "cfg.json")
    out = tmp_path / "cov.csv"
    assert main(["coverage", "--config", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("n,method")
    assert len(lines) == 2
    doc = json.loads((tmp_path / "cov.json").read_text())
    assert doc["kind"] == "coverage"
    assert doc["cells"][0]["replications"] == 4
    shown = capsys.readouterr().out
    assert "coverage" in shown and "tgkf" in shown


def test_cli_width_includes_reference_row(tmp_path, capsys):
    cfg = _write_config(tmp_path / "cfg.json")
    out = tmp_path / "width.csv"
    assert main(["width", "--config", str(cfg), "--out", str(out)]) == 0
    doc = json.loads((tmp_path / "width.json").read_text())
    methods = {c["method"] for c in doc["cells"]}
    assert "true" in methods and "tgkf" in methods
    capsys.readouterr()


def test_cli_threads_do_not_change_results(tmp_path):
    cfg = _write_config(tmp_path / "cfg.json", replications=6)
    a = tmp_path / "one.csv"
    b = tmp_path / "two.csv"
    assert main(["coverage", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["coverage", "--config", str(cfg), "--out", str(b), "--threads", "3"]) == 0
    assert a.read_text() == b.read_text()


def test_cli_errors_are_json_on_stderr(tmp_path, capsys):
    cfg = _write_config(tmp_path / "cfg.json", input=str(tmp_path / "missing.csv"))
    code = main(["scb", "--config", str(cfg)])
    assert code == 1
    err = capsys.readouterr().err
    doc = json.loads(err.strip().splitlines()[-1])
    assert doc["error"]
    assert "missing.csv" in doc["message"]


def test_cli_rejects_unknown_config_keys(tmp_path, capsys):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"n_values": [5], "bogus": 1}))
    assert main(["coverage", "--config", str(p)]) == 1
    doc = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert "bogus" in doc["message"]
