"""Command-line entry point."""

import os

from cqnls_plots.cli import main

SAMPLE = os.path.join(os.path.dirname(__file__), "fixtures", "sample-run")


def test_cli_renders(tmp_path, capsys):
    out = tmp_path / "fig.png"
    assert main(["contour", SAMPLE, "-o", str(out)]) == 0
    assert out.exists()
    assert str(out) in capsys.readouterr().out


def test_cli_error_path(tmp_path, capsys):
    code = main(["timeseries", str(tmp_path), "-o", str(tmp_path / "x.png")])
    assert code == 1
    assert "error:" in capsys.readouterr().err
