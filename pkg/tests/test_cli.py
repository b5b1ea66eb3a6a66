"""Tests for the console script."""

import numpy as np
import pytest

from rgglab import __version__
from rgglab.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, build_parser, main
from rgglab.core.rng import mix
from rgglab.geometry.points import sample_sphere_points
from rgglab.graphs.io import read_graph
from rgglab.graphs.model import sample_rgg
from rgglab.harness.records import read_results
from rgglab.kernels.zoo import ScaledCDF

DETECT_ARGS = ["--kernel", "gauss(r=1)", "--n", "20", "--d", "3", "5", "--trials", "4"]


def test_version(capsys):
    """--version prints the package version."""
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--version"])
    assert __version__ in capsys.readouterr().out


def test_gen_matches_library_sampling(tmp_path, capsys):
    """gen writes the graph of mix(seed, 1) points and mix(seed, 2) edges."""
    out = tmp_path / "graph.rggb"
    args = ["gen", "--kernel", "gauss(r=1)", "--n", "30", "--d", "4", "--seed", "1"]
    assert main([*args, "--out", str(out)]) == EXIT_OK
    cloud = sample_sphere_points(30, 4, mix(1, 1))
    expected = sample_rgg(ScaledCDF(base="gauss", r=1.0), cloud, mix(1, 2))
    np.testing.assert_array_equal(read_graph(out).adjacency, expected.adjacency)
    assert "gauss(r=1) n=30" in capsys.readouterr().out


def test_detect_writes_results_and_plots(tmp_path, capsys):
    """A detection run leaves results, timings and one plot per n."""
    code = main(["detect", *DETECT_ARGS, "--seed", "3", "--out", str(tmp_path)])
    assert code == EXIT_OK
    records = read_results(tmp_path / "results.csv")
    assert len(records) == 2 * 2 * 4
    assert (tmp_path / "timings.csv").exists()
    assert (tmp_path / "detect_gauss_r=1_n20.svg").exists()
    assert "rgg-rate=" in capsys.readouterr().out


def test_single_run_equals_config_sweep(tmp_path):
    """The detect subcommand and a sweep over the same config agree row for row."""
    config = tmp_path / "detect.cfg"
    config.write_text(
        "kind = detect\nkernel = gauss(r=1)\nn = 20\nd = 3, 5\ntrials = 4\nseed = 3\n",
        encoding="utf-8",
    )
    single = tmp_path / "single"
    swept = tmp_path / "swept"
    assert main(["detect", *DETECT_ARGS, "--seed", "3", "--out", str(single)]) == 0
    assert main(["sweep", "--config", str(config), "--out", str(swept)]) == 0
    assert (single / "results.csv").read_text() == (swept / "results.csv").read_text()


def test_seed_override(tmp_path):
    """--seed replaces the seed of the config file."""
    config = tmp_path / "detect.cfg"
    config.write_text(
        "kind = detect\nkernel = gauss(r=1)\nn = 20\nd = 3\ntrials = 4\nseed = 3\n",
        encoding="utf-8",
    )
    base = ["detect", "--config", str(config)]
    main([*base, "--out", str(tmp_path / "a")])
    main([*base, "--seed", "4", "--out", str(tmp_path / "b")])
    seeds_a = {r.seed for r in read_results(tmp_path / "a" / "results.csv")}
    seeds_b = {r.seed for r in read_results(tmp_path / "b" / "results.csv")}
    assert seeds_a.isdisjoint(seeds_b)


def test_spectrum_prints_table(tmp_path, capsys):
    """The spectrum subcommand prints one CSV table per d."""
    code = main(
        [
            "spectrum",
            "--kernel",
            "linear(p=0.3,r=0.05)",
            "--d",
            "20",
            "--seed",
            "1",
            "--out",
            str(tmp_path),
        ]
    )
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "# linear(p=0.3,r=0.05) d=20" in out
    assert "k,alpha,eigenvalue,multiplicity,cumulative_cube,scaled" in out


def test_geometric_grid_flag(tmp_path):
    """--d-geometric expands start:stop:ratio."""
    args = ["spectrum", "--kernel", "gauss(r=1)", "--d-geometric", "4:16:2"]
    assert main([*args, "--seed", "1", "--out", str(tmp_path)]) == EXIT_OK
    ds = {r.d for r in read_results(tmp_path / "results.csv")}
    assert ds == {4, 8, 16}


def test_config_errors_exit_one(tmp_path, capsys):
    """Bad kernels, bad grids and missing seeds are config errors."""
    out = ["--out", str(tmp_path)]
    bad_kernel = ["detect", "--kernel", "nope(r=1)", "--n", "20", "--d", "3"]
    assert main([*bad_kernel, "--seed", "1", *out]) == EXIT_CONFIG
    assert "malformed kernel string" in capsys.readouterr().err
    no_seed = ["detect", "--kernel", "gauss(r=1)", "--n", "20", "--d", "3"]
    assert main([*no_seed, *out]) == EXIT_CONFIG
    assert "missing required key 'seed'" in capsys.readouterr().err
    bad_grid = ["spectrum", "--kernel", "gauss(r=1)", "--d-geometric", "4:2:2"]
    assert main([*bad_grid, "--seed", "1", *out]) == EXIT_CONFIG


def test_failed_cells_exit_two(tmp_path, capsys):
    """Runtime failures leave error rows and exit code 2."""
    config = tmp_path / "gaussian.cfg"
    config.write_text(
        "kind = detect\nkernel = poly(0.5,0,0.25)\nn = 20\nd = 2\ntrials = 4\n"
        "seed = 3\ngeometry = gaussian\n",
        encoding="utf-8",
    )
    code = main(["detect", "--config", str(config), "--out", str(tmp_path / "out")])
    assert code == EXIT_FAILED
    (row,) = read_results(tmp_path / "out" / "results.csv")
    assert row.failed
    assert "1 cell(s) failed" in capsys.readouterr().out


def test_sweep_requires_config():
    """sweep has no single-run flags, only a config file."""
    with pytest.raises(SystemExit):
        main(["sweep", "--kernel", "gauss(r=1)"])
