import csv
import filecmp
import os

import numpy as np
import pytest

from randqr.cli import main
from randqr.errors import ConvergenceError
from randqr.experiments import (
    METHODS,
    cell_filename,
    factorize,
    max_diag_deviation,
    method_config,
    run_experiment,
    run_suite,
    write_csv,
)
from randqr.matrices import MatrixSpec, gen_matrix
from randqr.metrics import DiagComparison
from randqr.rng import RngState


def test_method_config_defaults():
    assert method_config("cpqr", 50) is None
    assert method_config("svd", 50) is None
    m1 = method_config("m1", 50)
    assert (m1.block, m1.pivot_kind, m1.rrqr) == (50, "permutation", False)
    assert (m1.sketch.oversample, m1.sketch.power) == (0, 0)
    m2 = method_config("m2", 50, q=2)
    assert (m2.pivot_kind, m2.rrqr, m2.sketch.power, m2.sketch.oversample) == ("reflectors", False, 2, 0)
    m3 = method_config("m3", 50, q=1)
    assert (m3.pivot_kind, m3.rrqr, m3.sketch.power, m3.sketch.oversample) == ("reflectors", True, 1, 25)
    assert method_config("m3", 50, 1, oversample=10).sketch.oversample == 10
    with pytest.raises(ValueError):
        method_config("m9", 50)


def test_factorize_baselines():
    a, _ = gen_matrix(MatrixSpec("gauss", 10, 30))
    for method in ("cpqr", "svd"):
        f = factorize(a, method, None, RngState(0))
        q, p = f.expand_q(), f.expand_p()
        assert np.linalg.norm(a @ p - q @ f.r[:10, :]) <= 1e-11 * np.linalg.norm(a)
        assert np.linalg.norm(q.T @ q - np.eye(10)) <= 1e-11
    with pytest.raises(ValueError):
        factorize(np.ones((4, 3)), "svd", None, RngState(0))
    with pytest.raises(ValueError):
        factorize(a, "m9", None, RngState(0))


def test_run_experiment_deterministic():
    spec = MatrixSpec("fast", 20, 31)
    c1, d1 = run_experiment(spec, "m3", method_config("m3", 5, 1))
    c2, d2 = run_experiment(spec, "m3", method_config("m3", 5, 1))
    assert c1.ks == c2.ks
    assert c1.spectral == c2.spectral and c1.frobenius == c2.frobenius
    assert np.array_equal(d1.r_abs, d2.r_abs)


def test_max_diag_deviation():
    sigma = np.array([4.0, 2.0, 1.0])
    assert max_diag_deviation(DiagComparison(sigma.copy(), sigma)) == 0.0
    assert max_diag_deviation(DiagComparison(1.25 * sigma, sigma)) == pytest.approx(0.25)


def test_cell_filename():
    assert cell_filename("fast", "cpqr", 0) == "fast_cpqr.csv"
    assert cell_filename("gauss", "m1", 2) == "gauss_m1.csv"  # q only matters for m2/m3
    assert cell_filename("sshape", "m2", 1) == "sshape_m2_q1.csv"
    assert cell_filename("gauss", "m3", 2) == "gauss_m3_q2.csv"


def test_csv_layout(tmp_path):
    n, b = 12, 4
    spec = MatrixSpec("fast", n, 32)
    curve, diag = run_experiment(spec, "m1", method_config("m1", b))
    path = tmp_path / "cell.csv"
    write_csv(path, curve, diag)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["k", "spectral_err", "frobenius_err", "r_diag", "sigma"]
    assert len(rows) == n + 2  # header plus k = 0..n
    reported = {0, 4, 8, 12}
    for i, row in enumerate(rows[1:]):
        k = int(row[0])
        assert k == i
        if k in reported:
            float(row[1]), float(row[2])
        else:
            assert row[1] == "" and row[2] == ""
        if k == 0:
            assert row[3] == "" and row[4] == ""
        else:
            float(row[3]), float(row[4])
    # sigma column reproduces the generator's values at full precision
    sig = [float(r[4]) for r in rows[2:]]
    assert np.array_equal(np.array(sig), diag.sigma)


def test_cli_run_writes_csv(tmp_path, capsys):
    out = tmp_path / "res"
    code = main(["run", "--matrix", "fast", "--n", "16", "--block", "4",
                 "--method", "m2", "--q", "1", "--seed", "3", "--out", str(out)])
    assert code == 0
    assert (out / "fast_m2_q1.csv").exists()
    assert "wrote" in capsys.readouterr().out


def test_cli_run_reruns_byte_identical(tmp_path):
    args = ["run", "--matrix", "gauss", "--n", "14", "--block", "7",
            "--method", "m3", "--q", "2", "--seed", "5"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    assert filecmp.cmp(tmp_path / "a" / "gauss_m3_q2.csv",
                       tmp_path / "b" / "gauss_m3_q2.csv", shallow=False)


def test_cli_m3_prints_diag_deviation(tmp_path, capsys):
    code = main(["run", "--matrix", "gauss", "--n", "16", "--block", "8",
                 "--method", "m3", "--q", "2", "--seed", "1", "--out", str(tmp_path)])
    assert code == 0
    assert "max | |R(k,k)|/sigma_k - 1 |" in capsys.readouterr().out


def test_cli_bad_choice_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--matrix", "bogus", "--method", "m1", "--out", "x"])
    assert exc.value.code == 2


def test_cli_value_error_returns_2(tmp_path, capsys):
    code = main(["run", "--matrix", "fast", "--n", "10", "--block", "2", "--method", "m3",
                 "--oversample", "-1", "--out", str(tmp_path)])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_cli_block_larger_than_n_returns_2(tmp_path, capsys):
    code = main(["run", "--matrix", "fast", "--n", "10", "--block", "20",
                 "--method", "m1", "--out", str(tmp_path)])
    assert code == 2
    capsys.readouterr()


def test_cli_convergence_failure_returns_3(tmp_path, monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise ConvergenceError("did not converge")

    monkeypatch.setattr("randqr.cli.run_experiment", boom)
    code = main(["run", "--matrix", "fast", "--n", "10", "--block", "5",
                 "--method", "m1", "--out", str(tmp_path)])
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err


def test_suite_writes_full_grid(tmp_path, capsys):
    paths = run_suite(str(tmp_path), n=18, b=6, base_seed=2)
    # 3 matrices x (cpqr, svd, m1, m2 x 3 qs, m3 x 3 qs) = 27 cells
    assert len(paths) == 27
    assert len(list(tmp_path.glob("*.csv"))) == 27
    for kind in ("fast", "gauss", "sshape"):
        for method in METHODS:
            qs = (0, 1, 2) if method in ("m2", "m3") else (0,)
            for q in qs:
                assert (tmp_path / cell_filename(kind, method, q)).exists()
    out = capsys.readouterr().out
    assert out.count("wrote ") == 27
    assert "max | |R(k,k)|/sigma_k - 1 |" in out


def test_cli_suite_exit_code(tmp_path):
    assert main(["suite", "--n", "12", "--block", "6", "--out", str(tmp_path)]) == 0
    assert len(list(tmp_path.glob("*.csv"))) == 27
