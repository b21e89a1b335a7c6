import csv
import subprocess
import sys

from pooltest.design import load_design


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "pooltest", *map(str, args)],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


# ---------------------------------------------------------------------------
# gen-design


def test_gen_design_writes_a_loadable_file(tmp_path):
    out = tmp_path / "design.txt"
    r = run_cli("gen-design", "--n", 40, "--k", 4, "--tests", 25, "--out", out)
    assert r.returncode == 0, r.stderr
    d = load_design(out)
    assert d.n == 40 and d.T == 25


def test_gen_design_theta_and_rate(tmp_path):
    out = tmp_path / "design.txt"
    r = run_cli(
        "gen-design", "--n", 100, "--theta", 0.5, "--rate", 0.7,
        "--design", "ncc", "--seed", 3, "--out", out,
    )
    assert r.returncode == 0, r.stderr
    d = load_design(out)
    assert d.n == 100


def test_gen_design_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for out in (a, b):
        r = run_cli("gen-design", "--n", 30, "--k", 3, "--tests", 20, "--seed", 11, "--out", out)
        assert r.returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_design_rejects_conflicting_sizes(tmp_path):
    r = run_cli(
        "gen-design", "--n", 30, "--k", 3, "--theta", 0.5, "--tests", 20,
        "--out", tmp_path / "x.txt",
    )
    assert r.returncode == 2  # argparse exclusivity error


def test_gen_design_parameter_error_is_exit_1(tmp_path):
    r = run_cli(
        "gen-design", "--n", 30, "--k", 3, "--tests", 20, "--p", 1.5,
        "--out", tmp_path / "x.txt",
    )
    assert r.returncode == 1
    assert "error" in r.stderr.lower()


# ---------------------------------------------------------------------------
# simulate


def test_simulate_writes_csv_and_summary(tmp_path):
    out = tmp_path / "trials.csv"
    r = run_cli(
        "simulate", "--n", 60, "--k", 4, "--tests", 30, "--decoder", "dd",
        "--criterion", "subset", "--trials", 20, "--out", out,
    )
    assert r.returncode == 0, r.stderr
    assert "p_error" in r.stderr
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 20
    assert rows[0]["decoder"] == "dd"


def test_simulate_stdout_default(tmp_path):
    r = run_cli(
        "simulate", "--n", 40, "--k", 3, "--tests", 25, "--trials", 5,
    )
    assert r.returncode == 0, r.stderr
    assert r.stdout.splitlines()[0].startswith("trial,seed,n,k,T")


def test_simulate_byte_determinism_across_workers(tmp_path):
    outs = []
    for idx, workers in enumerate((1, 2)):
        out = tmp_path / f"t{idx}.csv"
        r = run_cli(
            "simulate", "--n", 60, "--k", 4, "--tests", 30, "--trials", 16,
            "--workers", workers, "--seed", 7, "--out", out,
        )
        assert r.returncode == 0, r.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_simulate_refusal_budget_is_exit_3(tmp_path):
    out = tmp_path / "trials.csv"
    r = run_cli(
        "simulate", "--n", 60, "--k", 4, "--tests", 30, "--decoder", "subset",
        "--eta-minus", 0.25, "--family-cap", 1, "--trials", 10, "--out", out,
    )
    assert r.returncode == 3
    # the CSV still lands on disk with the refusals marked
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 10
    assert all(row["success"] == "refused" for row in rows)


def test_simulate_pipeline_decoder(tmp_path):
    out = tmp_path / "trials.csv"
    r = run_cli(
        "simulate", "--n", 80, "--k", 4, "--tests", 60, "--decoder", "pipeline",
        "--alpha", 0.1, "--criterion", "two-sided", "--beta", 2.0,
        "--trials", 6, "--out", out,
    )
    assert r.returncode == 0, r.stderr


def test_simulate_explicit_design_file(tmp_path):
    dpath = tmp_path / "d.txt"
    r = run_cli("gen-design", "--n", 50, "--k", 4, "--tests", 35, "--seed", 2, "--out", dpath)
    assert r.returncode == 0
    out = tmp_path / "trials.csv"
    r = run_cli(
        "simulate", "--n", 50, "--k", 4, "--tests", 35, "--design", f"file:{dpath}",
        "--trials", 5, "--out", out,
    )
    assert r.returncode == 0, r.stderr


# ---------------------------------------------------------------------------
# thresholds


def test_thresholds_with_theta_list(tmp_path):
    out = tmp_path / "curve.csv"
    r = run_cli("thresholds", "--thetas", "0.2,0.45,0.8", "--out", out)
    assert r.returncode == 0, r.stderr
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [float(x["theta"]) for x in rows] == [0.2, 0.45, 0.8]
    assert float(rows[0]["zeta"]) == 1.0
    assert float(rows[2]["zeta"]) < float(rows[1]["zeta"]) < 1.0


def test_thresholds_with_grid(tmp_path):
    out = tmp_path / "curve.csv"
    r = run_cli("thresholds", "--grid", "0.1:0.9:5", "--out", out)
    assert r.returncode == 0, r.stderr
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 5
    assert float(rows[0]["theta"]) == 0.1
    assert float(rows[-1]["theta"]) == 0.9


def test_thresholds_needs_a_theta_source(tmp_path):
    r = run_cli("thresholds", "--out", tmp_path / "x.csv")
    assert r.returncode != 0


# ---------------------------------------------------------------------------
# masking


def test_masking_subcommand(tmp_path):
    out = tmp_path / "masking.csv"
    r = run_cli(
        "masking", "--n", 100, "--theta", 0.5, "--rates", "0.4,0.8",
        "--trials", 15, "--out", out,
    )
    assert r.returncode == 0, r.stderr
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    assert int(rows[0]["tests"]) > int(rows[1]["tests"])


# ---------------------------------------------------------------------------
# oracle-check


def test_oracle_check_passing_suite():
    r = run_cli("oracle-check", "--suite", "explained-naive", "--seed", 1)
    assert r.returncode == 0, r.stderr
    assert "[PASS] explained-naive" in r.stdout


def test_oracle_check_unknown_suite():
    r = run_cli("oracle-check", "--suite", "bogus")
    assert r.returncode == 2  # argparse choice error


# ---------------------------------------------------------------------------
# config files


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text(
        "# experiment setup\n"
        "n = 60\n"
        "k = 4\n"
        "tests = 30\n"
        "trials = 8\n"
        "decoder = dd\n"
    )
    out = tmp_path / "trials.csv"
    r = run_cli("simulate", "--config", cfg, "--out", out)
    assert r.returncode == 0, r.stderr
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 8
    assert rows[0]["n"] == "60"


def test_cli_flags_override_config(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("n = 60\nk = 4\ntests = 30\ntrials = 8\n")
    out = tmp_path / "trials.csv"
    r = run_cli("simulate", "--config", cfg, "--trials", 3, "--out", out)
    assert r.returncode == 0, r.stderr
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 3


def test_config_file_dashed_keys(tmp_path):
    # keys may use dashes or underscores interchangeably
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("n = 60\nk = 4\ntests = 30\ntrials = 4\ndecoder = subset\neta-minus = 0.25\n")
    out = tmp_path / "trials.csv"
    r = run_cli("simulate", "--config", cfg, "--out", out)
    assert r.returncode == 0, r.stderr


def test_config_file_rejects_bad_lines(tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("n 60\n")
    r = run_cli("simulate", "--config", cfg)
    assert r.returncode == 1
