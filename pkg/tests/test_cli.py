"""End-to-end tests of the command-line front end.

Everything goes through cli_main(argv) so exit codes and output files are
exercised exactly as a shell user would see them.
"""

import csv
import json

import numpy as np
import pytest

import chiralclock as cc
from chiralclock.cli import cli_main
from chiralclock.model import wrap_angle


# ── states ─────────────────────────────────────────────────────────────


def test_states_fm_stdout(capsys):
    assert cli_main(["states", "--family", "FM", "--n-sites", "3"]) == 0
    assert capsys.readouterr().out == "000\n111\n222\n"


def test_states_explicit_and_random(tmp_path, capsys):
    rc = cli_main(
        ["states", "--family", "explicit", "--n-sites", "3",
         "--strings", "010,221"]
    )
    assert rc == 0
    assert capsys.readouterr().out == "010\n221\n"

    out = tmp_path / "states.txt"
    rc = cli_main(
        ["states", "--family", "random", "--n-sites", "4",
         "--count", "5", "--seed", "9", "--out", str(out)]
    )
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 5
    assert lines == cc.initial_state_strings(
        cc.InitialStateFamily(kind="random", count=5, seed=9), 4
    )


def test_states_bad_family_exits_2(capsys):
    assert cli_main(["states", "--family", "FM", "--n-sites", "0"]) == 2
    assert capsys.readouterr().err.startswith("error:")


# ── map-ck ─────────────────────────────────────────────────────────────


def test_map_ck_forward_and_invert_round_trip(tmp_path, capsys):
    thetas = ["0.7", "-0.4", "0.25", "0.1"]
    rc = cli_main(
        ["map-ck", "--theta11", thetas[0], "--theta12", thetas[1],
         "--theta21", thetas[2], "--theta22", thetas[3]]
    )
    assert rc == 0
    couplings = json.loads(capsys.readouterr().out)
    assert set(couplings) == {
        "J", "theta", "J_prime", "theta_prime",
        "h1", "phi1", "h2", "phi2", "h_identity",
    }

    out = tmp_path / "angles.json"
    rc = cli_main(
        ["map-ck", "--invert",
         "--j", repr(couplings["J"]), "--theta", repr(couplings["theta"]),
         "--j-prime", repr(couplings["J_prime"]),
         "--theta-prime", repr(couplings["theta_prime"]),
         "--h1", repr(couplings["h1"]), "--phi1", repr(couplings["phi1"]),
         "--h2", repr(couplings["h2"]), "--phi2", repr(couplings["phi2"]),
         "--h-identity", repr(couplings["h_identity"]),
         "--out", str(out)]
    )
    assert rc == 0
    angles = json.loads(out.read_text())
    got = [angles["theta_11"], angles["theta_12"],
           angles["theta_21"], angles["theta_22"]]
    np.testing.assert_allclose(
        wrap_angle(np.array(got)),
        wrap_angle(np.array([float(t) for t in thetas])),
        atol=1e-12,
    )


def test_map_ck_missing_angles_exits_2(capsys):
    assert cli_main(["map-ck", "--theta11", "0.1"]) == 2
    assert "theta12" in capsys.readouterr().err


# ── simulate ───────────────────────────────────────────────────────────


def test_simulate_to_file(tmp_path):
    out = tmp_path / "run.csv"
    rc = cli_main(
        ["simulate", "--n-sites", "3", "--seed", "5", "--g", "0.9",
         "--cycles", "6", "--initial", "012", "--autocorrelator", "all",
         "--chi-ea", "--out", str(out)]
    )
    assert rc == 0
    with open(out, newline="") as f:
        rows = list(csv.DictReader(f))
    assert set(rows[0]) == {"t", "site", "observable", "re", "im"}
    names = {r["observable"] for r in rows}
    assert {"pop0", "pop1", "pop2", "mag", "autocorr", "chi_ea"} <= names
    assert {r["t"] for r in rows} == {str(t) for t in range(7)}


def test_simulate_with_params_file(tmp_path, capsys):
    params = cc.sample_disorder(cc.DisorderSpec(seed=2), 2, 0)
    pfile = tmp_path / "chain.json"
    pfile.write_text(params.to_json())
    rc = cli_main(
        ["simulate", "--params", str(pfile), "--g", "1.0",
         "--cycles", "4", "--initial", "01"]
    )
    assert rc == 0
    assert "mag" in capsys.readouterr().out

    rc = cli_main(
        ["simulate", "--params", str(pfile), "--n-sites", "5", "--g", "1.0",
         "--cycles", "4", "--initial", "01"]
    )
    assert rc == 2
    assert "contradicts" in capsys.readouterr().err


def test_simulate_initial_length_mismatch_exits_2(capsys):
    rc = cli_main(
        ["simulate", "--n-sites", "3", "--g", "0.9",
         "--cycles", "4", "--initial", "0120"]
    )
    assert rc == 2
    assert capsys.readouterr().err.startswith("error:")


def test_simulate_bad_trit_string_exits_2(capsys):
    rc = cli_main(
        ["simulate", "--n-sites", "3", "--g", "0.9",
         "--cycles", "4", "--initial", "013"]
    )
    assert rc == 2
    assert capsys.readouterr().err.startswith("error:")


# ── spectrum ───────────────────────────────────────────────────────────


def test_spectrum_json(tmp_path):
    out = tmp_path / "spec.json"
    rc = cli_main(
        ["spectrum", "--n-sites", "2", "--seed", "3", "--g", "1.0",
         "--out", str(out)]
    )
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["dim"] == 9
    assert report["n_sites"] == 2
    assert report["g"] == 1.0
    assert len(report["quasienergies"]) == 9
    # at the solvable point the spectrum pairs exactly at 2*pi/3
    assert report["delta23_mean"] < 1e-10


# ── fft ────────────────────────────────────────────────────────────────


def test_fft_roundtrip(tmp_path, capsys):
    t = np.arange(30)
    series = np.cos(2 * np.pi * t / 3)
    src = tmp_path / "series.csv"
    src.write_text(
        "t,value\n"
        + "\n".join(f"{i},{float(v)!r}" for i, v in zip(t, series))
        + "\n"
    )
    rc = cli_main(["fft", "--input", str(src)])
    assert rc == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    mags = np.array([float(r["magnitude"]) for r in rows])
    assert len(mags) == 30
    assert mags.argmax() == 10  # omega = 2*pi/3 bin
    np.testing.assert_allclose(mags[10], 0.5, atol=1e-12)


def test_fft_missing_column_exits_2(tmp_path, capsys):
    src = tmp_path / "series.csv"
    src.write_text("t,value\n0,1.0\n")
    assert cli_main(["fft", "--input", str(src), "--column", "nope"]) == 2
    assert "nope" in capsys.readouterr().err
    assert cli_main(["fft", "--input", str(tmp_path / "missing.csv")]) == 2


# ── sweep ──────────────────────────────────────────────────────────────


def test_sweep_from_config_file(tmp_path, capsys):
    cfg = cc.SweepConfig(
        n_sites=2,
        g_grid=(1.0,),
        cycles=5,
        disorder=cc.DisorderSpec(seed=11),
        n_disorder_instances=1,
        initial=cc.InitialStateFamily(kind="FM"),
        probes=cc.ObservableSet(autocorrelator_sites=(1,)),
        output_path=str(tmp_path / "ignored"),
    )
    cfile = tmp_path / "sweep.json"
    cfile.write_text(cfg.to_json())
    dest = tmp_path / "dataset"
    rc = cli_main(
        ["sweep", "--config", str(cfile), "--out", str(dest), "--workers", "2"]
    )
    assert rc == 0
    assert "sweep complete" in capsys.readouterr().out
    assert (dest / "manifest.json").is_file()
    assert len(list((dest / "trajectories").iterdir())) == 3
    manifest = json.loads((dest / "manifest.json").read_text())
    assert manifest["config"]["worker_count"] == 2


def test_sweep_bad_config_exits_2(tmp_path, capsys):
    cfile = tmp_path / "bad.json"
    cfile.write_text("{\"n_sites\": 2}")
    assert cli_main(["sweep", "--config", str(cfile)]) == 2
    assert capsys.readouterr().err.startswith("error:")
    cfile.write_text("not json at all")
    assert cli_main(["sweep", "--config", str(cfile)]) == 2


# ── usage errors ───────────────────────────────────────────────────────


def test_unknown_command_exits_2(capsys):
    assert cli_main(["frobnicate"]) == 2
    capsys.readouterr()


def test_missing_required_argument_exits_2(capsys):
    assert cli_main(["simulate", "--n-sites", "3"]) == 2
    capsys.readouterr()


def test_console_entry_point_installed():
    import importlib.metadata as md

    eps = md.entry_points(group="console_scripts")
    assert any(
        ep.name == "chiralclock" and ep.value == "chiralclock.cli:main"
        for ep in eps
    )
