import json

import numpy as np
import pytest

from specgap.algebra import block_operator, write_operator
from specgap.cfun import CompactRealSet, PLFunction, write_pl, write_set
from specgap.cli import main
from specgap.norms import operator_norm_spec, write_norm_spec

from conftest import make_spec


@pytest.fixture
def op_file(tmp_path):
    T = block_operator([(0, np.diag([0.0, 1.0])), (1, np.diag([0.25, 0.75]))])
    p = tmp_path / "op.json"
    write_operator(T, p)
    return p


@pytest.fixture
def norm_file(tmp_path):
    p = tmp_path / "norm.json"
    write_norm_spec(make_spec([1.0, 2.0]), p)
    return p


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    payload = json.loads(out.out) if out.out.strip() else None
    return code, payload, out.err


def test_disconnect_command(capsys, tmp_path, op_file, norm_file):
    code, payload, _ = run(capsys, "disconnect", "--operator", op_file,
                           "--norm", norm_file, "--eps", "0.1",
                           "--output-dir", tmp_path, "--out", "cert.json")
    assert code == 0
    assert payload["phi_X"] < 0.1
    assert payload["components_after"] >= 2
    assert payload["disconnected"] is True
    assert payload["version"] and payload["seed"] == 0
    cert = json.loads((tmp_path / "cert.json").read_text())
    assert cert["route"] == "sup_inf"


def test_stdout_bytes_are_reproducible(capsys, tmp_path, op_file, norm_file):
    args = ("disconnect", "--operator", op_file, "--norm", norm_file,
            "--eps", "0.1", "--output-dir", tmp_path)
    code1, p1, _ = run(capsys, *args)
    code2, p2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and p1 == p2


def test_disconnect_rr0_command(capsys, tmp_path, op_file):
    code, payload, _ = run(capsys, "disconnect-rr0", "--operator", op_file,
                           "--eps", "0.5", "--output-dir", tmp_path)
    assert code == 0
    assert payload["route"] == "rr0"
    assert payload["eps0"] == pytest.approx(0.25)


def test_cphi_command(capsys, tmp_path, norm_file):
    code, payload, _ = run(capsys, "cphi", "--norm", norm_file,
                           "--dims", "2,2", "--output-dir", tmp_path)
    assert code == 0
    assert payload["c_phi"] == 2.0
    assert payload["finite"] is True and payload["dominating"] is True


def test_cphi_divergent_reports_inf(capsys, tmp_path):
    p = tmp_path / "divnorm.json"
    write_norm_spec(make_spec([1.0, 2.0], tail_weights="divergent"), p)
    code, payload, _ = run(capsys, "cphi", "--norm", p, "--dims", "2,2",
                           "--tail", "repeat_last", "--output-dir", tmp_path)
    assert code == 0
    assert payload["c_phi"] == "inf" and payload["finite"] is False


def test_riesz_command(capsys, tmp_path, op_file):
    code, payload, _ = run(capsys, "riesz", "--operator", op_file,
                           "--center", "0,0", "--radius", "0.1",
                           "--output-dir", tmp_path, "--out", "proj.json")
    assert code == 0
    assert payload["rank"] == 1
    assert payload["idem_residual"] < 1e-10
    assert (tmp_path / "proj.json").exists()


def test_domain_failure_exits_1(capsys, tmp_path, op_file):
    # a contour through the spectrum is a domain error, not a usage error
    code, payload, err = run(capsys, "riesz", "--operator", op_file,
                             "--center", "0,0", "--radius", "0.25",
                             "--exclusion-dist", "0.3",
                             "--output-dir", tmp_path)
    assert code == 1 and payload is None
    assert "ContourThroughSpectrum" in err


def test_usage_failures_exit_2(capsys, tmp_path, op_file, norm_file):
    code, _, err = run(capsys, "disconnect", "--operator",
                       tmp_path / "missing.json", "--norm", norm_file,
                       "--eps", "0.1", "--output-dir", tmp_path)
    assert code == 2 and "usage error" in err
    code, _, err = run(capsys, "riesz", "--operator", op_file,
                       "--center", "nonsense", "--radius", "1",
                       "--output-dir", tmp_path)
    assert code == 2
    with pytest.raises(SystemExit) as ei:
        main(["no-such-command"])
    assert ei.value.code == 2


def test_outputs_confined_to_output_dir(capsys, tmp_path, op_file, norm_file):
    code, _, err = run(capsys, "disconnect", "--operator", op_file,
                       "--norm", norm_file, "--eps", "0.1",
                       "--output-dir", tmp_path / "inner",
                       "--out", "../escape.json")
    assert code == 2 and "escapes" in err
    assert not (tmp_path / "escape.json").exists()
    # relative subdirectories inside the sandbox are fine
    code, _, _ = run(capsys, "disconnect", "--operator", op_file,
                     "--norm", norm_file, "--eps", "0.1",
                     "--output-dir", tmp_path / "inner",
                     "--out", "sub/cert.json")
    assert code == 0 and (tmp_path / "inner" / "sub" / "cert.json").exists()


def test_pseudospectrum_command(capsys, tmp_path, op_file):
    code, payload, _ = run(capsys, "pseudospectrum", "--operator", op_file,
                           "--eps", "0.2", "--grid=-1,2,-1,1",
                           "--nx", "11", "--ny", "7",
                           "--output-dir", tmp_path, "--out", "ps.csv")
    assert code == 0
    assert 0.0 < payload["marked_fraction"] < 1.0
    assert (tmp_path / "ps.csv").read_text().startswith("re,im,marked")


def test_shift_demo_command(capsys, tmp_path):
    code, payload, _ = run(capsys, "shift-demo", "--n", "16", "--eps", "1e-3",
                           "--nx", "31", "--output-dir", tmp_path)
    assert code == 0
    assert payload["inclusion_passed"] is True
    assert payload["half_shift_marked_fraction"] > 0.0


def test_cfun_disconnect_command(capsys, tmp_path):
    write_set(CompactRealSet.cantor(depth=6, ratio="1/3"), tmp_path / "set.json")
    write_pl(PLFunction(breakpoints=(-0.5, 1.5), values=(0.0, 2.0)),
             tmp_path / "fn.json")
    code, payload, _ = run(capsys, "cfun-disconnect", "--set", tmp_path / "set.json",
                           "--fn", tmp_path / "fn.json", "--eps", "0.1",
                           "--output-dir", tmp_path, "--out", "g.json")
    assert code == 0
    assert payload["sup_dist"] < 0.1 and payload["range_gap"] > 0.0
    assert payload["range_components"] >= 2
    assert (tmp_path / "g.json").exists()


def test_counterexample_command(capsys, tmp_path):
    code, payload, _ = run(capsys, "counterexample", "--k", "4",
                           "--trials", "5", "--output-dir", tmp_path)
    assert code == 0
    assert payload["passes"] == 5 and payload["all_passed"] is True


def test_verify_suite_command(capsys, tmp_path):
    code, payload, err = run(capsys, "verify-suite", "--suite", "uppertri",
                             "--suite", "riesz", "--output-dir", tmp_path)
    assert code == 0
    assert payload["all_passed"] is True
    assert {r["name"] for r in payload["suites"]} == {"uppertri", "riesz"}
    assert "PASS" in err


def test_seed_env_fallback(capsys, tmp_path, op_file, norm_file, monkeypatch):
    monkeypatch.setenv("SPECTOOL_SEED", "77")
    code, payload, _ = run(capsys, "disconnect", "--operator", op_file,
                           "--norm", norm_file, "--eps", "0.1",
                           "--output-dir", tmp_path)
    assert code == 0 and payload["seed"] == 77
