import csv
import json

import numpy as np
import pytest

from twoatom.cli import CSV_HEADER, main
from twoatom.closed_form import SuperCoeffs, rate_triplet
from twoatom.gram import RecoilModel
from twoatom.sweep import FIGURES, NEAR_EXCLUSION_NF


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_rates_excluded(capsys):
    code, out = run(capsys, "rates", "--a", "0.5623")
    rec = json.loads(out.out)
    assert code == 0
    assert rec["excluded"]["fermion"] is True and rec["rate_fermion"] is None


def test_rates_a_one(capsys):
    _, out = run(capsys, "rates", "--a", "1")
    assert json.loads(out.out)["b"] == 0


def test_rates_malformed_params(capsys):
    code, out = run(capsys, "rates", "--a", "0.3", "--params", "1,1,1,0,1,0")
    assert code == 2
    assert "|c|^2 + |d|^2" in out.err


def test_rates_bad_param_count(capsys):
    code, _ = run(capsys, "rates", "--a", "0.3", "--params", "1,0")
    assert code == 2


def test_figure_csv(tmp_path):
    path = tmp_path / "fig1.csv"
    assert main(["figure", "fig1", "--out", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1002
    flags = [int(r.split(",")[-1]) for r in lines[1:]]
    idx = np.flatnonzero(flags)
    assert len(idx) <= 1 or np.all(np.diff(idx) == 1)
    for i in idx:
        assert lines[i + 1].split(",")[3] == "nan"


def test_figure_byte_identical(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["figure", "fig1", "--out", str(p1)])
    main(["figure", "fig1", "--out", str(p2)])
    assert p1.read_bytes() == p2.read_bytes()


def test_figure_fig2r_flat(tmp_path):
    path = tmp_path / "f.csv"
    main(["figure", "fig2r", "--out", str(path)])
    with path.open() as fh:
        rows = [r for r in csv.DictReader(fh) if r["excluded_fermion"] == "0"]
    vals = np.array([float(r["rate_fermion"]) for r in rows])
    assert (vals.max() - vals.min()) / vals.mean() < 1e-8


def test_csv_round_trip(tmp_path):
    path = tmp_path / "f.csv"
    main(["figure", "fig1", "--grid", "201", "--out", str(path)])
    spec = FIGURES["fig1"]
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    for r in rows[::7]:
        t = rate_triplet(SuperCoeffs.from_a(float(r["a"])), spec.params, RecoilModel(spec.rho),
                         spec.couplings, NEAR_EXCLUSION_NF)
        assert f"{t.rate_distinguishable:.12g}" == r["rate_distinguishable"]
        assert f"{t.rate_boson:.12g}" == r["rate_boson"]
        if r["excluded_fermion"] == "0":
            assert f"{t.rate_fermion:.12g}" == r["rate_fermion"]


def test_unknown_figure(capsys):
    code, _ = run(capsys, "figure", "fig7")
    assert code == 2


def test_io_failure(tmp_path):
    assert main(["figure", "fig1", "--grid", "3", "--out", str(tmp_path / "no" / "x.csv")]) == 3


def test_sweep_json(capsys):
    code, out = run(capsys, "sweep", "--grid", "5", "--format", "json", "--params", "0.5,0.8660254037844386,0.5,0.8660254037844386,0.5,0.8660254037844386")
    rows = json.loads(out.out)
    assert code == 0 and len(rows) == 5
    assert rows[0]["a"] == 0 and rows[-1]["a"] == 1


def test_exclusion_cmd(capsys):
    _, out = run(capsys, "exclusion")
    rec = json.loads(out.out)
    assert rec["found"] and rec["a"] == pytest.approx(0.56231, abs=1e-5)


def test_verify_ok(capsys):
    code, out = run(capsys, "verify", "--trials", "200", "--seed", "1")
    assert code == 0, out.out


def test_verify_rounding_floor(capsys):
    code, out = run(capsys, "verify", "--trials", "20", "--tol", "1e-18")
    assert code == 1
    assert "reproduce:" in out.out


def test_verify_zero_trials(capsys):
    code, _ = run(capsys, "verify", "--trials", "0")
    assert code == 2


def test_verify_deterministic(capsys):
    _, o1 = run(capsys, "verify", "--trials", "50", "--seed", "3")
    _, o2 = run(capsys, "verify", "--trials", "50", "--seed", "3")
    assert o1.out == o2.out
