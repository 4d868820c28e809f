"""End-to-end smoke checks for the python bindings and the command line tool."""

import math
import os
import subprocess

import pytest

import weightlab as wl

BIN = os.environ.get("WEIGHTLAB_BIN")


def grid(n, origin=0.0):
    return wl.Grid1D(origin, 1.0 / n, n)


def test_maximal_worked_example():
    f = wl.GridFunction(grid(4), [0.0, 4.0, 0.0, 0.0])
    assert wl.maximal_function(f).values == [2.0, 4.0, 2.0, 4.0 / 3.0]
    w = wl.maximal_witness(f, 3)
    assert (w.begin, w.end, w.average) == (1, 3, 4.0 / 3.0)


def test_ap_duality_and_power_weights():
    g = grid(32, -0.5)
    w = wl.power_weight(0.4, g)
    for p in (1.5, 2.0, 3.0):
        primal = wl.ap_constant(w, p).constant
        dual = wl.ap_constant(wl.dual_weight(w, p), wl.conjugate_exponent(p)).constant
        assert dual == pytest.approx(primal ** (1.0 / (p - 1.0)), rel=1e-9)


def test_mixed_and_tuple_norms():
    space = wl.MixedSpace([wl.MeasuredAxis.counting(4)], [2.0])
    assert wl.mixed_norm([1.0, 2.0, 3.0, 4.0], space) == pytest.approx(math.sqrt(30.0))
    f = [1.0, 2.0, 2.0]
    sp3 = wl.MixedSpace([wl.MeasuredAxis.counting(3)], [2.0])
    assert wl.tuple_norm([f, f], 1.0, sp3) == pytest.approx(6.0)
    assert wl.tuple_norm([f, f], wl.inf, sp3) == pytest.approx(3.0)


def test_kernel_catalog_membership():
    g = wl.Grid1D(-1.0, 1.0 / 32.0, 64)
    k = wl.kernel_catalog("gaussian", wl.CatalogParams(t=0.02), g)
    verdict = wl.in_class_k(k, 32, 9)
    assert verdict.status == wl.Membership.certified
    assert k.mass_l1() <= 1.0 + 1e-9


def test_structured_family_sandwich():
    space = wl.MixedSpace([wl.MeasuredAxis.counting(3)], [2.0])
    fam = wl.make_family(space, [wl.Matrix.diagonal([0.5, 2.0, 1.0])],
                         wl.StructureTag.multiplication)
    exact = wl.exact_ls_bound_structured(fam, 1.5)
    assert exact == pytest.approx(2.0)
    est = wl.estimate_ls_bound(fam, 1.5, wl.SearchOptions(n_max=2, restarts=8, iters=60))
    assert est.lower <= exact * (1 + 1e-9)
    assert est.lower >= 0.9 * exact
    assert est.upper.value >= est.lower * (1 - 1e-9)


def test_rdf_invariants():
    g = grid(24, -0.5)
    w = wl.power_weight(0.3, g)
    u = wl.GridFunction(g, [abs(math.sin(3.0 * i + 0.5)) + 0.01 for i in range(24)])
    res = wl.rdf_iterate(u, 2.0, w)
    assert all(b >= a for a, b in zip(u.values, res.output.values))
    assert res.norm_ratio <= 2.0 + 1e-9
    assert res.tail_relative < 1e-6


def test_extrapolation_verdict():
    rep = wl.verify_maximal_extrapolation(2.0, [1.5, 3.0], [0.0, 0.4],
                                          grid_n=16, samples=6, seed=7)
    assert rep.verdict
    assert all(t.passed for t in rep.targets)


def test_norming_witness():
    space = wl.MixedSpace([wl.MeasuredAxis.counting(4), wl.MeasuredAxis.counting(3)],
                          [1.5, 4.0])
    g = [math.sin(1.7 * i) + 0.2 for i in range(12)]
    wit = wl.norming_function(g, space)
    assert wit.pairing_value == pytest.approx(wit.f_norm * wit.g_dual_norm, rel=1e-10)


def test_theorem_experiment_small():
    cfg = wl.ExperimentConfig()
    cfg.kernel_names = ["gaussian"]
    cfg.time_grid = wl.Grid1D(0.0, 1.0 / 24.0, 24)
    cfg.space_cells = 6
    cfg.space_h = 1.0 / 6.0
    cfg.family = "multiplication"
    cfg.member_mode = "evolution"
    cfg.multiplication_members = 2
    cfg.s_list = [2.0]
    cfg.weight_powers = [0.0, 0.3]
    cfg.search = wl.SearchOptions(n_max=2, restarts=4, iters=40)
    cfg.chain_trials = 4
    rep = wl.theorem_experiment(cfg)
    assert rep.sandwich_ok and rep.chain_ok
    assert len(rep.rows) == 2
    for row in rep.rows:
        assert row.lower <= row.structured_certificate * (1 + 1e-9)


def test_battery_tiny():
    battery = wl.run_battery(seed=7, size="tiny", threads=2)
    assert battery.all_pass
    assert len(battery.criteria) == 12


needs_cli = pytest.mark.skipif(BIN is None, reason="WEIGHTLAB_BIN not set")


@needs_cli
def test_cli_ap_flat_weight(tmp_path):
    path = tmp_path / "ones.csv"
    wl.write_grid_function(wl.GridFunction(grid(16), [1.0] * 16), str(path))
    run = subprocess.run([BIN, "ap", "--weight", str(path), "--p", "2"],
                         capture_output=True, text=True)
    assert run.returncode == 0
    assert run.stdout.strip() == "1.0"


@needs_cli
def test_cli_usage_errors():
    assert subprocess.run([BIN], capture_output=True).returncode == 2
    assert subprocess.run([BIN, "ap", "--bogus"], capture_output=True).returncode == 2
    assert subprocess.run([BIN, "nonsense"], capture_output=True).returncode == 2


@needs_cli
def test_cli_kernel_check_and_serialization(tmp_path):
    out = tmp_path / "k.csv"
    run = subprocess.run(
        [BIN, "kernel-check", "--name", "gaussian", "--t", "0.05", "--n", "128",
         "--out", str(out)],
        capture_output=True, text=True)
    assert run.returncode == 0
    header = [l for l in out.read_text().splitlines() if not l.startswith("#")][0]
    assert header == "offset,value"


@needs_cli
def test_cli_lsbound_family(tmp_path):
    fam = tmp_path / "fam.csv"
    fam.write_text(
        "member,row,col,value\n"
        "0,0,0,1.0\n0,1,1,1.0\n"
        "1,0,0,0.5\n1,1,1,2.0\n")
    out = tmp_path / "sweep.csv"
    run = subprocess.run(
        [BIN, "lsbound", "--family", str(fam), "--s", "2", "--out", str(out)],
        capture_output=True, text=True)
    assert run.returncode == 0
    rows = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
    assert rows[0] == "s,lower,upper,certificate_kind,exact"
    fields = rows[1].split(",")
    assert float(fields[4]) == pytest.approx(2.0)  # max |diag| over the family
    assert float(fields[1]) <= 2.0 * (1 + 1e-9)
