"""Acceptance sweep: one printed PASS/FAIL line per criterion.

Run with ``pytest -s`` (the repository default) to see the lines.  One
check is expected to fail: the documented first refined shift for the
uniform-start rescue run (criterion 4) is not reproducible from the
stated inputs; the discrepancy is analyzed in the project decision log
kept outside this repository.  The companion checks pin down what the
run actually produces.
"""

import math
import time

import numpy as np
import pytest

import trispec as ts
from trispec.cli import bench_rows

SQUARE7_V0_RATIOS = (
    1.0, 0.587624, 0.426178, 0.329975, 0.260701, 0.204394, 0.153593, 0.101142,
)
PITFALL_TRACE = (4.78557, 5.67061, 5.91766, 5.91867)
BENCH_DESK = {
    8: (0.523309, 0.525268, 0.525268),
    100: (0.387333, 0.376393, 0.376383),
    500: (0.349147, 0.338342, 0.338329),
    1000: (0.338027, 0.327254, 0.327240),
}
BENCH_LARGE = (5000, 7500, 10000)
POWER_ROWS = {0: 2.11289, 10: 0.948331, 500: 0.525603, 990: 0.525268}
HUA_CASES = (((44.0, 20.0), 3), ((44.344, 20.0), 8), ((44.34397483, 20.0), 13))
HUA_RHO = 0.430408
HUA_U = (44.34397483, 20.0)
G_REFERENCE = (55.878, 26.5271, 15.7059, 9.97983, 6.43129, 4.0251, 2.2954, 1.0)
SMALLEST_THREE = (0.525268, 2.00758, 5.91867)
LEBESGUE_KAPPAS = {"nn": 0.0625, "dd": 0.0625, "dn": 0.25, "nd": 0.25}


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"\nCRITERION {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_criterion_01_efficient_initials(square7, guess7):
    ratios = guess7.v0_raw / guess7.v0_raw[0]
    ratio_err = float(np.max(np.abs(ratios - SQUARE7_V0_RATIOS)))
    delta_err = abs(guess7.delta1 - 2.05768)
    for _ in range(3):  # warm up caches before timing
        ts.efficient_initials(square7)
    best = min(_timed(lambda: ts.efficient_initials(square7)) for _ in range(7))
    ok = ratio_err <= 1e-6 and delta_err <= 1e-4 and best < 1e-3
    report(
        "1",
        ok,
        f"v0 ratio err {ratio_err:.2e} (<=1e-6), delta1={guess7.delta1:.7f} "
        f"(2.05768+-1e-4), best runtime {best * 1e3:.3f} ms (<1 ms)",
    )
    assert ok


def test_criterion_02_two_step_convergence(square7):
    lam, _, trace = ts.max_eigenpair(square7)
    zs = trace.zs
    ok = (
        len(trace.steps) == 2
        and trace.converged
        and abs(zs[0] - 0.528215) <= 1e-6
        and abs(zs[1] - 0.525268) <= 1e-6
    )
    report(
        "2",
        ok,
        f"z1={zs[0]:.7f} (0.528215+-1e-6), z2={zs[1]:.7f} (0.525268+-1e-6), "
        f"{len(trace.steps)} iterations (=2), final {lam:.12f}",
    )
    assert ok


def test_criterion_03_pitfall(square7):
    v0 = np.ones(square7.dimension)
    z0 = ts.rayleigh_quotient(square7, v0)
    trace = ts.rqi(square7, v0=v0, z0=z0)
    zs = trace.zs
    lam2 = float(ts.spectrum(square7, 3).eigenvalues[2])
    trace_err = float(np.max(np.abs(zs[: len(PITFALL_TRACE)] - PITFALL_TRACE)))
    limit_rel = abs(trace.z_final - lam2) / lam2
    ok = (
        len(zs) >= len(PITFALL_TRACE)
        and trace_err <= 1e-4
        and trace.pitfall_warning
        and limit_rel <= 1e-9
    )
    report(
        "3",
        ok,
        f"uniform start z0={z0:g}: trace err {trace_err:.2e} (<=1e-4), "
        f"pitfall warning {trace.pitfall_warning}, limit matches lambda_2 "
        f"{lam2:.9f} (rel {limit_rel:.1e})",
    )
    assert ok


def test_criterion_04_first_step_as_documented(square7):
    # faithful to the documented inputs; not reproducible (see the
    # module docstring) and therefore expected to fail
    v0 = np.ones(square7.dimension)
    trace = ts.rqi(square7, v0=v0, z0=0.485985)
    z1 = float(trace.zs[0])
    ok = abs(z1 - 0.525313) <= 1e-5
    report(
        "4",
        ok,
        f"uniform start z0=0.485985: z1={z1:.7f} vs documented 0.525313 "
        f"(|diff|={abs(z1 - 0.525313):.1e}, tol 1e-5); companions 4b/4c pin "
        "the reproducible values",
    )
    assert ok, "documented z1=0.525313 is not reproduced from the stated start"


def test_criterion_04b_second_step(square7):
    v0 = np.ones(square7.dimension)
    trace = ts.rqi(square7, v0=v0, z0=0.485985)
    z2 = float(trace.zs[1])
    ok = abs(z2 - 0.525268) <= 1e-6
    report("4b", ok, f"same run: z2={z2:.7f} (0.525268+-1e-6)")
    assert ok


def test_criterion_04c_efficient_start_reaches_documented_z1(square7, guess7):
    trace = ts.rqi(square7, guess7, z0=0.485985)
    z1 = float(trace.zs[0])
    ok = abs(z1 - 0.525313) <= 1e-5
    report(
        "4c", ok,
        f"efficient start with the same shift: z1={z1:.7f} (0.525313+-1e-5)",
    )
    assert ok


def test_criterion_05_benchmark_table():
    t0 = time.perf_counter()
    desk = bench_rows(sorted(BENCH_DESK))
    desk_seconds = time.perf_counter() - t0
    worst_abs = 0.0
    worst_rel = 0.0
    for row in desk:
        ref = BENCH_DESK[row.size]
        worst_abs = max(
            worst_abs,
            abs(row.z0 - ref[0]), abs(row.z1 - ref[1]), abs(row.z2 - ref[2]),
        )
        worst_rel = max(worst_rel, abs(row.z2 - row.lambda_oracle) / row.lambda_oracle)
    large = bench_rows(BENCH_LARGE)
    large_rel = max(abs(r.z2 - r.lambda_oracle) / r.lambda_oracle for r in large)
    ok = worst_abs <= 5e-6 and worst_rel <= 1e-6 and large_rel <= 1e-6 and desk_seconds < 30.0
    report(
        "5",
        ok,
        f"sizes {sorted(BENCH_DESK)}: worst |z-ref| {worst_abs:.2e} (<=5e-6), "
        f"z2-vs-oracle rel {worst_rel:.1e} (<=1e-6) in {desk_seconds:.2f} s (<30); "
        f"sizes {list(BENCH_LARGE)}: z2-vs-oracle rel {large_rel:.1e} (<=1e-6)",
    )
    assert ok


def test_criterion_06_power_iteration(square7, guess7):
    trace = ts.power_iteration(square7, guess7.v0_raw, max_iters=1000)
    by_k = {k: z for k, z, _ in trace.steps}
    errs = {k: abs(by_k[k] - ref) for k, ref in POWER_ROWS.items()}
    ok = errs[0] <= 2e-5 and all(errs[k] <= 1e-5 for k in (10, 500, 990))
    report(
        "6",
        ok,
        "rows k=0/10/500/990 errs "
        + "/".join(f"{errs[k]:.1e}" for k in sorted(errs))
        + " (tol 2e-5 at k=0, else 1e-5); shift m = max diagonal magnitude + 1 = 114",
    )
    assert ok


def test_criterion_07_collapse_times():
    years = []
    for x0, expected in HUA_CASES:
        economy = ts.Economy(
            structure=ts.DenseMatrix(np.array([[0.25, 0.14], [0.40, 0.12]])),
            input=np.array(x0),
        )
        rep = ts.collapse_time(economy, horizon=1000)
        years.append((rep.collapse_year, expected))
    rho, u, _ = ts.dense_max_eigenpair(
        ts.DenseMatrix(np.array([[0.25, 0.14], [0.40, 0.12]])), last=20.0
    )
    rho_err = abs(rho - HUA_RHO)
    u_err = float(np.max(np.abs(u - HUA_U)))
    ok = (
        all(got == want for got, want in years)
        and rho_err <= 1e-6
        and u_err <= 1e-6
    )
    report(
        "7",
        ok,
        f"collapse years {[g for g, _ in years]} (want [3, 8, 13]), "
        f"rho={rho:.7f} (0.430408+-1e-6), u err {u_err:.1e} (<=1e-6)",
    )
    assert ok


def test_criterion_08_oracle_golden_values(square7):
    lam, g = ts.max_eigenpair_reference(square7)
    res = ts.spectrum(square7, 3)
    g_err = float(np.max(np.abs(g / g[-1] - G_REFERENCE)))
    lam_err = abs(lam - 0.525268)
    spec_err = float(np.max(np.abs(res.eigenvalues - SMALLEST_THREE)))
    ok = lam_err <= 1e-5 and g_err <= 1e-3 and spec_err <= 1e-4
    report(
        "8",
        ok,
        f"lambda_0 err {lam_err:.1e} (<=1e-5), g err {g_err:.1e} (<=1e-3), "
        f"three smallest err {spec_err:.1e} (<=1e-4)",
    )
    assert ok


def test_criterion_09i_factor_four_bracket(random_operators):
    violations = 0
    checks = 0
    for op, grid in random_operators:
        for kind in ts.KINDS:
            res = ts.kappa(kind, grid)
            lam = ts.discretized_lambda(op, 800, kind)
            checks += 1
            if not res.lower <= lam <= res.upper:
                violations += 1
    ok = violations == 0 and checks >= 80
    report(
        "9i", ok,
        f"factor-4 bracket: {violations}/{checks} violations over "
        f"{len(random_operators)} operators x 4 kinds",
    )
    assert ok


def test_criterion_09ii_factor_two_bracket(random_systems):
    worst = 0.0
    violations = 0
    for q in random_systems:
        delta1 = ts.efficient_initials(q).delta1
        lam = float(ts.spectrum(q, 1).eigenvalues[0])
        prod = lam * delta1
        worst = max(worst, prod)
        if not 1.0 - 1e-12 <= prod <= 2.0 + 1e-12:
            violations += 1
    ok = violations == 0 and len(random_systems) >= 100
    report(
        "9ii", ok,
        f"factor-2 bracket: {violations}/{len(random_systems)} violations, "
        f"max lambda*delta1 = {worst:.4f} (in [1, 2])",
    )
    assert ok


def test_criterion_09iii_duality(random_systems, random_operators):
    worst = max(abs(ts.duality_check(grid)) for _, grid in random_operators)
    lebesgue = abs(ts.duality_check(ts.build_measures(ts.lebesgue_operator(), 1000)))
    ok = worst <= 1e-8 and lebesgue == 0.0
    report(
        "9iii", ok,
        f"duality identity: worst residual {worst:.1e} over "
        f"{len(random_operators)} operators (<=1e-8), Lebesgue exactly {lebesgue}",
    )
    assert ok


def test_criterion_09iv_sequence_properties(random_systems):
    min_r = math.inf
    worst_phi_rise = -math.inf
    for q in random_systems:
        r, h = ts.h_sequence(q)
        phi = ts.phi_sequence(q, ts.speed_measure(q), h)
        min_r = min(min_r, float(np.min(r)) if r.size else math.inf)
        rises = np.diff(phi) - 1e-12 * np.abs(phi[:-1])
        if rises.size:
            worst_phi_rise = max(worst_phi_rise, float(np.max(rises)))
    ok = min_r >= 1.0 - 1e-9 and worst_phi_rise <= 0.0
    report(
        "9iv", ok,
        f"r_n >= 1 (min {min_r - 1.0:+.1e} vs tol -1e-9) and phi strictly "
        f"decreasing on all {len(random_systems)} systems",
    )
    assert ok


def test_criterion_09v_oracle_vs_rqi(random_systems):
    worst = 0.0
    for q in random_systems:
        guess = ts.efficient_initials(q)
        trace = ts.rqi(q, guess, z0=guess.z0_inverse_delta)
        lam = float(ts.spectrum(q, 1).eigenvalues[0])
        worst = max(worst, abs(trace.z_final - lam) / lam)
    ok = worst <= 1e-10
    report(
        "9v", ok,
        f"oracle-vs-RQI agreement: worst rel diff {worst:.2e} over "
        f"{len(random_systems)} systems (<=1e-10)",
    )
    assert ok


def test_criterion_10_continuous_benchmarks():
    grid = ts.build_measures(ts.lebesgue_operator(), 1000)
    kappa_err = max(
        abs(ts.kappa(kind, grid).kappa - ref) for kind, ref in LEBESGUE_KAPPAS.items()
    )
    lam_dn = ts.discretized_lambda(ts.lebesgue_operator(), 1000, "dn")
    lam_dd = ts.discretized_lambda(ts.lebesgue_operator(), 1000, "dd")
    dn_rel = abs(lam_dn - math.pi**2 / 4.0) / (math.pi**2 / 4.0)
    dd_rel = abs(lam_dd - math.pi**2) / math.pi**2
    ok = kappa_err <= 1e-4 and dn_rel <= 1e-3 and dd_rel <= 1e-3
    report(
        "10", ok,
        f"kappa quartet err {kappa_err:.1e} (<=1e-4); lambda_DN rel "
        f"{dn_rel:.1e} vs pi^2/4, lambda_DD rel {dd_rel:.1e} vs pi^2 (<=1e-3)",
    )
    assert ok
