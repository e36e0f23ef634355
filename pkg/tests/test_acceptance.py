"""End-to-end acceptance checks for the package.

Nine criteria covering the closed forms, the brute-force oracle, the Monte
Carlo bridge, and the structural property suites. Each test prints exactly
one PASS/FAIL line (run with `pytest -s tests/test_acceptance.py` to see
them all) and asserts the same condition, so the suite both reports and
gates. Tolerances are fixed here and are not to be loosened to make a
failing build green.
"""

import time

import numpy as np
import pytest

from conftest import H_REF, H_STAR_I, Y_STAR_I
from lvharvest.classify import Regime, classify
from lvharvest.harvest import (
    grid_search_oracle,
    noise_sensitivity,
    optimal_policy,
    stationarity_residual,
    yield_theoretical,
)
from lvharvest.mc import (
    EnsembleConfig,
    convergence_check,
    empirical_yield,
    periodicity_check,
    run_ensemble,
)
from lvharvest.model import HarvestEffort, ModelParams, b_integrals, deltas, phis
from lvharvest.periodic import PeriodicFn
from lvharvest.sde import SimConfig, log_growth_rate, simulate


def _gate(num, label, failures):
    ok = not failures
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {label}", flush=True)
    assert ok, f"criterion {num}: " + "; ".join(failures)


def _check(failures, name, ok):
    if not ok:
        failures.append(name)


def test_criterion_1_baseline_closed_forms(case_i):
    t0 = time.perf_counter()
    delta, d1, d2 = deltas(case_i, H_REF)
    b = b_integrals(case_i, H_REF)
    ph = phis(case_i, H_REF)
    pol = optimal_policy(case_i)
    elapsed = time.perf_counter() - t0

    f = []
    _check(f, "delta", abs(delta - 14.85) < 1e-12)
    _check(f, "b_int1", abs(b[0] - 3.20) <= 0.01)
    _check(f, "b_int2", abs(b[1] - 3.33) <= 0.01)
    _check(f, "delta1", abs(d1 - 9.88) <= 0.02)
    _check(f, "delta2", abs(d2 - 12.72) <= 0.02)
    _check(f, "phi1", abs(ph[0] - 2.71) <= 0.02)
    _check(f, "phi2", abs(ph[1] - 2.69) <= 0.02)
    _check(f, "h1_star", abs(pol.H_star[0] - 3.29) <= 0.01)
    _check(f, "h2_star", abs(pol.H_star[1] - 3.26) <= 0.01)
    _check(f, "y_star", abs(pol.Y_star - 4.99) <= 0.02)
    _check(f, "policy_valid", pol.valid)
    _check(f, "under_1s", elapsed < 1.0)
    _gate(1, "baseline closed forms match the recorded table", f)


def test_criterion_2_noisier_cases_closed_forms(case_ii, case_iii):
    t0 = time.perf_counter()
    pol2 = optimal_policy(case_ii)
    pol3 = optimal_policy(case_iii)
    elapsed = time.perf_counter() - t0

    f = []
    _check(f, "ii.h1_star", abs(pol2.H_star[0] - 3.17) <= 0.01)
    _check(f, "ii.h2_star", abs(pol2.H_star[1] - 3.27) <= 0.01)
    _check(f, "ii.y_star", abs(pol2.Y_star - 4.83) <= 0.02)
    _check(f, "ii.valid", pol2.valid)
    _check(f, "iii.h1_star", abs(pol3.H_star[0] - 3.29) <= 0.01)
    _check(f, "iii.h2_star", abs(pol3.H_star[1] - 2.96) <= 0.01)
    _check(f, "iii.y_star", abs(pol3.Y_star - 4.50) <= 0.02)
    _check(f, "iii.valid", pol3.valid)
    _check(f, "under_1s", elapsed < 1.0)
    _gate(2, "medium/high-noise optima match the recorded table", f)


def test_criterion_3_grid_oracle_agrees(case_i, policy_i):
    t0 = time.perf_counter()
    h_grid, y_grid = grid_search_oracle(case_i, h_max=6.0, step=0.01)
    elapsed = time.perf_counter() - t0

    f = []
    _check(f, "h1_within_step", abs(h_grid[0] - policy_i.H_star[0]) <= 0.01 + 1e-9)
    _check(f, "h2_within_step", abs(h_grid[1] - policy_i.H_star[1]) <= 0.01 + 1e-9)
    _check(f, "lattice_dominated", y_grid <= policy_i.Y_star + 1e-9)
    _check(f, "lattice_near_optimum", y_grid >= policy_i.Y_star - 1e-3)
    _check(f, "under_10s", elapsed < 10.0)
    _gate(3, "brute-force lattice search reproduces the closed-form optimum", f)


def test_criterion_4_ensemble_time_averages(ensemble_main):
    mean_avg = ensemble_main.time_avg_summary.mean
    target = (0.665, 0.857)

    f = []
    _check(f, "x1_within_5pct", abs(mean_avg[0] - target[0]) <= 0.05 * target[0])
    _check(f, "x2_within_5pct", abs(mean_avg[1] - target[1]) <= 0.05 * target[1])
    _check(f, "all_paths_survive", ensemble_main.n_surviving == 500)
    _gate(4, "simulated time averages match the predicted coexistence levels", f)


def test_criterion_5_empirical_yield(case_i, policy_i, ensemble_cfg_main, ensemble_main, ensemble_ones):
    h_star = HarvestEffort(*policy_i.H_star)
    est, se = empirical_yield(case_i, h_star, ensemble_cfg_main, stats=ensemble_main)
    est1, se1 = empirical_yield(
        case_i, HarvestEffort(1.0, 1.0), ensemble_cfg_main, stats=ensemble_ones
    )
    y_ones = yield_theoretical(case_i, (1.0, 1.0))

    f = []
    _check(f, "optimal_yield_5pct", abs(est - 4.99) <= 0.05 * 4.99)
    _check(f, "ones_within_3se", abs(est1 - y_ones) <= 3.0 * se1)
    _check(f, "se_positive", se > 0 and se1 > 0)
    _gate(5, "Monte Carlo yields bridge to the closed forms", f)


def test_criterion_6_overharvesting_extinction(case_i):
    t0 = time.perf_counter()
    h = HarvestEffort(10.0, 10.0)
    traj = simulate(case_i, h, SimConfig(dt=1e-3, t_end=50.0, x0=(0.5, 0.5), seed=2024))
    slopes = log_growth_rate(traj)
    rep = classify(case_i, h)
    elapsed = time.perf_counter() - t0

    f = []
    _check(f, "x1_decays", slopes[0] < -1.0)
    _check(f, "x2_decays", slopes[1] < -1.0)
    _check(f, "classified_extinct", rep.regime is Regime.BOTH_EXTINCT)
    _check(f, "under_1s", elapsed < 1.0)
    _gate(6, "excessive efforts drive both species extinct", f)


def test_criterion_7_initial_condition_forgetting(case_i, policy_i):
    cfg = EnsembleConfig(
        n_paths=200,
        sim=SimConfig(dt=1e-3, t_end=50.0, x0=(0.01, 0.01), seed=0),
        master_seed=777,
    )
    rep = convergence_check(
        case_i, HarvestEffort(*policy_i.H_star), (0.01, 0.01), (2.0, 2.0), cfg
    )
    at_1 = rep.gap[int(np.searchsorted(rep.times, 1.0))]
    final = rep.gap[-1]

    f = []
    _check(f, "x1_contracts", final[0] <= 0.05 * at_1[0] + 1e-15)
    _check(f, "x2_contracts", final[1] <= 0.05 * at_1[1] + 1e-15)
    _check(f, "report_ok", rep.ok)
    _gate(7, "coupled ensembles forget their initial conditions", f)


def test_criterion_8_periodic_phase_means(case_i, policy_i, ensemble_cfg_main, ensemble_main):
    pc = periodicity_check(
        case_i, HarvestEffort(*policy_i.H_star), ensemble_cfg_main,
        n_phases=8, stats=ensemble_main,
    )

    f = []
    _check(f, "n_phases", len(pc.phases) == 8)
    _check(f, "max_z_below_3", pc.max_z < 3.0)
    _gate(8, "phase means agree across consecutive periods within 3 SE", f)


def _constant_params(b1, b2, c, alpha=0.0):
    return ModelParams(
        r=(PeriodicFn(b1), PeriodicFn(b2)),
        alpha=(PeriodicFn(alpha), PeriodicFn(alpha)),
        c=c,
    )


def test_criterion_9_property_suites(case_i, case_ii, case_iii):
    f = []
    rng = np.random.default_rng(20260813)

    # (a) with both period-average growth rates positive, the two decisive
    # determinants can never be simultaneously negative
    bad_sign_pairs = 0
    n = 0
    while n < 1000:
        c11, c22 = rng.uniform(0.5, 5.0, size=2)
        c12, c21 = rng.uniform(0.0, 3.0, size=2)
        if c11 * c22 - c12 * c21 <= 1e-9:
            continue
        b1, b2 = rng.uniform(0.05, 4.0, size=2)
        _, d1, d2 = deltas(
            _constant_params(b1, b2, ((c11, c12), (c21, c22))), (0.0, 0.0)
        )
        if d1 < 0.0 and d2 < 0.0:
            bad_sign_pairs += 1
        n += 1
    _check(f, "sign_impossibility", bad_sign_pairs == 0)

    # (b) definiteness of the yield Hessian: with det > 0 the form
    # C^{-1} + C^{-T} is positive definite iff 4 det > (c12 - c21)^2, and
    # every certified-valid policy lands in that region
    mismatches = 0
    n = 0
    while n < 400:
        c11, c22 = rng.uniform(0.2, 6.0, size=2)
        c12, c21 = rng.uniform(0.0, 4.0, size=2)
        det = c11 * c22 - c12 * c21
        margin = 4.0 * det - (c12 - c21) ** 2
        if det <= 1e-9 or abs(margin) < 1e-9:
            continue
        inv = np.linalg.inv(np.array([[c11, c12], [c21, c22]]))
        is_pd = float(np.linalg.eigvalsh(inv + inv.T).min()) > 0.0
        if is_pd != (margin > 0.0):
            mismatches += 1
        n += 1
    _check(f, "definiteness_characterization", mismatches == 0)

    n_valid = 0
    nonconcave_valid = 0
    for _ in range(150):
        c11, c22 = rng.uniform(2.0, 6.0, size=2)
        c21 = rng.uniform(0.0, 0.4) * c11
        c12 = rng.uniform(0.0, 0.4) * c22
        r1 = rng.uniform(1.1, 1.7) * (c11 + c21)
        r2 = rng.uniform(1.1, 1.7) * (c22 + c12)
        params = _constant_params(r1, r2, ((c11, c12), (c21, c22)), alpha=0.1)
        pol = optimal_policy(params)
        if not pol.valid:
            continue
        n_valid += 1
        det = c11 * c22 - c12 * c21
        inv = np.linalg.inv(np.array([[c11, c12], [c21, c22]]))
        concave = (
            4.0 * det > (c12 - c21) ** 2
            and float(np.linalg.eigvalsh(inv + inv.T).min()) > 0.0
        )
        if not concave:
            nonconcave_valid += 1
    _check(f, "certified_policies_concave", nonconcave_valid == 0 and n_valid >= 30)

    for name, params in (("i", case_i), ("ii", case_ii), ("iii", case_iii)):
        inv = np.linalg.inv(params.C)
        _check(f, f"case_{name}_hessian_pd", float(np.linalg.eigvalsh(inv + inv.T).min()) > 0.0)

    # (c) the closed-form optimum is a stationary point of the yield
    for name, params in (("i", case_i), ("ii", case_ii), ("iii", case_iii)):
        pol = optimal_policy(params)
        res = float(np.linalg.norm(stationarity_residual(params, pol.H_star)))
        _check(f, f"case_{name}_stationary", res < 1e-10)

    # (d) best yield never improves as either noise intensity grows
    for species in (1, 2):
        rows = noise_sensitivity(case_i, species, np.linspace(0.0, 3.0, 10))
        ys = np.array([row.y_star for row in rows])
        _check(f, f"noise_monotone_{species}", bool(np.all(np.diff(ys) <= 1e-12)))

    # (e) the log-space scheme keeps states strictly positive even while
    # both species collapse
    traj = simulate(
        case_i, HarvestEffort(10.0, 10.0),
        SimConfig(dt=1e-3, t_end=20.0, x0=(0.5, 0.5), seed=3),
    )
    _check(f, "log_scheme_positive", bool(np.all(traj.states > 0.0)))

    # (f) seeded runs are exactly reproducible
    sim_cfg = SimConfig(dt=1e-3, t_end=5.0, x0=(0.5, 0.5), seed=99)
    t1 = simulate(case_i, H_REF, sim_cfg)
    t2 = simulate(case_i, H_REF, sim_cfg)
    _check(
        f, "single_path_reproducible",
        np.array_equal(t1.times, t2.times) and np.array_equal(t1.states, t2.states),
    )
    ens_cfg = EnsembleConfig(
        n_paths=32, sim=SimConfig(dt=1e-3, t_end=3.0, x0=(0.5, 0.5), seed=0),
        master_seed=11,
    )
    e1 = run_ensemble(case_i, H_REF, ens_cfg)
    e2 = run_ensemble(case_i, H_REF, ens_cfg)
    _check(
        f, "ensemble_reproducible",
        np.array_equal(e1.mean_path, e2.mean_path)
        and np.array_equal(e1.time_avg, e2.time_avg),
    )

    _gate(9, "structural property suites hold", f)
