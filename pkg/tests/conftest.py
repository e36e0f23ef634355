import numpy as np
import pytest

from lvharvest import (
    EnsembleConfig,
    HarvestEffort,
    Harmonic,
    ModelParams,
    PeriodicFn,
    SimConfig,
    optimal_policy,
    run_ensemble,
)

# Reference scenario used throughout: intrinsic rates 6.5 + 0.1 sin(2 pi t)
# and 6.6 + 0.1 sin(2 pi t), noise 0.1 + 0.01 cos(2 pi t) on both species
# (the low-noise case), interaction matrix ((4.3, 0.4), (0.5, 3.5)).
# The medium/high-noise variants bump one alpha constant to 0.7 or 1.1.


def _rate(constant):
    return PeriodicFn(constant=constant, harmonics=(Harmonic(amp=0.1, k=1),))


def _noise(constant):
    return PeriodicFn(constant=constant, harmonics=(Harmonic(amp=0.01, k=1, kind="cos"),))


C_REF = ((4.3, 0.4), (0.5, 3.5))


def make_case(alpha1=0.1, alpha2=0.1):
    return ModelParams(
        r=(_rate(6.5), _rate(6.6)),
        alpha=(_noise(alpha1), _noise(alpha2)),
        c=C_REF,
    )


@pytest.fixture(scope="session")
def case_i():
    return make_case(0.1, 0.1)


@pytest.fixture(scope="session")
def case_ii():
    return make_case(0.7, 0.1)


@pytest.fixture(scope="session")
def case_iii():
    return make_case(0.1, 1.1)


# Round reference effort used by the tabulated examples.
H_REF = HarvestEffort(3.29, 3.26)

# Frozen constants below were computed once with exact rational arithmetic
# (fractions.Fraction on the closed forms; trig means are exact because the
# coefficients are a constant plus a single harmonic).  They pin the library
# to the mathematics, not to itself.

# Case (i) optimum and maximal yield.
H_STAR_I = (3.290315676039737, 3.2642080358646237)
Y_STAR_I = 4.986000378503325
# Case (ii) (alpha1 -> 0.7).
H_STAR_II = (3.170497524835831, 3.2656224153897964)
Y_STAR_II = 4.829653461513933
# Case (iii) (alpha2 -> 1.1).
H_STAR_III = (3.2859715103552785, 2.9637534138743895)
Y_STAR_III = 4.49812726013323

# Case (i) diagnostics at the rounded effort H_REF.
B_AT_HREF = (3.204975, 3.334975)
DELTA_REF = 14.85
DELTA1_AT_HREF = 9.8834225
DELTA2_AT_HREF = 12.737905
PHI_AT_HREF = (2.715990697674419, 2.6916928571428573)
AVG_AT_HREF = (0.6655503367003367, 0.8577713804713805)
YIELD_AT_HREF = 4.985995308080808

# Case (i) diagnostics at the exact optimum H_STAR_I.
AVG_AT_HSTAR = (0.6655892827075265, 0.8565635207947466)

# Case (i) zero-noise growth integrals L_i = mean(r_i) - mean(alpha_i^2)/2.
L_CASE_I = (6.494975, 6.594975)

# Case (i) at effort (1, 1).
YIELD_AT_ONES = 2.579483333333333
AVG_AT_ONES = (1.1444055555555555, 1.4350777777777777)

# Case (iii) Phi values at the rounded effort (3.29, 2.96).
PHI_III_AT_REF = (2.4159906976744185, 2.0706928571428573)

# Noise sweeps: best yield when one alpha fn is scaled by s (constant and
# harmonic together, so scale 7 is close to but not equal to the 0.7 case).
Y_STAR_A1_SCALE7 = 4.82888878434606  # species 1, scale 7
Y_STAR_A2_SCALE11 = 4.495818871136765  # species 2, scale 11
Y_STAR_A1_SCALE0 = 4.989346452730889  # species 1 noise removed
Y_STAR_A2_SCALE0 = 4.990306438410296  # species 2 noise removed


@pytest.fixture(scope="session")
def policy_i(case_i):
    return optimal_policy(case_i)


# Shared Monte Carlo ensembles for the end-to-end checks.  Session scope so
# the ~500 x 100k-step runs happen once.


@pytest.fixture(scope="session")
def ensemble_cfg_main():
    return EnsembleConfig(
        n_paths=500,
        sim=SimConfig(dt=1e-3, t_end=100.0, x0=(0.01, 0.01), seed=0),
        master_seed=20260401,
    )


@pytest.fixture(scope="session")
def ensemble_main(case_i, policy_i, ensemble_cfg_main):
    h = HarvestEffort(*policy_i.H_star)
    return run_ensemble(case_i, h, ensemble_cfg_main, burn_in_fraction=0.5, n_phases=8)


@pytest.fixture(scope="session")
def ensemble_ones(case_i, ensemble_cfg_main):
    return run_ensemble(case_i, HarvestEffort(1.0, 1.0), ensemble_cfg_main, burn_in_fraction=0.5)
