"""Two-species stochastic competition model with seasonal coefficients.

State x = (x1, x2) follows, for independent Brownian motions B1, B2,

    dx_i = x_i * (r_i(t) - h_i - c_i1*x1 - c_i2*x2) dt + alpha_i(t) * x_i dB_i

with 1-periodic growth rates r_i, noise intensities alpha_i, constant
competition matrix C = [[c11, c12], [c21, c22]], and constant harvesting
efforts h_i >= 0. Long-run behaviour is controlled by the period averages

    b_i = integral over one period of r_i(t) - h_i - alpha_i(t)^2 / 2

and the determinants Delta = c11*c22 - c12*c21,
Delta1 = c22*b_1 - c12*b_2, Delta2 = c11*b_2 - c21*b_1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import math

import numpy as np

from .errors import DegenerateInput
from .periodic import PeriodicFn, mean_square_over_period


def _as_periodic_pair(value, name: str) -> tuple[PeriodicFn, PeriodicFn]:
    pair = tuple(value)
    if len(pair) != 2 or not all(isinstance(f, PeriodicFn) for f in pair):
        raise DegenerateInput(f"{name} must be a pair of PeriodicFn")
    return pair  # type: ignore[return-value]


@dataclass(frozen=True)
class ModelParams:
    """Model coefficients: growth rates r, noise intensities alpha, matrix c."""

    r: tuple[PeriodicFn, PeriodicFn]
    alpha: tuple[PeriodicFn, PeriodicFn]
    c: tuple[tuple[float, float], tuple[float, float]]

    _c_arr: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "r", _as_periodic_pair(self.r, "r"))
        object.__setattr__(self, "alpha", _as_periodic_pair(self.alpha, "alpha"))
        rows = tuple(tuple(float(v) for v in row) for row in self.c)
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise DegenerateInput("c must be a 2x2 matrix")
        if not all(math.isfinite(v) for row in rows for v in row):
            raise DegenerateInput("competition coefficients must be finite")
        if rows[0][0] <= 0.0 or rows[1][1] <= 0.0:
            raise DegenerateInput("intraspecific coefficients c11, c22 must be > 0")
        if rows[0][1] < 0.0 or rows[1][0] < 0.0:
            raise DegenerateInput("interspecific coefficients c12, c21 must be >= 0")
        object.__setattr__(self, "c", rows)
        object.__setattr__(self, "_c_arr", np.array(rows))

    @property
    def C(self) -> np.ndarray:
        """Competition matrix as a (2, 2) array (a copy; safe to mutate)."""
        return self._c_arr.copy()

    def with_noise_scale(self, factor: float) -> "ModelParams":
        """Same model with both noise intensities multiplied by `factor`."""
        return ModelParams(
            r=self.r,
            alpha=(self.alpha[0].scaled(factor), self.alpha[1].scaled(factor)),
            c=self.c,
        )


@dataclass(frozen=True)
class HarvestEffort:
    """Constant harvesting efforts applied to the two species."""

    h1: float = 0.0
    h2: float = 0.0

    def __post_init__(self):
        for v in (self.h1, self.h2):
            if not (math.isfinite(v) and v >= 0.0):
                raise DegenerateInput(f"harvest efforts must be finite and >= 0, got {v!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.h1, self.h2])


def as_effort(h) -> HarvestEffort:
    """Coerce a HarvestEffort or any 2-sequence of numbers to HarvestEffort."""
    if isinstance(h, HarvestEffort):
        return h
    pair = tuple(float(v) for v in np.asarray(h, dtype=float).reshape(-1))
    if len(pair) != 2:
        raise DegenerateInput("harvest effort must have exactly 2 components")
    return HarvestEffort(*pair)


def mean_alpha_sq(params: ModelParams) -> np.ndarray:
    """Period averages of alpha_i(t)^2, shape (2,)."""
    return np.array([mean_square_over_period(a) for a in params.alpha])


def _species_to_index(species: int) -> int:
    if species not in (1, 2):
        raise DegenerateInput(f"species must be 1 or 2, got {species!r}")
    return species - 1


def b_integrals(params: ModelParams, h) -> np.ndarray:
    """Integrals of b_i(t) = r_i(t) - h_i - alpha_i(t)^2 / 2 over one period."""
    hv = as_effort(h).as_array()
    r_bar = np.array([f.mean_over_period() for f in params.r])
    return r_bar - hv - 0.5 * mean_alpha_sq(params)


def b_integral(params: ModelParams, h, species: int) -> float:
    """Integral of b over one period for one species (1 or 2)."""
    return float(b_integrals(params, h)[_species_to_index(species)])


def L_vector(params: ModelParams) -> np.ndarray:
    """Unharvested period-average growth L_i = integral of r_i - alpha_i^2 / 2."""
    return b_integrals(params, HarvestEffort(0.0, 0.0))


def deltas(params: ModelParams, h) -> tuple[float, float, float]:
    """(Delta, Delta1, Delta2) for the given efforts.

    Delta depends only on c; Delta1 and Delta2 combine the b-integrals with
    the competition coefficients and have the sign structure that decides
    which species persist.
    """
    b = b_integrals(params, h)
    (c11, c12), (c21, c22) = params.c
    delta = c11 * c22 - c12 * c21
    delta1 = c22 * b[0] - c12 * b[1]
    delta2 = c11 * b[1] - c21 * b[0]
    return float(delta), float(delta1), float(delta2)


def phis(params: ModelParams, h) -> np.ndarray:
    """Both growth exponents (Phi_1, Phi_2).

    Phi_m > 2 is the bound the periodic-solution argument needs; it combines
    the total average growth with a penalty from the peak growth rate:

        Phi_m = b_1 + b_2 - (sup r_m - h_m + c_mm + c_nm)^2 / (4 c_mm)

    with b_i the period integrals above, n the other species, and c_nm the
    competitor's sensitivity to species m.
    """
    hv = as_effort(h).as_array()
    b = b_integrals(params, h)
    total = float(b.sum())
    (c11, c12), (c21, c22) = params.c
    r_sup = np.array([f.sup_over_period() for f in params.r])
    out = np.empty(2)
    for m, (cmm, cnm) in enumerate(((c11, c21), (c22, c12))):
        num = r_sup[m] - hv[m] + cmm + cnm
        out[m] = total - num * num / (4.0 * cmm)
    return out


def phi(params: ModelParams, h, m: int) -> float:
    """Growth exponent Phi_m for one species (1 or 2)."""
    return float(phis(params, h)[_species_to_index(m)])


@dataclass(frozen=True)
class DerivedQuantities:
    """Period-averaged quantities that determine the long-run regime."""

    b_int: tuple[float, float]
    L: tuple[float, float]
    delta: float
    delta1: float
    delta2: float
    phi: tuple[float, float]


def derived_quantities(params: ModelParams, h) -> DerivedQuantities:
    b = b_integrals(params, h)
    delta, delta1, delta2 = deltas(params, h)
    ph = phis(params, h)
    L = L_vector(params)
    return DerivedQuantities(
        b_int=(float(b[0]), float(b[1])),
        L=(float(L[0]), float(L[1])),
        delta=float(delta),
        delta1=float(delta1),
        delta2=float(delta2),
        phi=(float(ph[0]), float(ph[1])),
    )


def drift_diffusion(params: ModelParams, h, x, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Instantaneous drift and diffusion coefficients at state x and time t.

    drift_i = x_i * (r_i(t) - h_i - (C x)_i), diffusion_i = alpha_i(t) * x_i.
    """
    hv = as_effort(h).as_array()
    xv = np.asarray(x, dtype=float)
    if xv.shape != (2,):
        raise DegenerateInput("state x must have shape (2,)")
    r_t = np.array([f(t) for f in params.r])
    a_t = np.array([f(t) for f in params.alpha])
    drift = xv * (r_t - hv - self_interaction(params, xv))
    diffusion = a_t * xv
    return drift, diffusion


def self_interaction(params: ModelParams, x: np.ndarray) -> np.ndarray:
    """(C x) for a single state vector x of shape (2,)."""
    return params._c_arr @ x
