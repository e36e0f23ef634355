"""Sustainable yield and the closed-form optimal harvesting policy.

In the coexistence regime the long-run expected yield of constant efforts
H = (h1, h2) is the bilinear form

    Y(H) = h1 * Delta1(H) / Delta + h2 * Delta2(H) / Delta = H^T C^{-1} (L - H)

with L the unharvested period-average growth vector. The quadratic form
C^{-1} + C^{-T} is positive definite exactly when Delta > 0, c22 > 0 and
4*Delta > (c12 - c21)^2; Delta > 0 alone does not suffice. The persistence
thresholds certified alongside the policy (both Phi_m > 2) force
2*sqrt(c11*c22) > 2 + c12 + c21, which implies the extra inequality, so Y is
strictly concave on every model this module reports as valid. The
stationarity condition 0 = C^{-1} L - (C^{-1} + C^{-T}) H then has the
unique solution

    A = [C (C^{-1})^T + I]^{-1} L,     Y* = A^T C^{-1} (L - A),

which is the optimal policy whenever it keeps both species persistent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import Regime, classify
from .errors import AssumptionViolation, DegenerateInput, EmptyFeasible, RegimeError
from .model import ModelParams, L_vector, as_effort

# matches the default Indeterminate band of classify(); lattice points on the
# regime boundary are treated as infeasible
_FEASIBLE_TOL = 1e-9


def _inverse_2x2(c_arr: np.ndarray) -> np.ndarray:
    """Closed-form inverse, refusing matrices outside the Delta > 0 regime."""
    (c11, c12), (c21, c22) = c_arr
    delta = c11 * c22 - c12 * c21
    scale = float(np.sqrt((c_arr * c_arr).sum()))
    if delta <= 1e-12 * scale:
        raise AssumptionViolation(
            f"c11*c22 - c12*c21 = {float(delta)!r} is not positive (or is negligibly "
            "small relative to the matrix norm); the yield formula needs Delta > 0"
        )
    return np.array([[c22, -c12], [-c21, c11]]) / delta


def _solve_2x2(m: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det == 0.0:
        raise AssumptionViolation("policy system matrix is singular")
    return np.array(
        [
            (m[1, 1] * rhs[0] - m[0, 1] * rhs[1]) / det,
            (m[0, 0] * rhs[1] - m[1, 0] * rhs[0]) / det,
        ]
    )


def yield_theoretical(params: ModelParams, h, require_persistence: bool = True) -> float:
    """Long-run expected yield H^T C^{-1} (L - H) of constant efforts.

    The bilinear formula equals the ergodic yield only in the coexistence
    regime, so by default the efforts are classified first and anything other
    than BothPersist raises RegimeError. Pass require_persistence=False to
    evaluate the bare formula anyway (surface plots, exploratory sweeps).
    """
    hv = as_effort(h).as_array()
    cinv = _inverse_2x2(params._c_arr)
    if require_persistence:
        report = classify(params, hv)
        if report.regime is not Regime.BOTH_PERSIST:
            raise RegimeError(
                f"yield formula requires the BothPersist regime, got {report.regime} "
                f"at H={tuple(hv)}"
            )
    L = L_vector(params)
    return float(hv @ cinv @ (L - hv))


@dataclass(frozen=True)
class PolicyConditions:
    """Hypotheses of the closed-form optimum, evaluated at H = H_star."""

    delta_positive: bool
    diagonal_dominant: bool
    b_integrals_positive: bool
    delta1_positive: bool
    delta2_positive: bool
    phi1_exceeds_two: bool
    phi2_exceeds_two: bool
    effort1_nonnegative: bool
    effort2_nonnegative: bool

    def all_hold(self) -> bool:
        return all(getattr(self, f) for f in self.__dataclass_fields__)


@dataclass(frozen=True)
class OptimalPolicy:
    """Stationary point of the yield together with its validity certificate.

    H_star is the unconstrained maximizer; it is only a usable policy when
    `valid` is true (all conditions hold, including nonnegative efforts).
    """

    H_star: tuple[float, float]
    Y_star: float
    conditions: PolicyConditions
    valid: bool


def optimal_policy(params: ModelParams) -> OptimalPolicy:
    """Closed-form optimal efforts A = [C (C^{-1})^T + I]^{-1} L and yield Y*.

    Side conditions (persistence of both species at H=A, both growth
    exponents above 2, nonnegative efforts) are evaluated and reported; a
    failing condition yields valid=False, never an exception. The stationary
    point itself is reported even when invalid, since it tells the caller
    which constraint binds.
    """
    c_arr = params._c_arr
    cinv = _inverse_2x2(c_arr)
    L = L_vector(params)
    m = c_arr @ cinv.T + np.eye(2)
    a = _solve_2x2(m, L)
    y_star = float(a @ cinv @ (L - a))

    (c11, c12), (c21, c22) = params.c
    b_at_a = L - a
    delta = c11 * c22 - c12 * c21
    delta1 = c22 * b_at_a[0] - c12 * b_at_a[1]
    delta2 = c11 * b_at_a[1] - c21 * b_at_a[0]
    r_sup = np.array([f.sup_over_period() for f in params.r])
    total_b = float(b_at_a.sum())
    phi_at_a = np.empty(2)
    for m_idx, (cmm, cnm) in enumerate(((c11, c21), (c22, c12))):
        num = r_sup[m_idx] - a[m_idx] + cmm + cnm
        phi_at_a[m_idx] = total_b - num * num / (4.0 * cmm)

    conditions = PolicyConditions(
        delta_positive=delta > 0.0,
        diagonal_dominant=c11 > c21 and c22 > c12,
        b_integrals_positive=bool(b_at_a[0] > 0.0 and b_at_a[1] > 0.0),
        delta1_positive=bool(delta1 > 0.0),
        delta2_positive=bool(delta2 > 0.0),
        phi1_exceeds_two=bool(phi_at_a[0] > 2.0),
        phi2_exceeds_two=bool(phi_at_a[1] > 2.0),
        effort1_nonnegative=bool(a[0] >= 0.0),
        effort2_nonnegative=bool(a[1] >= 0.0),
    )
    return OptimalPolicy(
        H_star=(float(a[0]), float(a[1])),
        Y_star=y_star,
        conditions=conditions,
        valid=conditions.all_hold(),
    )


def stationarity_residual(params: ModelParams, h) -> np.ndarray:
    """Gradient C^{-1} L - (C^{-1} + C^{-T}) H of the yield at H."""
    hv = np.asarray(h, dtype=float)
    cinv = _inverse_2x2(params._c_arr)
    return cinv @ L_vector(params) - (cinv + cinv.T) @ hv


def _lattice_yield(params: ModelParams, h_max: float, step: float):
    """Yield over the lattice {0, step, ..., h_max}^2 with feasibility mask."""
    if not step > 0.0:
        raise DegenerateInput(f"step must be > 0, got {step!r}")
    if h_max < 0.0:
        raise DegenerateInput(f"h_max must be >= 0, got {h_max!r}")
    _inverse_2x2(params._c_arr)  # Delta gate
    (c11, c12), (c21, c22) = params.c
    delta = c11 * c22 - c12 * c21
    L = L_vector(params)
    g = np.arange(0.0, h_max + 0.5 * step, step)
    b1 = L[0] - g  # rows: h1
    b2 = L[1] - g  # cols: h2
    d1 = c22 * b1[:, None] - c12 * b2[None, :]
    d2 = c11 * b2[None, :] - c21 * b1[:, None]
    feasible = (
        (b1[:, None] > _FEASIBLE_TOL)
        & (b2[None, :] > _FEASIBLE_TOL)
        & (d1 > _FEASIBLE_TOL)
        & (d2 > _FEASIBLE_TOL)
    )
    y = (g[:, None] * d1 + g[None, :] * d2) / delta
    return g, y, feasible


def grid_search_oracle(
    params: ModelParams, h_max: float | None = None, step: float = 0.01
) -> tuple[tuple[float, float], float]:
    """Brute-force yield maximization over the lattice {0, step, ..., h_max}^2.

    Only lattice points classified as coexisting are eligible. Ties break to
    the lexicographically smallest (h1, h2). Default h_max = max(L1, L2),
    beyond which every b-integral is negative. Serves as an independent check
    of optimal_policy: no linear algebra, no calculus, just enumeration.
    """
    if h_max is None:
        h_max = float(max(L_vector(params).max(), 0.0))
    g, y, feasible = _lattice_yield(params, h_max, step)
    if not feasible.any():
        raise EmptyFeasible(
            "no lattice point keeps both species persistent; nothing to maximize"
        )
    y = np.where(feasible, y, -np.inf)
    flat = int(np.argmax(y))  # C-order argmax = lexicographic tie-break
    i, j = divmod(flat, y.shape[1])
    return (float(g[i]), float(g[j])), float(y[i, j])


@dataclass(frozen=True)
class SensitivityRow:
    """One entry of a noise-intensity sweep."""

    scale: float
    h_star: tuple[float, float]
    y_star: float
    valid: bool


def noise_sensitivity(params: ModelParams, species: int, scales) -> list[SensitivityRow]:
    """Optimal policy as the noise intensity of one species is rescaled.

    For each s in `scales`, alpha_species is replaced by s * alpha_species
    and optimal_policy re-run. Yield responds monotonically: more noise on
    either species can only lower the attainable yield.
    """
    if species not in (1, 2):
        raise DegenerateInput(f"species must be 1 or 2, got {species!r}")
    rows = []
    for s in scales:
        s = float(s)
        alpha = list(params.alpha)
        alpha[species - 1] = alpha[species - 1].scaled(s)
        scaled = ModelParams(r=params.r, alpha=tuple(alpha), c=params.c)
        pol = optimal_policy(scaled)
        rows.append(SensitivityRow(s, pol.H_star, pol.Y_star, pol.valid))
    return rows


def sensitivity_to_csv(rows, path) -> None:
    """Write a noise sweep as CSV: scale,h1_star,h2_star,y_star,valid."""
    lines = ["scale,h1_star,h2_star,y_star,valid"]
    for row in rows:
        lines.append(
            f"{row.scale:.17g},{row.h_star[0]:.17g},{row.h_star[1]:.17g},"
            f"{row.y_star:.17g},{str(row.valid).lower()}"
        )
    _write_lines(path, lines)


def yield_surface(
    params: ModelParams, h_max: float | None = None, step: float = 0.1, formula_only: bool = False
) -> np.ndarray:
    """Table of (h1, h2, Y) rows over the effort lattice.

    By default only coexistence points appear; formula_only=True emits the
    bare bilinear value everywhere (for plotting the full surface).
    """
    if h_max is None:
        h_max = float(max(L_vector(params).max(), 0.0))
    g, y, feasible = _lattice_yield(params, h_max, step)
    if formula_only:
        feasible = np.ones_like(feasible)
    ii, jj = np.nonzero(feasible)
    return np.column_stack([g[ii], g[jj], y[ii, jj]])


def surface_to_csv(table: np.ndarray, path) -> None:
    """Write a yield surface as CSV: h1,h2,y."""
    lines = ["h1,h2,y"]
    for h1, h2, y in table:
        lines.append(f"{h1:.17g},{h2:.17g},{y:.17g}")
    _write_lines(path, lines)


def _write_lines(path, lines) -> None:
    if hasattr(path, "write"):
        path.write("\n".join(lines) + "\n")
    else:
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")
