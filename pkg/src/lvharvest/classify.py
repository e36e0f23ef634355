"""Long-run regime classification from the signs of period-averaged quantities.

The signs of the b-integrals decide whether each species can grow at all; when
both are positive, the signs of Delta1 and Delta2 decide whether competition
drives one species out. Almost-sure time-average limits exist in every
determinate case.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import AssumptionViolation, InvalidConfig
from .model import ModelParams, as_effort, b_integrals, deltas, phis


class Regime(str, enum.Enum):
    BOTH_EXTINCT = "BothExtinct"
    X1_PERSISTS_X2_EXTINCT = "X1PersistsX2Extinct"
    X2_PERSISTS_X1_EXTINCT = "X2PersistsX1Extinct"
    BOTH_PERSIST = "BothPersist"
    INDETERMINATE = "Indeterminate"

    def __str__(self) -> str:  # print as the bare value, not Regime.X
        return self.value


@dataclass(frozen=True)
class AssumptionFlags:
    """Truth values of the standing hypotheses at the given efforts.

    delta_positive        c11*c22 - c12*c21 > 0
    b_integrals_positive  both period integrals of b_i are > 0
    phi_exceeds_two       both exclusion exponents Phi_m are > 2
    diagonal_dominant     c11 > c21 and c22 > c12
    """

    delta_positive: bool
    b_integrals_positive: bool
    phi_exceeds_two: bool
    diagonal_dominant: bool

    def all_hold(self) -> bool:
        return (
            self.delta_positive
            and self.b_integrals_positive
            and self.phi_exceeds_two
            and self.diagonal_dominant
        )


@dataclass(frozen=True)
class RegimeReport:
    """Outcome of the sign-table classification.

    predicted_averages holds the almost-sure limits of (1/t) * integral of
    x_i(s) ds where the theory pins them down, None for Indeterminate.
    margins holds the signed decisive values (b1, b2, delta1, delta2).
    """

    regime: Regime
    predicted_averages: tuple[float, float] | None
    assumptions: AssumptionFlags
    margins: tuple[float, float, float, float]


def check_assumptions(params: ModelParams, h) -> AssumptionFlags:
    """Evaluate every standing hypothesis at the given efforts."""
    delta, _, _ = deltas(params, h)
    b = b_integrals(params, h)
    ph = phis(params, h)
    (c11, c12), (c21, c22) = params.c
    return AssumptionFlags(
        delta_positive=delta > 0.0,
        b_integrals_positive=bool(b[0] > 0.0 and b[1] > 0.0),
        phi_exceeds_two=bool(ph[0] > 2.0 and ph[1] > 2.0),
        diagonal_dominant=c11 > c21 and c22 > c12,
    )


def classify(params: ModelParams, h, tol: float = 1e-9) -> RegimeReport:
    """Apply the sign table to (b1, b2, Delta1, Delta2).

    Both b-integrals negative means both species die out. Opposite signs mean
    the species with positive b persists alone with time average b_m / c_mm.
    Both positive defers to (Delta1, Delta2): one negative sign excludes that
    species, both positive means coexistence with averages Delta_i / Delta.
    Any decisive quantity within `tol` of zero yields Indeterminate rather
    than a guess, since the strict-inequality case split says nothing on the
    boundary.
    """
    if not tol > 0.0:
        raise InvalidConfig(f"tol must be > 0, got {tol!r}")
    hv = as_effort(h)
    delta, delta1, delta2 = deltas(params, hv)
    if delta <= 0.0:
        raise AssumptionViolation(
            f"classification requires c11*c22 - c12*c21 > 0, got {delta!r}"
        )
    b = b_integrals(params, hv)
    b1, b2 = float(b[0]), float(b[1])
    (c11, _), (_, c22) = params.c
    flags = check_assumptions(params, hv)
    margins = (b1, b2, float(delta1), float(delta2))

    def report(regime, averages):
        return RegimeReport(regime, averages, flags, margins)

    if abs(b1) <= tol or abs(b2) <= tol:
        return report(Regime.INDETERMINATE, None)
    if b1 < 0.0 and b2 < 0.0:
        return report(Regime.BOTH_EXTINCT, (0.0, 0.0))
    if b1 > 0.0 and b2 < 0.0:
        return report(Regime.X1_PERSISTS_X2_EXTINCT, (b1 / c11, 0.0))
    if b1 < 0.0 and b2 > 0.0:
        return report(Regime.X2_PERSISTS_X1_EXTINCT, (0.0, b2 / c22))
    # both b-integrals positive: competition decides
    if abs(delta1) <= tol or abs(delta2) <= tol:
        return report(Regime.INDETERMINATE, None)
    if delta1 > 0.0 and delta2 > 0.0:
        return report(Regime.BOTH_PERSIST, (float(delta1 / delta), float(delta2 / delta)))
    if delta1 > 0.0 and delta2 < 0.0:
        return report(Regime.X1_PERSISTS_X2_EXTINCT, (b1 / c11, 0.0))
    if delta1 < 0.0 and delta2 > 0.0:
        return report(Regime.X2_PERSISTS_X1_EXTINCT, (0.0, b2 / c22))
    # delta1 < 0 and delta2 < 0 contradicts delta > 0 when both b-integrals
    # are positive; reachable only through float inconsistency at the margin
    return report(Regime.INDETERMINATE, None)
