"""Periodic coefficient functions with period 1.

Model coefficients (growth rates, noise intensities) are represented either as
a constant plus a finite sum of sine/cosine harmonics, or as a table of values
interpolated linearly with wrap-around. Both forms evaluate anywhere on the
real line by reducing t modulo 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .errors import DegenerateInput

_TWO_PI = 2.0 * math.pi

# default resolution for quadrature / sup search; plenty for smooth
# seasonal signals with a handful of harmonics
MEAN_PANELS = 1024
SUP_SAMPLES = 4096


@dataclass(frozen=True)
class Harmonic:
    """One term amp * sin(2*pi*k*t + phase) or amp * cos(2*pi*k*t + phase)."""

    amp: float
    k: int = 1
    phase: float = 0.0
    kind: str = "sin"

    def __post_init__(self):
        if self.kind not in ("sin", "cos"):
            raise DegenerateInput(f"harmonic kind must be 'sin' or 'cos', got {self.kind!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise DegenerateInput(f"harmonic frequency k must be a positive integer, got {self.k!r}")
        if not (math.isfinite(self.amp) and math.isfinite(self.phase)):
            raise DegenerateInput("harmonic amplitude and phase must be finite")

    def _as_cos(self) -> tuple[float, int, float]:
        """Return (A, k, phi) with the term written as A*cos(2*pi*k*t + phi)."""
        if self.kind == "cos":
            return self.amp, self.k, self.phase
        # sin(x) = cos(x - pi/2)
        return self.amp, self.k, self.phase - 0.5 * math.pi


@dataclass(frozen=True)
class PeriodicFn:
    """A 1-periodic function, either constant + harmonics or an interpolation table.

    Parameters
    ----------
    constant : float
        Constant offset (the full value for a constant function).
    harmonics : tuple of Harmonic
        Harmonic terms added to the constant. Mutually exclusive with `table`.
    table : tuple of (t, value) pairs, optional
        Nodes with 0 <= t < 1, strictly increasing in t. Evaluation is linear
        interpolation with wrap-around between the last and first node.
    """

    constant: float = 0.0
    harmonics: tuple[Harmonic, ...] = ()
    table: tuple[tuple[float, float], ...] | None = None

    # cached arrays for table evaluation, built once in __post_init__
    _ts: np.ndarray | None = field(default=None, repr=False, compare=False)
    _vs: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.table is not None:
            if self.harmonics:
                raise DegenerateInput("a PeriodicFn is either harmonic or tabulated, not both")
            tab = tuple((float(t), float(v)) for t, v in self.table)
            if len(tab) < 2:
                raise DegenerateInput("interpolation table needs at least 2 nodes")
            ts = np.array([p[0] for p in tab])
            vs = np.array([p[1] for p in tab])
            if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(vs))):
                raise DegenerateInput("table nodes must be finite")
            if ts[0] < 0.0 or ts[-1] >= 1.0 or np.any(np.diff(ts) <= 0.0):
                raise DegenerateInput("table abscissae must be strictly increasing within [0, 1)")
            # extend one node on each side so interpolation wraps cleanly
            ts_ext = np.concatenate(([ts[-1] - 1.0], ts, [ts[0] + 1.0]))
            vs_ext = np.concatenate(([vs[-1]], vs, [vs[0]]))
            object.__setattr__(self, "table", tab)
            object.__setattr__(self, "_ts", ts_ext)
            object.__setattr__(self, "_vs", vs_ext)
        if not math.isfinite(self.constant):
            raise DegenerateInput("constant part must be finite")
        object.__setattr__(self, "harmonics", tuple(self.harmonics))

    @classmethod
    def from_table(cls, ts, values) -> "PeriodicFn":
        return cls(table=tuple(zip(np.asarray(ts, float), np.asarray(values, float))))

    @property
    def is_table(self) -> bool:
        return self.table is not None

    def __call__(self, t):
        """Evaluate at scalar or array t; t is reduced modulo 1 first."""
        tau = np.asarray(t, dtype=float) % 1.0
        if self.table is not None:
            out = np.interp(tau, self._ts, self._vs)
        else:
            out = np.full_like(tau, self.constant)
            for h in self.harmonics:
                arg = _TWO_PI * h.k * tau + h.phase
                out = out + h.amp * (np.sin(arg) if h.kind == "sin" else np.cos(arg))
        if np.ndim(t) == 0:
            return float(out)
        return out

    def mean_over_period(self, panels: int = MEAN_PANELS, force_quadrature: bool = False) -> float:
        """Average value over one period.

        Harmonic form: every harmonic integrates to zero over a full period, so
        the mean is the constant term; that closed form is used unless
        `force_quadrature` asks for composite Simpson (mainly for cross-checks).
        Table form: composite Simpson on the interpolant.
        """
        if self.table is None and not force_quadrature:
            return self.constant
        return _simpson_mean(self, panels)

    def sup_over_period(self, samples: int = SUP_SAMPLES) -> float:
        """Supremum over one period.

        Table form: the interpolant is piecewise linear, so the max over nodes
        is exact. Harmonic form: dense sampling followed by golden-section
        refinement around the best sample (accurate to ~1e-9 in t for smooth
        signals, far tighter in value near a smooth max).
        """
        if self.table is not None:
            return float(np.max(self._vs))
        if not self.harmonics:
            return self.constant
        tau = np.arange(samples) / samples
        vals = self(tau)
        i = int(np.argmax(vals))
        lo = (i - 1) / samples
        hi = (i + 1) / samples
        t_best, v_best = _golden_max(self, lo, hi)
        return max(float(vals[i]), v_best)

    def squared(self) -> "PeriodicFn":
        """Pointwise square, as a PeriodicFn.

        Harmonic form: expanded exactly with product-to-sum identities, so the
        result evaluates to f(t)**2 up to float rounding at every t. Table
        form: node values are squared; between nodes the result interpolates
        the squared nodes, which is exact at the nodes only.
        """
        if self.table is not None:
            return PeriodicFn(table=tuple((t, v * v) for t, v in self.table))
        terms = [h._as_cos() for h in self.harmonics]
        const = self.constant * self.constant
        out: list[Harmonic] = []
        for a, k, phi in terms:
            coeff = 2.0 * self.constant * a
            if coeff != 0.0:
                out.append(Harmonic(coeff, k, phi, "cos"))
        n = len(terms)
        for i in range(n):
            ai, ki, pi_ = terms[i]
            for j in range(i, n):
                aj, kj, pj = terms[j]
                w = ai * aj if i == j else 2.0 * ai * aj
                # cos(u)cos(v) = (cos(u-v) + cos(u+v)) / 2
                for ks, ps in ((ki - kj, pi_ - pj), (ki + kj, pi_ + pj)):
                    amp = 0.5 * w
                    if ks < 0:
                        ks, ps = -ks, -ps
                    if ks == 0:
                        const += amp * math.cos(ps)
                    elif amp != 0.0:
                        out.append(Harmonic(amp, ks, ps, "cos"))
        return PeriodicFn(constant=const, harmonics=tuple(out))

    def scaled(self, factor: float) -> "PeriodicFn":
        """The function multiplied pointwise by a scalar."""
        if not math.isfinite(factor):
            raise DegenerateInput("scale factor must be finite")
        if self.table is not None:
            return PeriodicFn(table=tuple((t, factor * v) for t, v in self.table))
        return PeriodicFn(
            constant=factor * self.constant,
            harmonics=tuple(Harmonic(factor * h.amp, h.k, h.phase, h.kind) for h in self.harmonics),
        )

    def shifted(self, offset: float) -> "PeriodicFn":
        """The function plus a scalar offset."""
        if not math.isfinite(offset):
            raise DegenerateInput("offset must be finite")
        if self.table is not None:
            return PeriodicFn(table=tuple((t, v + offset) for t, v in self.table))
        return PeriodicFn(constant=self.constant + offset, harmonics=self.harmonics)


def mean_square_over_period(f: PeriodicFn, panels: int = MEAN_PANELS) -> float:
    """Average of f(t)**2 over one period.

    Exact for harmonic f (via the expanded square); Simpson on the true
    pointwise square for table f, which avoids the interpolation error of
    squaring the table nodes.
    """
    if f.table is None:
        return f.squared().mean_over_period()
    return _simpson_square_mean(f, panels)


def _grid(panels: int) -> np.ndarray:
    if panels < 2 or panels % 2:
        raise DegenerateInput("quadrature panel count must be a positive even integer")
    return np.linspace(0.0, 1.0, panels + 1)


def _simpson_mean(f: PeriodicFn, panels: int) -> float:
    t = _grid(panels)
    return float(simpson(f(t), dx=1.0 / panels))


def _simpson_square_mean(f: PeriodicFn, panels: int) -> float:
    t = _grid(panels)
    y = f(t)
    return float(simpson(y * y, dx=1.0 / panels))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, tol: float = 1e-11) -> tuple[float, float]:
    """Golden-section maximization of a unimodal-enough f on [lo, hi]."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return t, float(f(t))
