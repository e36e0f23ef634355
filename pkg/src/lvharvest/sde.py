"""Euler-Maruyama integration of the competition model.

Two stepping schemes:

DirectEM   the textbook scheme on x itself, clamped at a small floor so noise
           cannot push a population negative.
LogEM      the same scheme applied to ln x, whose equation has state-free
           noise (by Ito's formula d ln x_i picks up the -alpha_i^2/2
           correction), then exponentiated. Positivity is structural, no
           clamping needed, and for this model the transform is exact.

Both evaluate time-dependent coefficients at the left endpoint of each step.
Noise streams are deterministic functions of (seed, species index), so a
given configuration reproduces bitwise-identical paths.

The stepping core advances many paths in lockstep as a (paths, 2) array and
streams recorded states to a sink object in chunks; single-path simulation
and Monte Carlo ensembles share it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, EmptyWindow, InvalidConfig, NonFinite
from .model import ModelParams, as_effort

# hard lower bound for LogEM states: keeps x strictly positive through
# exp underflow even for strongly extinct paths
_LOG_FLOOR = 1e-300

# recorded points kept by the default stride
_MAX_RECORD_POINTS = 200_000

# noise buffer budget, in doubles (16 MiB)
_CHUNK_BUDGET = 2_097_152


class Scheme(str, enum.Enum):
    DIRECT_EM = "DirectEM"
    LOG_EM = "LogEM"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SimConfig:
    """Numerical settings for one path.

    t_end is rounded to a whole number of steps of size dt. record_stride
    keeps every k-th step; None picks the smallest stride that stores at
    most 200k points. floor applies to DirectEM only.
    """

    dt: float = 1e-3
    t_end: float = 200.0
    x0: tuple[float, float] = (0.01, 0.01)
    seed: int = 0
    scheme: Scheme = Scheme.LOG_EM
    record_stride: int | None = None
    floor: float = 1e-12

    def __post_init__(self):
        if not (math.isfinite(self.dt) and 0.0 < self.dt < 1.0):
            raise InvalidConfig(f"dt must satisfy 0 < dt < 1, got {self.dt!r}")
        if not (math.isfinite(self.t_end) and self.t_end > 0.0):
            raise InvalidConfig(f"t_end must be > 0, got {self.t_end!r}")
        if int(round(self.t_end / self.dt)) < 1:
            raise InvalidConfig("t_end must round to at least one step of size dt")
        x0 = tuple(float(v) for v in self.x0)
        if len(x0) != 2 or not all(math.isfinite(v) and v >= 0.0 for v in x0):
            raise InvalidConfig(f"x0 must be a pair of finite values >= 0, got {self.x0!r}")
        object.__setattr__(self, "x0", x0)
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise InvalidConfig(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.record_stride is not None and (
            not isinstance(self.record_stride, int) or self.record_stride < 1
        ):
            raise InvalidConfig(f"record_stride must be a positive integer, got {self.record_stride!r}")
        if not (math.isfinite(self.floor) and self.floor >= 0.0):
            raise InvalidConfig(f"floor must be >= 0, got {self.floor!r}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def effective_stride(self) -> int:
        if self.record_stride is not None:
            return self.record_stride
        return max(1, math.ceil((self.n_steps + 1) / _MAX_RECORD_POINTS))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded path: times (n,), states (n, 2), and the config that made it."""

    times: np.ndarray
    states: np.ndarray
    cfg: SimConfig


def _recording_plan(n_steps: int, stride: int, dt: float):
    ks = np.arange(0, n_steps + 1, stride, dtype=np.int64)
    if ks[-1] != n_steps:
        ks = np.append(ks, n_steps)
    rec_of = np.full(n_steps + 1, -1, dtype=np.int64)
    rec_of[ks] = np.arange(len(ks))
    return ks, rec_of, ks.astype(float) * dt


def _species_generators(seed: int):
    """Two independent, deterministic normal streams for one path seed."""
    return tuple(
        np.random.Generator(np.random.PCG64(np.random.SeedSequence((int(seed), species))))
        for species in (0, 1)
    )


class _CollectSink:
    """Keeps every recorded state in memory (single-path use)."""

    def begin(self, times: np.ndarray, n_paths: int):
        self.times = times
        self.states = np.empty((len(times), n_paths, 2))

    def chunk(self, rec_start: int, block: np.ndarray, alive: np.ndarray):
        self.states[rec_start : rec_start + block.shape[0]] = block

    def end(self, failures):
        self.failures = failures


def _integrate(
    params: ModelParams,
    h,
    cfg: SimConfig,
    x0s: np.ndarray,
    seeds,
    sink,
    noise: np.ndarray | None = None,
    fail_limit: int = 0,
):
    """Advance all paths in lockstep, streaming recorded states to `sink`.

    x0s has shape (P, 2); seeds has length P. Paths whose state leaves the
    finite range are zeroed out and reported; more than `fail_limit` dead
    paths aborts with NonFinite. The sink receives, in order: begin(times,
    P), one chunk(rec_start, block, alive) per recorded block where block has
    shape (n_recorded_in_chunk, P, 2), and end(failures). Failure detection
    runs per chunk, so a failing path contributes zeros for its whole failure
    chunk and the reported step index is the first nonfinite recorded step.
    """
    hv = as_effort(h).as_array()
    n_paths = x0s.shape[0]
    n_steps, dt = cfg.n_steps, cfg.dt
    stride = cfg.effective_stride
    ks, rec_of, times = _recording_plan(n_steps, stride, dt)
    sink.begin(times, n_paths)

    tk = np.arange(n_steps) * dt
    r_tab = np.stack([f(tk) for f in params.r], axis=1)
    a_tab = np.stack([f(tk) for f in params.alpha], axis=1)
    s_tab = a_tab * math.sqrt(dt)
    log_mode = cfg.scheme is Scheme.LOG_EM
    if log_mode:
        base = (r_tab - hv - 0.5 * a_tab * a_tab) * dt
    else:
        # fold the leading 1 of x*(1 + drift*dt + noise) into the table
        base = (r_tab - hv) * dt + 1.0
    cdt_t = np.ascontiguousarray((params._c_arr * dt).T)

    if noise is not None:
        noise = np.asarray(noise, dtype=float)
        if noise.shape == (n_steps, 2) and n_paths == 1:
            noise = noise[:, None, :]
        if noise.shape != (n_steps, n_paths, 2):
            raise InvalidConfig(
                f"injected noise must have shape ({n_steps}, {n_paths}, 2), got {noise.shape}"
            )
        gens = None
    else:
        gens = [_species_generators(s) for s in seeds]

    x = np.array(x0s, dtype=float)
    alive = np.ones(n_paths, dtype=bool)
    failures: list[tuple[int, int]] = []

    # step 0 is always a recorded point
    sink.chunk(0, x[None, :, :].copy(), alive.copy())

    chunk = max(1, min(n_steps, _CHUNK_BUDGET // (2 * n_paths)))
    w = np.empty((chunk, n_paths, 2))
    inc = np.empty_like(x)
    k0 = 0
    while k0 < n_steps:
        m = min(chunk, n_steps - k0)
        if noise is not None:
            w[:m] = noise[k0 : k0 + m]
        else:
            for p, (g1, g2) in enumerate(gens):
                w[:m, p, 0] = g1.standard_normal(m)
                w[:m, p, 1] = g2.standard_normal(m)
        w[:m] *= s_tab[k0 : k0 + m, None, :]
        w[:m] += base[k0 : k0 + m, None, :]

        rec_here = [k for k in range(k0 + 1, k0 + m + 1) if rec_of[k] >= 0]
        block = np.empty((len(rec_here), n_paths, 2)) if rec_here else None
        pos = 0
        if log_mode:
            for j in range(m):
                np.matmul(x, cdt_t, out=inc)
                np.subtract(w[j], inc, out=inc)
                np.exp(inc, out=inc)
                x *= inc
                np.maximum(x, _LOG_FLOOR, out=x)
                if rec_of[k0 + j + 1] >= 0:
                    block[pos] = x
                    pos += 1
        else:
            floor = cfg.floor
            for j in range(m):
                np.matmul(x, cdt_t, out=inc)
                np.subtract(w[j], inc, out=inc)
                was_alive = x > 0.0
                x *= inc
                np.maximum(x, floor, out=x)
                x *= was_alive
                if rec_of[k0 + j + 1] >= 0:
                    block[pos] = x
                    pos += 1

        ok = np.isfinite(x).all(axis=1)
        if not ok.all():
            newly_dead = alive & ~ok
            for p in np.nonzero(newly_dead)[0]:
                step = k0 + m
                if block is not None:
                    bad = np.nonzero(~np.isfinite(block[:, p, :]).all(axis=1))[0]
                    if bad.size:
                        step = int(rec_here[bad[0]])
                failures.append((int(p), step))
            if len(failures) > fail_limit:
                p, step = failures[0]
                raise NonFinite(
                    f"state became non-finite on path {p} near step {step} "
                    f"(t ~ {step * dt:.6g}); {len(failures)} path(s) affected",
                    path_index=p,
                    step_index=step,
                )
            dead_idx = np.nonzero(~ok)[0]
            x[dead_idx] = 0.0
            if block is not None:
                block[:, dead_idx, :] = 0.0
            alive &= ok
        if block is not None:
            sink.chunk(int(rec_of[rec_here[0]]), block, alive.copy())
        k0 += m

    sink.end(failures)
    return times


def simulate(params: ModelParams, h, cfg: SimConfig, noise: np.ndarray | None = None) -> Trajectory:
    """Integrate one path and record it.

    `noise` optionally supplies the standard normal draws, shape
    (n_steps, 2), in place of the seeded stream; used for step-refinement
    studies and fault injection.
    """
    x0 = np.asarray(cfg.x0, dtype=float)
    if cfg.scheme is Scheme.LOG_EM:
        if not np.all(x0 > 0.0):
            raise InvalidConfig("LogEM requires strictly positive x0")
    sink = _CollectSink()
    _integrate(params, h, cfg, x0[None, :], [cfg.seed], sink, noise=noise, fail_limit=0)
    return Trajectory(times=sink.times, states=sink.states[:, 0, :], cfg=cfg)


def time_average(traj: Trajectory, burn_in_fraction: float = 0.5) -> np.ndarray:
    """Trapezoidal average of each component over [burn_in * t_end, t_end]."""
    if not 0.0 <= burn_in_fraction < 1.0:
        raise InvalidConfig(f"burn_in_fraction must lie in [0, 1), got {burn_in_fraction!r}")
    t = traj.times
    cut = burn_in_fraction * t[-1]
    sel = t >= cut - 1e-12
    if np.count_nonzero(sel) < 2:
        raise EmptyWindow("burn-in leaves fewer than 2 recorded points")
    ts = t[sel]
    xs = traj.states[sel]
    span = ts[-1] - ts[0]
    return np.array(
        [np.trapezoid(xs[:, 0], ts) / span, np.trapezoid(xs[:, 1], ts) / span]
    )


def log_growth_rate(traj: Trajectory) -> np.ndarray:
    """Least-squares slope of ln x_i(t) over the last half of the trajectory.

    A strongly negative slope signals extinction; near zero signals
    persistence (log growth is sublinear for persistent species).
    """
    t = traj.times
    sel = t >= 0.5 * t[-1] - 1e-12
    if np.count_nonzero(sel) < 2:
        raise EmptyWindow("trajectory too short for a log-slope fit")
    xs = traj.states[sel]
    if traj.cfg.scheme is Scheme.DIRECT_EM and np.any(xs <= traj.cfg.floor):
        raise DegenerateInput(
            "recorded states at or below the clamp floor: log-slope undefined"
        )
    if np.any(xs <= 0.0):
        raise DegenerateInput("recorded states must be positive for a log-slope fit")
    ts = t[sel]
    lnx = np.log(xs)
    return np.polyfit(ts, lnx, 1)[0]


def trajectory_to_csv(traj: Trajectory, path) -> None:
    """Write the recorded path as CSV with header t,x1,x2 (17 significant digits)."""
    data = np.column_stack([traj.times, traj.states])
    np.savetxt(path, data, fmt="%.17g", delimiter=",", header="t,x1,x2", comments="")
