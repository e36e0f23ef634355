"""Monte Carlo ensembles: seeded path batches and the statistics built on them.

Per-path seeds come from a splitmix-style 64-bit mix of the master seed, so
an ensemble is a pure function of its configuration: same inputs, same
aggregates, bitwise, regardless of how the work would be scheduled. Paths are
advanced in lockstep as one wide array and reduced chunk by chunk; nothing
proportional to n_paths * n_steps is ever stored.

Statistics reported:
  - ensemble mean state over time with standard errors,
  - the distribution of per-path time averages (the ergodic-limit estimator),
  - mean states at fixed phases of the final two periods (the periodic
    solution observed through its first moments),
  - the expected yield over the final period, integral of sum h_i E x_i(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionViolation, InvalidConfig
from .model import ModelParams, as_effort
from .sde import Scheme, SimConfig, _integrate, _recording_plan

_MASK64 = (1 << 64) - 1
# splitmix64 constants (Steele, Lea, Flood 2014)
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def split_seed(master_seed: int, k: int) -> int:
    """Deterministic 64-bit seed for path k: splitmix64 of master + (k+1)*golden."""
    z = (master_seed + (k + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class EnsembleConfig:
    """How many paths, their shared numerical settings, and the master seed."""

    n_paths: int = 1000
    sim: SimConfig = SimConfig()
    master_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n_paths, int) or self.n_paths < 2:
            raise InvalidConfig(f"n_paths must be an integer >= 2, got {self.n_paths!r}")
        if not isinstance(self.sim, SimConfig):
            raise InvalidConfig("sim must be a SimConfig")
        if not isinstance(self.master_seed, int) or not 0 <= self.master_seed < 2**64:
            raise InvalidConfig(
                f"master_seed must be an unsigned 64-bit integer, got {self.master_seed!r}"
            )

    def path_seeds(self) -> list[int]:
        return [split_seed(self.master_seed, k) for k in range(self.n_paths)]


@dataclass(frozen=True)
class SummaryStats:
    """Five-number summary of a per-path statistic, one entry per species."""

    mean: tuple[float, float]
    std: tuple[float, float]
    q05: tuple[float, float]
    q50: tuple[float, float]
    q95: tuple[float, float]


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Aggregates of one ensemble run. Arrays are indexed (time, species)."""

    times: np.ndarray
    mean_path: np.ndarray
    se_path: np.ndarray
    time_avg: np.ndarray  # (surviving paths, 2) per-path trapezoid averages
    time_avg_summary: SummaryStats
    phase_times_prev: np.ndarray
    phase_times_final: np.ndarray
    phase_means_prev: np.ndarray
    phase_means_final: np.ndarray
    phase_se_final: np.ndarray
    phase_diff_se: np.ndarray
    yield_integrals: np.ndarray  # (surviving paths, 2) per-species final-period integrals
    h: tuple[float, float]
    burn_in_fraction: float
    n_surviving: int
    failures: tuple[tuple[int, int], ...]
    cfg: EnsembleConfig


def _window_weights(times: np.ndarray, lo: float, hi: float, normalize: bool):
    """Trapezoid weights supported on recorded times within [lo, hi]."""
    sel = np.nonzero((times >= lo - 1e-12) & (times <= hi + 1e-12))[0]
    if sel.size < 2:
        raise InvalidConfig(
            f"window [{lo:.6g}, {hi:.6g}] contains fewer than 2 recorded points; "
            "decrease record_stride"
        )
    ts = times[sel]
    w = np.zeros_like(times)
    w[sel[0]] = 0.5 * (ts[1] - ts[0])
    w[sel[-1]] = 0.5 * (ts[-1] - ts[-2])
    w[sel[1:-1]] = 0.5 * (ts[2:] - ts[:-2])
    if normalize:
        w /= ts[-1] - ts[0]
    return w


class _StatSink:
    """Streaming reducer for run_ensemble."""

    def __init__(self, w_avg, w_yield, phase_rec_idx):
        self.w_avg = w_avg
        self.w_yield = w_yield
        self.phase_rec_idx = phase_rec_idx

    def begin(self, times, n_paths):
        n_rec = len(times)
        self.sum_x = np.zeros((n_rec, 2))
        self.sum_sq = np.zeros((n_rec, 2))
        self.count = np.zeros(n_rec)
        self.avg_acc = np.zeros((n_paths, 2))
        self.yield_acc = np.zeros((n_paths, 2))
        self.snapshots = np.zeros((len(self.phase_rec_idx), n_paths, 2))
        self.alive = np.ones(n_paths, dtype=bool)

    def chunk(self, rec_start, block, alive):
        rows = slice(rec_start, rec_start + block.shape[0])
        self.sum_x[rows] += block.sum(axis=1)
        self.sum_sq[rows] += np.einsum("rpi,rpi->ri", block, block)
        self.count[rows] += alive.sum()
        self.avg_acc += np.einsum("r,rpi->pi", self.w_avg[rows], block)
        self.yield_acc += np.einsum("r,rpi->pi", self.w_yield[rows], block)
        for q, r in enumerate(self.phase_rec_idx):
            if rec_start <= r < rec_start + block.shape[0]:
                self.snapshots[q] = block[r - rec_start]
        self.alive = alive

    def end(self, failures):
        self.failures = failures


def run_ensemble(
    params: ModelParams,
    h,
    cfg: EnsembleConfig,
    burn_in_fraction: float = 0.5,
    n_phases: int = 8,
) -> EnsembleStats:
    """Simulate n_paths independent paths and reduce them to EnsembleStats.

    Requires a horizon of at least 2 periods (the phase comparison looks at
    the final two) and at least 2 recorded points per period. Paths whose
    state leaves the finite range are dropped from all statistics; more than
    1% of them failing aborts the run, since that signals a step size too
    coarse for the coefficients rather than bad luck.
    """
    sim = cfg.sim
    if not 0.0 <= burn_in_fraction < 1.0:
        raise InvalidConfig(f"burn_in_fraction must lie in [0, 1), got {burn_in_fraction!r}")
    if not isinstance(n_phases, int) or n_phases < 1:
        raise InvalidConfig(f"n_phases must be a positive integer, got {n_phases!r}")
    hv = as_effort(h)
    x0 = np.asarray(sim.x0, dtype=float)
    if sim.scheme is Scheme.LOG_EM and not np.all(x0 > 0.0):
        raise InvalidConfig("LogEM requires strictly positive x0")

    n_steps, dt, stride = sim.n_steps, sim.dt, sim.effective_stride
    t_eff = n_steps * dt
    if t_eff < 2.0:
        raise InvalidConfig("ensemble statistics need t_end >= 2 periods")
    ks, _, times = _recording_plan(n_steps, stride, dt)

    w_avg = _window_weights(times, burn_in_fraction * t_eff, t_eff, normalize=True)
    w_yield = _window_weights(times, t_eff - 1.0, t_eff, normalize=False)

    phase_targets = np.concatenate(
        [
            t_eff - 2.0 + np.arange(n_phases) / n_phases,
            t_eff - 1.0 + np.arange(n_phases) / n_phases,
        ]
    )
    phase_rec_idx = np.clip(
        np.round(phase_targets / (stride * dt)).astype(int), 0, len(times) - 1
    )

    sink = _StatSink(w_avg, w_yield, phase_rec_idx)
    x0s = np.broadcast_to(x0, (cfg.n_paths, 2)).copy()
    fail_limit = int(0.01 * cfg.n_paths)
    _integrate(params, hv, sim, x0s, cfg.path_seeds(), sink, fail_limit=fail_limit)

    alive = sink.alive
    n_alive = int(alive.sum())
    if n_alive < 2:
        raise InvalidConfig("fewer than 2 surviving paths; statistics undefined")

    n = sink.count
    mean = sink.sum_x / n[:, None]
    var = np.maximum(sink.sum_sq / n[:, None] - mean * mean, 0.0)
    se = np.sqrt(var / np.maximum(n - 1.0, 1.0)[:, None])

    ta = sink.avg_acc[alive]
    q05, q50, q95 = np.quantile(ta, [0.05, 0.5, 0.95], axis=0)
    summary = SummaryStats(
        mean=tuple(ta.mean(axis=0)),
        std=tuple(ta.std(axis=0, ddof=1)),
        q05=tuple(q05),
        q50=tuple(q50),
        q95=tuple(q95),
    )

    snap = sink.snapshots[:, alive, :]
    prev, final = snap[:n_phases], snap[n_phases:]
    diff = final - prev
    root_n = math.sqrt(n_alive)
    return EnsembleStats(
        times=times,
        mean_path=mean,
        se_path=se,
        time_avg=ta,
        time_avg_summary=summary,
        phase_times_prev=times[phase_rec_idx[:n_phases]],
        phase_times_final=times[phase_rec_idx[n_phases:]],
        phase_means_prev=prev.mean(axis=1),
        phase_means_final=final.mean(axis=1),
        phase_se_final=final.std(axis=1, ddof=1) / root_n,
        phase_diff_se=diff.std(axis=1, ddof=1) / root_n,
        yield_integrals=sink.yield_acc[alive],
        h=(hv.h1, hv.h2),
        burn_in_fraction=burn_in_fraction,
        n_surviving=n_alive,
        failures=tuple(sink.failures),
        cfg=cfg,
    )


def empirical_yield(
    params: ModelParams, h, cfg: EnsembleConfig, stats: EnsembleStats | None = None
) -> tuple[float, float]:
    """Monte Carlo estimate of the yield over the final period.

    Estimates the integral over [t_end - 1, t_end] of sum_i h_i E x_i(s) by
    the trapezoid rule on the ensemble mean, which equals the mean of the
    per-path integrals; the standard error is that of the per-path values.
    Pass `stats` to reuse an ensemble already run with the same h.
    """
    hv = as_effort(h)
    if stats is None:
        stats = run_ensemble(params, hv, cfg)
    z = stats.yield_integrals @ hv.as_array()
    n = len(z)
    return float(z.mean()), float(z.std(ddof=1) / math.sqrt(n))


@dataclass(frozen=True, eq=False)
class ConvergenceReport:
    """Mean absolute gap between synchronously coupled ensembles over time."""

    times: np.ndarray
    gap: np.ndarray  # (len(times), 2)
    ok: bool  # final gap below 5% of the gap at t=1, both species


class _GapSink:
    """Accumulates mean |x - x_twin| at selected recorded indices."""

    def __init__(self, slot_of_rec, n_slots, n_pairs):
        self.slot_of_rec = slot_of_rec
        self.gap = np.zeros((n_slots, 2))
        self.n_pairs = n_pairs

    def begin(self, times, n_paths):
        pass

    def chunk(self, rec_start, block, alive):
        n = self.n_pairs
        for local in range(block.shape[0]):
            slot = self.slot_of_rec[rec_start + local]
            if slot >= 0:
                d = np.abs(block[local, :n, :] - block[local, n:, :])
                self.gap[slot] = d.mean(axis=0)

    def end(self, failures):
        self.failures = failures


def convergence_check(
    params: ModelParams, h, x0_a, x0_b, cfg: EnsembleConfig
) -> ConvergenceReport:
    """Couple two ensembles through identical noise and watch the gap close.

    Pairs of paths share a seed (hence every normal draw) but start from
    x0_a and x0_b; the mean absolute difference E|x_i(t) - x_i~(t)| is
    reported at whole times t = 0, 1, 2, ... Diagonal dominance of the
    competition matrix (c11 > c21, c22 > c12) is required, and is exactly the
    condition making the gap contract.
    """
    (c11, c12), (c21, c22) = params.c
    if not (c11 > c21 and c22 > c12):
        raise AssumptionViolation(
            "convergence of coupled solutions needs c11 > c21 and c22 > c12"
        )
    a = np.asarray(x0_a, dtype=float)
    b = np.asarray(x0_b, dtype=float)
    if a.shape != (2,) or b.shape != (2,) or not (np.all(a > 0) and np.all(b > 0)):
        raise InvalidConfig("both initial states must be positive pairs")

    sim = cfg.sim
    n_steps, dt, stride = sim.n_steps, sim.dt, sim.effective_stride
    ks, rec_of, times = _recording_plan(n_steps, stride, dt)
    t_eff = n_steps * dt

    # whole times, mapped to nearest recorded index
    whole = np.arange(0.0, math.floor(t_eff) + 0.5)
    rec_idx = np.clip(np.round(whole / (stride * dt)).astype(int), 0, len(times) - 1)
    slot_of_rec = np.full(len(times), -1, dtype=int)
    for slot, r in enumerate(rec_idx):
        slot_of_rec[r] = slot

    seeds = cfg.path_seeds() + cfg.path_seeds()
    x0s = np.vstack(
        [np.broadcast_to(a, (cfg.n_paths, 2)), np.broadcast_to(b, (cfg.n_paths, 2))]
    )
    sink = _GapSink(slot_of_rec, len(whole), cfg.n_paths)
    fail_limit = int(0.01 * 2 * cfg.n_paths)
    _integrate(params, h, sim, x0s, seeds, sink, fail_limit=fail_limit)

    grid_times = times[rec_idx]
    ref_slot = int(np.argmin(np.abs(grid_times - 1.0)))
    final = sink.gap[-1]
    ref = sink.gap[ref_slot]
    ok = bool(np.all(final <= 0.05 * ref + 1e-15))
    return ConvergenceReport(times=grid_times, gap=sink.gap, ok=ok)


@dataclass(frozen=True, eq=False)
class PhaseComparison:
    """Same-phase ensemble means from two consecutive periods."""

    phases: np.ndarray  # k/m phase offsets within the period
    mean_prev: np.ndarray  # (m, 2) at t_end - 2 + phase
    mean_final: np.ndarray  # (m, 2) at t_end - 1 + phase
    se_diff: np.ndarray  # (m, 2) paired standard error of the difference
    max_rel_discrepancy: float
    max_z: float  # largest |difference| / se_diff across phases and species


def periodicity_check(
    params: ModelParams,
    h,
    cfg: EnsembleConfig,
    n_phases: int = 8,
    stats: EnsembleStats | None = None,
) -> PhaseComparison:
    """Compare ensemble means at the same phase of two consecutive periods.

    Once the law of the process settles onto its periodic attractor, the mean
    at t_end - 2 + k/m and t_end - 1 + k/m must agree up to Monte Carlo
    error; max_z is the largest paired z-score observed. Deterministic runs
    (alpha = 0) get z = 0 whenever the difference is at float-noise level.
    """
    if stats is None or stats.phase_means_prev.shape[0] != n_phases:
        stats = run_ensemble(params, h, cfg, n_phases=n_phases)
    prev = stats.phase_means_prev
    final = stats.phase_means_final
    se = stats.phase_diff_se
    diff = np.abs(final - prev)
    scale = np.maximum(np.abs(prev), np.abs(final))
    rel = diff / np.maximum(scale, 1e-300)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(se > 0.0, diff / se, np.where(diff <= 1e-12, 0.0, np.inf))
    return PhaseComparison(
        phases=np.arange(n_phases) / n_phases,
        mean_prev=prev,
        mean_final=final,
        se_diff=se,
        max_rel_discrepancy=float(rel.max()),
        max_z=float(z.max()),
    )


def stats_to_json(stats: EnsembleStats) -> dict:
    """JSON-ready dict of the ensemble aggregates (lossless float repr)."""
    sim = stats.cfg.sim
    summary = stats.time_avg_summary
    m = len(stats.phase_times_final)
    z = stats.yield_integrals @ np.asarray(stats.h)
    return {
        "mean_path": {
            "t": stats.times.tolist(),
            "m1": stats.mean_path[:, 0].tolist(),
            "se1": stats.se_path[:, 0].tolist(),
            "m2": stats.mean_path[:, 1].tolist(),
            "se2": stats.se_path[:, 1].tolist(),
        },
        "time_avg": {
            "mean": list(summary.mean),
            "std": list(summary.std),
            "q05": list(summary.q05),
            "q50": list(summary.q50),
            "q95": list(summary.q95),
        },
        "phase_means": {
            "phases": (np.arange(m) / m).tolist(),
            "t_prev": stats.phase_times_prev.tolist(),
            "t_final": stats.phase_times_final.tolist(),
            "m_prev": stats.phase_means_prev.tolist(),
            "m_final": stats.phase_means_final.tolist(),
            "se_final": stats.phase_se_final.tolist(),
        },
        "empirical_yield": {
            "est": float(z.mean()),
            "se": float(z.std(ddof=1) / math.sqrt(len(z))),
        },
        "config_echo": {
            "n_paths": stats.cfg.n_paths,
            "master_seed": stats.cfg.master_seed,
            "dt": sim.dt,
            "t_end": sim.t_end,
            "x0": list(sim.x0),
            "scheme": str(sim.scheme),
            "record_stride": sim.effective_stride,
            "h": list(stats.h),
            "burn_in_fraction": stats.burn_in_fraction,
            "n_surviving": stats.n_surviving,
            "failures": [list(f) for f in stats.failures],
        },
    }
