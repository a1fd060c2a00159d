"""Parameter sweeps, revival detection and revival-time scaling fits.

A quench launches quasiparticle pairs whose fastest group velocity is bounded,
so a local observable on a ring of n sites shows its first finite-size revival
at a time t_r growing linearly with n.  The detector below calibrates a
baseline over an early window (default [0.05 n, 0.15 n], after initial
transients have dephased) and returns the time of the largest deviation from
that baseline inside the search window (default [0.15 n, 0.4 n]).

Sweeps are deterministic: grid points are computed independently and assembled
in index order, so the output is identical for any worker count.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .correlators import correlator_series
from .measures import measure_arrays
from .model import ModelParams

__all__ = ["MeasureRecord", "SweepSpec", "RevivalFit", "NoRevivalError",
           "series_measures", "time_series", "sweep_grid", "detect_first_revival",
           "fit_linear", "scan_revivals", "resolve_workers"]

MEASURE_NAMES = ("c_l1", "c_re", "mrq")
THREADS_ENV_VAR = "XYQUENCH_THREADS"

# A series whose largest baseline deviation falls below this is called flat.
FLAT_EPS = 1e-9

_REC_TOL = 1e-10


class NoRevivalError(RuntimeError):
    """Raised when a series stays flat and no revival can be located."""

    def __init__(self, measure: str, n_sites: int):
        self.measure = measure
        self.n_sites = n_sites
        super().__init__(f"no revival detected for n={n_sites} (measure {measure})")


@dataclass(frozen=True)
class MeasureRecord:
    """All three resource measures at one (t, h1) grid point."""

    t: float
    h1: float
    c_l1: float
    c_re: float
    mrq: float

    def __post_init__(self) -> None:
        if self.c_l1 < -_REC_TOL or self.c_re < -_REC_TOL:
            raise ValueError(f"coherences must be non-negative, got "
                             f"c_l1={self.c_l1!r} c_re={self.c_re!r}")
        if not (1.0 - _REC_TOL <= self.mrq <= 6.0 + _REC_TOL):
            raise ValueError(f"mrq={self.mrq!r} outside [1, 6]")


@dataclass(frozen=True)
class SweepSpec:
    """A rectangular (h1, t) grid at fixed n, j, gamma, h0."""

    n: int
    j: float
    gamma: float
    h0: float
    h1_values: tuple[float, ...]
    times: tuple[float, ...]
    measures: tuple[str, ...] = MEASURE_NAMES

    def __post_init__(self) -> None:
        ModelParams(self.n, self.j, self.gamma, self.h0, self.h0)  # field validation
        if len(self.h1_values) == 0:
            raise ValueError("h1_values must be non-empty")
        if len(self.times) == 0:
            raise ValueError("times must be non-empty")
        if any(not math.isfinite(v) for v in self.h1_values):
            raise ValueError("h1_values must be finite")
        if any(t < 0 or not math.isfinite(t) for t in self.times):
            raise ValueError("times must be finite and >= 0")
        bad = [m for m in self.measures if m not in MEASURE_NAMES]
        if bad or len(self.measures) == 0:
            raise ValueError(f"measures must be a non-empty subset of {MEASURE_NAMES}, "
                             f"got {self.measures!r}")


@dataclass(frozen=True)
class RevivalFit:
    """Least-squares line through (n, t_r) revival points."""

    slope: float
    intercept: float
    r_squared: float
    sizes: tuple[int, ...]
    revival_times: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.sizes) < 3:
            raise ValueError(f"a scaling fit needs at least 3 points, got {len(self.sizes)}")
        if len(self.sizes) != len(self.revival_times):
            raise ValueError("sizes and revival_times must have equal length")
        if not (0.0 <= self.r_squared <= 1.0):
            raise ValueError(f"r_squared={self.r_squared!r} outside [0, 1]")


def resolve_workers(explicit: int | None = None) -> int:
    """Worker count: explicit argument, else XYQUENCH_THREADS, else 1."""
    if explicit is None:
        raw = os.environ.get(THREADS_ENV_VAR)
        if raw is None:
            return 1
        try:
            explicit = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None
    if explicit < 1:
        raise ValueError(f"worker count must be >= 1, got {explicit}")
    return explicit


def series_measures(params: ModelParams, times) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(c_l1, c_re, mrq) arrays over a time grid at fixed parameters."""
    corr = correlator_series(params, times)
    return measure_arrays(corr.mz, corr.sxx, corr.syy, corr.szz)


def time_series(params: ModelParams, times) -> list[MeasureRecord]:
    """Measure records over a time grid at the h1 stored in params."""
    times = np.asarray(times, dtype=float)
    cl1, cre, mq = series_measures(params, times)
    return [MeasureRecord(t=float(times[i]), h1=params.h1, c_l1=float(cl1[i]),
                          c_re=float(cre[i]), mrq=float(mq[i]))
            for i in range(times.size)]


def sweep_grid(spec: SweepSpec, workers: int | None = None) -> list[MeasureRecord]:
    """Records for the full (h1, t) grid, h1-major and t-minor.

    Row order and values are independent of the worker count.
    """
    nworkers = resolve_workers(workers)
    times = np.asarray(spec.times, dtype=float)

    def column(h1: float) -> list[MeasureRecord]:
        params = ModelParams(spec.n, spec.j, spec.gamma, spec.h0, float(h1))
        return time_series(params, times)

    if nworkers == 1 or len(spec.h1_values) == 1:
        columns = [column(h1) for h1 in spec.h1_values]
    else:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            columns = list(pool.map(column, spec.h1_values))
    return [rec for col in columns for rec in col]


def detect_first_revival(times, values, n_sites: int,
                         cal_window: tuple[float, float] = (0.05, 0.15),
                         search_window: tuple[float, float] = (0.15, 0.4)) -> float | None:
    """Time of the first finite-size revival, or None for a flat series.

    Windows are fractions of n_sites.  The baseline is the mean over the
    calibration window; the revival is the largest absolute deviation from it
    inside the search window.  A series not covering both windows is an error;
    a maximum deviation below 1e-9 reports no revival.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.ndim != 1 or times.shape != values.shape:
        raise ValueError("times and values must be 1-d arrays of equal length")
    if times.size >= 2 and np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    for name, (lo, hi) in (("cal_window", cal_window), ("search_window", search_window)):
        if not (0.0 <= lo < hi):
            raise ValueError(f"{name} must satisfy 0 <= lo < hi, got {(lo, hi)}")
    cal = (times >= cal_window[0] * n_sites) & (times <= cal_window[1] * n_sites)
    sea = (times >= search_window[0] * n_sites) & (times <= search_window[1] * n_sites)
    if not cal.any() or not sea.any():
        raise ValueError(
            f"series too short: needs points in [{cal_window[0] * n_sites}, "
            f"{cal_window[1] * n_sites}] and [{search_window[0] * n_sites}, "
            f"{search_window[1] * n_sites}], covers [{times[0]}, {times[-1]}]")
    baseline = float(values[cal].mean())
    dev = np.abs(values[sea] - baseline)
    if float(dev.max()) < FLAT_EPS:
        return None
    return float(times[sea][int(np.argmax(dev))])


def fit_linear(sizes, revival_times) -> RevivalFit:
    """Ordinary least squares with intercept for t_r versus n."""
    xs = np.asarray(sizes, dtype=float)
    ys = np.asarray(revival_times, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise ValueError("sizes and revival_times must be 1-d arrays of equal length")
    if xs.size < 3:
        raise ValueError(f"a scaling fit needs at least 3 points, got {xs.size}")
    if float(np.ptp(xs)) == 0.0:
        raise ValueError("degenerate abscissas: all sizes are equal")
    design = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), *_ = np.linalg.lstsq(design, ys, rcond=None)
    resid = ys - design @ np.array([slope, intercept])
    ss_res = float(np.sum(resid ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    r2 = min(max(r2, 0.0), 1.0)
    return RevivalFit(slope=float(slope), intercept=float(intercept), r_squared=r2,
                      sizes=tuple(int(v) for v in xs),
                      revival_times=tuple(float(v) for v in ys))


def scan_revivals(sizes, dt: float, j: float, gamma: float, h0: float, h1: float,
                  measures: tuple[str, ...] = MEASURE_NAMES,
                  cal_window: tuple[float, float] = (0.05, 0.15),
                  search_window: tuple[float, float] = (0.15, 0.4),
                  ) -> dict[str, list[tuple[int, float]]]:
    """First revival time per chain size for each requested measure.

    The time grid for size n runs from 0 to the search-window edge in steps
    of dt.  Raises NoRevivalError if any series stays flat.
    """
    if dt <= 0 or not math.isfinite(dt):
        raise ValueError(f"dt must be positive, got {dt!r}")
    bad = [m for m in measures if m not in MEASURE_NAMES]
    if bad or len(measures) == 0:
        raise ValueError(f"measures must be a non-empty subset of {MEASURE_NAMES}, got {measures!r}")
    points: dict[str, list[tuple[int, float]]] = {m: [] for m in measures}
    for n in sizes:
        params = ModelParams(int(n), j, gamma, h0, h1)
        times = np.arange(0.0, search_window[1] * params.n + 0.5 * dt, dt)
        named = dict(zip(MEASURE_NAMES, series_measures(params, times)))
        for m in measures:
            t_r = detect_first_revival(times, named[m], params.n,
                                       cal_window=cal_window, search_window=search_window)
            if t_r is None:
                raise NoRevivalError(m, params.n)
            points[m].append((params.n, t_r))
    return points
