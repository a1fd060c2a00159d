"""Command-line interface: sweep, revival and validate subcommands.

Exit status: 0 on success, 1 when a physics check fails (a flat series with no
revival, or a failed validation check), 2 on usage errors (bad flags, bad
ranges, invalid parameters, unreadable or unwritable paths).

Range arguments use min:max:third, where an integer third is a point count and
a decimal third is a step; both endpoints are included when the step divides
the interval.  A config file of 'key = value' lines (keys mirror the long
flags) may supply any flag's value; explicit command-line flags win.

Numeric output carries 12 significant digits in both CSV and JSON.  Output is
deterministic: metadata records only the resolved physics parameters, never
timestamps or worker counts, and sweep rows are assembled in grid order
regardless of threading.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import __version__
from .model import ModelParams
from .oracle import (EDState, compute_F_reference, ed_correlators,
                     mode_consistency_correlators, mrq_pauli, sample_x_states,
                     sqc_ensemble)
from .correlators import compute_F, correlator_series
from .measures import assemble_xstate, c_l1, c_re, mrq
from .model import dispersion
from .sweeps import (MEASURE_NAMES, NoRevivalError, SweepSpec, fit_linear,
                     resolve_workers, scan_revivals, series_measures, sweep_grid)

_INT_RE = re.compile(r"[+-]?\d+\Z")


def _fmt(value) -> str:
    """12-significant-digit rendering used for all numeric output."""
    return format(float(value), ".12g")


def _round12(value) -> float:
    return float(_fmt(value))


def parse_range(text: str) -> np.ndarray:
    """Grid from 'min:max:third'; integer third = count, decimal third = step."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be min:max:count-or-step, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"range bounds must be numbers, got {text!r}") from None
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise ValueError(f"range bounds must be finite, got {text!r}")
    if hi < lo:
        raise ValueError(f"range max must be >= min, got {text!r}")
    third = parts[2].strip()
    if _INT_RE.match(third):
        count = int(third)
        if count < 1:
            raise ValueError(f"range count must be >= 1, got {text!r}")
        if count == 1:
            if hi != lo:
                raise ValueError(f"a 1-point range needs min == max, got {text!r}")
            return np.array([lo])
        return np.linspace(lo, hi, count)
    try:
        step = float(third)
    except ValueError:
        raise ValueError(f"range third field must be a count or step, got {text!r}") from None
    if not (np.isfinite(step) and step > 0):
        raise ValueError(f"range step must be positive, got {text!r}")
    ratio = (hi - lo) / step
    nsteps = int(round(ratio))
    if abs(ratio - nsteps) > 1e-6:
        nsteps = int(np.floor(ratio + 1e-9))
    return lo + step * np.arange(nsteps + 1)


def parse_window(text: str) -> tuple[float, float]:
    """Window fractions from 'lo:hi' with 0 <= lo < hi."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"window must be lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"window bounds must be numbers, got {text!r}") from None
    if not (0.0 <= lo < hi):
        raise ValueError(f"window must satisfy 0 <= lo < hi, got {text!r}")
    return lo, hi


def parse_int_list(text: str) -> list[int]:
    """Comma-separated integer list, e.g. '100,200,300'."""
    try:
        values = [int(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from None
    if not values:
        raise ValueError(f"expected a non-empty integer list, got {text!r}")
    return values


def parse_measures(text: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    bad = [m for m in names if m not in MEASURE_NAMES]
    if bad or not names:
        raise ValueError(f"measures must be a non-empty subset of {','.join(MEASURE_NAMES)}, "
                         f"got {text!r}")
    # canonical order, duplicates dropped
    return tuple(m for m in MEASURE_NAMES if m in names)


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key or not value:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            entries[key.replace("-", "_")] = value
    return entries


def _apply_config(subparser: argparse.ArgumentParser, path: str) -> None:
    """Install config-file entries as subcommand defaults; flags still win."""
    entries = _load_config(path)
    actions = {a.dest: a for a in subparser._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, raw in entries.items():
        if key == "config":
            raise ValueError(f"{path}: config files cannot nest a 'config' key")
        if key not in actions:
            known = ", ".join(sorted(actions))
            raise ValueError(f"{path}: unknown config key {key!r}; known keys: {known}")
        conv = actions[key].type
        try:
            defaults[key] = conv(raw) if conv is not None else raw
        except ValueError as exc:
            raise ValueError(f"{path}: bad value for {key!r}: {exc}") from None
    subparser.set_defaults(**defaults)


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="file of 'key = value' lines mirroring the long flags")
    common.add_argument("--threads", type=int, default=None,
                        help="worker count (default: $XYQUENCH_THREADS or 1); "
                             "output does not depend on it")

    parser = argparse.ArgumentParser(
        prog="xyquench",
        description="Exact post-quench dynamics and resource measures of the XY chain")
    parser.add_argument("--version", action="version", version=f"xyquench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", parents=[common],
                           help="measures on an (h1, t) grid, written as CSV or JSON")
    sweep.add_argument("--n", type=int, default=100, help="chain length (even, >= 4)")
    sweep.add_argument("--j", type=float, default=1.0, help="exchange coupling")
    sweep.add_argument("--gamma", type=float, default=1.0, help="anisotropy")
    sweep.add_argument("--h0", type=float, default=0.7, help="pre-quench field")
    sweep.add_argument("--h1", type=float, default=None, help="single post-quench field")
    sweep.add_argument("--h1-range", default=None,
                       help="post-quench field grid, min:max:count-or-step")
    sweep.add_argument("--t-range", default=None, help="time grid, min:max:count-or-step")
    sweep.add_argument("--measures", type=parse_measures, default=MEASURE_NAMES,
                       help="comma-separated subset of c_l1,c_re,mrq (default all)")
    sweep.add_argument("--output", default=None, help="output path (default stdout)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    revival = sub.add_parser("revival", parents=[common],
                             help="first-revival times versus chain size and linear fit")
    revival.add_argument("--sizes", default="100,200,300,400,500",
                         help="comma-separated chain sizes (at least 3)")
    revival.add_argument("--dt", type=float, default=0.05, help="time step")
    revival.add_argument("--j", type=float, default=1.0)
    revival.add_argument("--gamma", type=float, default=1.0)
    revival.add_argument("--h0", type=float, default=0.7)
    revival.add_argument("--h1", type=float, default=1.0)
    revival.add_argument("--measures", type=parse_measures, default=MEASURE_NAMES)
    revival.add_argument("--cal-window", default="0.05:0.15",
                         help="baseline window as fractions of n, lo:hi")
    revival.add_argument("--search-window", default="0.15:0.4",
                         help="revival search window as fractions of n, lo:hi")
    revival.add_argument("--output", default=None, help="output path (default none)")
    revival.add_argument("--format", choices=("csv", "json"), default="csv")

    validate = sub.add_parser("validate", parents=[common],
                              help="run the internal consistency and oracle checks")
    validate.add_argument("--ed-sizes", default="8,10,12",
                          help="chain sizes for the exact-diagonalisation checks")
    validate.add_argument("--states", type=int, default=200,
                          help="random X states for the measure-oracle check")
    validate.add_argument("--seed", type=int, default=7, help="random seed")

    return parser, {"sweep": sweep, "revival": revival, "validate": validate}


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _meta_lines(meta: list[tuple[str, object]]) -> str:
    lines = [f"# xyquench {__version__}"]
    for key, value in meta:
        if isinstance(value, float):
            value = _fmt(value)
        lines.append(f"# {key} = {value}")
    return "\n".join(lines) + "\n"


def cmd_sweep(ns: argparse.Namespace) -> int:
    if (ns.h1 is None) == (ns.h1_range is None):
        raise ValueError("provide exactly one of --h1 or --h1-range")
    if ns.t_range is None:
        raise ValueError("--t-range is required")
    h1_text = _fmt(ns.h1) if ns.h1 is not None else ns.h1_range
    h1_values = np.array([ns.h1]) if ns.h1 is not None else parse_range(ns.h1_range)
    times = parse_range(ns.t_range)
    spec = SweepSpec(n=ns.n, j=ns.j, gamma=ns.gamma, h0=ns.h0,
                     h1_values=tuple(float(v) for v in h1_values),
                     times=tuple(float(v) for v in times),
                     measures=ns.measures)
    records = sweep_grid(spec, workers=resolve_workers(ns.threads))

    meta = [("command", "sweep"), ("n", ns.n), ("j", float(ns.j)),
            ("gamma", float(ns.gamma)), ("h0", float(ns.h0)), ("h1", h1_text),
            ("t", ns.t_range), ("measures", ",".join(ns.measures)),
            ("points", len(records))]
    if ns.format == "csv":
        rows = [f"{_fmt(r.t)},{_fmt(r.h1)},{_fmt(r.c_l1)},{_fmt(r.c_re)},{_fmt(r.mrq)}"
                for r in records]
        text = _meta_lines(meta) + "t,h1,c_l1,c_re,mrq\n" + "\n".join(rows) + "\n"
    else:
        payload = {
            "meta": {"tool": "xyquench", "version": __version__, **dict(meta)},
            "records": [{"t": _round12(r.t), "h1": _round12(r.h1), "c_l1": _round12(r.c_l1),
                         "c_re": _round12(r.c_re), "mrq": _round12(r.mrq)} for r in records],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _write_text(ns.output, text)
    return 0


def cmd_revival(ns: argparse.Namespace) -> int:
    sizes = parse_int_list(ns.sizes)
    if len(sizes) < 3:
        raise ValueError(f"need at least 3 sizes for a scaling fit, got {sizes}")
    cal = parse_window(ns.cal_window)
    sea = parse_window(ns.search_window)
    points = scan_revivals(sizes, ns.dt, ns.j, ns.gamma, ns.h0, ns.h1,
                           measures=ns.measures, cal_window=cal, search_window=sea)
    fits = {m: fit_linear([p[0] for p in pts], [p[1] for p in pts])
            for m, pts in points.items()}
    for m in ns.measures:
        fit = fits[m]
        print(f"{m}: slope={fit.slope:.6f} intercept={fit.intercept:.6f} "
              f"r_squared={fit.r_squared:.8f} points={len(fit.sizes)}")

    if ns.output is None:
        return 0
    meta: list[tuple[str, object]] = [
        ("command", "revival"), ("sizes", ",".join(str(s) for s in sizes)),
        ("dt", float(ns.dt)), ("j", float(ns.j)), ("gamma", float(ns.gamma)),
        ("h0", float(ns.h0)), ("h1", float(ns.h1)),
        ("cal_window", ns.cal_window), ("search_window", ns.search_window)]
    for m in ns.measures:
        meta.append((f"slope_{m}", fits[m].slope))
        meta.append((f"intercept_{m}", fits[m].intercept))
        meta.append((f"r_squared_{m}", fits[m].r_squared))
    if ns.format == "csv":
        rows = [f"{m},{n},{_fmt(t_r)}" for m in ns.measures for n, t_r in points[m]]
        text = _meta_lines(meta) + "measure,n,t_r\n" + "\n".join(rows) + "\n"
    else:
        payload = {
            "meta": {"tool": "xyquench", "version": __version__, **dict(meta)},
            "records": [{"measure": m, "n": n, "t_r": _round12(t_r)}
                        for m in ns.measures for n, t_r in points[m]],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _write_text(ns.output, text)
    return 0


def _check_dispersion() -> tuple[bool, str]:
    worst = max(abs(dispersion(1.0, 1.0, 1.0, np.pi) - 0.0),
                abs(dispersion(1.0, 1.0, 1.0, 0.0) - 2.0),
                abs(dispersion(1.0, 0.5, 0.7, np.pi / 2) - np.sqrt(0.74)))
    return worst < 1e-12, f"max deviation from pinned values {worst:.2e}"

def _check_summation() -> tuple[bool, str]:
    worst = 0.0
    for (n, j, gamma, h0, h1, t) in ((100, 1.0, 1.0, 0.7, 1.0, 5.0),
                                     (100, 1.0, 0.5, 1.3, 1.0, 3.0),
                                     (500, 1.0, 1.0, 0.7, 1.0, 40.0)):
        params = ModelParams(n, j, gamma, h0, h1)
        for offset in (-1, 0, 1):
            worst = max(worst, abs(compute_F(params, t, offset)
                                   - compute_F_reference(params, t, offset)))
    return worst < 1e-12, f"max |compensated - extended-precision| {worst:.2e}"

def _check_oracle_equivalence(states: int, seed: int) -> tuple[bool, str]:
    worst_sqc = 0.0
    worst_mrq = 0.0
    for bloch in sample_x_states(states, seed):
        x = assemble_xstate(bloch)
        e_l1, e_re = sqc_ensemble(x)
        worst_sqc = max(worst_sqc, abs(e_l1 - c_l1(x)), abs(e_re - c_re(x)))
        worst_mrq = max(worst_mrq, abs(mrq_pauli(x) - mrq(x)))
    return (worst_sqc <= 1e-10 and worst_mrq <= 1e-12,
            f"{states} states: coherence dev {worst_sqc:.2e}, magic dev {worst_mrq:.2e}")

def _check_mode_consistency() -> tuple[bool, str]:
    params = ModelParams(8, 1.0, 1.0, 0.7, 1.0)
    state = EDState.from_fields(8, 1.0, 1.0, 0.7, 1.0)
    worst = 0.0
    for t in (0.0, 1.0, 2.0):
        a = np.array(mode_consistency_correlators(params, t))
        b = np.array(ed_correlators(state, t))
        worst = max(worst, float(np.abs(a - b).max()))
    return worst < 1e-8, f"max |closed-sector - ED| {worst:.2e}"

def _check_ed_convergence(ed_sizes: list[int]) -> tuple[bool, str]:
    times = np.arange(0.0, 5.01, 0.5)
    devs = []
    for n in ed_sizes:
        params = ModelParams(n, 1.0, 1.0, 0.7, 1.0)
        state = EDState.from_fields(n, 1.0, 1.0, 0.7, 1.0)
        series = correlator_series(params, times)
        analytic = np.stack([series.mz, series.sxx, series.syy, series.szz], axis=1)
        ed = np.array([ed_correlators(state, t) for t in times])
        devs.append(np.abs(analytic - ed).max(axis=0))
    ok = all(np.all(devs[i + 1] < devs[i]) for i in range(len(devs) - 1))
    chain = "; ".join(f"n={n}: {dev.max():.3f}" for n, dev in zip(ed_sizes, devs))
    return ok, f"per-size worst deviation strictly decreasing: {chain}"

def _check_stationarity() -> tuple[bool, str]:
    params = ModelParams(100, 1.0, 1.0, 1.0, 1.0)
    times = np.arange(0.0, 50.01, 0.5)
    spread = max(float(np.ptp(arr)) for arr in series_measures(params, times))
    return spread <= 1e-12, f"unquenched series spread {spread:.2e} over t in [0, 50]"


def cmd_validate(ns: argparse.Namespace) -> int:
    ed_sizes = parse_int_list(ns.ed_sizes)
    if ns.states < 1:
        raise ValueError(f"--states must be >= 1, got {ns.states}")
    checks = [
        ("dispersion", lambda: _check_dispersion()),
        ("summation", lambda: _check_summation()),
        ("oracle-equivalence", lambda: _check_oracle_equivalence(ns.states, ns.seed)),
        ("mode-consistency", lambda: _check_mode_consistency()),
        ("ed-convergence", lambda: _check_ed_convergence(ed_sizes)),
        ("stationarity", lambda: _check_stationarity()),
    ]
    failures = 0
    for name, run in checks:
        try:
            ok, detail = run()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if failures:
        print(f"{failures} check(s) failed")
        return 1
    print("all checks passed")
    return 0


_HANDLERS = {"sweep": cmd_sweep, "revival": cmd_revival, "validate": cmd_validate}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subparsers = _build_parser()
    try:
        pre, _ = parser.parse_known_args(argv)
        if getattr(pre, "config", None):
            _apply_config(subparsers[pre.command], pre.config)
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _HANDLERS[ns.command](ns)
    except NoRevivalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
