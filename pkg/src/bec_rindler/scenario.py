"""Photon and phonon scenarios: h sweeps, comparisons and Galilean-limit tables."""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .acoustic_metric import BackgroundState, background_from_dict, speed_of_sound
from .bogoliubov import (
    BogoliubovPair,
    compute_coefficients,
    galilean_coefficients,
    h_parameter,
    particle_number,
)
from .cavity_modes import Cavity
from .charts import RindlerChart
from .errors import ConfigError, NumericFailure, QuadratureError

__all__ = [
    "ScenarioConfig",
    "SweepRow",
    "SweepResult",
    "CompareReport",
    "GalileanReport",
    "config_from_dict",
    "load_config",
    "parse_range",
    "log_range",
    "run",
    "compare",
    "galilean_report",
    "loglog_slope",
    "CSV_HEADER",
    "MATCH_TOL",
]

CSV_HEADER = ("h", "total_N", "residual_canonical", "residual_symmetry", "trusted_block", "runtime_s")
GALILEAN_HEADER = ("eps", "tau_s", "dt_s", "dx_m", "dt_leading_s", "dx_leading_m")
MATCH_TOL = 1e-10
MEDIA = ("photon", "phonon")


def log_range(lo, hi, n):
    if not (lo > 0 and hi > 0):
        raise ValueError("log range endpoints must be positive")
    if n < 1:
        raise ValueError("log range needs at least one point")
    if n == 1:
        return (float(lo),)
    return tuple(float(v) for v in np.logspace(math.log10(lo), math.log10(hi), int(n)))


def parse_range(text):
    """``"LO:HI:N"`` -> log-spaced tuple."""
    try:
        lo, hi, n = text.split(":")
        return log_range(float(lo), float(hi), int(n))
    except ValueError as exc:
        raise ConfigError("sweep", f"expected LO:HI:N with positive LO, HI and integer N, got {text!r} ({exc})") from None


def loglog_slope(x, y):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if len(x) < 2:
        return None
    return float(np.polyfit(np.log(x), np.log(np.abs(y)), 1)[0])


@dataclass(frozen=True)
class ScenarioConfig:
    """One run. ``sweep`` (h values) takes precedence over ``a`` when both are set."""

    medium: str
    L: float
    a: Optional[float] = None
    c: Optional[float] = None
    c_s: Optional[float] = None
    background: Optional[BackgroundState] = None
    cutoff: int = 30
    tol: float = 1e-10
    sweep: Optional[tuple] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.medium not in MEDIA:
            raise ConfigError("medium", f"must be one of {MEDIA}, got {self.medium!r}")
        if not (isinstance(self.L, (int, float)) and self.L > 0):
            raise ConfigError("L", f"cavity length must be positive, got {self.L!r}")
        if self.c is not None and not self.c > 0:
            raise ConfigError("c", f"must be positive, got {self.c!r}")
        if self.c_s is not None and not self.c_s > 0:
            raise ConfigError("c_s", f"must be positive, got {self.c_s!r}")
        if self.a is not None and not self.a > 0:
            raise ConfigError("a", f"proper acceleration must be positive, got {self.a!r}")
        if int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise ConfigError("cutoff", f"must be a positive integer, got {self.cutoff!r}")
        if not self.tol > 0:
            raise ConfigError("tol", f"must be positive, got {self.tol!r}")
        if self.a is None and not self.sweep:
            raise ConfigError("a", "either a proper acceleration or a sweep of h values is required")
        if self.sweep is not None:
            object.__setattr__(self, "sweep", tuple(sorted(float(h) for h in self.sweep)))
        self.c_eff  # validates the speed source
        for h in self.h_values:
            if not 0 < h < 2:
                raise ConfigError(
                    "h",
                    f"h = {h!r} is outside (0, 2): for h >= 2 the acceleration horizon "
                    "(chi = 0) lies inside the cavity, so the accelerated modes do not exist",
                )

    @property
    def c_eff(self):
        if self.medium == "photon":
            if self.c is None:
                raise ConfigError("c", "photon scenarios need the light speed c")
            return float(self.c)
        if self.c_s is not None:
            return float(self.c_s)
        if self.background is not None:
            try:
                return speed_of_sound(self.background)
            except ValueError as exc:
                raise ConfigError("background", str(exc)) from None
        raise ConfigError("c_s", "phonon scenarios need c_s or a background state")

    @property
    def h_values(self):
        if self.sweep:
            return self.sweep
        return (h_parameter(self.a, self.L, self.c_eff),)

    @property
    def cavity(self):
        # walls are placed by compute_coefficients; only L and c_eff matter here
        return Cavity(self.L, 2.0 * self.L, self.c_eff)

    def to_dict(self):
        d = asdict(self)
        d["background"] = None if self.background is None else self.background.to_dict()
        d["sweep"] = None if self.sweep is None else list(self.sweep)
        return d


_KEYS = {"medium", "a", "L", "c", "c_s", "background", "cutoff", "tol", "sweep", "out"}


def config_from_dict(d) -> ScenarioConfig:
    unknown = set(d) - _KEYS
    if unknown:
        raise ConfigError(sorted(unknown)[0], f"unknown config key(s): {', '.join(sorted(unknown))}")
    for key in ("medium", "L"):
        if key not in d:
            raise ConfigError(key, "required")
    kw = dict(d)
    for key in ("a", "L", "c", "c_s", "tol"):
        if kw.get(key) is not None:
            try:
                kw[key] = float(kw[key])
            except (TypeError, ValueError):
                raise ConfigError(key, f"must be a number, got {kw[key]!r}") from None
    if "cutoff" in kw:
        try:
            kw["cutoff"] = int(kw["cutoff"])
        except (TypeError, ValueError):
            raise ConfigError("cutoff", f"must be an integer, got {kw['cutoff']!r}") from None
    if kw.get("background") is not None:
        try:
            kw["background"] = background_from_dict(kw["background"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("background", str(exc)) from None
    sweep = kw.get("sweep")
    if isinstance(sweep, dict):
        try:
            kw["sweep"] = log_range(float(sweep["lo"]), float(sweep["hi"]), int(sweep["n"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("sweep", f"log range needs positive lo, hi and integer n ({exc})") from None
    elif isinstance(sweep, str):
        kw["sweep"] = parse_range(sweep)
    elif sweep is not None:
        kw["sweep"] = tuple(float(h) for h in sweep)
    return ScenarioConfig(**kw)


def load_config(path) -> ScenarioConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"{path} is not valid JSON: {exc}") from None
    return config_from_dict(doc)


# -- sweeps ------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    h: float
    total_N: float
    per_mode: tuple
    residual_canonical: float
    residual_symmetry: float
    trusted_block: int
    runtime_s: float

    def csv_fields(self):
        return (
            repr(self.h),
            repr(self.total_N),
            repr(self.residual_canonical),
            repr(self.residual_symmetry),
            str(self.trusted_block),
            repr(self.runtime_s),
        )


@dataclass
class SweepResult:
    config: ScenarioConfig
    rows: list
    pairs: list = field(repr=False)
    slope: Optional[float] = None

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in self.rows:
            w.writerow(row.csv_fields())
        return buf.getvalue()


def _solve_one(config, h):
    start = time.perf_counter()
    try:
        pair = compute_coefficients(config.cavity, h, config.cutoff, config.tol)
    except QuadratureError as exc:
        raise NumericFailure(h, exc) from exc
    per_mode, total = particle_number(pair)
    r_can, r_sym = pair.residuals()
    row = SweepRow(
        h=float(h),
        total_N=float(total),
        per_mode=tuple(float(v) for v in per_mode),
        residual_canonical=r_can,
        residual_symmetry=r_sym,
        trusted_block=pair.trusted_block,
        runtime_s=time.perf_counter() - start,
    )
    return row, pair


def run(config: ScenarioConfig, out=None, jobs=1) -> SweepResult:
    """Compute every h of ``config``; write artifacts when an output directory is given.

    Rows come back in ascending h whatever the completion order.
    """
    hs = sorted(config.h_values)
    if jobs > 1 and len(hs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(lambda h: _solve_one(config, h), hs))
    else:
        done = [_solve_one(config, h) for h in hs]
    rows = [r for r, _ in done]
    pairs = [p for _, p in done]
    slope = None
    if len(rows) >= 2 and all(r.total_N > 0 for r in rows):
        slope = loglog_slope([r.h for r in rows], [r.total_N for r in rows])
    result = SweepResult(config, rows, pairs, slope)
    out = out or config.out
    if out:
        write_run(result, out)
    return result


def write_run(result: SweepResult, out):
    out = Path(out)
    (out / "pairs").mkdir(parents=True, exist_ok=True)
    (out / "sweep.csv").write_text(result.to_csv())
    files = []
    for i, pair in enumerate(result.pairs):
        name = f"pairs/pair_{i:03d}.json"
        pair.save(out / name)
        files.append(name)
    summary = {
        "created_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "config": result.config.to_dict(),
        "c_eff": result.config.c_eff,
        "slope_total_N_vs_h": result.slope,
        "rows": [
            {"h": r.h, "total_N": r.total_N, "per_mode_N": list(r.per_mode), "pair_file": f}
            for r, f in zip(result.rows, files)
        ],
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2))


# -- comparison --------------------------------------------------------------

@dataclass
class CompareReport:
    h_a: tuple
    h_b: tuple
    max_dalpha: float
    max_dbeta: float
    max_dN: float

    @property
    def h_match(self):
        return all(math.isclose(x, y, rel_tol=1e-12) for x, y in zip(self.h_a, self.h_b))

    @property
    def match(self):
        return self.h_match and max(self.max_dalpha, self.max_dbeta, self.max_dN) < MATCH_TOL

    def to_dict(self):
        d = asdict(self)
        d.update(h_match=self.h_match, match=self.match, tolerance=MATCH_TOL)
        return d


def compare(config_a: ScenarioConfig, config_b: ScenarioConfig, jobs=1) -> CompareReport:
    """Entrywise differences between the transformations of two scenarios."""
    if config_a.cutoff != config_b.cutoff:
        raise ConfigError("cutoff", f"cannot compare cutoffs {config_a.cutoff} and {config_b.cutoff}")
    if len(config_a.h_values) != len(config_b.h_values):
        raise ConfigError("sweep", "compared scenarios must have the same number of h values")
    ra = run(replace(config_a, out=None), jobs=jobs)
    rb = run(replace(config_b, out=None), jobs=jobs)
    da = db = dn = 0.0
    for pa, pb, rowa, rowb in zip(ra.pairs, rb.pairs, ra.rows, rb.rows):
        da = max(da, float(np.max(np.abs(pa.alpha - pb.alpha))))
        db = max(db, float(np.max(np.abs(pa.beta - pb.beta))))
        k = min(len(rowa.per_mode), len(rowb.per_mode))
        na, nb = np.array(rowa.per_mode[:k]), np.array(rowb.per_mode[:k])
        dn = max(dn, float(np.max(np.abs(na - nb), initial=0.0)), abs(rowa.total_N - rowb.total_N))
    return CompareReport(tuple(ra.config.h_values), tuple(rb.config.h_values), da, db, dn)


# -- Galilean limit ----------------------------------------------------------

@dataclass
class GalileanReport:
    rows: list
    slope_time: float
    slope_position: float
    h_trend: list
    galilean_total_N: float

    @property
    def orders_confirmed(self):
        return abs(self.slope_time - 3.0) <= 0.05 and abs(self.slope_position - 4.0) <= 0.05

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(GALILEAN_HEADER)
        for row in self.rows:
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    def to_dict(self):
        return {
            "slope_time": self.slope_time,
            "slope_position": self.slope_position,
            "orders_confirmed": self.orders_confirmed,
            "h_trend": [{"h": h, "total_N": n} for h, n in self.h_trend],
            "galilean_total_N": self.galilean_total_N,
        }


def galilean_report(config: ScenarioConfig, epsilons, h_trend=(1e-4, 1e-3, 1e-2), trend_cutoff=None):
    """Rindler-minus-Galilean residuals over ``epsilons`` and the small-h particle trend.

    The worldline uses the configured proper acceleration (or the one implied
    by the first h value); ``tau = eps * c_eff / a``.
    """
    eps = np.asarray(sorted(float(e) for e in epsilons))
    if eps.size < 2:
        raise ConfigError("epsilons", "need at least two expansion parameters")
    if np.any(eps <= 0) or np.any(eps >= 0.5):
        raise ConfigError("epsilons", "expansion parameters must lie in (0, 0.5)")
    chart = RindlerChart(config.c_eff)
    a = config.a if config.a is not None else config.h_values[0] * config.c_eff**2 / config.L
    chi0 = chart.position_for_acceleration(a)
    tau = eps * config.c_eff / a
    dt, dx = chart.expansion_residual(tau, a)
    dt_lead = chi0 / config.c_eff * eps**3 / 6.0
    dx_lead = chi0 * eps**4 / 24.0
    rows = [tuple(r) for r in np.column_stack([eps, tau, dt, dx, dt_lead, dx_lead])]
    trend_cutoff = trend_cutoff or config.cutoff
    trend = []
    for h in h_trend:
        _, total = particle_number(compute_coefficients(config.cavity, h, trend_cutoff, config.tol))
        trend.append((float(h), float(total)))
    _, gal_total = particle_number(galilean_coefficients(trend_cutoff))
    return GalileanReport(rows, loglog_slope(eps, dt), loglog_slope(eps, dx), trend, float(gal_total))


def pair_total_from_file(path):
    """Recompute the total particle number from a serialized pair."""
    return particle_number(BogoliubovPair.load(path))[1]
