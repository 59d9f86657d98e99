"""Effective (acoustic) metric seen by phonons of a condensate.

The phonon field of a homogeneous condensate obeys a massless wave equation
on a metric built from the real spacetime metric ``g`` and the background
flow ``V``::

    G_ab = Omega * [ g_ab + (1 - c_s**2 / c**2) * V_a V_b / c**2 ],
    Omega = n0**2 / (c_s * (rho0 + p0)),

with ``V`` normalised as ``g_ab V^a V^b = -c**2``. The scalar prefactor
``Omega`` is kept apart from the components as ``conformal_factor``; in 1+1D
it drops out of the wave equation and downstream code uses components only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import SuperluminalSoundError

__all__ = [
    "Polytrope",
    "TabulatedEOS",
    "BackgroundState",
    "MetricTensor",
    "FourVelocity",
    "minkowski",
    "comoving_velocity",
    "speed_of_sound",
    "conformal_prefactor",
    "effective_metric",
    "analogue_metric",
    "rescale_time",
    "rescale_jacobian",
    "transform_metric",
    "load_background",
    "background_from_dict",
    "metric_from_dict",
    "metric_to_dict",
]

ABSORBED = "absorbed"
MINKOWSKI_COORDS = ("t [s]", "x [m]", "y [m]", "z [m]")


@dataclass(frozen=True)
class Polytrope:
    """``p = K * rho**gamma``."""

    K: float
    gamma: float

    def __post_init__(self):
        if not (self.K > 0 and self.gamma > 0):
            raise ValueError(f"polytrope needs K > 0 and gamma > 0, got K={self.K}, gamma={self.gamma}")

    def pressure(self, rho):
        return self.K * rho**self.gamma

    def dp_drho(self, rho):
        return self.K * self.gamma * rho ** (self.gamma - 1.0)

    def scaled(self, lam):
        return Polytrope(self.K * lam, self.gamma)

    def to_dict(self):
        return {"type": "polytrope", "K": self.K, "gamma": self.gamma}


@dataclass(frozen=True)
class TabulatedEOS:
    """Monotone table of (rho, p) pairs.

    The derivative at ``rho`` comes from the quadratic through the three
    nearest nodes. On an evenly spaced table evaluated at a node this is the
    centred difference ``(p[i+1] - p[i-1]) / (rho[i+1] - rho[i-1])``.
    """

    rows: tuple

    def __post_init__(self):
        rows = tuple((float(r), float(p)) for r, p in self.rows)
        if len(rows) < 3:
            raise ValueError("tabulated EOS needs at least 3 rows")
        rho = np.array([r for r, _ in rows])
        p = np.array([q for _, q in rows])
        if np.any(np.diff(rho) <= 0):
            raise ValueError("tabulated EOS: rho must be strictly increasing")
        if np.any(np.diff(p) <= 0):
            raise ValueError("tabulated EOS: p must be strictly increasing in rho")
        object.__setattr__(self, "rows", rows)

    @property
    def rho(self):
        return np.array([r for r, _ in self.rows])

    @property
    def p(self):
        return np.array([q for _, q in self.rows])

    def _stencil(self, rho):
        r = self.rho
        if not (r[0] < rho < r[-1]):
            raise ValueError(f"rho={rho} is not bracketed by the table range [{r[0]}, {r[-1]}]")
        # centre on the nearest interior node so the stencil brackets rho
        i = int(np.argmin(np.abs(r - rho)))
        i = min(max(i, 1), len(r) - 2)
        return slice(i - 1, i + 2)

    def pressure(self, rho):
        return float(np.interp(rho, self.rho, self.p))

    def dp_drho(self, rho):
        sl = self._stencil(rho)
        x0, x1, x2 = self.rho[sl]
        y0, y1, y2 = self.p[sl]
        # derivative of the Lagrange interpolant
        return (
            y0 * (2 * rho - x1 - x2) / ((x0 - x1) * (x0 - x2))
            + y1 * (2 * rho - x0 - x2) / ((x1 - x0) * (x1 - x2))
            + y2 * (2 * rho - x0 - x1) / ((x2 - x0) * (x2 - x1))
        )

    def scaled(self, lam):
        return TabulatedEOS(tuple((r, lam * p) for r, p in self.rows))

    def to_dict(self):
        return {"type": "table", "rows": [list(row) for row in self.rows]}


EOS = Union[Polytrope, TabulatedEOS]


@dataclass(frozen=True)
class BackgroundState:
    """Mean-field background of the condensate (SI units unless ``c`` says otherwise)."""

    n0: float
    rho0: float
    p0: float
    eos: EOS
    c: float = 299_792_458.0

    def __post_init__(self):
        if not self.n0 > 0:
            raise ValueError(f"n0 must be positive, got {self.n0}")
        if not self.rho0 + self.p0 > 0:
            raise ValueError(f"rho0 + p0 must be positive, got {self.rho0 + self.p0}")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")

    def to_dict(self):
        return {"n0": self.n0, "rho0": self.rho0, "p0": self.p0, "c": self.c, "eos": self.eos.to_dict()}


@dataclass(frozen=True, eq=False)
class MetricTensor:
    """Symmetric 4x4 metric with coordinate labels and a detached conformal factor.

    ``lorentzian=False`` skips the signature and invertibility checks, for
    partial terms such as the analogue piece which is rank one.
    """

    components: np.ndarray
    coords: tuple = MINKOWSKI_COORDS
    conformal_factor: Union[float, str] = 1.0
    lorentzian: bool = field(default=True, repr=False)

    def __post_init__(self):
        g = np.array(self.components, dtype=float)
        if g.shape != (4, 4):
            raise ValueError(f"metric must be 4x4, got shape {g.shape}")
        if not np.array_equal(g, g.T):
            raise ValueError("metric components are not exactly symmetric")
        if len(self.coords) != 4:
            raise ValueError("metric needs four coordinate labels")
        cf = self.conformal_factor
        if cf != ABSORBED and not (isinstance(cf, (int, float)) and cf > 0):
            raise ValueError(f"conformal_factor must be positive or {ABSORBED!r}, got {cf!r}")
        if self.lorentzian:
            if np.linalg.det(g) == 0:
                raise ValueError("metric is singular")
            ev = np.linalg.eigvalsh(g)
            if not (np.sum(ev < 0) == 1 and np.sum(ev > 0) == 3):
                raise ValueError(f"metric signature is not (-,+,+,+): eigenvalues {ev}")
        g.setflags(write=False)
        object.__setattr__(self, "components", g)
        object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def inverse(self):
        return np.linalg.inv(self.components)

    @property
    def scale(self):
        return 1.0 if self.conformal_factor == ABSORBED else float(self.conformal_factor)

    def lower(self, v):
        return self.components @ np.asarray(v, dtype=float)

    def norm2(self, v):
        v = np.asarray(v, dtype=float)
        return float(v @ self.components @ v)

    def __eq__(self, other):
        if not isinstance(other, MetricTensor):
            return NotImplemented
        return (
            np.array_equal(self.components, other.components)
            and self.coords == other.coords
            and self.conformal_factor == other.conformal_factor
        )


@dataclass(frozen=True, eq=False)
class FourVelocity:
    """Contravariant flow velocity ``V^a = dx^a/dtau`` in the chart of its metric."""

    components: np.ndarray

    def __post_init__(self):
        v = np.array(self.components, dtype=float)
        if v.shape != (4,):
            raise ValueError(f"four-velocity needs 4 components, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "components", v)

    def check_normalized(self, g: MetricTensor, c: float, rtol: float = 1e-12):
        n2 = g.norm2(self.components)
        if not math.isclose(n2, -c * c, rel_tol=rtol):
            raise ValueError(f"four-velocity not normalised: g(V,V) = {n2!r}, expected {-c * c!r}")


def minkowski(c: float = 299_792_458.0) -> MetricTensor:
    """Flat metric ``diag(-c^2, 1, 1, 1)`` in coordinates (t, x, y, z)."""
    return MetricTensor(np.diag([-c * c, 1.0, 1.0, 1.0]), MINKOWSKI_COORDS, 1.0)


def comoving_velocity(g: MetricTensor, c: float) -> FourVelocity:
    """Flow at rest in the chart of ``g``: only a time component, normalised to ``-c^2``.

    In (t, x, y, z) with ``g_tt = -c^2`` this is (1, 0, 0, 0); in (ct, x, y, z)
    with ``g_00 = -1`` it is (c, 0, 0, 0).
    """
    gtt = g.components[0, 0]
    if gtt >= 0:
        raise ValueError("time-time component must be negative for a comoving flow")
    return FourVelocity(np.array([c / math.sqrt(-gtt), 0.0, 0.0, 0.0]))


def speed_of_sound(bg: BackgroundState) -> float:
    """``c * sqrt(dp/drho)`` at the background energy density."""
    slope = bg.eos.dp_drho(bg.rho0)
    if not slope > 0:
        raise ValueError(f"dp/drho = {slope!r} at rho0; sound speed must be real and nonzero")
    if slope > 1.0:
        raise SuperluminalSoundError(f"dp/drho = {slope!r} > 1 at rho0 gives c_s > c")
    return bg.c * math.sqrt(slope)


def conformal_prefactor(bg: BackgroundState, c_s: float | None = None) -> float:
    if c_s is None:
        c_s = speed_of_sound(bg)
    return bg.n0**2 / (c_s * (bg.rho0 + bg.p0))


def _flow_term(bg, g, V, c_s):
    V.check_normalized(g, bg.c)
    v_low = g.lower(V.components)
    return (1.0 - c_s**2 / bg.c**2) * np.outer(v_low, v_low) / bg.c**2


def effective_metric(bg: BackgroundState, g: MetricTensor, V: FourVelocity) -> MetricTensor:
    """Phonon metric on the real metric ``g`` for background flow ``V``.

    Components are the bracketed tensor only; the prefactor is stored as
    ``conformal_factor``.
    """
    c_s = speed_of_sound(bg)
    comps = g.components + _flow_term(bg, g, V, c_s)
    comps = 0.5 * (comps + comps.T)
    return MetricTensor(comps, g.coords, conformal_prefactor(bg, c_s))


def analogue_metric(bg: BackgroundState, V: FourVelocity, g: MetricTensor | None = None) -> MetricTensor:
    """The flow-dependent piece only, prefactor folded in.

    Satisfies ``effective.conformal_factor * (g + flow) == conformal_factor * g + analogue``.
    ``g`` defaults to flat space and is used solely to lower ``V``.
    """
    if g is None:
        g = minkowski(bg.c)
    c_s = speed_of_sound(bg)
    term = conformal_prefactor(bg, c_s) * _flow_term(bg, g, V, c_s)
    term = 0.5 * (term + term.T)
    return MetricTensor(term, g.coords, ABSORBED, lorentzian=False)


def rescale_time(event: Sequence[float], c: float, c_s: float) -> tuple:
    """Map (t, x, y, z) to phonon coordinates (c/c_s * t, x, y, z).

    ``rescale_time(e, c_s, c)`` is the inverse map.
    """
    if not c_s > 0:
        raise ValueError(f"c_s must be positive, got {c_s}")
    t, x, y, z = event
    return (c / c_s * t, x, y, z)


def rescale_jacobian(c: float, c_s: float) -> np.ndarray:
    """``d(old)/d(new)`` for the time rescaling, i.e. the Jacobian of the inverse map."""
    return np.diag([c_s / c, 1.0, 1.0, 1.0])


def transform_metric(g: MetricTensor, jacobian: np.ndarray, coords=None) -> MetricTensor:
    """Covariant transformation ``g'_ij = J^a_i J^b_j g_ab`` with ``J = d(old)/d(new)``."""
    J = np.asarray(jacobian, dtype=float)
    comps = J.T @ g.components @ J
    comps = 0.5 * (comps + comps.T)
    return MetricTensor(comps, coords or g.coords, g.conformal_factor)


# -- JSON --------------------------------------------------------------------

def _eos_from_dict(d) -> EOS:
    kind = d.get("type")
    if kind == "polytrope":
        return Polytrope(float(d["K"]), float(d["gamma"]))
    if kind == "table":
        return TabulatedEOS(tuple(tuple(r) for r in d["rows"]))
    raise ValueError(f"unknown eos type {kind!r}; expected 'polytrope' or 'table'")


def background_from_dict(d) -> BackgroundState:
    missing = [k for k in ("n0", "rho0", "p0", "eos") if k not in d]
    if missing:
        raise ValueError(f"background is missing keys: {', '.join(missing)}")
    return BackgroundState(
        n0=float(d["n0"]),
        rho0=float(d["rho0"]),
        p0=float(d["p0"]),
        eos=_eos_from_dict(d["eos"]),
        c=float(d.get("c", 299_792_458.0)),
    )


def load_background(path) -> BackgroundState:
    return background_from_dict(json.loads(Path(path).read_text()))


def metric_from_dict(d) -> MetricTensor:
    return MetricTensor(
        np.array(d["components"], dtype=float),
        tuple(d.get("coords", MINKOWSKI_COORDS)),
        d.get("conformal_factor", 1.0),
    )


def metric_to_dict(g: MetricTensor):
    return {
        "components": g.components.tolist(),
        "coords": list(g.coords),
        "conformal_factor": g.conformal_factor,
    }
