"""Massless-field modes of a rigid 1+1D cavity, inertial and uniformly accelerated.

Both bases obey Dirichlet conditions at the walls:

    u_n(t, x)     = (n pi)^(-1/2) sin(n pi (x - x_L)/L)        exp(-i omega_n t),  omega_n = n pi c_eff / L
    v_n(eta, chi) = (n pi)^(-1/2) sin(n pi ln(chi/chi_L) / D)   exp(-i Omega_n eta), Omega_n = n pi / D

with ``D = ln(chi_R/chi_L)``. The prefactors make both self-norms exactly one
under the Klein-Gordon product. All inner products are taken on the surface
``t = 0``, which coincides with ``eta = 0`` and where ``x = chi``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import quadrature
from .acoustic_metric import MetricTensor
from .errors import DomainError, HorizonError, SupportWarning

__all__ = [
    "Cavity",
    "WedgeCavity",
    "InertialMode",
    "RindlerMode",
    "inertial_mode",
    "rindler_mode",
    "wedge_from_h",
    "kg_inner_product",
    "kg_matrix",
    "wave_equation_residual",
]

# relative slack when testing whether a point is on a wall
_WALL_SLACK = 1e-12


@dataclass(frozen=True)
class Cavity:
    x_L: float
    x_R: float
    c_eff: float = 1.0

    def __post_init__(self):
        if not (0 < self.x_L < self.x_R):
            raise ValueError(f"cavity needs 0 < x_L < x_R, got ({self.x_L}, {self.x_R})")
        if not self.c_eff > 0:
            raise ValueError("c_eff must be positive")

    @property
    def L(self):
        return self.x_R - self.x_L

    @property
    def domain(self):
        return self.x_L, self.x_R

    def scaled(self, length_scale=1.0, speed_scale=1.0):
        return Cavity(self.x_L * length_scale, self.x_R * length_scale, self.c_eff * speed_scale)


@dataclass(frozen=True)
class WedgeCavity:
    """Cavity walls held at fixed Rindler positions ``chi_L < chi_R``."""

    chi_L: float
    chi_R: float
    c_eff: float = 1.0

    def __post_init__(self):
        if not self.chi_L > 0:
            raise HorizonError(f"chi_L = {self.chi_L} must be positive: the horizon would be inside the cavity")
        if not self.chi_R > self.chi_L:
            raise ValueError(f"need chi_L < chi_R, got ({self.chi_L}, {self.chi_R})")
        if not self.c_eff > 0:
            raise ValueError("c_eff must be positive")

    @property
    def chi0(self):
        return 0.5 * (self.chi_L + self.chi_R)

    @property
    def L(self):
        return self.chi_R - self.chi_L

    @property
    def D(self):
        return math.log(self.chi_R / self.chi_L)

    @property
    def h(self):
        return self.L / self.chi0

    @property
    def domain(self):
        return self.chi_L, self.chi_R

    def inertial_cavity(self):
        """The inertial box whose walls coincide with this one on ``t = 0``."""
        return Cavity(self.chi_L, self.chi_R, self.c_eff)


def wedge_from_h(h: float, L: float, c_eff: float = 1.0) -> WedgeCavity:
    """Wedge cavity of proper length ``L`` whose centre has ``a L / c_eff^2 = h``."""
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    if h >= 2:
        raise HorizonError(f"h = {h} >= 2 puts the acceleration horizon inside the cavity (chi_L <= 0)")
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    chi0 = L / h
    return WedgeCavity(chi0 - 0.5 * L, chi0 + 0.5 * L, c_eff)


def _check_inside(x, lo, hi, what):
    x = np.asarray(x, dtype=float)
    slack = _WALL_SLACK * (hi - lo)
    if np.any(x < lo - slack) or np.any(x > hi + slack):
        raise DomainError(f"{what} outside the cavity [{lo}, {hi}]")


class _Mode:
    """Shared machinery for a single positive- or negative-frequency mode."""

    chart = None

    def __init__(self, box, n, conjugate=False):
        if int(n) != n or n < 1:
            raise ValueError(f"mode index must be a positive integer, got {n}")
        self.box = box
        self.n = int(n)
        self.conjugate = bool(conjugate)

    @property
    def c_eff(self):
        return self.box.c_eff

    @property
    def domain(self):
        return self.box.domain

    @property
    def norm(self):
        return 1.0 / math.sqrt(self.n * math.pi)

    def conj(self):
        return type(self)(self.box, self.n, not self.conjugate)

    def _phase(self, time):
        sign = 1.0 if self.conjugate else -1.0
        return np.exp(sign * 1j * self.frequency * np.asarray(time, dtype=float)), sign

    def __call__(self, time, pos):
        return self.evaluate(time, pos)[0]

    def evaluate(self, time, pos):
        """Value and first derivatives ``(phi, d_time phi, d_pos phi)``."""
        _check_inside(pos, *self.domain, what=f"{self.chart} mode position")
        s, ds = self._profile(np.asarray(pos, dtype=float))
        phase, sign = self._phase(time)
        value = s * phase
        return value, sign * 1j * self.frequency * value, ds * phase

    def __repr__(self):
        star = "*" if self.conjugate else ""
        return f"{type(self).__name__}(n={self.n}{star}, box={self.box})"


class InertialMode(_Mode):
    chart = "inertial"

    @property
    def frequency(self):
        return self.n * math.pi * self.box.c_eff / self.box.L

    def _profile(self, x):
        k = self.n * math.pi / self.box.L
        arg = k * (x - self.box.x_L)
        return self.norm * np.sin(arg), self.norm * k * np.cos(arg)

    def on_surface(self, x):
        """``(phi, d_t phi)`` on ``t = 0``."""
        s, _ = self._profile(x)
        sign = 1.0 if self.conjugate else -1.0
        return s, sign * 1j * self.frequency * s


class RindlerMode(_Mode):
    chart = "rindler"

    @property
    def frequency(self):
        """Dimensionless frequency conjugate to ``eta``."""
        return self.n * math.pi / self.box.D

    def _profile(self, chi):
        k = self.n * math.pi / self.box.D
        arg = k * np.log(chi / self.box.chi_L)
        return self.norm * np.sin(arg), self.norm * k * np.cos(arg) / chi

    def on_surface(self, x):
        """``(phi, d_t phi)`` on ``t = 0``, using ``d_t = (c_eff / x) d_eta`` there."""
        s, _ = self._profile(x)
        sign = 1.0 if self.conjugate else -1.0
        return s, sign * 1j * self.frequency * s * self.box.c_eff / x


def inertial_mode(cavity: Cavity, n: int, t, x):
    """``(u_n, d_t u_n, d_x u_n)`` at ``(t, x)``."""
    return InertialMode(cavity, n).evaluate(t, x)


def rindler_mode(wedge: WedgeCavity, n: int, eta, chi):
    """``(v_n, d_eta v_n, d_chi v_n)`` at ``(eta, chi)``."""
    return RindlerMode(wedge, n).evaluate(eta, chi)


# -- Klein-Gordon product ----------------------------------------------------

def _common(phis, psis):
    modes = list(phis) + list(psis)
    c = modes[0].c_eff
    for m in modes[1:]:
        if not math.isclose(m.c_eff, c, rel_tol=1e-14):
            raise ValueError("modes paired in a Klein-Gordon product must share c_eff")
    lo = max(m.domain[0] for m in modes)
    hi = min(m.domain[1] for m in modes)
    return c, lo, hi


def _stack(modes, x):
    vals, dts = zip(*(m.on_surface(x) for m in modes))
    return np.array(vals, dtype=complex), np.array(dts, dtype=complex)


def kg_matrix(
    phis: Sequence[_Mode],
    psis: Sequence[_Mode],
    form: str = "inertial",
    tol: float = quadrature.DEFAULT_TOL,
    max_panels: int = quadrature.DEFAULT_MAX_PANELS,
) -> np.ndarray:
    """Matrix of products ``(phis[m], psis[n])`` on ``t = 0``.

    ``form="inertial"`` integrates ``-(i/c) [phi d_t psi* - psi* d_t phi] dx``
    over the unit variable ``xi = (x - x_lo)/(x_hi - x_lo)``.
    ``form="rindler"`` integrates ``-i [phi d_eta psi* - psi* d_eta phi] dchi/chi``
    over ``s = ln(chi/chi_lo)/ln(chi_hi/chi_lo)``. The two forms are equal;
    integrating in dimensionless variables keeps the result independent of
    the cavity's length and speed scales. ``tol`` bounds each entry's
    absolute error.
    """
    if form not in ("inertial", "rindler"):
        raise ValueError(f"form must be 'inertial' or 'rindler', got {form!r}")
    phis, psis = list(phis), list(psis)
    c, lo, hi = _common(phis, psis)
    if not hi > lo:
        warnings.warn(
            f"mode supports do not overlap ([{lo}, {hi}] is empty); products are zero",
            SupportWarning,
            stacklevel=2,
        )
        return np.zeros((len(phis), len(psis)), dtype=complex)

    if form == "inertial":
        width = hi - lo

        def integrand(xi):
            x = lo + width * xi
            f, df = _stack(phis, x)
            g, dg = _stack(psis, x)
            g, dg = g.conj(), dg.conj()
            body = f[:, None, :] * dg[None, :, :] - g[None, :, :] * df[:, None, :]
            return (-1j / c) * width * body

    else:
        D = math.log(hi / lo)

        def integrand(s):
            x = lo * np.exp(D * s)
            f, df = _stack(phis, x)
            g, dg = _stack(psis, x)
            g, dg = g.conj(), dg.conj()
            # d_eta = (x / c) d_t on the surface; dchi/chi = D ds
            scale = x / c
            body = f[:, None, :] * (dg * scale)[None, :, :] - g[None, :, :] * (df * scale)[:, None, :]
            return -1j * D * body

    value, _, _ = quadrature.integrate(integrand, 0.0, 1.0, tol=tol, max_panels=max_panels)
    return value


def kg_inner_product(phi, psi, form="inertial", tol=quadrature.DEFAULT_TOL, max_panels=quadrature.DEFAULT_MAX_PANELS):
    """Klein-Gordon product ``(phi, psi)`` on the ``t = 0`` surface."""
    return complex(kg_matrix([phi], [psi], form=form, tol=tol, max_panels=max_panels)[0, 0])


# -- wave equation -----------------------------------------------------------

def wave_equation_residual(field, metric: MetricTensor, event, step):
    """``|box phi|`` at ``event = (t, x)`` by central differences.

    The metric must be constant and diagonal in (t, x, ...), so the
    d'Alembertian reduces to ``g^tt d_t^2 phi + g^xx d_x^2 phi``; the
    conformal factor is ignored, as is correct in 1+1D. ``field`` is any
    callable ``field(t, x)``; mode objects qualify and raise when the
    stencil leaves the cavity. ``step`` is a scalar or a (dt, dx) pair.
    """
    g = metric.components
    if not np.array_equal(g, np.diag(np.diag(g))):
        raise ValueError("wave_equation_residual supports diagonal metrics only")
    ginv = 1.0 / np.diag(g)
    dt, dx = (step, step) if np.ndim(step) == 0 else step
    t, x = event
    domain = getattr(field, "domain", None)
    if domain is not None and (x - dx <= domain[0] or x + dx >= domain[1]):
        raise DomainError(f"stencil x +/- {dx} around x = {x} reaches a wall of {domain}")
    try:
        f0 = field(t, x)
        ftt = (field(t + dt, x) - 2.0 * f0 + field(t - dt, x)) / dt**2
        fxx = (field(t, x + dx) - 2.0 * f0 + field(t, x - dx)) / dx**2
    except DomainError as exc:
        raise DomainError(f"stencil around event {event} leaves the field's domain: {exc}") from exc
    return float(abs(ginv[0] * ftt + ginv[1] * fxx))
