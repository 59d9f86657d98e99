"""Rindler and Galilean charts in 1+1D for a configurable signal speed.

A chart is tied to one signal speed ``c_eff``: the vacuum light speed for
photons or the sound speed for phonons. Mixing speeds inside one chart is
exactly the unit bug this module guards against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HorizonError

__all__ = ["RindlerChart", "sinh_minus_x", "cosh_minus_quadratic"]


def _series(eps, first_power, first_factorial_index, terms=12):
    # sum_k eps^(p + 2k) / (q + 2k)!  for |eps| < 1
    out = np.zeros_like(eps)
    term = eps**first_power / math.factorial(first_factorial_index)
    e2 = eps * eps
    q = first_factorial_index
    for _ in range(terms):
        out = out + term
        term = term * e2 / ((q + 1) * (q + 2))
        q += 2
    return out


def sinh_minus_x(eps):
    """``sinh(eps) - eps`` without cancellation for small ``eps``."""
    eps = np.asarray(eps, dtype=float)
    small = np.abs(eps) < 0.5
    direct = np.sinh(eps) - eps
    return np.where(small, _series(np.where(small, eps, 0.0), 3, 3), direct)


def cosh_minus_quadratic(eps):
    """``cosh(eps) - 1 - eps**2/2`` without cancellation for small ``eps``."""
    eps = np.asarray(eps, dtype=float)
    small = np.abs(eps) < 0.5
    direct = np.cosh(eps) - 1.0 - 0.5 * eps * eps
    return np.where(small, _series(np.where(small, eps, 0.0), 4, 4), direct)


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v


@dataclass(frozen=True)
class RindlerChart:
    """Right-wedge Rindler chart ``t = chi/c_eff sinh(eta)``, ``x = chi cosh(eta)``."""

    c_eff: float

    def __post_init__(self):
        if not self.c_eff > 0:
            raise ValueError(f"c_eff must be positive, got {self.c_eff}")

    def to_minkowski(self, eta, chi):
        chi = np.asarray(chi, dtype=float)
        if np.any(chi <= 0):
            raise DomainError("chi must be positive: the Rindler chart covers only the right wedge")
        eta = np.asarray(eta, dtype=float)
        return _scalar(chi / self.c_eff * np.sinh(eta)), _scalar(chi * np.cosh(eta))

    def from_minkowski(self, t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        ct = self.c_eff * t
        if np.any(x <= np.abs(ct)):
            raise HorizonError(
                "event is on or beyond the acceleration horizon x = c_eff|t|; "
                "only the right wedge x > c_eff|t| is charted"
            )
        chi = np.sqrt((x - ct) * (x + ct))
        eta = np.arctanh(ct / x)
        return _scalar(eta), _scalar(chi)

    def proper_time(self, chi0, eta):
        """Proper time elapsed along ``chi = chi0`` after Rindler time ``eta``."""
        if not np.all(np.asarray(chi0) > 0):
            raise DomainError("chi0 must be positive")
        return chi0 * eta / self.c_eff

    def proper_acceleration(self, chi0):
        if not np.all(np.asarray(chi0) > 0):
            raise DomainError("chi0 must be positive")
        return self.c_eff**2 / chi0

    def position_for_acceleration(self, a):
        """Rindler position of the observer with proper acceleration ``a``."""
        if not a > 0:
            raise ValueError(f"proper acceleration must be positive, got {a}")
        return self.c_eff**2 / a

    def fd_proper_acceleration(self, chi0, eta0=0.0, step=1e-4):
        """Norm of ``d^2 x^mu / dtau^2`` along ``chi = chi0`` by finite differences.

        Central second differences in ``eta`` at ``step`` and ``step/2``,
        combined by one Richardson step; the metric is ``diag(-c_eff^2, 1)``
        on ``(t, x)``.
        """
        dtau_deta = chi0 / self.c_eff

        def second(hs):
            etas = eta0 + np.array([-hs, 0.0, hs])
            t, x = self.to_minkowski(etas, chi0)
            d2 = np.array([t[0] - 2 * t[1] + t[2], x[0] - 2 * x[1] + x[2]]) / hs**2
            return d2 / dtau_deta**2

        a_mu = (4.0 * second(step / 2) - second(step)) / 3.0
        norm2 = -self.c_eff**2 * a_mu[0] ** 2 + a_mu[1] ** 2
        return math.sqrt(abs(norm2))

    def galilean_limit(self, tau, a, order=2):
        """Non-relativistic image of the accelerated worldline: ``(tau, chi0 + a tau^2/2)``."""
        if order != 2:
            raise ValueError(f"only order=2 is supported, got {order}")
        chi0 = self.position_for_acceleration(a)
        tau = np.asarray(tau, dtype=float)
        return _scalar(tau.copy()), _scalar(chi0 + 0.5 * a * tau * tau)

    def exact_image(self, tau, a):
        """Minkowski event reached after proper time ``tau`` at proper acceleration ``a``."""
        chi0 = self.position_for_acceleration(a)
        return self.to_minkowski(a * np.asarray(tau, dtype=float) / self.c_eff, chi0)

    def expansion_residual(self, tau, a):
        """Exact Rindler image minus Galilean image, ``(dt, dx)``.

        Evaluated in closed form through ``eps = a tau / c_eff`` so the
        leading ``eps**3`` and ``eps**4`` terms survive at small ``eps``.
        """
        if not a > 0:
            raise ValueError(f"proper acceleration must be positive, got {a}")
        chi0 = self.position_for_acceleration(a)
        eps = a * np.asarray(tau, dtype=float) / self.c_eff
        dt = chi0 / self.c_eff * sinh_minus_x(eps)
        dx = chi0 * cosh_minus_quadratic(eps)
        return _scalar(dt), _scalar(dx)

    def expansion_parameter(self, tau, a):
        return a * tau / self.c_eff
