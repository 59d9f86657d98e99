"""Bogoliubov transformation for a cavity switched suddenly to uniform acceleration.

Index convention (stored matrices)::

    alpha[m, n] =  (v_m, u_n)
    beta[m, n]  = -(v_m, u_n*)

so that ``v_m = sum_n alpha[m, n] u_n + beta[m, n] u_n*``, with ``u`` the
inertial and ``v`` the accelerated modes. With this ordering both canonical
identities ``alpha alpha^dag - beta beta^dag = 1`` and
``alpha beta^T - beta alpha^T = 0`` hold. The coefficient written
``beta_mn = -(v_n, u_m*)`` is the transpose; :attr:`BogoliubovPair.beta_transposed`
returns it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import quadrature
from .cavity_modes import Cavity, InertialMode, RindlerMode, kg_matrix, wedge_from_h
from .errors import CutoffMismatchError, UntrustedInversionError

__all__ = [
    "BogoliubovPair",
    "h_parameter",
    "acceleration_for_h",
    "sensitivity",
    "compute_coefficients",
    "particle_number",
    "compose",
    "inverse",
    "galilean_coefficients",
    "identity_residuals",
    "measure_trusted_block",
    "TRUST_FACTOR",
    "INVERSION_LIMIT",
]

# identities must hold to TRUST_FACTOR * tol inside the trusted block
TRUST_FACTOR = 100.0
INVERSION_LIMIT = 1e-4


def h_parameter(a: float, L: float, c_eff: float) -> float:
    """Dimensionless acceleration ``a L / c_eff**2``."""
    if not (a > 0 and L > 0 and c_eff > 0):
        raise ValueError(f"a, L and c_eff must be positive, got a={a}, L={L}, c_eff={c_eff}")
    return a * L / c_eff**2


def acceleration_for_h(h: float, L: float, c_eff: float) -> float:
    if not (h > 0 and L > 0 and c_eff > 0):
        raise ValueError("h, L and c_eff must be positive")
    return h * c_eff**2 / L


def sensitivity(L: float, c_eff: float) -> float:
    """``L / c_eff**2`` in s^2/m: the value of h per unit acceleration."""
    return L / c_eff**2


def identity_residuals(alpha, beta, block=None):
    """Max-norm residuals of the two canonical identities on the leading block.

    Products run over the full cutoff; only the leading ``block x block``
    corner of the result is inspected.
    """
    k = alpha.shape[0] if block is None else block
    canon = alpha @ alpha.conj().T - beta @ beta.conj().T
    sym = alpha @ beta.T - beta @ alpha.T
    r_can = float(np.max(np.abs(canon[:k, :k] - np.eye(k)))) if k else 0.0
    r_sym = float(np.max(np.abs(sym[:k, :k]))) if k else 0.0
    return r_can, r_sym


def measure_trusted_block(alpha, beta, threshold):
    """Largest K such that every leading block up to K meets ``threshold``."""
    n = alpha.shape[0]
    canon = np.abs(alpha @ alpha.conj().T - beta @ beta.conj().T - np.eye(n))
    sym = np.abs(alpha @ beta.T - beta @ alpha.T)
    worst = np.maximum(canon, sym)
    trusted = 0
    for k in range(1, n + 1):
        # entries added when growing the block from k-1 to k
        edge = max(worst[k - 1, :k].max(), worst[:k, k - 1].max())
        if edge >= threshold:
            break
        trusted = k
    return trusted


@dataclass(frozen=True, eq=False)
class BogoliubovPair:
    alpha: np.ndarray
    beta: np.ndarray
    h: Optional[float]
    tol: float
    trusted_block: int

    def __post_init__(self):
        a = np.array(self.alpha, dtype=complex)
        b = np.array(self.beta, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
            raise ValueError(f"alpha and beta must be equal square matrices, got {a.shape} and {b.shape}")
        if not 0 <= self.trusted_block <= a.shape[0]:
            raise ValueError("trusted_block must lie in [0, cutoff]")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def cutoff(self):
        return self.alpha.shape[0]

    @property
    def beta_transposed(self):
        """``-(v_n, u_m*)`` at ``[m, n]``."""
        return self.beta.T

    def residuals(self, block=None):
        """``(canonical, symmetry)`` residuals; defaults to the trusted block."""
        return identity_residuals(self.alpha, self.beta, self.trusted_block if block is None else block)

    def to_dict(self):
        def enc(M):
            return [[[float(z.real), float(z.imag)] for z in row] for row in M]

        return {
            "cutoff": self.cutoff,
            "h": self.h,
            "tol": self.tol,
            "alpha": enc(self.alpha),
            "beta": enc(self.beta),
            "trusted_block": self.trusted_block,
        }

    @classmethod
    def from_dict(cls, d):
        def dec(rows):
            arr = np.array(rows, dtype=float)
            return arr[..., 0] + 1j * arr[..., 1]

        pair = cls(dec(d["alpha"]), dec(d["beta"]), d["h"], float(d["tol"]), int(d["trusted_block"]))
        if pair.cutoff != int(d["cutoff"]):
            raise ValueError(f"cutoff field {d['cutoff']} disagrees with matrix size {pair.cutoff}")
        return pair

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))


def compute_coefficients(
    cavity: Cavity,
    h: float,
    cutoff: int,
    tol: float = quadrature.DEFAULT_TOL,
    max_panels: int = quadrature.DEFAULT_MAX_PANELS,
) -> BogoliubovPair:
    """Coefficients for the switch from inertial to accelerated motion at ``t = 0``.

    Only ``cavity.L`` and ``cavity.c_eff`` are used. The accelerated walls sit
    at the Rindler positions fixed by ``h`` and the inertial walls coincide
    with them on the switching surface.
    """
    if int(cutoff) != cutoff or cutoff < 1:
        raise ValueError(f"cutoff must be a positive integer, got {cutoff}")
    wedge = wedge_from_h(h, cavity.L, cavity.c_eff)
    box = wedge.inertial_cavity()
    u = [InertialMode(box, n) for n in range(1, cutoff + 1)]
    v = [RindlerMode(wedge, n) for n in range(1, cutoff + 1)]
    alpha = kg_matrix(v, u, tol=tol, max_panels=max_panels)
    beta = -kg_matrix(v, [m.conj() for m in u], tol=tol, max_panels=max_panels)
    trusted = measure_trusted_block(alpha, beta, TRUST_FACTOR * tol)
    return BogoliubovPair(alpha, beta, float(h), float(tol), trusted)


def particle_number(pair: BogoliubovPair):
    """Accelerated-mode occupations in the inertial vacuum over the trusted block.

    Returns ``(N, total)`` with ``N[m] = sum_n |beta[m, n]|**2``.
    """
    k = pair.trusted_block
    b2 = np.abs(pair.beta[:k, :k]) ** 2
    per_mode = np.array([math.fsum(row) for row in b2])
    return per_mode, math.fsum(per_mode)


def compose(first: BogoliubovPair, second: BogoliubovPair) -> BogoliubovPair:
    """Apply ``first`` then ``second``.

    With ``v = a1 u + b1 u*`` and ``w = a2 v + b2 v*`` the result is
    ``w = (a2 a1 + b2 b1*) u + (a2 b1 + b2 a1*) u*``.
    """
    if first.cutoff != second.cutoff:
        raise CutoffMismatchError(f"cannot compose cutoffs {first.cutoff} and {second.cutoff}")
    a1, b1, a2, b2 = first.alpha, first.beta, second.alpha, second.beta
    alpha = a2 @ a1 + b2 @ b1.conj()
    beta = a2 @ b1 + b2 @ a1.conj()
    if first.h == 0 or second.h == 0:
        h = second.h if first.h == 0 else first.h
    else:
        h = None
    return BogoliubovPair(
        alpha,
        beta,
        h,
        max(first.tol, second.tol),
        min(first.trusted_block, second.trusted_block),
    )


def inverse(pair: BogoliubovPair) -> BogoliubovPair:
    """Transformation back from accelerated to inertial modes: ``(alpha^dag, -beta^T)``."""
    r_can, r_sym = pair.residuals()
    worst = max(r_can, r_sym)
    if worst > INVERSION_LIMIT:
        raise UntrustedInversionError(
            f"identity residual {worst:.3g} on the trusted block exceeds {INVERSION_LIMIT:g}; "
            "the truncated transformation is not invertible to useful accuracy"
        )
    return BogoliubovPair(
        pair.alpha.conj().T,
        -pair.beta.T,
        pair.h,
        pair.tol,
        pair.trusted_block,
    )


def galilean_coefficients(cutoff: int) -> BogoliubovPair:
    """The trivial transformation induced by a Galilean change of frame."""
    if int(cutoff) != cutoff or cutoff < 1:
        raise ValueError(f"cutoff must be a positive integer, got {cutoff}")
    return BogoliubovPair(np.eye(cutoff, dtype=complex), np.zeros((cutoff, cutoff), dtype=complex), 0.0, 0.0, cutoff)
