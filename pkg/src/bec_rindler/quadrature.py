"""Globally adaptive Gauss-Legendre quadrature for vector-valued integrands.

Each panel is integrated with a fixed-order Gauss rule over the whole panel
and over its two halves; the difference is the panel's error estimate and
the halves' sum its value. The panel with the largest estimate is split
until the summed estimate (max-norm over integrand components) meets the
absolute tolerance. Splitting order depends only on the estimates, so the
result is reproducible bit for bit.
"""

from __future__ import annotations

import heapq
import math
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

DEFAULT_ORDER = 16
DEFAULT_TOL = 1e-10
DEFAULT_MAX_PANELS = 10_000


@lru_cache(maxsize=None)
def _rule(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel(f, a, b, order):
    x, w = _rule(order)
    m = 0.5 * (a + b)
    # whole, left half, right half in one integrand call
    nodes = np.concatenate([
        m + 0.5 * (b - a) * x,
        0.5 * (a + m) + 0.5 * (m - a) * x,
        0.5 * (m + b) + 0.5 * (b - m) * x,
    ])
    vals = np.asarray(f(nodes))
    n = len(x)
    whole = vals[..., :n] @ w * (0.5 * (b - a))
    left = vals[..., n:2 * n] @ w * (0.5 * (m - a))
    right = vals[..., 2 * n:] @ w * (0.5 * (b - m))
    fine = left + right
    err = float(np.max(np.abs(fine - whole))) if np.size(fine) else 0.0
    return fine, err


def integrate(f, a, b, tol=DEFAULT_TOL, order=DEFAULT_ORDER, max_panels=DEFAULT_MAX_PANELS, initial_panels=1):
    """Integrate ``f`` over ``[a, b]``.

    ``f`` takes a 1-D array of nodes and returns an array whose last axis
    runs over those nodes. Returns ``(value, error_estimate, n_panels)``.
    Raises :class:`QuadratureError` carrying the running estimate when the
    panel budget is exhausted.
    """
    if not b > a:
        raise ValueError(f"empty interval [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    edges = np.linspace(a, b, initial_panels + 1)
    heap = []
    counter = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _panel(f, lo, hi, order)
        heap.append((-err, counter, lo, hi, val))
        counter += 1
    heapq.heapify(heap)
    total_err = _total_error(heap)
    while total_err > tol:
        if len(heap) >= max_panels:
            estimate = _sum_values(heap)
            raise QuadratureError(
                f"quadrature did not reach tol={tol:g} within {max_panels} panels "
                f"(error estimate {total_err:.3g})",
                estimate=estimate,
                error=total_err,
            )
        neg_err, _, lo, hi, _ = heapq.heappop(heap)
        total_err += neg_err
        mid = 0.5 * (lo + hi)
        for sub_lo, sub_hi in ((lo, mid), (mid, hi)):
            val, err = _panel(f, sub_lo, sub_hi, order)
            heapq.heappush(heap, (-err, counter, sub_lo, sub_hi, val))
            counter += 1
            total_err += err
        if total_err <= tol:
            # drop accumulated rounding before accepting
            total_err = _total_error(heap)
    return _sum_values(heap), total_err, len(heap)


def _total_error(heap):
    return math.fsum(-item[0] for item in heap)


def _sum_values(heap):
    # sum in left-to-right panel order so the result does not depend on heap layout
    ordered = sorted(heap, key=lambda item: item[2])
    total = ordered[0][4]
    for item in ordered[1:]:
        total = total + item[4]
    return total
