"""Exit criteria for the package. Run with ``pytest tests/test_acceptance.py``.

Every criterion prints one PASS/FAIL line in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from bec_rindler.acoustic_metric import MetricTensor
from bec_rindler.bogoliubov import (
    acceleration_for_h,
    compose,
    compute_coefficients,
    galilean_coefficients,
    inverse,
    particle_number,
)
from bec_rindler.cavity_modes import Cavity, InertialMode, RindlerMode, kg_matrix, wave_equation_residual, wedge_from_h
from bec_rindler.charts import RindlerChart
from bec_rindler.scenario import ScenarioConfig, log_range, loglog_slope, run

C_LIGHT = 3e8
H = 0.1
CUTOFF = 30
TOL = 1e-10
PHOTON_CAVITY = Cavity(1e-6, 2e-6, c_eff=C_LIGHT)
PHONON_CAVITY = Cavity(1e-4, 2e-4, c_eff=1e-3)


@pytest.fixture(scope="module")
def photon_pair():
    start = time.perf_counter()
    pair = compute_coefficients(PHOTON_CAVITY, H, CUTOFF, tol=TOL)
    return pair, time.perf_counter() - start


def test_criterion_1_optical_anchor(record_criterion):
    a = acceleration_for_h(0.1, 1e-6, C_LIGHT)
    ok = math.isclose(a, 9.0e21, rel_tol=1e-12) and 0.5 <= a / 1e22 <= 2.0
    record_criterion(1, "optical-cavity anchor", ok, f"a = {a:.3e} m/s^2 vs ~1e22 (factor {1e22 / a:.2f})")
    assert ok


def test_criterion_2_canonical_identities(photon_pair, record_criterion):
    pair, elapsed = photon_pair
    r_can, r_sym = pair.residuals(10)
    ok = pair.trusted_block >= 10 and r_can < 1e-6 and r_sym < 1e-6 and elapsed < 120
    record_criterion(
        2,
        "canonical identities (h=0.1, cutoff 30, 10x10 block)",
        ok,
        f"|aa^+ - bb^+ - I| = {r_can:.2e}, |ab^T - ba^T| = {r_sym:.2e} (< 1e-6), "
        f"trusted_block = {pair.trusted_block}, {elapsed:.2f} s",
    )
    assert ok


def test_criterion_3_photon_phonon_equivalence(photon_pair, record_criterion):
    photon, _ = photon_pair
    start = time.perf_counter()
    phonon = compute_coefficients(PHONON_CAVITY, H, CUTOFF, tol=TOL)
    elapsed = time.perf_counter() - start
    da = float(np.max(np.abs(photon.alpha - phonon.alpha)))
    db = float(np.max(np.abs(photon.beta - phonon.beta)))
    ok = da < 1e-10 and db < 1e-10 and elapsed < 240
    record_criterion(
        3,
        "photon/phonon equivalence at h=0.1",
        ok,
        f"max|d alpha| = {da:.2e}, max|d beta| = {db:.2e} (< 1e-10), {elapsed:.2f} s",
    )
    assert ok


def test_criterion_4_quadratic_creation_and_galilean_vanishing(record_criterion):
    start = time.perf_counter()
    cfg = ScenarioConfig(medium="phonon", L=1e-4, c_s=1e-3, cutoff=CUTOFF, tol=TOL, sweep=log_range(1e-3, 1e-2, 5))
    result = run(cfg)
    slope = result.slope
    _, galilean_total = particle_number(galilean_coefficients(CUTOFF))
    elapsed = time.perf_counter() - start
    ok = abs(slope - 2.0) <= 0.05 and galilean_total == 0.0 and elapsed < 600
    totals = ", ".join(f"{r.total_N:.3e}" for r in result.rows)
    record_criterion(
        4,
        "particle number ~ h^2 and zero for the Galilean map",
        ok,
        f"slope = {slope:.4f} (2 +/- 0.05), Galilean total = {galilean_total}, totals = [{totals}]",
    )
    assert ok


def test_criterion_5_expansion_orders(record_criterion):
    eps = log_range(1e-3, 1e-1, 21)
    lines, ok = [], True
    for c_eff in (C_LIGHT, 1e-3):
        chart = RindlerChart(c_eff)
        a = 9.81
        tau = np.asarray(eps) * c_eff / a
        dt, dx = chart.expansion_residual(tau, a)
        s_t, s_x = loglog_slope(eps, dt), loglog_slope(eps, dx)
        ok &= abs(s_t - 3.0) <= 0.05 and abs(s_x - 4.0) <= 0.05
        lines.append(f"c_eff={c_eff:g}: time {s_t:.4f}, position {s_x:.4f}")
    record_criterion(5, "Rindler-vs-Galilean residual orders (3, 4 +/- 0.05)", ok, "; ".join(lines))
    assert ok


def test_criterion_6_mode_basis_health(record_criterion):
    wedge = wedge_from_h(H, 1.0, c_eff=0.5)
    box = wedge.inertial_cavity()
    u = [InertialMode(box, n) for n in range(1, 11)]
    v = [RindlerMode(wedge, n) for n in range(1, 11)]
    gram_u = float(np.max(np.abs(kg_matrix(u, u) - np.eye(10))))
    gram_v = float(np.max(np.abs(kg_matrix(v, v, form="rindler") - np.eye(10))))

    c_s = 0.5
    metric = MetricTensor(np.diag([-c_s**2, 1.0, 1.0, 1.0]))
    mode = InertialMode(Cavity(1.0, 2.0, c_s), 3)
    steps = (2e-2, 1e-2, 5e-3)
    res = [wave_equation_residual(mode, metric, (0.25, 1.43), s) for s in steps]
    slope = loglog_slope(steps, res)
    ok = gram_u < 1e-10 and gram_v < 1e-10 and abs(slope - 2.0) <= 0.1
    record_criterion(
        6,
        "mode-basis health",
        ok,
        f"Gram deviations {gram_u:.1e} (inertial), {gram_v:.1e} (Rindler) (< 1e-10); "
        f"wave residual order {slope:.3f} (2 +/- 0.1)",
    )
    assert ok


def test_criterion_7_round_trip(photon_pair, record_criterion):
    pair, _ = photon_pair
    p = compose(pair, inverse(pair))
    k = p.trusted_block
    da = float(np.max(np.abs(p.alpha[:k, :k] - np.eye(k))))
    db = float(np.max(np.abs(p.beta[:k, :k])))
    ok = k >= 10 and da < 1e-8 and db < 1e-8
    record_criterion(
        7,
        "compose(pair, inverse(pair)) = identity",
        ok,
        f"|alpha - I| = {da:.2e}, |beta| = {db:.2e} on {k}x{k} trusted block (< 1e-8)",
    )
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
