import json

import numpy as np
import pytest

from bec_rindler.bogoliubov import (
    BogoliubovPair,
    acceleration_for_h,
    compose,
    compute_coefficients,
    galilean_coefficients,
    h_parameter,
    identity_residuals,
    inverse,
    particle_number,
    sensitivity,
)
from bec_rindler.cavity_modes import Cavity, InertialMode, RindlerMode, kg_inner_product, wedge_from_h
from bec_rindler.errors import CutoffMismatchError, HorizonError, UntrustedInversionError

PHOTON = Cavity(1e-6, 2e-6, c_eff=3e8)
PHONON = Cavity(1e-4, 2e-4, c_eff=1e-3)


@pytest.fixture(scope="module")
def pair():
    return compute_coefficients(PHOTON, 0.1, 30, tol=1e-10)


def maxabs(M):
    return float(np.max(np.abs(M)))


class TestHParameter:
    def test_optical_cavity(self):
        # a ~ 1e22 m/s^2 for h = 0.1 puts the cavity at the micron scale
        assert h_parameter(1e22, 9e-7, 3e8) == pytest.approx(0.1, rel=1e-14)
        assert acceleration_for_h(0.1, 9e-7, 3e8) == pytest.approx(1e22, rel=1e-14)

    def test_phonon_example(self):
        assert h_parameter(0.1, 1e-4, 1e-3) == pytest.approx(10.0, rel=1e-14)

    def test_sensitivity_endpoints(self):
        values = [sensitivity(L, c) for L in (10e-6, 100e-6) for c in (1e-3, 10e-3)]
        assert min(values) == pytest.approx(0.1, rel=1e-14)
        assert max(values) == pytest.approx(100.0, rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            h_parameter(0.0, 1.0, 1.0)


class TestCoefficients:
    def test_small_h_is_near_identity(self):
        p = compute_coefficients(PHOTON, 1e-4, 20)
        assert maxabs(p.beta) < 1e-3
        assert maxabs(p.alpha[:10, :10] - np.eye(10)) < 1e-2

    def test_canonical_identities(self, pair):
        assert pair.trusted_block >= 10
        r_can, r_sym = pair.residuals(10)
        assert r_can < 1e-6 and r_sym < 1e-6
        r_can, r_sym = pair.residuals()
        assert max(r_can, r_sym) < 100 * pair.tol

    def test_trusted_block_is_maximal(self, pair):
        k = pair.trusted_block
        if k < pair.cutoff:
            assert max(pair.residuals(k + 1)) >= 100 * pair.tol

    def test_matches_kg_definitions(self, pair):
        wedge = wedge_from_h(0.1, PHOTON.L, PHOTON.c_eff)
        box = wedge.inertial_cavity()
        for m, n in [(1, 2), (3, 1), (4, 4), (2, 7)]:
            v_m, u_n = RindlerMode(wedge, m), InertialMode(box, n)
            assert abs(pair.alpha[m - 1, n - 1] - kg_inner_product(v_m, u_n)) < 1e-12
            assert abs(pair.beta[m - 1, n - 1] + kg_inner_product(v_m, u_n.conj())) < 1e-12
            # literal index order: -(v_n, u_m*) sits at [m, n] of the transpose
            v_n, u_m = RindlerMode(wedge, n), InertialMode(box, m)
            assert abs(pair.beta_transposed[m - 1, n - 1] + kg_inner_product(v_n, u_m.conj())) < 1e-12

    def test_photon_phonon_equivalence(self, pair):
        other = compute_coefficients(PHONON, 0.1, 30, tol=1e-10)
        assert maxabs(pair.alpha - other.alpha) < 1e-10
        assert maxabs(pair.beta - other.beta) < 1e-10

    def test_cutoff_stability(self):
        small = compute_coefficients(PHOTON, 0.1, 10)
        big = compute_coefficients(PHOTON, 0.1, 20)
        assert maxabs(small.alpha[:5, :5] - big.alpha[:5, :5]) < 1e-8
        assert maxabs(small.beta[:5, :5] - big.beta[:5, :5]) < 1e-8

    def test_h_out_of_range(self):
        with pytest.raises(HorizonError):
            compute_coefficients(PHOTON, 2.5, 5)

    def test_first_order_parity_selection(self):
        # empirical: entries with m+n even enter at second order in h, odd at first order
        h1, h2 = 1e-3, 2e-3
        b1 = compute_coefficients(PHOTON, h1, 8).beta
        b2 = compute_coefficients(PHOTON, h2, 8).beta
        m, n = np.indices(b1.shape)
        ratio = np.abs(b2) / np.abs(b1)
        odd, even = (m + n) % 2 == 1, (m + n) % 2 == 0
        assert np.allclose(ratio[odd], 2.0, rtol=0.01)
        # some even entries have a vanishing h^2 coefficient and sit at quadrature noise
        assert np.median(ratio[even]) == pytest.approx(4.0, rel=0.01)
        assert np.abs(b1[even]).max() < 10 * h1 * np.abs(b1[odd]).max()


class TestParticleNumber:
    def test_zero_beta(self):
        per_mode, total = particle_number(galilean_coefficients(4))
        assert total == 0.0 and not per_mode.any()

    def test_arithmetic(self):
        beta = np.zeros((3, 3), dtype=complex)
        beta[0, 1] = 0.1
        beta[2, 0] = 0.2j
        p = BogoliubovPair(np.eye(3), beta, None, 0.0, 3)
        per_mode, total = particle_number(p)
        assert total == pytest.approx(0.05, rel=1e-15)
        np.testing.assert_allclose(per_mode, [0.01, 0.0, 0.04])

    def test_nonnegative(self, pair):
        per_mode, total = particle_number(pair)
        assert (per_mode >= 0).all() and total > 0

    def test_quadratic_in_h(self):
        hs = np.logspace(-3, -2, 4)
        totals = [particle_number(compute_coefficients(PHOTON, h, 12))[1] for h in hs]
        scaled = np.array(totals) / hs**2
        assert scaled.max() / scaled.min() - 1 < 0.05


class TestAlgebra:
    def test_identity_is_neutral(self, pair):
        one = galilean_coefficients(30)
        for p in (compose(pair, one), compose(one, pair)):
            assert np.array_equal(p.alpha, pair.alpha)
            assert np.array_equal(p.beta, pair.beta)

    def test_inverse_of_identity(self):
        inv = inverse(galilean_coefficients(5))
        assert np.array_equal(inv.alpha, np.eye(5)) and not inv.beta.any()

    def test_inverse_is_involution(self, pair):
        twice = inverse(inverse(pair))
        assert maxabs(twice.alpha - pair.alpha) < 1e-10
        assert maxabs(twice.beta - pair.beta) < 1e-10

    @pytest.mark.parametrize("order", ["pair_first", "inverse_first"])
    def test_round_trip(self, pair, order):
        inv = inverse(pair)
        p = compose(pair, inv) if order == "pair_first" else compose(inv, pair)
        k = p.trusted_block
        assert maxabs(p.alpha[:k, :k] - np.eye(k)) < 1e-8
        assert maxabs(p.beta[:k, :k]) < 1e-8

    def test_composition_preserves_identities(self, pair):
        other = compute_coefficients(PHOTON, 0.05, 30)
        worst_in = max(*pair.residuals(), *other.residuals())
        worst_out = max(*compose(pair, other).residuals())
        assert worst_out < 10 * worst_in

    def test_cutoff_mismatch(self, pair):
        with pytest.raises(CutoffMismatchError):
            compose(pair, galilean_coefficients(5))

    def test_refuses_untrusted_inversion(self):
        a = np.eye(4, dtype=complex)
        a[0, 0] = 1.01
        with pytest.raises(UntrustedInversionError):
            inverse(BogoliubovPair(a, np.zeros((4, 4)), 0.1, 1e-10, 4))


class TestGalilean:
    @pytest.mark.parametrize("cutoff", [1, 7, 30])
    def test_no_particles(self, cutoff):
        g = galilean_coefficients(cutoff)
        assert g.h == 0.0
        assert particle_number(g)[1] == 0.0
        assert identity_residuals(g.alpha, g.beta) == (0.0, 0.0)

    def test_limit_of_rindler_coefficients(self):
        hs = [1e-2, 1e-3, 1e-4]
        g = galilean_coefficients(10)
        da, db = [], []
        for h in hs:
            p = compute_coefficients(PHOTON, h, 10)
            da.append(maxabs(p.alpha - g.alpha))
            db.append(maxabs(p.beta - g.beta))
        assert da[0] > da[1] > da[2] and db[0] > db[1] > db[2]
        assert da[-1] < 1e-2 and db[-1] < 1e-4


def test_json_round_trip(pair, tmp_path):
    path = tmp_path / "pair.json"
    pair.save(path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"cutoff", "h", "tol", "alpha", "beta", "trusted_block"}
    assert doc["cutoff"] == 30 and len(doc["alpha"][0][0]) == 2
    back = BogoliubovPair.load(path)
    assert np.array_equal(back.alpha, pair.alpha) and np.array_equal(back.beta, pair.beta)
    assert (back.h, back.tol, back.trusted_block) == (pair.h, pair.tol, pair.trusted_block)
    assert particle_number(back)[1] == particle_number(pair)[1]
