import math

import numpy as np
import pytest

from ldpkit.bounds import (
    BayesConfig,
    FanoConfig,
    GridSpec,
    LeCamConfig,
    bayes_egamma_lb,
    bayes_gamma_opt_lb,
    bayes_xu_raginsky_private,
    fano_lb,
    fano_mi_upper,
    highdim_mean_lb,
    ht_exponent,
    lecam_private,
    mi_cap,
    moment_estimation_lb,
    small_ball_uniform01,
)
from ldpkit.contraction import PrivacyParams, phi, phi_n
from ldpkit.errors import DomainError
from ldpkit.info import JointDistribution, bu_igamma_closed_n1, mutual_information
from ldpkit.kernel import randomized_response

LN2 = math.log(2.0)

NONPRIVATE = PrivacyParams(0.0, 1.0)
BLOCKED = PrivacyParams(0.0, 0.0)


class TestGridSpec:
    def test_points(self):
        lin = GridSpec(0.0, 1.0, 5).points()
        assert np.allclose(lin, [0.0, 0.25, 0.5, 0.75, 1.0])
        log = GridSpec(1e-2, 1.0, 3, "log").points()
        assert np.allclose(log, [1e-2, 1e-1, 1.0])

    def test_validation(self):
        with pytest.raises(DomainError):
            GridSpec(0.0, 1.0, 1)
        with pytest.raises(DomainError):
            GridSpec(1.0, 0.5, 10)
        with pytest.raises(DomainError):
            GridSpec(0.0, 1.0, 10, "log")
        with pytest.raises(DomainError):
            GridSpec(0.0, 1.0, 10, "quadratic")


class TestLeCam:
    def test_blocked_mechanism_gives_half_tau(self):
        cfg = LeCamConfig(tau=0.8, kl_p0_p1=5.0, n=100, params=BLOCKED)
        assert lecam_private(cfg).value == 0.4

    def test_nonprivate_recovery_identical(self):
        tau, kl, n = 1.3, 0.07, 25
        cfg = LeCamConfig(tau=tau, kl_p0_p1=kl, n=n, params=NONPRIVATE)
        expected = max(0.0, 0.5 * tau * (1.0 - math.sqrt(0.5 * n * kl)))
        assert lecam_private(cfg).value == expected

    def test_quarter_tau_point(self):
        n, eps = 10, 1.0
        params = PrivacyParams(eps, 0.0)
        kl = 1.0 / (2.0 * n * phi(params))
        cfg = LeCamConfig(tau=1.0, kl_p0_p1=kl, n=n, params=params)
        assert lecam_private(cfg).value == pytest.approx(0.25, abs=1e-12)

    def test_hand_value(self):
        cfg = LeCamConfig(tau=1.0, kl_p0_p1=0.1, n=10, params=PrivacyParams(1.0, 0.0))
        assert lecam_private(cfg).value == pytest.approx(0.2189, abs=1e-4)

    def test_vacuous_clamp(self):
        cfg = LeCamConfig(tau=1.0, kl_p0_p1=100.0, n=100, params=NONPRIVATE)
        report = lecam_private(cfg)
        assert report.value == 0.0
        assert "vacuous" in report.flags

    def test_config_validation(self):
        with pytest.raises(DomainError):
            LeCamConfig(tau=0.0, kl_p0_p1=1.0, n=1, params=NONPRIVATE)


class TestMomentEstimation:
    def test_hand_value(self):
        report = moment_estimation_lb(2.0, 1, PrivacyParams(0.0, 1.0))
        assert report.value == pytest.approx(0.0625, abs=1e-12)
        assert report.witness["omega"] == pytest.approx(0.125, abs=1e-12)

    def test_blocked_mechanism_flagged_trivial(self):
        report = moment_estimation_lb(2.0, 10, BLOCKED)
        assert report.value == 1.0
        assert "trivial" in report.flags

    def test_phi_scaling_is_exact_in_interior(self):
        # omega scales as 1/phi, omega*phi cancels, so values scale as
        # (phi2/phi1)^(2(k-1)/k) exactly while omega < 1
        k, n = 3.0, 16
        p1, p2 = PrivacyParams(2.0, 0.0), PrivacyParams(1.0, 0.0)
        r1, r2 = moment_estimation_lb(k, n, p1), moment_estimation_lb(k, n, p2)
        assert r1.witness["omega"] < 1.0 and r2.witness["omega"] < 1.0
        expo = 2.0 * (k - 1.0) / k
        assert r2.value / r1.value == pytest.approx(
            (phi(p1) / phi(p2)) ** expo, rel=1e-12
        )

    def test_large_k_exponent_approaches_two(self):
        n = 16
        params = PrivacyParams(0.0, 1.0)
        report = moment_estimation_lb(1e9, n, params)
        omega = report.witness["omega"]
        bracket = 1.0 - math.sqrt(2.0) * math.sqrt(1.0 - (1.0 - omega) ** n)
        assert report.value == pytest.approx(omega**2 * bracket, rel=1e-6)

    def test_vacuous_at_large_n(self):
        report = moment_estimation_lb(2.0, 400, PrivacyParams(0.0, 1.0))
        assert report.value == 0.0
        assert "vacuous" in report.flags

    def test_domain(self):
        with pytest.raises(DomainError):
            moment_estimation_lb(1.0, 5, NONPRIVATE)


class TestFano:
    def test_mi_upper_zero_and_nonprivate(self):
        cfg = FanoConfig(v_count=4, avg_pairwise_kl=0.3, tau=1.0, n=5, params=BLOCKED)
        assert fano_mi_upper(cfg) == 0.0
        cfg = FanoConfig(v_count=4, avg_pairwise_kl=0.3, tau=1.0, n=5, params=NONPRIVATE)
        assert fano_mi_upper(cfg) == 5 * 0.3

    def test_mi_upper_direct_form(self):
        params = PrivacyParams(0.7, 0.01)
        cfg = FanoConfig(
            v_count=4, avg_pairwise_kl=0.3, tau=1.0, n=5, params=params, mi_xn_v=2.0
        )
        assert fano_mi_upper(cfg) == phi_n(params, 5) * 2.0

    def test_coefficient_against_looser_reference(self):
        # phi_1(0.4, 0) ~ 0.3297 is smaller than 2(e^0.4 - 1) ~ 0.9836
        lemma = phi_n(PrivacyParams(0.4, 0.0), 1)
        duchi = 2.0 * (math.exp(0.4) - 1.0)
        assert lemma == pytest.approx(0.3297, abs=1e-4)
        assert duchi == pytest.approx(0.9836, abs=1e-4)
        assert lemma < duchi

    def test_coefficient_grid(self):
        # threshold is ln(1.5) ~ 0.4055: above it the reference coefficient
        # exceeds 1 and dominates phi_n for every n; at 0.4 it only holds for
        # moderate n
        for eps in (0.4, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0):
            duchi = 2.0 * (math.exp(eps) - 1.0)
            for n in (1, 2, 3, 5, 8):
                assert phi_n(PrivacyParams(eps, 0.0), n) <= duchi + 1e-12

    def test_lb_values(self):
        zero_mi = FanoConfig(v_count=2, avg_pairwise_kl=0.0, tau=1.0, n=1, params=BLOCKED)
        assert fano_lb(zero_mi).value == 0.0
        eight = FanoConfig(v_count=8, avg_pairwise_kl=0.0, tau=0.9, n=1, params=BLOCKED)
        assert fano_lb(eight).value == pytest.approx(0.6, abs=1e-12)
        big = FanoConfig(v_count=2**40, avg_pairwise_kl=0.0, tau=1.0, n=1, params=BLOCKED)
        assert fano_lb(big).value == pytest.approx(1.0, abs=0.03)

    def test_nonprivate_recovery_identical(self):
        v, avg, tau, n = 16, 0.01, 1.0, 3
        cfg = FanoConfig(v_count=v, avg_pairwise_kl=avg, tau=tau, n=n, params=NONPRIVATE)
        expected = max(0.0, tau * (1.0 - (n * 1.0 * avg + LN2) / math.log(v)))
        assert fano_lb(cfg).value == expected

    def test_v_count_validation(self):
        with pytest.raises(DomainError):
            FanoConfig(v_count=1, avg_pairwise_kl=0.0, tau=1.0, n=1, params=BLOCKED)


class TestHighdim:
    def test_positive_at_example_point(self):
        report = highdim_mean_lb(64, 1.0, 256, NONPRIVATE)
        assert report.value > 0.0
        assert report.witness["k"] == 64
        assert report.witness["omega"] == pytest.approx(64 / (50 * 256), abs=1e-15)

    def test_blocked_flagged_trivial(self):
        report = highdim_mean_lb(8, 1.0, 4, BLOCKED)
        assert "trivial" in report.flags
        assert report.witness["omega"] == 1.0
        assert report.witness["k"] == 16

    def test_radius_scaling(self):
        a = highdim_mean_lb(64, 1.0, 256, NONPRIVATE).value
        b = highdim_mean_lb(64, 2.0, 256, NONPRIVATE).value
        assert b == pytest.approx(4.0 * a, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            highdim_mean_lb(0, 1.0, 1, NONPRIVATE)
        with pytest.raises(DomainError):
            highdim_mean_lb(4, -1.0, 1, NONPRIVATE)


def _xu_reference(info_value: float, pn: float, zetas: np.ndarray) -> float:
    # direct dense-grid evaluation, independent of the calculator internals
    best = 0.0
    for z in zetas:
        ball = min(2.0 * z, 1.0)
        if ball >= 1.0:
            continue
        bracket = 1.0 - (pn * info_value + LN2) / math.log(1.0 / ball)
        best = max(best, z * max(0.0, bracket))
    return best


class TestBayesXuRaginsky:
    def test_matches_reference_grid(self):
        info = math.log(2.0) - 0.5
        cfg = BayesConfig(
            small_ball=small_ball_uniform01, info_value=info, n=1, params=NONPRIVATE
        )
        report = bayes_xu_raginsky_private(cfg)
        assert report.value == pytest.approx(
            _xu_reference(info, 1.0, cfg.zeta_grid.points()), abs=1e-15
        )
        assert report.value == pytest.approx(0.0456594, abs=1e-4)
        assert report.witness["zeta"] == pytest.approx(0.1134, abs=2e-3)

    def test_zero_information_case(self):
        cfg = BayesConfig(
            small_ball=small_ball_uniform01, info_value=0.0, n=1, params=BLOCKED
        )
        report = bayes_xu_raginsky_private(cfg)
        assert report.value == pytest.approx(
            _xu_reference(0.0, 0.0, cfg.zeta_grid.points()), abs=1e-15
        )

    def test_uninformative_small_ball_flagged(self):
        cfg = BayesConfig(small_ball=lambda z: 1.0, info_value=0.5, n=1, params=NONPRIVATE)
        report = bayes_xu_raginsky_private(cfg)
        assert report.value == 0.0
        assert "no-feasible-zeta" in report.flags

    def test_witness_on_grid(self):
        cfg = BayesConfig(
            small_ball=small_ball_uniform01, info_value=0.2, n=3, params=PrivacyParams(0.5, 0.01)
        )
        report = bayes_xu_raginsky_private(cfg)
        assert report.witness["zeta"] in cfg.zeta_grid.points()


class TestBayesEgamma:
    def test_pure_ldp_specialization(self):
        # delta = 0 and n = 1 drop the information term entirely
        eps = 0.7
        cfg = BayesConfig(
            small_ball=small_ball_uniform01,
            info_value=0.9,
            n=1,
            params=PrivacyParams(eps, 0.0),
        )
        report = bayes_egamma_lb(cfg)
        zetas = cfg.zeta_grid.points()
        expected = max(
            z * max(0.0, 1.0 - math.exp(eps) * min(2.0 * z, 1.0)) for z in zetas
        )
        assert report.value == pytest.approx(expected, abs=1e-15)

    def test_uninformative_small_ball(self):
        cfg = BayesConfig(
            small_ball=lambda z: 1.0, info_value=0.0, n=1, params=PrivacyParams(0.5, 0.0)
        )
        report = bayes_egamma_lb(cfg)
        assert report.value == 0.0
        assert "vacuous" in report.flags

    def test_coefficient_switches_at_n1(self):
        # n = 1 uses delta itself; n > 1 uses phi_n
        params = PrivacyParams(0.3, 0.2)
        base = dict(small_ball=small_ball_uniform01, info_value=0.4, params=params)
        r1 = bayes_egamma_lb(BayesConfig(n=1, **base))
        assert r1.inputs["info_coefficient"] == 0.2
        r2 = bayes_egamma_lb(BayesConfig(n=2, **base))
        assert r2.inputs["info_coefficient"] == phi_n(params, 2)


class TestBayesGammaOpt:
    def test_requires_info_fn(self):
        cfg = BayesConfig(
            small_ball=small_ball_uniform01, info_value=0.0, n=1, params=NONPRIVATE
        )
        with pytest.raises(DomainError):
            bayes_gamma_opt_lb(cfg)

    def test_bernoulli_uniform_value(self):
        cfg = BayesConfig(
            small_ball=small_ball_uniform01,
            info_value=0.0,
            n=1,
            params=NONPRIVATE,
            info_fn=bu_igamma_closed_n1,
        )
        report = bayes_gamma_opt_lb(cfg)
        assert report.value == pytest.approx(2.0 / 27.0, abs=1e-4)
        assert report.witness["zeta"] == pytest.approx(1.0 / 6.0, abs=2e-3)
        assert report.witness["gamma"] == pytest.approx(4.0 / 3.0, abs=5e-3)
        assert report.witness["gamma"] > 0.0

    def test_zero_information_at_gamma_one(self):
        # with I identically 0 the gamma = 1 row reduces to sup z (1 - L(z))
        cfg = BayesConfig(
            small_ball=small_ball_uniform01,
            info_value=0.0,
            n=1,
            params=NONPRIVATE,
            info_fn=lambda g: 0.0,
            gamma_grid=GridSpec(0.0, 4.0, 5),
        )
        report = bayes_gamma_opt_lb(cfg)
        zetas = cfg.zeta_grid.points()
        at_gamma_one = max(z * max(0.0, 1.0 - min(2.0 * z, 1.0)) for z in zetas)
        assert report.value >= at_gamma_one - 1e-15

    def test_dominates_fixed_gamma_bound_on_shared_grid(self):
        # at n = 1, delta = 1 the fixed-gamma bound is the gamma = e^eps slice
        for eps in (0.2, 0.6, 1.0):
            gamma = math.exp(eps)
            base_grid = np.linspace(0.0, 4.0, 400)
            shared = np.sort(np.append(base_grid, gamma))
            params = PrivacyParams(eps, 1.0)
            fixed = bayes_egamma_lb(
                BayesConfig(
                    small_ball=small_ball_uniform01,
                    info_value=bu_igamma_closed_n1(gamma),
                    n=1,
                    params=params,
                )
            )
            from ldpkit.oracle import grid_max

            zetas = GridSpec(1e-4, 0.5, 2000, "log").points()

            def objective(z, g):
                ig = np.vectorize(bu_igamma_closed_n1)(g)
                ball = np.minimum(2.0 * z, 1.0)
                return z * np.maximum(0.0, 1.0 - ig - g * ball - np.maximum(1.0 - g, 0.0))

            _, opt_value = grid_max(objective, zetas, shared)
            assert opt_value >= fixed.value - 1e-12


class TestScalarBounds:
    def test_ht_examples(self):
        assert ht_exponent(3.0, BLOCKED) == 0.0
        assert ht_exponent(2.5, NONPRIVATE) == -2.5
        assert ht_exponent(1.0, PrivacyParams(math.log(2.0), 0.0)) == pytest.approx(
            -0.5, abs=1e-15
        )

    def test_mi_cap_examples(self):
        assert mi_cap(0.7, BLOCKED) == 0.0
        assert mi_cap(0.7, NONPRIVATE) == 0.7
        with pytest.raises(DomainError):
            mi_cap(-0.1, NONPRIVATE)

    def test_mi_cap_dominates_exact_binary_channel(self):
        for eps in np.linspace(0.0, 5.0, 21):
            k = randomized_response(float(eps))
            joint = JointDistribution(0.5 * k.rows)
            exact = mutual_information(joint)
            assert exact <= mi_cap(LN2, PrivacyParams(float(eps), 0.0)) + 1e-12


class TestMonotonicityInPrivacy:
    def test_lower_bounds_nonincreasing_in_phi(self):
        eps_grid = np.linspace(0.0, 3.0, 13)
        lecam_vals = [
            lecam_private(
                LeCamConfig(tau=1.0, kl_p0_p1=0.2, n=5, params=PrivacyParams(float(e), 0.01))
            ).value
            for e in eps_grid
        ]
        assert all(b <= a + 1e-12 for a, b in zip(lecam_vals, lecam_vals[1:]))
        xu_vals = [
            bayes_xu_raginsky_private(
                BayesConfig(
                    small_ball=small_ball_uniform01,
                    info_value=0.19,
                    n=4,
                    params=PrivacyParams(float(e), 0.01),
                )
            ).value
            for e in eps_grid
        ]
        assert all(b <= a + 1e-12 for a, b in zip(xu_vals, xu_vals[1:]))

    def test_magnitudes_nondecreasing_in_phi(self):
        eps_grid = np.linspace(0.0, 3.0, 13)
        ht_vals = [abs(ht_exponent(1.0, PrivacyParams(float(e), 0.0))) for e in eps_grid]
        cap_vals = [mi_cap(1.0, PrivacyParams(float(e), 0.0)) for e in eps_grid]
        assert all(a <= b + 1e-12 for a, b in zip(ht_vals, ht_vals[1:]))
        assert all(a <= b + 1e-12 for a, b in zip(cap_vals, cap_vals[1:]))
