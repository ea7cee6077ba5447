import random

import pytest

from cjones.errors import ConfigError, QuadratureError, SingularFitError
from cjones.numkit import (
    ONE,
    ZERO,
    LogComplex,
    PrecisionCfg,
    fit_log_affine,
    integrate_segment,
    lobachevsky,
    log_sum_exp,
)
from conftest import VOL_FIG8


def test_precision_cfg_validation():
    with pytest.raises(ConfigError):
        PrecisionCfg(digits=8)
    with pytest.raises(ConfigError):
        PrecisionCfg(digits=32, quad_tol=0)
    cfg = PrecisionCfg(digits=30)
    assert cfg.mp.dps == 30
    assert cfg.tol == cfg.mp.mpf(10) ** -15


def test_contexts_are_independent():
    low, high = PrecisionCfg(digits=20), PrecisionCfg(digits=80)
    assert low.mp is not high.mp
    assert low.mp.dps == 20 and high.mp.dps == 80
    assert PrecisionCfg(digits=20).mp is low.mp


def test_lobachevsky_values(cfg, mp):
    assert lobachevsky(0, cfg) == 0
    assert abs(lobachevsky(mp.pi / 2, cfg)) < cfg.tol
    assert abs(6 * lobachevsky(mp.pi / 3, cfg) - mp.mpf(VOL_FIG8)) < cfg.tol
    assert abs(lobachevsky(mp.pi / 3, cfg) - mp.mpf("0.3383138")) < 1e-6


def test_lobachevsky_small_angle_uses_series(cfg, mp):
    # Λ(θ) ≈ θ - θ log(2θ) for tiny θ
    theta = mp.mpf("0.05")
    expected = -mp.quad(lambda t: mp.log(2 * mp.sin(t)), [0, theta])
    assert abs(lobachevsky(theta, cfg) - expected) < 1e-25


@pytest.mark.parametrize("theta", ["0.3", "1.1", "2.5", "-0.7"])
def test_lobachevsky_odd_and_periodic(cfg, mp, theta):
    theta = mp.mpf(theta)
    assert abs(lobachevsky(-theta, cfg) + lobachevsky(theta, cfg)) < cfg.tol
    assert abs(lobachevsky(theta + mp.pi, cfg) - lobachevsky(theta, cfg)) < cfg.tol


def test_log_sum_exp_basics(cfg, mp):
    two = log_sum_exp([ONE, ONE], cfg)
    assert abs(two.log_mag - mp.log(2)) < 1e-60
    z = LogComplex(mp.mpf("3.5"), mp.mpf("0.25"))
    assert log_sum_exp([z, ZERO], cfg) == z
    thousand = log_sum_exp([ONE] * 1000, cfg)
    assert abs(thousand.log_mag - mp.log(1000)) < 1e-58
    assert log_sum_exp([ZERO, ZERO], cfg).is_zero
    with pytest.raises(ValueError):
        log_sum_exp([], cfg)


def test_log_sum_exp_matches_naive_sum_and_permutations(cfg, mp):
    rng = random.Random(7)
    values = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(25)]
    terms = [LogComplex.from_value(v, cfg) for v in values]
    naive = sum(values)
    total = log_sum_exp(terms, cfg).to_complex(cfg)
    assert abs(complex(total) - naive) <= 1e-12 * abs(naive)

    shuffled = list(terms)
    rng.shuffle(shuffled)
    again = log_sum_exp(shuffled, cfg).to_complex(cfg)
    assert abs(again - total) < 1e-55 * abs(total)


def test_log_sum_exp_survives_huge_magnitudes(cfg, mp):
    big = LogComplex(mp.mpf(5000), 0)
    result = log_sum_exp([big, big], cfg)
    assert abs(result.log_mag - (5000 + mp.log(2))) < 1e-55


def test_logcomplex_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_integrate_segment_closed_forms(cfg, mp):
    assert abs(integrate_segment(lambda z: 1, 0, mp.mpc(1, 1), cfg) - mp.mpc(1, 1)) < cfg.tol
    assert abs(integrate_segment(lambda z: z, 0, 2, cfg) - 2) < cfg.tol
    assert abs(integrate_segment(mp.exp, 0, 1, cfg) - (mp.e - 1)) < cfg.tol


def test_integrate_segment_is_additive(cfg, mp):
    f = lambda z: mp.exp(z) * mp.cos(3 * z)
    a, m, b = mp.mpc(0, 0), mp.mpc("0.4", "0.3"), mp.mpc("1.0", "0.6")
    whole = integrate_segment(f, a, b, cfg)
    parts = integrate_segment(f, a, m, cfg) + integrate_segment(f, m, b, cfg)
    assert abs(whole - parts) < 2 * cfg.tol


def test_integrate_segment_gives_up(cfg, mp):
    with pytest.raises(QuadratureError):
        integrate_segment(lambda z: 1 / mp.sqrt(z), 0, 1, cfg, max_halvings=3)


def test_fit_recovers_exact_coefficients(cfg, mp):
    samples = [(n, 2 * n + mp.mpf("1.5") * mp.log(n) + mp.mpf("0.3")) for n in range(10, 60, 7)]
    fit = fit_log_affine(samples, cfg)
    assert abs(fit.a - 2) < 1e-40
    assert abs(fit.b - mp.mpf("1.5")) < 1e-40
    assert abs(fit.c - mp.mpf("0.3")) < 1e-40
    assert fit.rms < 1e-20


def test_fit_constant_data(cfg):
    fit = fit_log_affine([(n, 5) for n in range(10, 21)], cfg)
    assert abs(fit.a) < 1e-40 and abs(fit.b) < 1e-40
    assert abs(fit.c - 5) < 1e-40
    assert fit.rms < 1e-20


def test_fit_with_inverse_perturbation(cfg, mp):
    ns = list(range(100, 1100, 100))
    samples = [(n, mp.mpf("0.5") * n + 3 + mp.mpf(10) / n) for n in ns]
    fit = fit_log_affine(samples, cfg)
    assert abs(fit.a - mp.mpf("0.5")) <= 20 * max(mp.mpf(1) / n for n in ns)

    exact = fit_log_affine(samples, cfg, inverse_term=True)
    assert abs(exact.d - 10) < 1e-30
    assert abs(exact.b) < 1e-30


def test_fit_rejects_degenerate_design(cfg):
    with pytest.raises(SingularFitError):
        fit_log_affine([(10, 1), (10, 2), (10, 3), (10, 4)], cfg)
    with pytest.raises(SingularFitError):
        fit_log_affine([(10, 1), (20, 2), (30, 3)], cfg)
