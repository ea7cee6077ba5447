import math
from fractions import Fraction

import pytest

from cjones.asym import (
    ResidualRow,
    fit_expansion,
    grid,
    log_partition_s3,
    meridian_parameter,
    predicted_log_jones,
    residual,
    sweep,
    unknot_prediction,
    unknot_residual,
    volume_conjecture_check,
)
from cjones.errors import DomainError
from cjones.geometry import action_S, torsion_fig8
from conftest import VOL_FIG8

DECAY_COLORS = list(range(100, 1001, 100))


def generic_colors(r):
    """Colors whose k = N/r is not an integer."""
    return [N for N in DECAY_COLORS if (Fraction(N) / Fraction(r)).denominator != 1]


def test_meridian_parameter(cfg, mp):
    assert meridian_parameter(1, cfg) == 0
    assert abs(meridian_parameter("0.95", cfg) - 2 * mp.pi * mp.j * mp.mpf("-0.05")) < cfg.tol


def test_residual_row_is_difference():
    row = ResidualRow(N=10, r=1, log_jones=5.5, prediction=5.25)
    assert row.residual == 0.25
    failed = ResidualRow(N=10, r=1, log_jones=float("nan"), prediction=float("nan"), error="boom")
    assert math.isnan(failed.residual)


def test_prediction_uses_cone_angle(cfg40):
    mp = cfg40.mp
    row = residual(100, "0.95", cfg40)
    assert row.residual == row.log_jones - row.prediction
    assert mp.isfinite(row.prediction)


@pytest.mark.parametrize("r", ["1.4", "0.6"])
def test_prediction_outside_cone_range(cfg40, r):
    with pytest.raises(DomainError):
        predicted_log_jones(100, r, cfg40)
    with pytest.raises(DomainError):
        residual(100, r, cfg40)


def test_residual_at_root_of_unity_decays(cfg):
    assert abs(residual(1000, 1, cfg).residual) < abs(residual(100, 1, cfg).residual)


@pytest.mark.slow
@pytest.mark.parametrize("r", ["0.92", "0.96", "1.04", "1.08"])
def test_residual_decay_off_the_root(cfg, r):
    sizes = [abs(residual(N, r, cfg).residual) for N in generic_colors(r)]
    assert sizes[-1] < 0.5 * sizes[0]
    violations = sum(later > earlier for earlier, later in zip(sizes, sizes[1:]))
    assert violations <= 1


def test_integer_k_is_outside_the_expansion(cfg40):
    assert generic_colors("0.96") == [N for N in DECAY_COLORS if N != 600]
    with pytest.raises(DomainError, match="integer"):
        predicted_log_jones(600, "0.96", cfg40)
    with pytest.raises(DomainError, match="integer"):
        residual(48, "0.96", cfg40)
    (row,) = sweep(48, "0.96", "0.96", 1, cfg40)
    assert "integer" in row.error


def test_prediction_carries_the_truncation_sine(cfg40):
    mp = cfg40.mp
    r = mp.mpf("0.96")
    N = 479
    k = N / r
    s = action_S(meridian_parameter(r, cfg40), cfg40)
    torsion = torsion_fig8(2 * mp.pi * (1 - r), cfg40)
    smooth = N * mp.im(s) / r + mp.mpf(3) / 2 * mp.log(k) + mp.log(torsion / (2 * mp.pi**2)) / 2
    truncation = mp.log(abs(mp.sin(mp.pi * k)))
    # k = 498.96 sits next to an integer, so the sine term is far from negligible
    assert truncation < -1
    assert abs(predicted_log_jones(N, r, cfg40) - smooth - truncation) < cfg40.tol
    assert abs(residual(N, r, cfg40).residual) < 2e-2


@pytest.mark.slow
@pytest.mark.parametrize("r", ["0.92", "1.08"])
def test_residual_is_small_off_the_root(cfg, r):
    for N in (500, 700, 900):
        assert abs(residual(N, r, cfg).residual) < 1e-2


@pytest.mark.slow
@pytest.mark.parametrize("r", ["0.92", "1.08"])
def test_residual_has_an_inverse_color_tail(cfg, r):
    ratio = residual(400, r, cfg).residual / residual(800, r, cfg).residual
    assert 1.3 <= ratio <= 3.0


def test_grid(cfg, mp):
    points = grid("0.9", "1.1", 21, cfg)
    assert len(points) == 21
    assert points[0] == mp.mpf("0.9") and points[-1] == mp.mpf("1.1")
    assert grid("0.9", "1.1", 1, cfg) == [mp.mpf("0.9")]
    with pytest.raises(ValueError):
        grid("0.9", "1.1", 0, cfg)


def test_sweep_rows_and_error_markers(cfg40):
    rows = sweep(12, "1.3", "1.4", 2, cfg40)
    assert [row.N for row in rows] == [12, 12]
    assert rows[0].error is None and not math.isnan(rows[0].residual)
    assert rows[1].error is not None and "2π/3" in rows[1].error
    assert math.isnan(rows[1].residual)


def test_sweep_is_deterministic(cfg40):
    first = sweep(16, "0.9", "1.1", 5, cfg40)
    second = sweep(16, "0.9", "1.1", 5, cfg40)
    assert [(row.r, row.log_jones, row.prediction) for row in first] == [
        (row.r, row.log_jones, row.prediction) for row in second
    ]
    assert len(sweep(16, "0.9", "1.1", 1, cfg40)) == 1


def test_sweep_worker_pool_matches_serial(cfg40):
    serial = sweep(8, "0.95", "1.05", 3, cfg40, jobs=1)
    pooled = sweep(8, "0.95", "1.05", 3, cfg40, jobs=2)
    assert [(row.r, row.log_jones) for row in serial] == [(row.r, row.log_jones) for row in pooled]


@pytest.mark.slow
def test_fit_at_root_of_unity(cfg, mp):
    report = fit_expansion(range(200, 2001, 200), 1, cfg)
    assert abs(report.a - mp.mpf(VOL_FIG8) / (2 * mp.pi)) < 1e-4
    assert abs(report.b - 1.5) < 0.05
    assert abs(report.c + mp.mpf("0.274653")) < 0.02
    assert abs(report.vol_est - mp.mpf(VOL_FIG8)) < 1e-3
    assert abs(report.delta_est - 3) < 0.1
    assert abs(report.torsion_const_est - 2 * mp.pi**2 * mp.exp(2 * report.c)) < cfg.tol


def test_unknot_fit_has_unit_log_slope(cfg):
    report = fit_expansion(range(200, 2001, 200), "0.5", cfg, knot="U")
    assert abs(report.a) < 1e-6
    assert abs(report.b - 1) < 0.05
    assert abs(report.delta_est - 2) < 0.1


def test_hopf_fit_at_small_ratio(cfg):
    report = fit_expansion(range(2, 10), "0.01", cfg, knot="hopf")
    assert abs(report.b - 2) < 0.1
    assert abs(report.delta_est - 4) < 0.2


def test_fit_with_inverse_term(cfg):
    report = fit_expansion(range(200, 2001, 200), "0.5", cfg, knot="U", inverse_term=True)
    assert abs(report.b - 1) < 1e-3


def test_fit_rejects_bad_input(cfg):
    with pytest.raises(DomainError):
        fit_expansion([10, 20, 30, 40], 1, cfg, knot="3_1")
    with pytest.raises(DomainError):
        fit_expansion([10, 20, 30], 1, cfg)


def test_volume_conjecture_small(cfg, mp):
    assert abs(volume_conjecture_check(200, cfg) - mp.mpf(VOL_FIG8)) < 5e-2
    at_minimum = volume_conjecture_check(100, cfg)
    assert mp.isfinite(at_minimum)
    assert abs(at_minimum - mp.mpf(VOL_FIG8)) < 0.1
    with pytest.raises(DomainError):
        volume_conjecture_check(99, cfg)


@pytest.mark.slow
def test_volume_conjecture_large(cfg, mp):
    coarse = abs(volume_conjecture_check(1000, cfg) - mp.mpf(VOL_FIG8))
    fine = abs(volume_conjecture_check(2000, cfg) - mp.mpf(VOL_FIG8))
    assert fine < 1e-3
    assert fine < coarse


@pytest.mark.slow
def test_volume_conjecture_at_4000(cfg, mp):
    assert abs(volume_conjecture_check(4000, cfg) - mp.mpf(VOL_FIG8)) < 3e-4


@pytest.mark.parametrize("N, r", [(1000, "0.5"), (400, "0.8"), (900, "1.3")])
def test_unknot_expansion(cfg, N, r):
    assert abs(unknot_residual(N, r, cfg)) < 1e-4


def test_unknot_prediction_needs_r_away_from_one(cfg):
    with pytest.raises(DomainError):
        unknot_prediction(100, 1, cfg)


def test_log_partition_s3(cfg, mp):
    assert abs(log_partition_s3(2, cfg)) < cfg.tol
    k = mp.mpf(50)
    assert abs(log_partition_s3(k, cfg) - mp.log(mp.sqrt(2 / k) * mp.sin(mp.pi / k))) < cfg.tol
