"""The asymptotic-expansion experiment for the figure-eight knot.

Measured:   Re log J_N(4₁; e^{2πir/N})   (V_N at r = 1)
Predicted:  N·Im S(u)/r + (3/2)·log(N/r) + ½·log(T_E/2π²) + log|sin πk|
            with u = 2πi(r - 1) and k = N/r

The sine term is absent at r = 1. Otherwise the partial products of the
cyclotomic sum pass through the factors {m} with m near k, and together those
factors leave sin πk in J_N. At integer k the sum truncates exactly and the
expansion does not apply.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from cjones.errors import CJonesError, DomainError
from cjones.geometry.action import action_S
from cjones.geometry.torsion import torsion_fig8, torsion_fig8_zero
from cjones.jones import EvalPoint, jones_eval, jones_unknot, kashaev_fig8
from cjones.knotlang import Atom
from cjones.numkit import DEFAULT_CFG, PrecisionCfg, fit_log_affine

log = logging.getLogger(__name__)

VOLCHECK_START = 100
VOLCHECK_STEP = 100
FIT_KNOTS = ("U", "4_1", "hopf")


@dataclass(frozen=True)
class ResidualRow:
    N: int
    r: object
    log_jones: object
    prediction: object
    error: Optional[str] = None

    @property
    def residual(self):
        if self.error is not None:
            return float("nan")
        return self.log_jones - self.prediction


@dataclass(frozen=True)
class FitReport:
    knot: str
    r: object
    a: object
    b: object
    c: object
    rms: object
    vol_est: object
    delta_est: object
    torsion_const_est: object
    d: object = 0


def meridian_parameter(r, cfg: PrecisionCfg = DEFAULT_CFG):
    """u = 2πi(r - 1), from r = N/k = 1 + u/(2πi)."""
    ctx = cfg.mp
    return 2 * ctx.pi * ctx.j * (ctx.mpf(r) - 1)


def predicted_log_jones(N: int, r, cfg: PrecisionCfg = DEFAULT_CFG):
    ctx = cfg.mp
    r = ctx.mpf(r)
    if r == 1:
        s = action_S(0, cfg)
        return N * ctx.im(s) + ctx.mpf(3) / 2 * ctx.log(N) + ctx.log(torsion_fig8_zero(cfg) / (2 * ctx.pi**2)) / 2

    alpha = 2 * ctx.pi * abs(r - 1)
    if alpha >= 2 * ctx.pi / 3:
        raise DomainError(f"r = {ctx.nstr(r, 17)} gives cone angle {ctx.nstr(alpha, 10)} >= 2π/3")
    k = N / r
    truncation = abs(ctx.sin(ctx.pi * k))
    if truncation <= cfg.tol:
        raise DomainError(f"k = N/r = {ctx.nstr(k, 17)} is an integer; the sum truncates and the expansion does not apply")
    torsion = torsion_fig8(alpha, cfg)
    s = action_S(meridian_parameter(r, cfg), cfg)
    return (
        N * ctx.im(s) / r
        + ctx.mpf(3) / 2 * ctx.log(k)
        + ctx.log(torsion / (2 * ctx.pi**2)) / 2
        + ctx.log(truncation)
    )


def residual(N: int, r, cfg: PrecisionCfg = DEFAULT_CFG) -> ResidualRow:
    ctx = cfg.mp
    r = ctx.mpf(r)
    prediction = predicted_log_jones(N, r, cfg)
    point = EvalPoint(N, r)
    measured = jones_eval(Atom("4_1"), point, cfg, reduced=(r == 1))
    return ResidualRow(N=N, r=r, log_jones=+measured.log_mag, prediction=prediction)


def _residual_task(args):
    N, r_text, digits = args
    cfg = PrecisionCfg(digits=digits)
    try:
        row = residual(N, r_text, cfg)
    except CJonesError as e:
        return N, r_text, None, None, str(e)
    ctx = cfg.mp
    return N, r_text, ctx.nstr(row.log_jones, digits), ctx.nstr(row.prediction, digits), None


def grid(r_min, r_max, steps: int, cfg: PrecisionCfg = DEFAULT_CFG) -> List:
    ctx = cfg.mp
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}")
    r_min, r_max = ctx.mpf(r_min), ctx.mpf(r_max)
    if steps == 1:
        return [r_min]
    return [r_min + (r_max - r_min) * i / (steps - 1) for i in range(steps)]


def sweep(N: int, r_min, r_max, steps: int, cfg: PrecisionCfg = DEFAULT_CFG, jobs: int = 1) -> List[ResidualRow]:
    """Residual rows over an inclusive r grid; failures become error rows."""
    ctx = cfg.mp
    tasks = [(N, ctx.nstr(r, cfg.digits), cfg.digits) for r in grid(r_min, r_max, steps, cfg)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_residual_task, tasks))
    else:
        results = [_residual_task(task) for task in tasks]

    rows = []
    for n, r_text, measured, predicted, error in results:
        if error is not None:
            log.warning(f"residual N={n} r={r_text} failed: {error}")
            rows.append(ResidualRow(n, ctx.mpf(r_text), float("nan"), float("nan"), error))
        else:
            rows.append(ResidualRow(n, ctx.mpf(r_text), ctx.mpf(measured), ctx.mpf(predicted)))
    log.info(f"sweep N={N}: {len(rows)} rows, {sum(row.error is not None for row in rows)} failed")
    return rows


def _log_jones_task(args):
    knot, N, r_text, digits = args
    cfg = PrecisionCfg(digits=digits)
    ctx = cfg.mp
    value = jones_eval(Atom(knot), EvalPoint(N, r_text), cfg, reduced=(knot == "4_1" and ctx.mpf(r_text) == 1))
    return ctx.nstr(value.log_mag, digits)


def fit_expansion(
    N_list: Sequence[int],
    r,
    cfg: PrecisionCfg = DEFAULT_CFG,
    knot: str = "4_1",
    inverse_term: bool = False,
    jobs: int = 1,
) -> FitReport:
    """Fit Re log J_N (V_N for 4₁ at r = 1) to a·N + b·log N + c."""
    if knot not in FIT_KNOTS:
        raise DomainError(f"fit supports {', '.join(FIT_KNOTS)}, got {knot!r}")
    if len(N_list) < 4:
        raise DomainError(f"fit needs at least 4 values of N, got {len(N_list)}")
    ctx = cfg.mp
    r = ctx.mpf(r)
    r_text = ctx.nstr(r, cfg.digits)
    tasks = [(knot, int(N), r_text, cfg.digits) for N in N_list]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_log_jones_task, tasks))
    else:
        values = [_log_jones_task(task) for task in tasks]

    samples = [(int(N), ctx.mpf(value)) for N, value in zip(N_list, values)]
    fit = fit_log_affine(samples, cfg, inverse_term=inverse_term)
    report = FitReport(
        knot=knot,
        r=r,
        a=fit.a,
        b=fit.b,
        c=fit.c,
        rms=fit.rms,
        vol_est=2 * ctx.pi * fit.a * r,
        delta_est=2 * fit.b,
        torsion_const_est=2 * ctx.pi**2 * ctx.exp(2 * fit.c),
        d=fit.d,
    )
    log.info(f"fit {knot} r={r_text}: a={ctx.nstr(fit.a, 10)} b={ctx.nstr(fit.b, 6)} c={ctx.nstr(fit.c, 6)}")
    return report


def volume_conjecture_check(N_max: int, cfg: PrecisionCfg = DEFAULT_CFG):
    """2π·a from a fit of log ⟨4₁⟩_N over N = 100, 200, …, N_max.

    Below N_max = 400 the fit runs over eight evenly spaced colors instead.
    """
    if N_max < VOLCHECK_START:
        raise DomainError(f"N_max must be at least {VOLCHECK_START}, got {N_max}")
    ctx = cfg.mp
    N_values = list(range(VOLCHECK_START, N_max + 1, VOLCHECK_STEP))
    if len(N_values) < 4:
        # too few multiples of 100: eight evenly spaced colors ending at N_max
        lo = min(VOLCHECK_START, N_max // 2)
        N_values = sorted({lo + round((N_max - lo) * i / 7) for i in range(8)})
    samples = [(N, ctx.log(kashaev_fig8(N, cfg))) for N in N_values]
    fit = fit_log_affine(samples, cfg)
    return 2 * ctx.pi * fit.a


# =============================================================================
# UNKNOT AND S^3 NORMALIZATION
# =============================================================================

def unknot_prediction(N: int, r, cfg: PrecisionCfg = DEFAULT_CFG):
    """log k - log π + log|sin(π(r - 1))| with k = N/r."""
    ctx = cfg.mp
    r = ctx.mpf(r)
    if r == 1:
        raise DomainError("the unknot expansion needs r != 1 (J_N(U) vanishes there)")
    k = N / r
    return ctx.log(k) - ctx.log(ctx.pi) + ctx.log(abs(ctx.sin(ctx.pi * (r - 1))))


def unknot_residual(N: int, r, cfg: PrecisionCfg = DEFAULT_CFG):
    ctx = cfg.mp
    measured = jones_unknot(EvalPoint(N, ctx.mpf(r)), cfg)
    return measured.log_mag - unknot_prediction(N, r, cfg)


def log_partition_s3(k, cfg: PrecisionCfg = DEFAULT_CFG):
    """log Z(S³) = log(√(2/k)·sin(π/k))."""
    ctx = cfg.mp
    k = ctx.mpf(k)
    return ctx.log(ctx.sqrt(2 / k) * ctx.sin(ctx.pi / k))
