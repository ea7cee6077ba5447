"""Precision arithmetic shared by the numeric modules.

Everything here runs inside an mpmath context owned by a PrecisionCfg, so two
callers working at different precisions never disturb each other (or the
global ``mpmath.mp``).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Tuple

from mpmath.calculus.quadrature import GaussLegendre
from mpmath.ctx_mp import MPContext

from cjones.config import DEFAULT_DIGITS, MIN_DIGITS
from cjones.errors import ConfigError, QuadratureError, SingularFitError

log = logging.getLogger(__name__)

# 3 * 2**(degree - 1) = 24 nodes per panel
GL_DEGREE = 4
MAX_HALVINGS = 12
# Λ is split at min(theta, LOBACHEVSKY_HEAD); the head uses the log(sin t / t) series
LOBACHEVSKY_HEAD = 0.1


@lru_cache(maxsize=None)
def _context(digits: int) -> MPContext:
    ctx = MPContext()
    ctx.dps = digits
    return ctx


@dataclass(frozen=True)
class PrecisionCfg:
    """Working precision. quad_tol defaults to 10**-(digits // 2)."""

    digits: int = DEFAULT_DIGITS
    quad_tol: Optional[float] = None

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < MIN_DIGITS:
            raise ConfigError(f"digits must be an integer >= {MIN_DIGITS}, got {self.digits}")
        if self.quad_tol is not None and not self.quad_tol > 0:
            raise ConfigError(f"quad_tol must be positive, got {self.quad_tol}")

    @property
    def mp(self) -> MPContext:
        return _context(self.digits)

    @property
    def tol(self):
        ctx = self.mp
        if self.quad_tol is None:
            return ctx.mpf(10) ** (-(self.digits // 2))
        return ctx.mpf(self.quad_tol)

    @property
    def zero_tol(self):
        """Threshold below which a computed sine is treated as an exact zero."""
        return self.mp.mpf(10) ** (-(self.digits - 8))


DEFAULT_CFG = PrecisionCfg()


# =============================================================================
# LOG-DOMAIN COMPLEX NUMBERS
# =============================================================================

@dataclass(frozen=True)
class LogComplex:
    """A complex number stored as (log|z|, arg z) with the phase left unreduced."""

    log_mag: object
    phase: object = 0

    @classmethod
    def from_value(cls, z, cfg: PrecisionCfg = DEFAULT_CFG) -> "LogComplex":
        ctx = cfg.mp
        z = ctx.mpmathify(z)
        if z == 0:
            return ZERO
        return cls(ctx.log(abs(z)), ctx.arg(z))

    @property
    def is_zero(self) -> bool:
        return self.log_mag == float("-inf")

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return ZERO
        return LogComplex(self.log_mag + other.log_mag, self.phase + other.phase)

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by an exact zero LogComplex")
        if self.is_zero:
            return ZERO
        return LogComplex(self.log_mag - other.log_mag, self.phase - other.phase)

    def __pow__(self, n: int) -> "LogComplex":
        if self.is_zero:
            return ZERO if n > 0 else ONE
        return LogComplex(self.log_mag * n, self.phase * n)

    def to_complex(self, cfg: PrecisionCfg = DEFAULT_CFG):
        ctx = cfg.mp
        if self.is_zero:
            return ctx.mpc(0)
        return ctx.exp(ctx.mpf(self.log_mag)) * ctx.expj(ctx.mpf(self.phase))

    def real_part(self, cfg: PrecisionCfg = DEFAULT_CFG):
        ctx = cfg.mp
        if self.is_zero:
            return ctx.zero
        return ctx.exp(ctx.mpf(self.log_mag)) * ctx.cos(ctx.mpf(self.phase))


ZERO = LogComplex(float("-inf"), 0)
ONE = LogComplex(0, 0)


def log_sum_exp(terms: Iterable[LogComplex], cfg: PrecisionCfg = DEFAULT_CFG) -> LogComplex:
    """Sum numbers held as LogComplex, pivoting on the largest magnitude."""
    terms = list(terms)
    if not terms:
        raise ValueError("log_sum_exp needs at least one term")
    live = [z for z in terms if not z.is_zero]
    if not live:
        return ZERO

    ctx = cfg.mp
    pivot = max(live, key=lambda z: z.log_mag)
    acc = ctx.fsum(
        ctx.exp(z.log_mag - pivot.log_mag) * ctx.expj(z.phase - pivot.phase) for z in live
    )
    if acc == 0:
        return ZERO
    return LogComplex(pivot.log_mag + ctx.log(abs(acc)), pivot.phase + ctx.arg(acc))


# =============================================================================
# QUADRATURE
# =============================================================================

@lru_cache(maxsize=None)
def _gauss_legendre_nodes(digits: int) -> Tuple[tuple, ...]:
    ctx = _context(digits)
    return tuple(GaussLegendre(ctx).calc_nodes(GL_DEGREE, ctx.prec))


def _composite(f, z0, z1, pieces: int, cfg: PrecisionCfg):
    ctx = cfg.mp
    nodes = _gauss_legendre_nodes(cfg.digits)
    step = (z1 - z0) / pieces
    half = step / 2
    total = 0
    for j in range(pieces):
        mid = z0 + step * j + half
        total += half * ctx.fsum(w * f(mid + half * x) for x, w in nodes)
    return total


def integrate_segment(
    f: Callable,
    z0,
    z1,
    cfg: PrecisionCfg = DEFAULT_CFG,
    max_halvings: int = MAX_HALVINGS,
):
    """Integrate f along the straight segment z0 -> z1.

    Panels are halved until two successive composite Gauss-Legendre estimates
    agree within cfg.tol.
    """
    ctx = cfg.mp
    z0 = ctx.mpmathify(z0)
    z1 = ctx.mpmathify(z1)
    if z0 == z1:
        return ctx.mpc(0)

    tol = cfg.tol
    previous = _composite(f, z0, z1, 1, cfg)
    for halving in range(1, max_halvings + 1):
        current = _composite(f, z0, z1, 2**halving, cfg)
        if abs(current - previous) <= tol:
            log.debug(f"quadrature {z0} -> {z1} settled after {halving} halvings")
            return current
        previous = current
    raise QuadratureError(
        f"no convergence on segment {ctx.nstr(z0, 8)} -> {ctx.nstr(z1, 8)} "
        f"after {max_halvings} halvings"
    )


# =============================================================================
# LOBACHEVSKY FUNCTION
# =============================================================================

def _log_sinc_integral(h, ctx):
    # integral over [0, h] of log(sin t / t), termwise from its Bernoulli series
    eps = ctx.eps * ctx.mpf(10) ** -4
    total = ctx.zero
    k = 1
    while True:
        coeff = (-1) ** k * ctx.mpf(2) ** (2 * k - 1) * ctx.bernoulli(2 * k) / (k * ctx.factorial(2 * k))
        term = coeff * h ** (2 * k + 1) / (2 * k + 1)
        total += term
        if abs(term) < eps:
            return total
        k += 1


def lobachevsky(theta, cfg: PrecisionCfg = DEFAULT_CFG):
    """Λ(θ) = -∫₀^θ log|2 sin t| dt (odd, π-periodic)."""
    ctx = cfg.mp
    theta = ctx.mpf(theta)
    reduced = theta - ctx.nint(theta / ctx.pi) * ctx.pi
    sign = -1 if reduced < 0 else 1
    t = abs(reduced)
    if t == 0:
        return ctx.zero

    h = min(t, ctx.mpf(LOBACHEVSKY_HEAD))
    # ∫₀^h log(2 sin s) ds = ∫₀^h log(2s) ds + ∫₀^h log(sin s / s) ds
    head = h * ctx.log(2 * h) - h + _log_sinc_integral(h, ctx)
    tail = ctx.zero
    if t > h:
        tail = ctx.re(integrate_segment(lambda s: ctx.log(2 * ctx.sin(s)), h, t, cfg))
    return -sign * (head + tail)


# =============================================================================
# REGRESSION
# =============================================================================

class LogAffineFit(NamedTuple):
    a: object
    b: object
    c: object
    rms: object
    d: object = 0


def fit_log_affine(
    samples: Sequence[Tuple[int, object]],
    cfg: PrecisionCfg = DEFAULT_CFG,
    inverse_term: bool = False,
) -> LogAffineFit:
    """Least-squares fit of y ≈ a·N + b·log N + c (+ d/N) via normal equations."""
    ctx = cfg.mp
    width = 4 if inverse_term else 3
    distinct = {int(n) for n, _ in samples}
    if len(samples) < 4 or len(distinct) < width:
        raise SingularFitError(
            f"need at least 4 samples and {width} distinct N, got {len(samples)} samples "
            f"with {len(distinct)} distinct N"
        )

    def basis(n):
        n = ctx.mpf(n)
        row = [n, ctx.log(n), ctx.one]
        if inverse_term:
            row.append(1 / n)
        return row

    with ctx.extraprec(ctx.prec):
        rows = [basis(n) for n, _ in samples]
        ys = [ctx.mpf(y) for _, y in samples]
        gram = ctx.matrix(width, width)
        rhs = ctx.matrix(width, 1)
        for row, y in zip(rows, ys):
            for i in range(width):
                rhs[i] += row[i] * y
                for j in range(width):
                    gram[i, j] += row[i] * row[j]
        try:
            coeffs = ctx.lu_solve(gram, rhs)
        except ZeroDivisionError:
            raise SingularFitError("normal equations are numerically singular") from None

        beta = [coeffs[i] for i in range(width)]
        residuals = [y - ctx.fsum(b * x for b, x in zip(beta, row)) for row, y in zip(rows, ys)]
        rms = ctx.sqrt(ctx.fsum(e**2 for e in residuals) / len(residuals))

    d = beta[3] if inverse_term else ctx.zero
    log.debug(f"fit over {len(samples)} samples: a={ctx.nstr(beta[0], 12)} rms={ctx.nstr(rms, 5)}")
    return LogAffineFit(+beta[0], +beta[1], +beta[2], +rms, +d)
