"""Colored Jones polynomials at q = exp(2πi r/N), evaluated in the log domain.

Convention: q^{1/2} = exp(πi r/N), so {a} := q^{a/2} - q^{-a/2} = 2i·sin(πra/N).
"""
import logging
from dataclasses import dataclass
from typing import Union

import sympy as sp

from cjones.alexander.laurent import LaurentPoly, t
from cjones.errors import DegeneratePointError, DomainError, NonRealValueError, UnsupportedEvaluationError
from cjones.knotlang import Atom, ConnectedSum, KnotExpr, Satellite, summands
from cjones.numkit import DEFAULT_CFG, ONE, ZERO, LogComplex, PrecisionCfg, log_sum_exp

log = logging.getLogger(__name__)

Real = Union[int, float, str]


@dataclass(frozen=True)
class EvalPoint:
    N: int
    r: Real

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"color N must be a positive integer, got {self.N}")
        if not float(self.r) > 0:
            raise DomainError(f"r must be positive, got {self.r}")

    def angle(self, cfg: PrecisionCfg):
        """πr/N, the argument of q^{1/2}."""
        ctx = cfg.mp
        return ctx.pi * ctx.mpf(self.r) / self.N


def _sine_log(x, cfg: PrecisionCfg, scale) -> LogComplex:
    # log of sin(x); exact zero when |sin x| is below the rounding floor for |x|
    ctx = cfg.mp
    s = ctx.sin(x)
    if abs(s) <= cfg.zero_tol * (1 + abs(scale)):
        return ZERO
    return LogComplex(ctx.log(abs(s)), ctx.pi if s < 0 else ctx.zero)


def quantum_int(M: int, p: EvalPoint, cfg: PrecisionCfg = DEFAULT_CFG) -> LogComplex:
    """[M] = sin(Mπr/N) / sin(πr/N)."""
    theta = p.angle(cfg)
    denominator = _sine_log(theta, cfg, theta)
    if denominator.is_zero:
        raise DegeneratePointError(f"q^(1/2) = ±1 at N={p.N}, r={p.r}; [M] is undefined")
    return _sine_log(M * theta, cfg, M * theta) / denominator


def jones_unknot(p: EvalPoint, cfg: PrecisionCfg = DEFAULT_CFG) -> LogComplex:
    return quantum_int(p.N, p, cfg)


def jones_hopf(p: EvalPoint, cfg: PrecisionCfg = DEFAULT_CFG) -> LogComplex:
    return quantum_int(p.N * p.N, p, cfg)


def _bracket(a: int, p: EvalPoint, cfg: PrecisionCfg) -> LogComplex:
    # {a} = 2i sin(πra/N)
    ctx = cfg.mp
    theta = a * p.angle(cfg)
    s = _sine_log(theta, cfg, theta)
    if s.is_zero:
        return ZERO
    return LogComplex(s.log_mag + ctx.log(2), s.phase + ctx.pi / 2)


def fig8_reduced(p: EvalPoint, cfg: PrecisionCfg = DEFAULT_CFG) -> LogComplex:
    """V_N(4₁; q) = Σ_{j<N} Π_{k≤j} {N-k}{N+k}, one factor pair per step."""
    partial = ONE
    terms = [ONE]
    for k in range(1, p.N):
        partial = partial * _bracket(p.N - k, p, cfg) * _bracket(p.N + k, p, cfg)
        if partial.is_zero:
            # every later partial product carries the same vanishing factor
            break
        terms.append(partial)
    return log_sum_exp(terms, cfg)


def fig8_reduced_exact(N: int) -> LaurentPoly:
    """V_N(4₁) as an exact Laurent polynomial in q.

    Each factor pair {N-k}{N+k} equals q^-N·(q^2N + 1 - q^(N+k) - q^(N-k)), so
    the j-th partial product is q^-jN times an ordinary polynomial over Z.
    """
    if N < 1:
        raise DomainError(f"color N must be a positive integer, got {N}")
    top = (N - 1) * N
    partial = sp.Poly(1, t, domain="ZZ")
    total = sp.Poly(t**top, t, domain="ZZ")
    for k in range(1, N):
        partial = partial * sp.Poly(t ** (2 * N) + 1 - t ** (N + k) - t ** (N - k), t, domain="ZZ")
        total = total + partial * sp.Poly(t ** (top - k * N), t, domain="ZZ")
    return LaurentPoly(total.as_expr() * t**-top)


def _reduced(atom: Atom, p: EvalPoint, cfg: PrecisionCfg) -> LogComplex:
    if atom.name == "U":
        return ONE
    if atom.name == "4_1":
        return fig8_reduced(p, cfg)
    if atom.name == "hopf":
        unknot = jones_unknot(p, cfg)
        if unknot.is_zero:
            raise DegeneratePointError(f"[N] vanishes at N={p.N}, r={p.r}; reduced hopf value is undefined")
        return jones_hopf(p, cfg) / unknot
    raise UnsupportedEvaluationError(atom.name, "no colored Jones formula is implemented")


def jones_eval(
    expr: KnotExpr,
    p: EvalPoint,
    cfg: PrecisionCfg = DEFAULT_CFG,
    reduced: bool = False,
) -> LogComplex:
    """J_N (or V_N when reduced) of a knot expression.

    Connected sums use J(K₁#K₂) = J(K₁)J(K₂)/[N], i.e. V is multiplicative.
    """
    if isinstance(expr, Satellite):
        raise UnsupportedEvaluationError(f"sat({expr.pattern}, ...)", "satellites are not evaluable")

    if isinstance(expr, Atom) and expr.name == "hopf":
        return _reduced(expr, p, cfg) if reduced else jones_hopf(p, cfg)

    parts = summands(expr)
    for part in parts:
        if isinstance(part, Satellite):
            raise UnsupportedEvaluationError(f"sat({part.pattern}, ...)", "satellites are not evaluable")
        if part.name == "hopf":
            raise UnsupportedEvaluationError("hopf", "the Hopf link cannot be a connected-sum operand")
        if part.name not in ("U", "4_1"):
            raise UnsupportedEvaluationError(part.name, "no colored Jones formula is implemented")

    unknot = ONE if reduced else jones_unknot(p, cfg)
    if isinstance(expr, ConnectedSum) and unknot.is_zero:
        raise DegeneratePointError(
            f"[N] vanishes at N={p.N}, r={p.r}; the connected-sum formula divides by it, "
            "use reduced mode"
        )

    value = ONE
    for part in parts:
        value = value * _reduced(part, p, cfg)
    return unknot * value


def kashaev_fig8(N: int, cfg: PrecisionCfg = DEFAULT_CFG):
    """V_N(4₁; e^{2πi/N}) as a real number."""
    if N < 2:
        raise DomainError(f"Kashaev invariant needs N >= 2, got {N}")
    ctx = cfg.mp
    value = fig8_reduced(EvalPoint(N, 1), cfg)
    log.debug(f"kashaev N={N}: log|V|={ctx.nstr(value.log_mag, 15)}")
    phase = ctx.mpf(value.phase)
    if abs(ctx.sin(phase)) > cfg.tol or ctx.cos(phase) < 0:
        raise NonRealValueError(f"Kashaev invariant at N={N} has phase {ctx.nstr(phase, 10)}")
    return value.real_part(cfg)
