"""Geometric branch of the figure-eight A-polynomial curve.

On m = exp(u/2) the curve is the quadratic l + 1/l = B(u) with
B(u) = 2cosh(2u) - 2cosh(u) - 2. The geometric branch passes through the
double root l = -1 at u = 0, leaves it as v ≈ 2√3·i·u, and is followed by
continuation along polylines starting at 0.
"""
import bisect
import logging
from dataclasses import dataclass
from typing import List, Sequence

from cjones.errors import BranchDegenerationError, OutOfDomainError
from cjones.numkit import DEFAULT_CFG, PrecisionCfg

log = logging.getLogger(__name__)


class BranchConfig:
    """Continuation constants."""

    DOMAIN_BOX = 6.283185307179586  # |Re u| + |Im u| must stay below 2π
    MAX_DL = 0.1  # largest accepted |Δl| per continuation step
    SEPARATION = 0.5  # nearest root must be this much closer than the other one
    SEED_RADIUS = 0.1  # the l = -1 double root at u = 0 is exempt from collision checks
    MIN_STEP = 1e-14  # fraction of the requested parameter interval
    MAX_STEPS = 100_000


@dataclass(frozen=True)
class HolonomyPoint:
    u: object
    v: object
    m: object
    l: object


def a_poly_fig8(l, m):
    """-m⁴ + l(1 - m² - 2m⁴ - m⁶ + m⁸) - l²m⁴."""
    m2 = m * m
    m4 = m2 * m2
    return -m4 + l * (1 - m2 - 2 * m4 - m2 * m4 + m4 * m4) - l * l * m4


def _b_of_u(u, ctx):
    return 2 * ctx.cosh(2 * u) - 2 * ctx.cosh(u) - 2


def check_domain(u, cfg: PrecisionCfg = DEFAULT_CFG) -> None:
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    if abs(ctx.re(u)) + abs(ctx.im(u)) > BranchConfig.DOMAIN_BOX:
        raise OutOfDomainError(f"u = {ctx.nstr(u, 10)} is outside the tracked region")


class BranchTracker:
    """Continues the geometric branch along a polyline 0 = w₀ → w₁ → … → wₙ.

    The polyline is parametrized by t ∈ [0, n]. Every accepted continuation
    point is kept, so quadrature nodes on the same path are reached by short
    steps from their nearest known neighbour.
    """

    def __init__(self, vertices: Sequence, cfg: PrecisionCfg = DEFAULT_CFG):
        self.cfg = cfg
        ctx = cfg.mp
        self._ctx = ctx
        self.vertices = [ctx.mpc(0)] + [ctx.mpmathify(w) for w in vertices]
        for w in self.vertices:
            check_domain(w, cfg)
        self._disc_tol = ctx.mpf(10) ** (-(cfg.digits // 4))
        self._ts: List = [ctx.zero]
        self._ls: List = [ctx.mpc(-1)]
        self._vs: List = [ctx.mpc(0)]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def point(self, t):
        j = min(int(t), self.length - 1)
        a, b = self.vertices[j], self.vertices[j + 1]
        return a + (t - j) * (b - a)

    def end(self) -> HolonomyPoint:
        return self.at(self.length)

    def at(self, t) -> HolonomyPoint:
        ctx = self._ctx
        t = ctx.mpf(t)
        i = bisect.bisect_left(self._ts, t)
        if i < len(self._ts) and self._ts[i] == t:
            return self._point(t, self._ls[i], self._vs[i])

        neighbours = [k for k in (i - 1, i) if 0 <= k < len(self._ts)]
        k = min(neighbours, key=lambda n: abs(self._ts[n] - t))
        return self._continue(self._ts[k], self._ls[k], self._vs[k], t)

    def _point(self, t, l, v) -> HolonomyPoint:
        u = self.point(t)
        return HolonomyPoint(u=u, v=v, m=self._ctx.exp(u / 2), l=l)

    def _remember(self, t, l, v) -> None:
        i = bisect.bisect_left(self._ts, t)
        if i < len(self._ts) and self._ts[i] == t:
            return
        self._ts.insert(i, t)
        self._ls.insert(i, l)
        self._vs.insert(i, v)

    def _roots(self, u):
        ctx = self._ctx
        b = _b_of_u(u, ctx)
        disc = b * b - 4
        root = ctx.sqrt(disc)
        return (b + root) / 2, (b - root) / 2, disc

    def _continue(self, t_from, l_from, v_from, t_to) -> HolonomyPoint:
        ctx = self._ctx
        t, l, v = t_from, l_from, v_from
        span = t_to - t_from
        step = span
        min_step = abs(span) * BranchConfig.MIN_STEP
        halvings = 0

        for _ in range(BranchConfig.MAX_STEPS):
            if t == t_to:
                break
            t_next = t + step
            if (step > 0 and t_next > t_to) or (step < 0 and t_next < t_to):
                t_next = t_to
            u_next = self.point(t_next)
            first, second, disc = self._roots(u_next)

            if t == 0:
                # leave the double root along the geometric tangent v ≈ 2√3·i·u
                l_pred = -ctx.exp(-ctx.sqrt(3) * ctx.j * u_next)
            else:
                l_pred = l
            d_first, d_second = abs(first - l_pred), abs(second - l_pred)
            l_new, near, far = (first, d_first, d_second) if d_first <= d_second else (second, d_second, d_first)

            if near > BranchConfig.SEPARATION * far or abs(l_new - l) > BranchConfig.MAX_DL:
                step /= 2
                halvings += 1
                if abs(step) < min_step:
                    raise BranchDegenerationError(ctx.nstr(u_next, 12), "continuation stalled near a branch point")
                continue

            if abs(disc) < self._disc_tol and abs(u_next) > BranchConfig.SEED_RADIUS:
                raise BranchDegenerationError(ctx.nstr(u_next, 12))

            raw = -2 * ctx.log(-l_new)
            turns = ctx.nint(ctx.im(v - raw) / (4 * ctx.pi))
            v_new = raw + 4 * ctx.pi * ctx.j * turns

            t, l, v = t_next, l_new, v_new
            self._remember(t, l, v)
            step = 2 * step
        else:
            raise BranchDegenerationError(ctx.nstr(self.point(t), 12), "continuation step budget exhausted")

        if halvings:
            log.debug(f"branch continuation to t={ctx.nstr(t_to, 8)} needed {halvings} step halvings")
        return self._point(t_to, l, v)


def holonomy_branch(u, cfg: PrecisionCfg = DEFAULT_CFG) -> HolonomyPoint:
    """Geometric-branch point above u, continued along the segment 0 → u."""
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    check_domain(u, cfg)
    if u == 0:
        return HolonomyPoint(u=ctx.mpc(0), v=ctx.mpc(0), m=ctx.mpc(1), l=ctx.mpc(-1))
    return BranchTracker([u], cfg).end()


def v_of_u(u, cfg: PrecisionCfg = DEFAULT_CFG):
    return holonomy_branch(u, cfg).v
