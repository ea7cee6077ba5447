"""Classical Chern-Simons actions along the geometric branch.

S′(u) = S′(0) + (1/4π)∫₀^u (v(s) + 2πi) ds,   S′(0) = i·Vol(4₁)/2π,
S(u)  = S′(u) + (1/π)(ũ·Re ṽ - πi·ṽ),       ũ = -v/2, ṽ = u/2,
S     = (i/2π)(Vol + 2π²i·CS).
"""
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from cjones.geometry.holonomy import BranchTracker, check_domain, holonomy_branch
from cjones.numkit import DEFAULT_CFG, PrecisionCfg, integrate_segment, lobachevsky

log = logging.getLogger(__name__)

# endpoints remembered per process; least recently used entries are evicted
MEMO_SIZE = 256


@dataclass(frozen=True)
class ActionValue:
    u: object
    v: object
    s_prime: object
    s: object
    vol: object
    cs: object


def memo_enabled() -> bool:
    return os.getenv("CJONES_MEMO", "1") != "0"


def clear_memo() -> None:
    _remembered_sprime.cache_clear()


def memo_info():
    return _remembered_sprime.cache_info()


@lru_cache(maxsize=None)
def complete_volume(cfg: PrecisionCfg = DEFAULT_CFG):
    """Vol(4₁) = 6Λ(π/3)."""
    ctx = cfg.mp
    return 6 * lobachevsky(ctx.pi / 3, cfg)


def _integrate_along(tracker: BranchTracker, cfg: PrecisionCfg):
    ctx = cfg.mp
    total = ctx.mpc(0)
    for j in range(tracker.length):
        a, b = tracker.vertices[j], tracker.vertices[j + 1]
        if a == b:
            continue

        def integrand(z, j=j, a=a, b=b):
            t = j + ctx.re((z - a) / (b - a))
            return tracker.at(t).v + 2 * ctx.pi * ctx.j

        total += integrate_segment(integrand, a, b, cfg)
    return total


def _track_sprime(u, via: Tuple, cfg: PrecisionCfg):
    ctx = cfg.mp
    tracker = BranchTracker(list(via) + [u], cfg)
    s_prime = ctx.j * complete_volume(cfg) / (2 * ctx.pi) + _integrate_along(tracker, cfg) / (4 * ctx.pi)
    return s_prime, tracker.end().v


_remembered_sprime = lru_cache(maxsize=MEMO_SIZE)(_track_sprime)


def _sprime_and_v(u, cfg: PrecisionCfg, via: Sequence = ()):
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    via = tuple(ctx.mpmathify(w) for w in via)
    check_domain(u, cfg)
    if u == 0 and not via:
        return ctx.j * complete_volume(cfg) / (2 * ctx.pi), ctx.mpc(0)

    if not memo_enabled():
        return _track_sprime(u, via, cfg)
    return _remembered_sprime(u, via, cfg)


def action_Sprime(u, cfg: PrecisionCfg = DEFAULT_CFG, via: Sequence = ()):
    """S′(u), integrating along 0 → via… → u (straight segment by default)."""
    return _sprime_and_v(u, cfg, via)[0]


def _polarize(s_prime, u, v, ctx):
    u_tilde = -v / 2
    v_tilde = u / 2
    return s_prime + (u_tilde * ctx.re(v_tilde) - ctx.pi * ctx.j * v_tilde) / ctx.pi


def action_S(u, cfg: PrecisionCfg = DEFAULT_CFG):
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    s_prime, v = _sprime_and_v(u, cfg)
    return _polarize(s_prime, u, v, ctx)


def _volume(s_prime, u, v, ctx):
    return 2 * ctx.pi * ctx.im(s_prime) - ctx.pi * ctx.re(u) - ctx.re(u) * ctx.im(v) / 2


def volume(u, cfg: PrecisionCfg = DEFAULT_CFG):
    """Vol = 2π·Im S′ - π·Re u - ½·Re u·Im v."""
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    s_prime, v = _sprime_and_v(u, cfg)
    return _volume(s_prime, u, v, ctx)


def chern_simons(u, cfg: PrecisionCfg = DEFAULT_CFG):
    ctx = cfg.mp
    return -ctx.re(action_S(u, cfg)) / ctx.pi


def growth_rate(u, cfg: PrecisionCfg = DEFAULT_CFG):
    """lim log|J_N|/k = Vol/2π + ½·Re u + (1/4π)·Re u·Im v."""
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    s_prime, v = _sprime_and_v(u, cfg)
    vol = _volume(s_prime, u, v, ctx)
    return vol / (2 * ctx.pi) + ctx.re(u) / 2 + ctx.re(u) * ctx.im(v) / (4 * ctx.pi)


def evaluate_action(u, cfg: PrecisionCfg = DEFAULT_CFG) -> ActionValue:
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    s_prime, v = _sprime_and_v(u, cfg)
    s = _polarize(s_prime, u, v, ctx)
    return ActionValue(
        u=u,
        v=v,
        s_prime=s_prime,
        s=s,
        vol=_volume(s_prime, u, v, ctx),
        cs=-ctx.re(s) / ctx.pi,
    )


def schlafli_residual(u, h, cfg: PrecisionCfg = DEFAULT_CFG):
    """Central-difference check of dVol = -½(Re u·d Im v - Re v·d Im u).

    Returns the larger of the residuals along the real and imaginary directions.
    """
    ctx = cfg.mp
    u = ctx.mpmathify(u)
    h = ctx.mpf(h)
    v = holonomy_branch(u, cfg).v
    worst = ctx.zero
    for direction in (ctx.one, ctx.j):
        step = h * direction
        plus, minus = evaluate_action(u + step, cfg), evaluate_action(u - step, cfg)
        d_vol = (plus.vol - minus.vol) / (2 * h)
        d_im_v = (ctx.im(plus.v) - ctx.im(minus.v)) / (2 * h)
        d_im_u = ctx.im(direction)
        predicted = -(ctx.re(u) * d_im_v - ctx.re(v) * d_im_u) / 2
        worst = max(worst, abs(d_vol - predicted))
    log.debug(f"schlafli residual at u={ctx.nstr(u, 8)}, h={ctx.nstr(h, 3)}: {ctx.nstr(worst, 5)}")
    return worst
