"""Ray-Singer torsion of the figure-eight cone manifolds (Re u = 0)."""
from cjones.errors import DomainError
from cjones.numkit import DEFAULT_CFG, PrecisionCfg


def torsion_fig8(alpha, cfg: PrecisionCfg = DEFAULT_CFG):
    """T_E(α) = 1/√((3/2 - cos α)(1/2 + cos α)) for 0 ≤ α < 2π/3."""
    ctx = cfg.mp
    alpha = ctx.mpf(alpha)
    if alpha < 0 or alpha >= 2 * ctx.pi / 3:
        raise DomainError(f"cone angle {ctx.nstr(alpha, 17)} is outside [0, 2π/3)")
    c = ctx.cos(alpha)
    return 1 / ctx.sqrt((ctx.mpf(3) / 2 - c) * (ctx.mpf(1) / 2 + c))


def torsion_fig8_zero(cfg: PrecisionCfg = DEFAULT_CFG):
    """Torsion for the trivial deformation, π²·T_E(0) = 2π²/√3."""
    ctx = cfg.mp
    return 2 * ctx.pi**2 / ctx.sqrt(3)
