"""Rule engine for δ^rep_K(ρ) = 3 + h¹ - h⁰.

Only regimes settled by the known lemmas are decided; anything else is refused
with a DeltaRuleError rather than guessed.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from cjones.errors import NoRuleError, RuleNotDerivableError, StructuralError
from cjones.knotlang import (
    Atom,
    ConnectedSum,
    KnotExpr,
    Satellite,
    atom_info,
    contains_hopf,
    render_knot,
    summands,
)

log = logging.getLogger(__name__)


class RepKind(str, Enum):
    ABELIAN = "abelian"
    NONABELIAN = "nonabelian"
    HOLONOMY = "holonomy"


class Rule(str, Enum):
    COROLLARY = "Corollary"
    ABELIAN = "AbelianLemma"
    CONNECTED_SUM = "ConnectedSumLemma"
    CONNECTED_SUM_CENTRAL = "ConnectedSumLemma(central)"
    SATELLITE = "SatelliteLemma"
    HOPF = "HopfRemark"


@dataclass(frozen=True)
class RepClass:
    """Representation class declared by the caller.

    satellite_hypotheses are the four conditions of the satellite lemma; they
    hold for small deformations of the holonomy representation.
    """

    kind: RepKind = RepKind.NONABELIAN
    annulus_central: bool = False
    satellite_hypotheses: Tuple[bool, bool, bool, bool] = (False, False, False, False)

    def __post_init__(self):
        object.__setattr__(self, "kind", RepKind(self.kind))
        if len(self.satellite_hypotheses) != 4:
            raise ValueError("satellite_hypotheses needs exactly four flags")

    @property
    def is_abelian(self) -> bool:
        return self.kind is RepKind.ABELIAN


@dataclass(frozen=True)
class DeltaResult:
    delta: int
    h0: int
    h1_ker: int
    trace: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.delta != 3 + self.h1_ker - self.h0:
            raise StructuralError(
                f"inconsistent result: delta={self.delta} but 3 + h1_ker - h0 = {3 + self.h1_ker - self.h0}"
            )


# =============================================================================
# COHOMOLOGY BOOKKEEPING
# =============================================================================

def isotropy_h0(kind: str) -> int:
    """h⁰ as the dimension of the isotropy group of ρ."""
    dims = {"central": 3, "abelian": 1, "irreducible": 0}
    if kind not in dims:
        raise ValueError(f"unknown isotropy kind {kind!r}; expected one of {sorted(dims)}")
    return dims[kind]


def h1_kernel(dim_h1: int, boundary_trivial: bool) -> int:
    """Kernel dimension of H¹(M) → H¹(∂M): dim H¹ - ½·dim H¹(∂M)."""
    value = dim_h1 - (3 if boundary_trivial else 1)
    if value < 0:
        raise StructuralError(f"dim H^1 = {dim_h1} is too small for the boundary restriction")
    return value


def delta_connected_sum(d1: int, d2: int, central: bool) -> int:
    return d1 + d2 if central else d1 + d2 - 2


# =============================================================================
# RULES
# =============================================================================

def _abelian(expr: KnotExpr, rep: RepClass) -> DeltaResult:
    if rep.annulus_central:
        raise RuleNotDerivableError(
            "abelian representations near the identity are not combined over a central annulus"
        )
    # H^0 is the one-dimensional isotropy; dim H^1 = 1 restricts injectively
    return DeltaResult(2, isotropy_h0("abelian"), 0, (Rule.ABELIAN.value,))


def _atom(atom: Atom, rep: RepClass) -> DeltaResult:
    info = atom_info(atom.name)
    if info.kind == "unknot":
        raise NoRuleError("the unknot group Z has no non-abelian representations")
    if info.kind in ("hyperbolic", "torus"):
        return DeltaResult(3, 0, 0, (Rule.COROLLARY.value,))
    raise StructuralError(f"atom '{atom.name}' cannot stand alone here")


def _require_regular(operand: KnotExpr) -> None:
    # satellite operands are not regular along the meridian, so the lemma says nothing
    for part in summands(operand):
        if isinstance(part, Satellite):
            raise RuleNotDerivableError(
                f"connected-sum lemma needs regular operands; {render_knot(part)} is a satellite"
            )


def _connected_sum(expr: ConnectedSum, rep: RepClass) -> DeltaResult:
    _require_regular(expr.left)
    _require_regular(expr.right)
    left = _delta(expr.left, rep)
    right = _delta(expr.right, rep)
    central = rep.annulus_central
    delta = delta_connected_sum(left.delta, right.delta, central)
    # Mayer-Vietoris over the annulus: H^0(M) injects into H^0(M1) + H^0(M2) = 0
    h0 = 0
    h1_ker = delta - 3
    rule = Rule.CONNECTED_SUM_CENTRAL if central else Rule.CONNECTED_SUM
    return DeltaResult(delta, h0, h1_ker, left.trace + right.trace + (rule.value,))


def _satellite(expr: Satellite, rep: RepClass) -> DeltaResult:
    if isinstance(expr.companion, Atom) and atom_info(expr.companion.name).kind == "unknot":
        raise NoRuleError(f"satellite with trivial companion in {render_knot(expr)} has no applicable rule")
    missing = [label for label, ok in zip(("i", "ii", "iii", "iv"), rep.satellite_hypotheses) if not ok]
    if missing:
        raise RuleNotDerivableError(
            f"satellite lemma needs hypotheses i-iv; missing {','.join(missing)}"
        )
    return DeltaResult(4, 0, 1, (Rule.SATELLITE.value,))


def _delta(expr: KnotExpr, rep: RepClass) -> DeltaResult:
    if isinstance(expr, ConnectedSum):
        return _connected_sum(expr, rep)
    if isinstance(expr, Satellite):
        return _satellite(expr, rep)
    return _atom(expr, rep)


def delta_rep(expr: KnotExpr, rep: RepClass) -> DeltaResult:
    """δ^rep of a knot expression under a declared representation class."""
    if isinstance(expr, Atom) and expr.name == "hopf":
        # H^0(T×I) = 0, H^1(T×I) has a one-dimensional kernel
        result = DeltaResult(4, 0, 1, (Rule.HOPF.value,))
    elif isinstance(expr, ConnectedSum) and contains_hopf(expr):
        raise StructuralError("the Hopf link cannot be a connected-sum operand")
    elif rep.is_abelian:
        result = _abelian(expr, rep)
    else:
        result = _delta(expr, rep)
    log.debug(f"delta_rep({render_knot(expr)}, {rep.kind.value}) = {result.delta} via {list(result.trace)}")
    return result
