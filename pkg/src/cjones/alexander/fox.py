"""Abelianized Fox calculus and the Alexander polynomial of a knot group."""
import logging

import sympy as sp
from sympy.combinatorics.free_groups import FreeGroupElement

from cjones.alexander.laurent import LaurentMatrix, LaurentPoly, det_laurent, t
from cjones.knotlang import GroupPresentation, parse_braid, presentation_from_braid

log = logging.getLogger(__name__)


def fox_derivative(word: FreeGroupElement, generator: int, pres: GroupPresentation) -> LaurentPoly:
    """∂word/∂x_generator with every generator sent to t."""
    target = pres.group.symbols[generator]
    total = sp.Integer(0)
    prefix = 0
    for symbol, exp in word.array_form:
        if symbol == target:
            # ∂(x^e)/∂x = 1 + x + … + x^(e-1); for e < 0 it is -(x^-1 + … + x^e)
            steps = range(exp) if exp > 0 else range(exp, 0)
            sign = 1 if exp > 0 else -1
            total += sign * sp.Add(*(t ** (prefix + m) for m in steps))
        prefix += exp * pres.abelian_degree(pres.index_of(symbol))
    return LaurentPoly(total)


def fox_matrix(pres: GroupPresentation) -> LaurentMatrix:
    """n × (n-1) matrix with entry (j, i) = ∂r_i/∂x_j."""
    return LaurentMatrix(
        [
            [fox_derivative(relator, j, pres) for relator in pres.relators]
            for j in range(pres.n_generators)
        ]
    )


def alexander_poly(pres: GroupPresentation, deleted_row: int = 0) -> LaurentPoly:
    if pres.n_generators == 1:
        # trivial knot group ⟨x | ⟩
        return LaurentPoly.constant(1)
    raw = det_laurent(fox_matrix(pres).delete_row(deleted_row))
    log.debug(f"raw minor after deleting row {deleted_row}: {raw}")
    return raw.normalized()


def alexander_from_braid(text: str) -> LaurentPoly:
    return alexander_poly(presentation_from_braid(parse_braid(text)))


def odd_at_pm1(p: LaurentPoly) -> bool:
    return all(value % 2 == 1 for value in (abs(p.evaluate(1)), abs(p.evaluate(-1))))


def abelian_window_ok(p: LaurentPoly, a) -> bool:
    """Δ(a⁻²) ≠ 0 relative to the coefficient mass of p."""
    if a == 0:
        raise ValueError("eigenvalue a must be nonzero")
    value = p.evaluate(complex(a) ** -2)
    return abs(value) > 1e-12 * p.coefficient_mass()
