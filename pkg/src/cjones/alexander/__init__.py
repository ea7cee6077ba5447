from cjones.alexander.laurent import LaurentMatrix, LaurentPoly, det_laurent
from cjones.alexander.fox import (
    abelian_window_ok,
    alexander_from_braid,
    alexander_poly,
    fox_derivative,
    fox_matrix,
    odd_at_pm1,
)

__all__ = [
    "LaurentMatrix",
    "LaurentPoly",
    "abelian_window_ok",
    "alexander_from_braid",
    "alexander_poly",
    "det_laurent",
    "fox_derivative",
    "fox_matrix",
    "odd_at_pm1",
]
