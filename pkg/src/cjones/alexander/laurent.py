"""Exact Laurent polynomials in t with integer coefficients, and matrices over them.

Both types are thin views over sympy: a LaurentPoly keeps an expanded sympy
expression in the symbol ``t`` and a LaurentMatrix keeps a ``sympy.Matrix``.
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import sympy as sp

from cjones.errors import ShapeError

t = sp.Symbol("t")


class LaurentPoly:
    """Integer Laurent polynomial in t."""

    def __init__(self, coeffs: Union[sp.Expr, Dict[int, int], Iterable[Tuple[int, int]], None] = None):
        if isinstance(coeffs, sp.Basic):
            expr = coeffs
        else:
            items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
            expr = sp.Add(*(sp.Integer(int(c)) * t ** int(e) for e, c in items))
        self.expr = sp.expand(expr)
        self._table = self._read_terms(self.expr)

    @staticmethod
    def _read_terms(expr) -> Dict[int, int]:
        table: Dict[int, int] = {}
        for term in sp.Add.make_args(expr):
            if term == 0:
                continue
            coeff, exponent = term.as_coeff_exponent(t)
            if not (coeff.is_Integer and exponent.is_Integer):
                raise ValueError(f"{expr} is not an integer Laurent polynomial in t")
            table[int(exponent)] = table.get(int(exponent), 0) + int(coeff)
        return {e: c for e, c in table.items() if c != 0}

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls(sp.Integer(c))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls(sp.Integer(coeff) * t**exponent)

    # -- inspection -----------------------------------------------------------

    def terms(self) -> List[Tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._table.items())

    def coeff(self, exponent: int) -> int:
        return self._table.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._table

    def is_unit(self) -> bool:
        """True for ±t^k."""
        return len(self._table) == 1 and abs(next(iter(self._table.values()))) == 1

    @property
    def min_degree(self) -> int:
        return min(self._table) if self._table else 0

    @property
    def max_degree(self) -> int:
        return max(self._table) if self._table else 0

    def coefficient_mass(self) -> int:
        return sum(abs(c) for c in self._table.values())

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.expr + other.expr)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.expr)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.expr - other.expr)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.expr * other.expr)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        return LaurentPoly(self.expr**n)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(self.expr * t**k)

    def invert(self) -> "LaurentPoly":
        """Substitute t -> t⁻¹."""
        return LaurentPoly(self.expr.subs(t, 1 / t))

    def is_symmetric(self) -> bool:
        return self == self.invert()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._table == other._table

    def __hash__(self):
        return hash(frozenset(self._table.items()))

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, x):
        """Exact for int/Fraction arguments, otherwise in x's own arithmetic."""
        if isinstance(x, (int, Fraction)):
            if x == 0 and self.min_degree < 0:
                raise ZeroDivisionError(f"{self} has a pole at t = 0")
            value = self.expr.subs(t, sp.Rational(x.numerator, x.denominator))
            return int(value) if value.is_Integer else Fraction(int(value.p), int(value.q))
        return sum(c * x**e for e, c in self.terms())

    __call__ = evaluate

    def normalized(self) -> "LaurentPoly":
        """Symmetric representative of the class p·(±t^k) with p(1) > 0."""
        if self.is_zero():
            return self
        span = self.min_degree + self.max_degree
        if span % 2:
            raise ValueError(f"{self} has no symmetric representative")
        p = self.shift(-span // 2)
        if p.evaluate(1) < 0:
            p = -p
        return p

    # -- rendering ------------------------------------------------------------

    def to_pairs(self) -> str:
        """Ascending-exponent 'c:e' pairs separated by spaces ('0:0' for zero)."""
        if self.is_zero():
            return "0:0"
        return " ".join(f"{c}:{e}" for e, c in self.terms())

    def __str__(self):
        return str(self.expr)

    def __repr__(self):
        return f"LaurentPoly({self.expr})"


def _as_expr(entry) -> sp.Expr:
    if isinstance(entry, LaurentPoly):
        return entry.expr
    return sp.sympify(entry)


class LaurentMatrix:
    """rows × cols matrix of LaurentPoly entries, held as a sympy Matrix."""

    def __init__(self, rows: Sequence[Sequence[Union[LaurentPoly, int]]]):
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ShapeError(f"ragged matrix with row widths {sorted(widths)}")
        n_cols = widths.pop() if widths else 0
        self.matrix = sp.Matrix(len(rows), n_cols, [_as_expr(entry) for row in rows for entry in row])

    @classmethod
    def from_sympy(cls, matrix: sp.Matrix) -> "LaurentMatrix":
        m = cls([])
        m.matrix = matrix
        return m

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def __getitem__(self, index: Tuple[int, int]) -> LaurentPoly:
        return LaurentPoly(self.matrix[index])

    def delete_row(self, i: int) -> "LaurentMatrix":
        m = self.matrix.copy()
        m.row_del(i)
        return LaurentMatrix.from_sympy(m)

    def column_sums(self) -> List[LaurentPoly]:
        return [LaurentPoly(sp.Add(*self.matrix.col(j))) for j in range(self.shape[1])]


def det_laurent(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant.

    Each column is scaled by the power of t that clears its negative exponents,
    the division-free Berkowitz determinant runs over Z[t], and the total scale
    is divided back out.
    """
    n_rows, n_cols = m.shape
    if n_rows != n_cols:
        raise ShapeError(f"determinant needs a square matrix, got {n_rows}x{n_cols}")
    if n_rows == 0:
        return LaurentPoly.constant(1)
    shifts = [max(0, -min(m[i, j].min_degree for i in range(n_rows))) for j in range(n_cols)]
    cleared = (m.matrix * sp.diag(*[t**s for s in shifts])).applyfunc(sp.expand)
    return LaurentPoly(cleared.det(method="berkowitz") * t ** (-sum(shifts)))
