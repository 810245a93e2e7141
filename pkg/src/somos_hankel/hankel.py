"""Hankel matrices and exact determinants.

Determinants run through fraction-free (Bareiss) elimination by default:
every interior division is exact in the Laurent ring, so an inexact one
indicates an arithmetic bug and surfaces as ``InternalInconsistency``.
Cofactor expansion is kept as a small-order cross-check oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionTooLarge, InternalInconsistency, NotDivisible
from .genfun import CoeffSeq
from .ring import LaurentPoly, VarTable

LAPLACE_MAX = 6


@dataclass(frozen=True)
class HankelSpec:
    """Order-n Hankel window over a coefficient sequence, shifted by l."""

    source: CoeffSeq
    order: int
    shift: int = 0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")


@dataclass(frozen=True)
class SquareMatrix:
    table: VarTable
    rows: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @staticmethod
    def from_rows(table: VarTable, rows) -> "SquareMatrix":
        rows = tuple(tuple(row) for row in rows)
        for row in rows:
            if len(row) != len(rows):
                raise ValueError("matrix is not square")
        return SquareMatrix(table, rows)


def hankel_matrix(spec: HankelSpec) -> SquareMatrix:
    """Matrix with entry (i, j) = source term i + j + shift."""
    n, l = spec.order, spec.shift
    if n:
        spec.source.term(2 * n - 2 + l)  # materialize needed terms once
    rows = tuple(tuple(spec.source.term(i + j + l) for j in range(n))
                 for i in range(n))
    return SquareMatrix(spec.source.table, rows)


def det_bareiss(m: SquareMatrix) -> LaurentPoly:
    """Fraction-free determinant with row pivoting and sign tracking."""
    n = m.n
    if n == 0:
        return m.table.one()
    rows = [list(row) for row in m.rows]
    sign = 1
    prev = m.table.one()
    for k in range(n - 1):
        if rows[k][k].is_zero:
            for i in range(k + 1, n):
                if not rows[i][k].is_zero:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return m.table.zero()  # column identically zero below pivot
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                try:
                    rows[i][j] = num.exact_div(prev)
                except NotDivisible as exc:
                    raise InternalInconsistency(
                        f"inexact interior division at step {k}") from exc
            rows[i][k] = m.table.zero()
        prev = pivot
    det = rows[n - 1][n - 1]
    return -det if sign < 0 else det


def det_laplace(m: SquareMatrix) -> LaurentPoly:
    """Cofactor-expansion determinant, guarded to small orders."""
    n = m.n
    if n > LAPLACE_MAX:
        raise DimensionTooLarge(f"cofactor expansion limited to n <= {LAPLACE_MAX}")
    if n == 0:
        return m.table.one()

    def expand(rows, cols):
        if len(cols) == 1:
            return rows[0][cols[0]]
        acc = m.table.zero()
        for idx, c in enumerate(cols):
            minor = expand(rows[1:], cols[:idx] + cols[idx + 1:])
            term = rows[0][c] * minor
            acc = acc + (term if idx % 2 == 0 else -term)
        return acc

    return expand(list(m.rows), tuple(range(n)))


def hankel_det(source: CoeffSeq, order: int, shift: int = 0) -> LaurentPoly:
    return det_bareiss(hankel_matrix(HankelSpec(source, order, shift)))


def shifted_hankel_run(source: CoeffSeq, n_max: int,
                       shift: int = 0) -> list[LaurentPoly]:
    """[H_0, H_1, ..., H_{n_max}] for the given shift, with H_0 = 1."""
    return [hankel_det(source, n, shift) for n in range(n_max + 1)]
