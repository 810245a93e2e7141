"""Hankel entry sequences for the three recurrence systems.

Each system's determinant representation is driven by a coefficient
sequence defined through a linear-plus-convolution recurrence; this module
constructs those sequences, the functional-equation initial data they
solve, and the one-parameter family of alternative initial data.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import NonzeroPivotViolation
from .ring import LaurentPoly, TruncatedSeries, VarTable, series_compose_fe

ExtendFn = Callable[[Sequence[LaurentPoly], int], LaurentPoly]


class CoeffSeq:
    """Lazily extended, memoized sequence of Laurent polynomial terms.

    Extension is single-writer (guarded by a lock); computed terms never
    change, and regenerating a sequence reproduces identical canonical
    values.
    """

    def __init__(self, kind: str, table: VarTable,
                 initial: Sequence[LaurentPoly], extend: ExtendFn,
                 params: dict | None = None):
        self.kind = kind
        self.table = table
        self.params = dict(params or {})
        self._terms: list[LaurentPoly] = list(initial)
        self._extend = extend
        self._lock = threading.Lock()

    def term(self, m: int) -> LaurentPoly:
        if m < 0:
            raise IndexError("negative term index")
        if m >= len(self._terms):
            with self._lock:
                while len(self._terms) <= m:
                    self._terms.append(
                        self._extend(self._terms, len(self._terms)))
        return self._terms[m]

    def prefix(self, n: int) -> list[LaurentPoly]:
        if n:
            self.term(n - 1)
        return self._terms[:n]

    def __repr__(self):
        return f"<CoeffSeq {self.kind} len={len(self._terms)}>"


def _convolution(terms: Sequence[LaurentPoly], upto: int,
                 table: VarTable) -> LaurentPoly:
    """sum_{k=0..upto} terms[k] * terms[upto - k]."""
    acc = table.zero()
    for k in range(upto + 1):
        acc = acc + terms[k] * terms[upto - k]
    return acc


def _resolve_sqrt_alpha(x: LaurentPoly,
                        sqrt_alpha: LaurentPoly | None) -> LaurentPoly:
    if sqrt_alpha is not None:
        return sqrt_alpha
    return x.table.var("r")


# --------------------------------------------------------------------------
# Somos-4 entries and functional-equation data
# --------------------------------------------------------------------------


def somos4_entries(x: LaurentPoly, y: LaurentPoly, beta: LaurentPoly,
                   sqrt_alpha: LaurentPoly | None = None) -> CoeffSeq:
    """Entry sequence whose order-n Hankel determinants solve Somos-4.

    p_0 = x, p_1 = -sqrt(alpha), and for m >= 2

        p_m = c1*p_{m-1} + c2*p_{m-2} + sum_{k=0}^{m-2} p_k p_{m-2-k}

    with c1 = (beta*x^2 - y^2 + alpha*x^3 - alpha*y)/(sqrt(alpha)*x*y) and
    c2 = (beta + alpha*x - x*y)/y, alpha = sqrt_alpha**2.
    """
    table = x.table
    r = _resolve_sqrt_alpha(x, sqrt_alpha)
    alpha = r * r
    c1 = (beta * x**2 - y**2 + alpha * x**3 - alpha * y).exact_div(r * x * y)
    c2 = (beta + alpha * x - x * y).exact_div(y)

    def extend(terms, m):
        return (c1 * terms[m - 1] + c2 * terms[m - 2]
                + _convolution(terms, m - 2, table))

    return CoeffSeq("somos4-p", table, [x, -r], extend,
                    params={"x": x, "y": y, "beta": beta, "sqrt_alpha": r})


def somos4_theorem_data(x: LaurentPoly, y: LaurentPoly, beta: LaurentPoly,
                        sqrt_alpha: LaurentPoly | None = None
                        ) -> tuple[LaurentPoly, ...]:
    """Functional-equation initial data (a0..f0) for the Somos-4 entries."""
    table = x.table
    r = _resolve_sqrt_alpha(x, sqrt_alpha)
    alpha = r * r
    u = beta * x**2 - y**2 + alpha * x**3
    a0 = x
    b0 = -(u.exact_div(r * y))
    c0 = -((u - alpha * y).exact_div(r * x * y))
    d0 = -((beta + alpha * x - x * y).exact_div(y))
    e0 = -table.one()
    f0 = table.zero()
    return (a0, b0, c0, d0, e0, f0)


@dataclass(frozen=True)
class FamilyParams:
    """Sign k = +-1 and free parameter f0 of the alternative-data family."""

    k: int
    f0: LaurentPoly

    def __post_init__(self):
        if self.k not in (1, -1):
            raise ValueError("k must be +1 or -1")


def somos4_family_initials(x: LaurentPoly, y: LaurentPoly,
                           beta: LaurentPoly, fam: FamilyParams,
                           sqrt_alpha: LaurentPoly | None = None
                           ) -> tuple[LaurentPoly, ...]:
    """One-parameter family of functional-equation data solving Somos-4.

    The data is the solution of the three constraints pinning the
    transformation to the Somos-4 pivot recursion: a1 = y/x^2,
    f0 + c0 + f1 = k*sqrt(alpha)/x (so the closed-identity constant term
    equals alpha), and the matching of its linear term, which yields

        c0 = -(2*f0*sqrt(alpha)*x*y
               + k*(beta*x^2 - y^2 + alpha*x^3 - alpha*y))/(sqrt(alpha)*x*y)
        b0 = -(f0*sqrt(alpha)*x*y + k*(beta*x^2 - y^2 + alpha*x^3))
             / (sqrt(alpha)*y)

    and d0 forced by the a1 update.  With k = 1 and f0 = 0 the output
    reduces exactly to :func:`somos4_theorem_data`.
    """
    table = x.table
    r = _resolve_sqrt_alpha(x, sqrt_alpha)
    alpha = r * r
    k, f0 = fam.k, fam.f0
    block = beta * x**2 - y**2 + alpha * x**3
    a0 = x
    b0 = -((f0 * r * x * y + k * block).exact_div(r * y))
    c0 = -((2 * (f0 * r * x * y) + k * (block - alpha * y)
            ).exact_div(r * x * y))
    a1 = y.exact_div(x**2)
    d0 = (x + (b0 * c0).exact_div(x) - (b0 * b0).exact_div(x**2) - a1)
    e0 = -table.one()
    return (a0, b0, c0, d0, e0, f0)


def series_entries(initials: Sequence[LaurentPoly],
                   kind: str = "series-derived") -> CoeffSeq:
    """Entry sequence read off the functional-equation series solution.

    The series is recomputed at growing precision as terms are requested;
    the fixed point is unique, so extension never changes earlier terms.
    Raises :class:`NonzeroPivotViolation` if the leading coefficient is
    zero (no Hankel pivot exists at order 1).
    """
    initials = tuple(initials)
    a0 = initials[0]
    if a0.is_zero:
        raise NonzeroPivotViolation("a0 = 0: series has no invertible pivot")
    table = a0.table
    cache: dict[str, TruncatedSeries] = {}

    def extend(terms, m):
        series = cache.get("q")
        if series is None or series.precision <= m:
            precision = max(2 * len(terms) + 4, m + 1)
            cache["q"] = series = series_compose_fe(initials, precision)
        return series.coeff(m)

    return CoeffSeq(kind, table, [], extend, params={"initials": initials})


# --------------------------------------------------------------------------
# Somos-5 entries
# --------------------------------------------------------------------------


def somos5_entries(x: LaurentPoly, y: LaurentPoly, z: LaurentPoly,
                   alpha_t: LaurentPoly, beta_t: LaurentPoly
                   ) -> tuple[CoeffSeq, CoeffSeq]:
    """Two entry sequences for the even/odd Somos-5 determinant formulas.

    S_{2n} = x^{n+1} det(p_{i+j}) and S_{2n+1} = y^{n+1} det(q_{i+j}).
    """
    table = x.table
    p_c1 = -((-(alpha_t * x**2 * z) + alpha_t * x**2 * y**2
              + beta_t * x**3 * y + z * y**2 - z**2).exact_div(x * y * z))
    p_c2 = (y * x**4 * alpha_t**2 + x**5 * alpha_t * beta_t
            + beta_t * z * x**3 - z**2 * y).exact_div(x**2 * y * z)
    p0 = z.exact_div(x**2)
    p1 = -beta_t

    def extend_p(terms, m):
        return (p_c1 * terms[m - 1] + p_c2 * terms[m - 2]
                + _convolution(terms, m - 2, table))

    q_c1 = (alpha_t * x**2 * z + alpha_t * x**2 * y**2 - z**2
            - z * y**2 + beta_t * x**3 * y).exact_div(x * y * z)
    q_c2 = (alpha_t * y**4 - alpha_t * z**2 + beta_t * x * y**3
            - beta_t * x * z * y).exact_div(y**2 * z)
    q0 = (alpha_t * z + beta_t * x * y).exact_div(y**2)
    q1 = -beta_t

    def extend_q(terms, m):
        return (q_c1 * terms[m - 1] + q_c2 * terms[m - 2]
                + _convolution(terms, m - 2, table))

    params = {"x": x, "y": y, "z": z, "alpha_t": alpha_t, "beta_t": beta_t}
    return (CoeffSeq("somos5-p", table, [p0, p1], extend_p, params),
            CoeffSeq("somos5-q", table, [q0, q1], extend_q, params))


# --------------------------------------------------------------------------
# Extended A1 Q-system entries
# --------------------------------------------------------------------------


def a1q_entries(x: LaurentPoly, beta: LaurentPoly) -> CoeffSeq:
    """Entries for the extended A1 Q-system: p_0 = x, p_1 = 1 and

        p_m = ((beta + 1 - x^2)/x) p_{m-1} + sum_{k=0}^{m-1} p_k p_{m-1-k}.
    """
    table = x.table
    c1 = (beta + 1 - x**2).exact_div(x)

    def extend(terms, m):
        return c1 * terms[m - 1] + _convolution(terms, m - 1, table)

    return CoeffSeq("a1q-p", table, [x, table.one()], extend,
                    params={"x": x, "beta": beta})


def a1q_entries_alt(x: LaurentPoly, beta: LaurentPoly) -> CoeffSeq:
    """The same entries via the shorter-tail recurrence

        p_m = ((beta + 1)/x) p_{m-1} + sum_{k=1}^{m-1} p_k p_{m-1-k}.
    """
    table = x.table
    c1 = (beta + 1).exact_div(x)

    def extend(terms, m):
        acc = table.zero()
        for k in range(1, m):
            acc = acc + terms[k] * terms[m - 1 - k]
        return c1 * terms[m - 1] + acc

    return CoeffSeq("a1q-p-alt", table, [x, table.one()], extend,
                    params={"x": x, "beta": beta})


def a1q_shift_data(x: LaurentPoly, beta: LaurentPoly
                   ) -> tuple[LaurentPoly, ...]:
    """Functional-equation data of the transformed A1Q generating function.

    The resulting series G satisfies H_n(F) = x^n H_{n-1}(G) against the
    entry sequence F of :func:`a1q_entries`.
    """
    table = x.table
    a0 = (beta + x**2).exact_div(x**2)
    b0 = -(beta.exact_div(x**3))
    c0 = -((beta + 1 + x**2).exact_div(x))
    d0 = (2 * beta).exact_div(x**2)
    e0 = -table.one()
    f0 = beta.exact_div(x)
    return (a0, b0, c0, d0, e0, f0)
