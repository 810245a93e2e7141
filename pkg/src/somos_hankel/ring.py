"""Exact arithmetic kernel.

Provides arbitrary-precision rationals (``fractions.Fraction``), Gaussian
rationals, canonical multivariate Laurent polynomials, and truncated power
series over them.

Canonical form
--------------
A Laurent polynomial is a finite sum of terms ``coeff * prod(v_i ** e_i)``
with nonzero exact coefficients and integer (possibly negative) exponents.
Terms are kept merged and stored in graded-lexicographic *descending* order
over the table's fixed variable order, so two equal values always have
identical serializations and equality is a plain tuple comparison.

Formal square roots
-------------------
The coefficient parameter written ``alpha`` elsewhere is represented as the
square of the table variable ``r``; "polynomial in alpha" then means "all
``r`` exponents even and nonnegative".  A table may additionally carry a
rewrite rule ``v**2 -> monomial`` (used for the auxiliary root ``s`` with
``s**2 = x*y*z``); term normalization folds exponents of such a variable
into ``{0, 1}``.
"""
from __future__ import annotations

import re as _re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping, Sequence, Union

from .errors import NotDivisible, VarTableMismatch, ZeroAtNegativeExponent

# --------------------------------------------------------------------------
# Coefficients: Fraction or GaussianRational
# --------------------------------------------------------------------------


class GaussianRational:
    """An element of Q(i) with exact rational real and imaginary parts.

    Instances normalize to a plain ``Fraction`` upstream whenever the
    imaginary part is zero (see :func:`as_coeff`), so a stored Gaussian
    coefficient always has ``im != 0``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Coeff = Union[Fraction, GaussianRational]
Scalar = Union[int, Fraction, GaussianRational]

_GAUSS_RE = _re.compile(r"^([+-]?\d+(?:/\d+)?)([+-]\d+(?:/\d+)?)i$")


def as_coeff(value: Scalar) -> Coeff:
    """Coerce to the canonical coefficient representation.

    Gaussian values with zero imaginary part collapse to ``Fraction`` so
    that canonical serializations are unique.
    """
    if isinstance(value, GaussianRational):
        return value.re if value.im == 0 else value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"unsupported coefficient type {type(value)!r}")


def coeff_to_str(c: Coeff) -> str:
    """Decimal-rational coefficient string: ``p``, ``p/q`` or ``p/q+p'/q'i``."""
    return str(c)


def coeff_from_str(text: str) -> Coeff:
    text = text.strip()
    m = _GAUSS_RE.match(text)
    if m:
        return as_coeff(GaussianRational(Fraction(m.group(1)),
                                         Fraction(m.group(2))))
    return Fraction(text)


def _coeff_div(a: Coeff, b: Coeff) -> Coeff:
    if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
        ga = GaussianRational._coerce(a)
        gb = GaussianRational._coerce(b)
        return as_coeff(ga * gb.inverse())
    return a / b


# --------------------------------------------------------------------------
# Variable tables
# --------------------------------------------------------------------------

DEFAULT_SYMBOLS = ("r", "x", "y", "z", "w", "b", "a")


@dataclass(frozen=True)
class VarTable:
    """Ordered variable symbols with optional formal-root annotations.

    ``roots`` marks variables that stand for square roots (classification
    reports whether their exponents are all even).  ``square_rules`` maps a
    root variable to the exponent vector of the monomial its square equals;
    normalization keeps such exponents in ``{0, 1}``.
    """

    symbols: tuple[str, ...]
    roots: tuple[str, ...] = ()
    square_rules: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("variable symbols must be unique")
        for sym in self.roots:
            if sym not in self.symbols:
                raise ValueError(f"root symbol {sym!r} not in table")
        for sym, repl in self.square_rules:
            if sym not in self.symbols:
                raise ValueError(f"rule symbol {sym!r} not in table")
            if len(repl) != len(self.symbols):
                raise ValueError("rule replacement has wrong arity")
            if repl[self.symbols.index(sym)] != 0:
                raise ValueError("rule replacement may not involve its root")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise KeyError(f"unknown variable {symbol!r}") from None

    # -- constructors -------------------------------------------------------

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, ())

    def const(self, value: Scalar) -> "LaurentPoly":
        c = as_coeff(value)
        if not c:
            return self.zero()
        return LaurentPoly(self, (((0,) * self.size, c),))

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def var(self, symbol: str, power: int = 1) -> "LaurentPoly":
        return self.monomial(1, {symbol: power})

    def monomial(self, coeff: Scalar, exps: Mapping[str, int]) -> "LaurentPoly":
        vec = [0] * self.size
        for sym, e in exps.items():
            vec[self.index(sym)] = int(e)
        return LaurentPoly.from_dict(self, {tuple(vec): as_coeff(coeff)})


@lru_cache(maxsize=None)
def default_table() -> VarTable:
    """The standard table: r < x < y < z < w < b < a, with root r."""
    return VarTable(DEFAULT_SYMBOLS, roots=("r",))


@lru_cache(maxsize=None)
def sqrt_xyz_table() -> VarTable:
    """Auxiliary table with a root s satisfying s**2 = x*y*z."""
    return VarTable(("s", "x", "y", "z"), roots=("s",),
                    square_rules=(("s", (0, 1, 1, 1)),))


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


def _canonical_terms(table: VarTable,
                     raw: Mapping[tuple[int, ...], Coeff]):
    """Fold square rules, merge duplicates, drop zeros, sort descending."""
    if table.square_rules:
        folded: dict[tuple[int, ...], Coeff] = {}
        rule_ix = [(table.index(sym), repl) for sym, repl in table.square_rules]
        for exps, c in raw.items():
            vec = list(exps)
            for i, repl in rule_ix:
                e = vec[i]
                rem = e % 2
                half = (e - rem) // 2
                if half:
                    vec[i] = rem
                    for j, rj in enumerate(repl):
                        if rj:
                            vec[j] += half * rj
            key = tuple(vec)
            acc = folded.get(key)
            folded[key] = as_coeff(c if acc is None else acc + c)
        raw = folded
    items = [(e, as_coeff(c)) for e, c in raw.items() if c]
    items.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
    return tuple(items)


class LaurentPoly:
    """Canonical multivariate Laurent polynomial over exact coefficients.

    Immutable; safe to share across threads.  All construction goes through
    :meth:`from_dict` (or the ``VarTable`` helpers) so the stored term tuple
    is always canonical.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable,
                 terms: tuple[tuple[tuple[int, ...], Coeff], ...]):
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def from_dict(cls, table: VarTable,
                  mapping: Mapping[tuple[int, ...], Scalar]) -> "LaurentPoly":
        return cls(table, _canonical_terms(
            table, {e: as_coeff(c) for e, c in mapping.items()}))

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return (len(self.terms) == 1 and self.terms[0][1] == 1
                and not any(self.terms[0][0]))

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_constant(self) -> bool:
        return self.is_zero or (len(self.terms) == 1
                                and not any(self.terms[0][0]))

    def constant_value(self) -> Coeff:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return self.terms[0][1]

    def leading_term(self) -> tuple[tuple[int, ...], Coeff]:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def total_degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e, _ in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.table != other.table:
            raise VarTableMismatch(
                f"tables differ: {self.table.symbols} vs {other.table.symbols}")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.table.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in o.terms:
            prev = acc.get(e)
            acc[e] = c if prev is None else prev + c
        return LaurentPoly.from_dict(self.table, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.table,
                           tuple((e, as_coeff(-c)) for e, c in self.terms))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return self.table.zero()
        acc: dict[tuple[int, ...], Coeff] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = acc.get(key)
                acc[key] = c if prev is None else prev + c
        return LaurentPoly.from_dict(self.table, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial:
                raise ValueError("negative power of a non-monomial")
            e, c = self.terms[0]
            inv = LaurentPoly.from_dict(
                self.table, {tuple(-k for k in e): _coeff_div(Fraction(1), c)})
            return inv ** (-n)
        out = self.table.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.exact_div(o)

    # -- structure helpers ---------------------------------------------------

    def _shift_scale(self, shift: tuple[int, ...], scale: Coeff) -> "LaurentPoly":
        """Multiply by ``scale * monomial(shift)`` (a unit operation)."""
        raw = {tuple(a + b for a, b in zip(e, shift)): c * scale
               for e, c in self.terms}
        return LaurentPoly.from_dict(self.table, raw)

    def content_exponents(self) -> tuple[int, ...]:
        """Componentwise minimum exponent vector (the monomial content)."""
        if self.is_zero:
            return (0,) * self.table.size
        mins = list(self.terms[0][0])
        for e, _ in self.terms[1:]:
            for i, k in enumerate(e):
                if k < mins[i]:
                    mins[i] = k
        return tuple(mins)

    def unit_normal_parts(self):
        """Split as ``unit * primitive`` with primitive monic in grlex order.

        Returns ``(content_exps, leading_coeff, primitive)`` where the
        original equals ``leading_coeff * monomial(content_exps) * primitive``.
        """
        if self.is_zero:
            raise ValueError("zero polynomial has no unit part")
        content = self.content_exponents()
        neg = tuple(-k for k in content)
        prim0 = self._shift_scale(neg, Fraction(1))
        lc = prim0.terms[0][1]
        prim = prim0._shift_scale((0,) * self.table.size,
                                  _coeff_div(Fraction(1), lc))
        return content, lc, prim

    def min_exponent(self, symbol: str) -> int:
        """Minimum exponent of ``symbol`` across terms (0 for the zero poly)."""
        i = self.table.index(symbol)
        if self.is_zero:
            return 0
        return min(e[i] for e, _ in self.terms)

    # -- exact division ------------------------------------------------------

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises :class:`NotDivisible` on nonzero remainder.

        Monomial content of both operands is cleared first (Laurent units),
        then ordinary multivariate leading-term division runs under the
        graded-lex order.
        """
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return self.table.zero()
        if len(other.terms) == 1:
            e, c = other.terms[0]
            return self._shift_scale(tuple(-k for k in e),
                                     _coeff_div(Fraction(1), c))
        ca = self.content_exponents()
        cb = other.content_exponents()
        A = dict(self._shift_scale(tuple(-k for k in ca), Fraction(1)).terms)
        B = other._shift_scale(tuple(-k for k in cb), Fraction(1)).terms
        eb, cbb = B[0]
        # Sound early rejects: in an exact quotient Q, per-variable extremes
        # and the trailing (grlex-minimal) monomial multiply through, so the
        # quotient monomials live in a known box.
        amax = [max(e[i] for e in A) for i in range(self.table.size)]
        bmax = [max(e[i] for e, _ in B) for i in range(self.table.size)]
        qbox = [ai - bi for ai, bi in zip(amax, bmax)]
        if any(q < 0 for q in qbox):
            raise NotDivisible("degree bound excludes a quotient",
                               witness=str(self))
        ta = min(A, key=_grlex_key)
        tb = min((e for e, _ in B), key=_grlex_key)
        if any(a - b < 0 or a - b > q for a, b, q in zip(ta, tb, qbox)):
            raise NotDivisible("trailing term not divisible",
                               witness=str(self))
        quot: dict[tuple[int, ...], Coeff] = {}
        while A:
            er = max(A, key=_grlex_key)
            cr = A[er]
            diff = tuple(a - b for a, b in zip(er, eb))
            if any(d < 0 or d > q for d, q in zip(diff, qbox)):
                rem = LaurentPoly.from_dict(self.table, A)
                raise NotDivisible("nonzero remainder in exact division",
                                   witness=str(rem))
            cq = _coeff_div(cr, cbb)
            quot[diff] = cq
            for e2, c2 in B:
                key = tuple(a + b for a, b in zip(diff, e2))
                prev = A.get(key)
                val = as_coeff((0 if prev is None else prev) - cq * c2)
                if val:
                    A[key] = val
                elif prev is not None:
                    del A[key]
        shift = tuple(a - b for a, b in zip(ca, cb))
        result = LaurentPoly.from_dict(self.table, quot)._shift_scale(
            shift, Fraction(1))
        if self.table.square_rules:
            # Rule folding can break the leading-term argument; verify.
            if result * other != self:
                raise NotDivisible("inexact division under square rule",
                                   witness=str(self))
        return result

    # -- evaluation ----------------------------------------------------------

    def eval(self, assignment: Mapping[str, Scalar]) -> Coeff:
        """Evaluate at an exact point; a ring homomorphism.

        Raises :class:`ZeroAtNegativeExponent` if a variable occurring with
        a negative exponent is assigned zero.
        """
        values: list[Coeff | None] = []
        for sym in self.table.symbols:
            values.append(as_coeff(assignment[sym])
                          if sym in assignment else None)
        total: Coeff = Fraction(0)
        for exps, c in self.terms:
            term: Coeff = c
            for i, e in enumerate(exps):
                if not e:
                    continue
                v = values[i]
                if v is None:
                    raise ValueError(
                        f"assignment missing {self.table.symbols[i]!r}")
                if not v:
                    if e < 0:
                        raise ZeroAtNegativeExponent(
                            f"{self.table.symbols[i]} = 0 with exponent {e}")
                    term = Fraction(0)
                    break
                term = term * v ** e
            total = total + term
        return as_coeff(total)

    # -- comparison / hashing --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.table.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table.symbols, self.terms))

    def __bool__(self):
        return not self.is_zero

    # -- serialization -----------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for exps, c in self.terms:
            cs = coeff_to_str(c)
            if isinstance(c, GaussianRational):
                cs = f"({cs})"
            vs = "*".join(f"{sym}^{e}"
                          for sym, e in zip(self.table.symbols, exps) if e)
            parts.append(f"{cs}*{vs}" if vs else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"<LaurentPoly {self}>"

    def to_json_dict(self) -> dict:
        return {"vars": list(self.table.symbols),
                "terms": [{"e": list(e), "c": coeff_to_str(c)}
                          for e, c in self.terms]}

    @staticmethod
    def from_json_dict(data: Mapping) -> "LaurentPoly":
        table = infer_table(tuple(data["vars"]))
        raw = {tuple(int(k) for k in t["e"]): coeff_from_str(t["c"])
               for t in data["terms"]}
        return LaurentPoly.from_dict(table, raw)


def infer_table(symbols: tuple[str, ...]) -> VarTable:
    """Reconstruct a table from serialized symbols (known tables preferred)."""
    if symbols == DEFAULT_SYMBOLS:
        return default_table()
    if symbols == sqrt_xyz_table().symbols:
        return sqrt_xyz_table()
    return VarTable(symbols,
                    roots=tuple(s for s in symbols if s in ("r", "s")))


# --------------------------------------------------------------------------
# Spec-surface aliases
# --------------------------------------------------------------------------


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)


def lp_eval(p: LaurentPoly, assignment: Mapping[str, Scalar]) -> Coeff:
    return p.eval(assignment)


# --------------------------------------------------------------------------
# Classification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    """Per-variable minimum exponents plus root-evenness flags."""

    variables: tuple[str, ...]
    min_exponents: dict[str, int]
    polynomial_in: dict[str, bool]
    root_exponents_even: dict[str, bool]

    @property
    def is_polynomial(self) -> bool:
        return all(self.polynomial_in.values())


def lp_classify(p: LaurentPoly,
                variables: Iterable[str] | None = None) -> ClassReport:
    """Report minimum exponents for ``variables`` (default: all) and whether
    every root variable occurs only with even exponents."""
    syms = tuple(variables) if variables is not None else p.table.symbols
    mins = {sym: p.min_exponent(sym) for sym in syms}
    even = {}
    for root in p.table.roots:
        i = p.table.index(root)
        even[root] = all(e[i] % 2 == 0 for e, _ in p.terms)
    return ClassReport(variables=syms,
                       min_exponents=mins,
                       polynomial_in={s: m >= 0 for s, m in mins.items()},
                       root_exponents_even=even)


# --------------------------------------------------------------------------
# Truncated power series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients 0..N-1 of a power series in t over Laurent polynomials."""

    table: VarTable
    coeffs: tuple[LaurentPoly, ...]

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def coeff(self, i: int) -> LaurentPoly:
        return self.coeffs[i]

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.table, tuple(
            self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.precision, other.precision)
        zero = self.table.zero()
        out = [zero] * n
        for i, ci in enumerate(self.coeffs[:n]):
            if ci.is_zero:
                continue
            for j in range(n - i):
                cj = other.coeffs[j]
                if cj.is_zero:
                    continue
                out[i + j] = out[i + j] + ci * cj
        return TruncatedSeries(self.table, tuple(out))

    def reciprocal(self) -> "TruncatedSeries":
        """Inverse series; requires an invertible (monomial) constant term."""
        if self.precision == 0:
            return self
        c0 = self.coeffs[0]
        if c0.is_zero or not c0.is_monomial:
            raise ValueError("series constant term is not a unit")
        inv0 = c0 ** -1
        out = [inv0]
        for n in range(1, self.precision):
            acc = self.table.zero()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-(inv0 * acc))
        return TruncatedSeries(self.table, tuple(out))


def _series_from(table: VarTable, coeffs: Sequence[LaurentPoly],
                 n: int) -> TruncatedSeries:
    zero = table.zero()
    padded = list(coeffs[:n]) + [zero] * max(0, n - len(coeffs))
    return TruncatedSeries(table, tuple(padded))


def series_compose_fe(initials: Sequence[LaurentPoly],
                      n: int) -> TruncatedSeries:
    """Unique power-series solution of the quadratic functional equation

        Q = (a0 + b0*t) / (1 + c0*t + d0*t**2 + t**2*(e0 + f0*t)*Q)

    computed by t-adic fixed-point iteration truncated at ``n``; each pass
    gains at least one order, so at most ``n`` passes are needed.
    """
    a0, b0, c0, d0, e0, f0 = initials
    table = a0.table
    zero = table.zero()
    num = _series_from(table, [a0, b0], n)
    base = [table.one(), c0, d0] + [zero] * max(0, n - 3)
    q = TruncatedSeries(table, tuple([zero] * n))
    for _ in range(n + 1):
        den = list(base[:n])
        for i in range(2, n):
            acc = e0 * q.coeffs[i - 2]
            if i >= 3:
                acc = acc + f0 * q.coeffs[i - 3]
            den[i] = den[i] + acc
        new_q = num.mul(TruncatedSeries(table, tuple(den)).reciprocal())
        if new_q == q:
            break
        q = new_q
    return q


def series_fe_residual(q: TruncatedSeries,
                       initials: Sequence[LaurentPoly]) -> TruncatedSeries:
    """Residual Q*(1 + c*t + d*t**2 + t**2*(e + f*t)*Q) - (a + b*t)."""
    a0, b0, c0, d0, e0, f0 = initials
    table = q.table
    n = q.precision
    zero = table.zero()
    den = [table.one(), c0, d0] + [zero] * max(0, n - 3)
    den = den[:n]
    for i in range(2, n):
        acc = e0 * q.coeffs[i - 2]
        if i >= 3:
            acc = acc + f0 * q.coeffs[i - 3]
        den[i] = den[i] + acc
    lhs = q.mul(TruncatedSeries(table, tuple(den)))
    out = list(lhs.coeffs)
    if n > 0:
        out[0] = out[0] - a0
    if n > 1:
        out[1] = out[1] - b0
    return TruncatedSeries(table, tuple(out))


# --------------------------------------------------------------------------
# Small numeric helpers
# --------------------------------------------------------------------------


def fraction_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def monomial_sqrt(p: LaurentPoly) -> LaurentPoly | None:
    """Exact square root of a single-term Laurent polynomial, or None."""
    if not p.is_monomial:
        return None
    exps, c = p.terms[0]
    if any(e % 2 for e in exps):
        return None
    if isinstance(c, GaussianRational):
        return None
    root = fraction_sqrt(c)
    if root is None:
        return None
    return LaurentPoly.from_dict(p.table,
                                 {tuple(e // 2 for e in exps): root})
