"""Quadratic continued-fraction transformation for Hankel determinants.

Iterates the six-tuple (a, b, c, d, e, f) parameterizing the functional
equation Q = (a + b*t)/(1 + c*t + d*t**2 + t**2*(e + f*t)*Q); the pivots
a_n telescope into the Hankel determinants of Q's coefficient sequence:

    det(H_n(Q)) = a_0**n * a_1**(n-1) * ... * a_{n-1}.

The pivots leave the Laurent ring after a few steps (a_3 is already a
proper rational function for the Somos-4 data), so states are exact
fraction pairs of Laurent polynomials.  Fractions are reduced without any
multivariate gcd: denominators are normalized to primitive monic form and
cancelled by trial division against "atoms" — the non-unit factors
discovered in pivot numerators along the trajectory (these are exactly the
Hankel-minor irreducibles, so the reduction is complete in practice).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency, NotDivisible, ZeroPivot
from .report import VerdictReport
from .ring import LaurentPoly, VarTable

# --------------------------------------------------------------------------
# Exact fractions of Laurent polynomials
# --------------------------------------------------------------------------


class FractionContext:
    """Shared reduction state (the atom registry) for one trajectory.

    Atoms are the primitive monic non-unit polynomials that show up in
    pivot numerators.  Denominators are only ever *products of atoms*, so
    fractions keep them in factored form and reduction is trial division
    of the numerator by small atoms, never a polynomial gcd.
    """

    def __init__(self, table: VarTable):
        self.table = table
        self.atoms: list[LaurentPoly] = []

    def factor(self, poly: LaurentPoly
               ) -> tuple[LaurentPoly, dict[LaurentPoly, int]]:
        """Split ``poly`` as ``unit * prod(atom ** e)``.

        The unit (a scaled Laurent monomial) is returned as a polynomial;
        a non-monomial residual after dividing out all known atoms is
        registered as a new atom.
        """
        if poly.is_zero:
            raise ZeroDivisionError("cannot factor zero")
        content, lc, prim = poly.unit_normal_parts()
        unit = LaurentPoly.from_dict(self.table, {content: lc})
        factors: dict[LaurentPoly, int] = {}
        progress = True
        while progress and not prim.is_one:
            progress = False
            for atom in self.atoms:
                while True:
                    try:
                        q = prim.exact_div(atom)
                    except NotDivisible:
                        break
                    factors[atom] = factors.get(atom, 0) + 1
                    prim = q
                    progress = True
                if prim.is_one:
                    break
        if not prim.is_one:
            if prim.is_monomial:  # only a unit remains
                unit = unit * prim
            else:
                self.atoms.append(prim)
                factors[prim] = factors.get(prim, 0) + 1
        return unit, factors


Denominator = tuple[tuple[LaurentPoly, int], ...]


def _den_sorted(factors: dict[LaurentPoly, int]) -> Denominator:
    items = [(a, e) for a, e in factors.items() if e]
    items.sort(key=lambda t: str(t[0]))
    return tuple(items)


@dataclass(frozen=True)
class RingFraction:
    """num / prod(atom ** e) with atoms primitive and monic."""

    num: LaurentPoly
    den: Denominator
    ctx: FractionContext

    @staticmethod
    def of(poly: LaurentPoly, ctx: FractionContext) -> "RingFraction":
        return RingFraction(poly, (), ctx)

    @staticmethod
    def make(num: LaurentPoly, factors: dict[LaurentPoly, int],
             ctx: FractionContext) -> "RingFraction":
        if num.is_zero:
            return RingFraction(num, (), ctx)
        reduced = dict(factors)
        for atom in list(reduced):
            while reduced[atom] > 0:
                try:
                    num = num.exact_div(atom)
                except NotDivisible:
                    break
                reduced[atom] -= 1
        return RingFraction(num, _den_sorted(reduced), ctx)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_laurent(self) -> bool:
        return not self.den

    def den_poly(self) -> LaurentPoly:
        out = self.ctx.table.one()
        for atom, e in self.den:
            out = out * atom ** e
        return out

    def _coerce(self, other):
        if isinstance(other, RingFraction):
            return other
        if isinstance(other, LaurentPoly):
            return RingFraction.of(other, self.ctx)
        if isinstance(other, (int, Fraction)):
            return RingFraction.of(self.ctx.table.const(other), self.ctx)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RingFraction.make(self.num + o.num, dict(self.den),
                                     self.ctx)
        d1, d2 = dict(self.den), dict(o.den)
        lcm = {a: max(d1.get(a, 0), d2.get(a, 0)) for a in {*d1, *d2}}
        cof1 = self.ctx.table.one()
        cof2 = self.ctx.table.one()
        for a, e in lcm.items():
            if e - d1.get(a, 0):
                cof1 = cof1 * a ** (e - d1.get(a, 0))
            if e - d2.get(a, 0):
                cof2 = cof2 * a ** (e - d2.get(a, 0))
        return RingFraction.make(self.num * cof1 + o.num * cof2, lcm,
                                 self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return RingFraction(-self.num, self.den, self.ctx)

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
        merged = dict(self.den)
        for a, e in o.den:
            merged[a] = merged.get(a, 0) + e
        return RingFraction.make(self.num * o.num, merged, self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero fraction")
        unit, factors = self.ctx.factor(o.num)
        merged = dict(self.den)
        for a, e in factors.items():
            merged[a] = merged.get(a, 0) + e
        num = self.num * o.den_poly() * unit ** -1
        return RingFraction.make(num, merged, self.ctx)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        scaled = {a: e * n for a, e in self.den}
        return RingFraction.make(self.num ** n, scaled, self.ctx)

    def same_value(self, other: "RingFraction") -> bool:
        return self.num * other.den_poly() == other.num * self.den_poly()

    def __str__(self):
        if self.is_laurent:
            return str(self.num)
        return f"({self.num}) / ({self.den_poly()})"


# --------------------------------------------------------------------------
# Trajectory
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SXState:
    """One six-tuple of the transformation (exact fractions)."""

    a: RingFraction
    b: RingFraction
    c: RingFraction
    d: RingFraction
    e: RingFraction
    f: RingFraction


def sx_step(state: SXState, ctx: FractionContext | None = None) -> SXState:
    """One application of the update formulas; divides by powers of a."""
    a, b, c, d, e, f = state.a, state.b, state.c, state.d, state.e, state.f
    if a.is_zero:
        raise ZeroPivot("transformation pivot a vanished")
    ctx = ctx or a.ctx
    a2 = a * a
    a3 = a2 * a
    # divide by a repeatedly (not by a**2) so newly discovered denominator
    # factors enter the registry as single irreducibles, not powers
    a_next = -((a3 * e + a2 * d - a * b * c + b * b) / a / a)
    b_next = -((a2 * a2 * f + c * a3 * d - a2 * (c * c) * b
                + 2 * (a * c * (b * b)) - a2 * b * d - b * b * b) / a / a / a)
    d_next = -((a2 * d - 2 * (a * b * c) + 2 * (b * b)) / a / a)
    f_next = -(b / a)
    e_next = RingFraction.of(-ctx.table.one(), ctx)
    return SXState(a_next, b_next, c, d_next, e_next, f_next)


class SXTrajectory:
    """Materialized run of the six-tuple recursion from initial data."""

    def __init__(self, initials: Sequence[LaurentPoly], length: int):
        table = initials[0].table
        self.table = table
        self.ctx = FractionContext(table)
        first = SXState(*(RingFraction.of(p, self.ctx) for p in initials))
        self.states: list[SXState] = [first]
        self.extend(length)

    def extend(self, length: int) -> None:
        while len(self.states) < length:
            self.states.append(sx_step(self.states[-1], self.ctx))

    def a(self, n: int) -> RingFraction:
        self.extend(n + 1)
        return self.states[n].a

    def state(self, n: int) -> SXState:
        self.extend(n + 1)
        return self.states[n]

    def __len__(self):
        return len(self.states)


def sx_hankel_product(traj: SXTrajectory, n: int) -> LaurentPoly:
    """The telescoping determinant a_0**n * a_1**(n-1) * ... * a_{n-1}."""
    prod = RingFraction.of(traj.table.one(), traj.ctx)
    for k in range(n):
        prod = prod * traj.a(k) ** (n - k)
    if not prod.is_laurent:
        raise InternalInconsistency(
            "pivot product did not reduce to a Laurent polynomial")
    return prod.num


# --------------------------------------------------------------------------
# Identity checks (all residuals cross-multiplied: fraction numerator == 0)
# --------------------------------------------------------------------------


def sx_structure_check(traj: SXTrajectory, up_to: int) -> VerdictReport:
    """c is constant along the trajectory and e = -1 from step 1 on."""
    rep = VerdictReport(suite="sx-structure")
    c0 = traj.state(0).c
    minus_one = -traj.table.one()
    for n in range(up_to + 1):
        st = traj.state(n)
        rep.add(f"c-constant/n={n}", st.c.num == c0.num and st.c.den == c0.den,
                None if st.c.same_value(c0) else f"c changed at {n}: {st.c}")
        if n >= 1:
            ok = st.e.is_laurent and st.e.num == minus_one
            rep.add(f"e-is-minus-one/n={n}", ok,
                    None if ok else f"e at {n}: {st.e}")
        rep.add(f"pivot-nonzero/n={n}", not st.a.is_zero,
                None if not st.a.is_zero else f"a_{n} = 0")
    return rep


def sx_closed_identity_check(traj: SXTrajectory, up_to: int) -> VerdictReport:
    """Closed three-term relation of the pivot sequence when c is constant
    and e = -1:

        a_{n+2} a_{n+1} + a_{n+1} a_n
            = 2 a_0 a_1 + a_0 (2 f_1 + c)(f_0 + c + f_1)
              - a_0^2 (f_0 + c + f_1)^2 / a_{n+1}
    """
    rep = VerdictReport(suite="sx-closed")
    a0, a1 = traj.a(0), traj.a(1)
    c = traj.state(0).c
    f0, f1 = traj.state(0).f, traj.state(1).f
    combo = f0 + c + f1
    k1 = 2 * (a0 * a1) + a0 * (2 * f1 + c) * combo
    k2 = (a0 * a0) * (combo * combo)
    for n in range(up_to + 1):
        lhs = traj.a(n + 2) * traj.a(n + 1) + traj.a(n + 1) * traj.a(n)
        rhs = k1 - k2 / traj.a(n + 1)
        res = lhs - rhs
        rep.add(f"n={n}", res.is_zero,
                None if res.is_zero else f"n={n}: {res}")
    return rep


def sx_pivot_recursion_check(traj: SXTrajectory, x: LaurentPoly,
                             y: LaurentPoly, alpha: LaurentPoly,
                             beta: LaurentPoly, up_to: int,
                             seq: Sequence[LaurentPoly] | None = None
                             ) -> VerdictReport:
    """The Somos-4 recursion transported to the pivots:

        a_n a_{n-1} a_{n-2} = alpha + beta / a_{n-1}

    plus its derived two-step form with
    M = (beta x^2 + y^2 + alpha x^3 + alpha y)/(x y), the induction base
    T(2) = 0, and (optionally) a_n = S_{n+1} S_{n-1} / S_n^2 against a
    sequence with S_1 = x, S_2 = y at positions 2, 3.
    """
    rep = VerdictReport(suite="sx-pivot-recursion")
    m = (beta * x**2 + y**2 + alpha * x**3 + alpha * y).exact_div(x * y)
    for n in range(2, up_to + 1):
        res = (traj.a(n) * traj.a(n - 1) * traj.a(n - 2) - alpha
               - beta / traj.a(n - 1))
        rep.add(f"alpha-beta-form/n={n}", res.is_zero,
                None if res.is_zero else f"n={n}: {res}")
    for n in range(0, up_to - 1):
        res = (traj.a(n + 2) - m / traj.a(n + 1)
               + alpha / traj.a(n + 1) / traj.a(n + 1) + traj.a(n))
        rep.add(f"two-step-form/n={n}", res.is_zero,
                None if res.is_zero else f"n={n}: {res}")
    a0, a1 = traj.a(0), traj.a(1)
    t2 = (m * a1 * a0 - alpha * a0 - (a1 * a1) * (a0 * a0)
          - alpha * a1 - beta)
    rep.add("base-case-T2", t2.is_zero, None if t2.is_zero else str(t2))
    if seq is not None:
        for n in range(1, up_to + 1):
            if n + 2 >= len(seq):
                break
            res = traj.a(n) * (seq[n + 1] ** 2) - seq[n + 2] * seq[n]
            rep.add(f"pivot-ratio/n={n}", res.is_zero,
                    None if res.is_zero else f"n={n}: {res}")
    return rep


def sx_shift_transform_check(x: LaurentPoly, beta: LaurentPoly,
                             n_max: int = 6) -> VerdictReport:
    """The transformed generating function G of the A1Q entries satisfies
    H_n(F) = x^n H_{n-1}(G), and T_n = H_n(G) obeys
    T_n T_{n-2} - T_{n-1}^2 - beta*x^(-2n) = 0."""
    from .genfun import a1q_entries, a1q_shift_data, series_entries
    from .hankel import hankel_det

    rep = VerdictReport(suite="shift-transform")
    f_entries = a1q_entries(x, beta)
    g_entries = series_entries(a1q_shift_data(x, beta), kind="a1q-shift")
    h_f = [hankel_det(f_entries, n) for n in range(n_max + 1)]
    t = [hankel_det(g_entries, n) for n in range(n_max + 1)]
    for n in range(1, n_max + 1):
        res = h_f[n] - x**n * t[n - 1]
        rep.add(f"hankel-shift/n={n}", res.is_zero,
                None if res.is_zero else f"n={n}: {res}")
    for n in range(2, n_max + 1):
        res = t[n] * t[n - 2] - t[n - 1] ** 2 - beta * x ** (-2 * n)
        rep.add(f"t-recurrence/n={n}", res.is_zero,
                None if res.is_zero else f"n={n}: {res}")
    return rep
