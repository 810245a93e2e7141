"""Somos-polynomial certification.

Verifies that the product-coefficient Somos recurrences with unit-bearing
initial patterns stay polynomial, that the conserved-quantity combinations
behind those facts are themselves polynomial, and that the determinant
representation of the Somos-4 polynomial sequence (via a formal square
root of x*y*z) reproduces the recurrence values.

Coprimality hypotheses of the general theorems are checked at hypothesis
level only: monomial-content analysis plus deterministic pseudo-random
point probing, never a full multivariate gcd.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotDivisible
from .genfun import CoeffSeq, _convolution
from .hankel import det_laplace, hankel_det, hankel_matrix, HankelSpec
from .report import VerdictReport
from .ring import (LaurentPoly, default_table, lp_classify, sqrt_xyz_table)
from .somos import (A1QParams, Somos5Params, SomosParams, a1q_seq,
                    invariant_T, invariant_Ttilde, somos4_seq, somos5_seq)

POLY_VARS = ("x", "y", "z", "w")


@dataclass(frozen=True)
class PolyCase:
    """An initial pattern (tokens over {1, x, y, z, w}) with product
    coefficients, claimed to generate pure polynomials."""

    system: str  # "somos4" | "somos5"
    pattern: tuple[str, ...]
    coeff_vars: tuple[str, ...] = ("x", "y", "z", "w")

    def __post_init__(self):
        want = 4 if self.system == "somos4" else 5
        if len(self.pattern) != want:
            raise ValueError(f"{self.system} needs {want} initial values")

    @property
    def label(self) -> str:
        return f"{self.system}[{','.join(self.pattern)}]"


SOMOS4_CASES = tuple(
    PolyCase("somos4", pat) for pat in
    (("1", "x", "w", "y"), ("x", "1", "w", "y"),
     ("x", "w", "1", "y"), ("x", "w", "y", "1")))

SOMOS5_CASES = tuple(
    PolyCase("somos5", pat) for pat in
    (("1", "x", "w", "1", "y"), ("x", "1", "w", "y", "1"),
     ("1", "x", "w", "y", "1"), ("1", "x", "1", "w", "y"),
     ("x", "w", "1", "y", "1"), ("x", "1", "w", "1", "y"),
     ("1", "1", "x", "w", "y"), ("x", "1", "1", "w", "y"),
     ("x", "w", "1", "1", "y"), ("x", "w", "y", "1", "1")))

XYZ_CASE = PolyCase("somos4", ("x", "1", "1", "y"), coeff_vars=("x", "y", "z"))


def _pattern_values(case: PolyCase, table):
    out = []
    for tok in case.pattern:
        out.append(table.one() if tok == "1" else table.var(tok))
    return tuple(out)


def case_sequence(case: PolyCase, n_count: int) -> list[LaurentPoly]:
    """Generate the case's sequence with alpha = beta = prod(coeff_vars)."""
    table = default_table()
    coeff = table.one()
    for v in case.coeff_vars:
        coeff = coeff * table.var(v)
    init = _pattern_values(case, table)
    if case.system == "somos4":
        return somos4_seq(SomosParams(coeff, coeff, init), n_count)
    return somos5_seq(Somos5Params(coeff, coeff, init), n_count)


def verify_polynomial_case(case: PolyCase, n_count: int) -> VerdictReport:
    """Every term up to n_count must be polynomial in x, y, z, w."""
    rep = VerdictReport(suite=f"poly-case/{case.label}")
    seq = case_sequence(case, n_count)
    for n, term in enumerate(seq):
        cls = lp_classify(term, POLY_VARS)
        ok = cls.is_polynomial
        rep.add(f"{case.label}/n={n}", ok,
                None if ok else f"min exponents {cls.min_exponents}")
    return rep


# --------------------------------------------------------------------------
# The xyz polynomial sequence and its determinant representation
# --------------------------------------------------------------------------


def xyz_case_report(n_count: int = 10) -> VerdictReport:
    """Checks specific to the alpha = beta = x*y*z case with initial
    values x, 1, 1, y: polynomiality, the two-sided extension S_{-1} =
    x*z*(x + 1), the known closed forms, and the window-independent
    conserved quantity T = yz + xy + xz + z."""
    table = default_table()
    x, y, z = table.var("x"), table.var("y"), table.var("z")
    xyz = x * y * z
    rep = VerdictReport(suite="poly-xyz-case")
    seq = somos4_seq(SomosParams(xyz, xyz, _pattern_values(XYZ_CASE, table)),
                     n_count)
    for n, term in enumerate(seq):
        cls = lp_classify(term, ("x", "y", "z"))
        rep.add(f"polynomial/n={n}", cls.is_polynomial,
                None if cls.is_polynomial else str(cls.min_exponents))
    s2 = y**2 * z + y * z
    s3 = x * y**3 * z**2 + x * y**3 * z + x * y**2 * z**2
    rep.add("closed-form-S2", seq[4] == s2, None if seq[4] == s2
            else str(seq[4]))
    rep.add("closed-form-S3", seq[5] == s3, None if seq[5] == s3
            else str(seq[5]))
    # backward extension: S_3 * S_{-1} = alpha*S_2*S_0 + beta*S_1^2
    s_back = (xyz * seq[2] * seq[0] + xyz * seq[1] ** 2).exact_div(seq[3])
    expect = x * z * (x + 1)
    rep.add("extension-S-minus-1", s_back == expect,
            None if s_back == expect else str(s_back))
    cls = lp_classify(s_back, ("x", "y", "z"))
    rep.add("extension-polynomial", cls.is_polynomial,
            None if cls.is_polynomial else str(cls.min_exponents))
    # conserved quantity across five shifts (fewer if the run is short)
    expect_t = y * z + x * y + x * z + z
    shifts = max(1, min(5, len(seq) - 3))
    values = [invariant_T(seq[k:k + 4], xyz, xyz, start=k)
              for k in range(shifts)]
    for k, val in enumerate(values):
        ok = val.is_exact and val.poly == expect_t
        rep.add(f"invariant-shift/{k}", ok, None if ok else val.text())
    return rep


def corollary_entries() -> CoeffSeq:
    """Entry sequence over the auxiliary-root table (s**2 = x*y*z):

        p~_0 = y, p~_1 = -s,
        p~_m = ((-yz + xy - z - xz)/s) p~_{m-1} + (x - y) p~_{m-2}
               + sum_{k=0}^{m-2} p~_k p~_{m-2-k}.
    """
    table = sqrt_xyz_table()
    s, x, y, z = (table.var(v) for v in "sxyz")
    c1 = (-(y * z) + x * y - z - x * z).exact_div(s)
    c2 = x - y

    def extend(terms, m):
        return (c1 * terms[m - 1] + c2 * terms[m - 2]
                + _convolution(terms, m - 2, table))

    return CoeffSeq("somos4-poly-p", table, [y, -s], extend)


def corollary_determinant_check(n_count: int = 5) -> VerdictReport:
    """det(p~_{i+j}) over the root table equals the shifted xyz-case
    sequence; fraction-free and cofactor determinants must agree and the
    values must be free of the formal root."""
    table = sqrt_xyz_table()
    x, y, z = table.var("x"), table.var("y"), table.var("z")
    xyz = x * y * z
    rep = VerdictReport(suite="corollary-det")
    seq = somos4_seq(SomosParams(xyz, xyz, (x, table.one(), table.one(), y)),
                     n_count + 2)
    entries = corollary_entries()
    for n in range(n_count + 1):
        det = hankel_det(entries, n)
        expect = seq[n + 2]
        rep.add(f"det-matches/n={n}", det == expect,
                None if det == expect else f"{det} != {expect}")
        cls = lp_classify(det, ())
        rep.add(f"root-free/n={n}", cls.root_exponents_even.get("s", True),
                None if cls.root_exponents_even.get("s", True) else str(det))
        if n <= 4:
            alt = det_laplace(hankel_matrix(HankelSpec(entries, n)))
            rep.add(f"laplace-agrees/n={n}", alt == det,
                    None if alt == det else f"{alt} != {det}")
    return rep


# --------------------------------------------------------------------------
# Strong-Laurent consequences
# --------------------------------------------------------------------------


def strong_laurent_consequence_check(system: str,
                                     n_count: int = 10) -> VerdictReport:
    """Testable consequences of the strong Laurent property.

    For the canonical symbolic runs the denominators stay confined to the
    initial-value variables (all other exponents nonnegative, root
    exponents even); for the product-coefficient polynomial cases the
    adjoined invariant combinations are polynomial.  Full subring
    membership is not decided.
    """
    table = default_table()
    x, y, z = table.var("x"), table.var("y"), table.var("z")
    w = table.var("w")
    rep = VerdictReport(suite=f"strong-laurent/{system}")
    if system == "somos4":
        r, bv = table.var("r"), table.var("b")
        seq = somos4_seq(SomosParams(r * r, bv, (table.one(), table.one(),
                                                 x, y)), n_count)
        for n, term in enumerate(seq):
            cls = lp_classify(term)
            confined = all(cls.min_exponents[v] >= 0
                           for v in ("z", "w", "b", "a"))
            even = cls.root_exponents_even["r"]
            rep.add(f"denominator-confined/n={n}", confined and even,
                    None if confined and even else str(cls.min_exponents))
        xyzw = x * y * z * w
        for case in SOMOS4_CASES:
            seq_c = case_sequence(case, 4)
            t_val = invariant_T(seq_c[:4], xyzw, xyzw)
            bt = xyzw * t_val.num
            ok = t_val.is_exact or False
            try:
                bt_poly = bt.exact_div(t_val.den)
                cls = lp_classify(bt_poly, POLY_VARS)
                ok = cls.is_polynomial
                witness = None if ok else str(cls.min_exponents)
                combo = xyzw * xyzw + bt_poly
                ok2 = lp_classify(combo, POLY_VARS).is_polynomial
            except NotDivisible as exc:
                ok, ok2, witness = False, False, exc.witness
            rep.add(f"betaT-polynomial/{case.label}", ok, witness)
            rep.add(f"alpha2-plus-betaT/{case.label}", ok2, witness)
    elif system == "somos5":
        a, bv = table.var("a"), table.var("b")
        seq = somos5_seq(Somos5Params(a, bv, (table.one(), table.one(),
                                              x, y, z)), n_count)
        for n, term in enumerate(seq):
            cls = lp_classify(term)
            confined = all(cls.min_exponents[v] >= 0 for v in ("w", "b", "a"))
            even = cls.root_exponents_even["r"]
            rep.add(f"denominator-confined/n={n}", confined and even,
                    None if confined and even else str(cls.min_exponents))
        xyzw = x * y * z * w
        for case in SOMOS5_CASES:
            seq_c = case_sequence(case, 5)
            t_val = invariant_Ttilde(seq_c[:5], xyzw, xyzw)
            at = xyzw * t_val.num
            try:
                at_poly = at.exact_div(t_val.den)
                cls = lp_classify(at_poly, POLY_VARS)
                ok = cls.is_polynomial
                witness = None if ok else str(cls.min_exponents)
                combo = xyzw + at_poly  # betaT + alphaT*Ttilde
                ok2 = lp_classify(combo, POLY_VARS).is_polynomial
            except NotDivisible as exc:
                ok, ok2, witness = False, False, exc.witness
            rep.add(f"alphaT-Ttilde-polynomial/{case.label}", ok, witness)
            rep.add(f"betaT-plus-alphaT-Ttilde/{case.label}", ok2, witness)
    else:
        raise ValueError(f"unknown system {system!r}")
    return rep


# --------------------------------------------------------------------------
# Coprimality probing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoprimalityVerdict:
    outcome: str  # "ProbablyCoprime" | "NotCoprime"
    trials: int
    witness_factor: LaurentPoly | None = None
    witness_point: dict | None = None


def gcd_probe(values, trials: int = 64, seed: int = 0) -> CoprimalityVerdict:
    """Probabilistic coprimality check of polynomial values.

    NotCoprime is returned only with a verified witness: a common monomial
    factor (checked by exact division) or a common vanishing point found
    by pseudo-random probing.  Deterministic for a fixed seed.
    """
    values = list(values)
    if not values:
        raise ValueError("need at least one value")
    table = values[0].table
    if any(v.is_constant and not v.is_zero for v in values):
        return CoprimalityVerdict("ProbablyCoprime", 0)
    mins = [min(v.min_exponent(sym) for v in values)
            for sym in table.symbols]
    if any(m > 0 for m in mins):
        factor = LaurentPoly.from_dict(
            table, {tuple(max(m, 0) for m in mins): Fraction(1)})
        for v in values:
            v.exact_div(factor)  # verification; monomial division is exact
        return CoprimalityVerdict("NotCoprime", 0, witness_factor=factor)
    rng = random.Random(seed)
    for t in range(trials):
        point = {sym: Fraction(rng.randint(1, 19),
                               rng.randint(1, 7)) * rng.choice((1, -1))
                 for sym in table.symbols}
        evaluated = [v.eval(point) for v in values]
        if all(val == 0 for val in evaluated):
            return CoprimalityVerdict("NotCoprime", t + 1,
                                      witness_point=point)
    return CoprimalityVerdict("ProbablyCoprime", trials)
