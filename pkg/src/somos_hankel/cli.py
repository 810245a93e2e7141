"""Command-line front end.

Subcommands:
  gen        generate a sequence (text | json | csv, csv numeric only)
  verify     run a named theorem-verification suite
  invariant  print the conserved quantity at successive window shifts

Exit codes: 0 pass, 1 verdict failure, 2 usage/config error, 3 domain
error (a zero term or an inexact division, witness printed).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import genfun, hankel, polyverify, qtransform, somos
from .errors import NotDivisible, SomosHankelError, ZeroTerm
from .report import VerdictReport
from .ring import (GaussianRational, LaurentPoly, default_table, lp_classify,
                   monomial_sqrt)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# Tiny expression grammar: +, -, *, ^, integers, variables, parentheses
# --------------------------------------------------------------------------


def parse_poly(text: str, table=None) -> LaurentPoly:
    table = table or default_table()
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(expected=None):
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise UsageError(f"bad expression {text!r} near token {tok!r}")
        pos[0] += 1
        return tok

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_factor()
        while peek() == "*":
            take()
            node = node * parse_factor()
        return node

    def parse_factor():
        node = parse_atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            exp_tok = take()
            if not exp_tok.isdigit():
                raise UsageError(f"bad exponent in {text!r}")
            exp = -int(exp_tok) if neg else int(exp_tok)
            node = node ** exp
        return node

    def parse_atom():
        tok = peek()
        if tok == "(":
            take()
            node = parse_expr()
            take(")")
            return node
        if tok == "-":
            take()
            return -parse_atom()
        tok = take()
        if tok.isdigit():
            return table.const(int(tok))
        if tok in table.symbols:
            return table.var(tok)
        raise UsageError(f"unknown symbol {tok!r} in {text!r}")

    node = parse_expr()
    if pos[0] != len(tokens):
        raise UsageError(f"trailing input in expression {text!r}")
    return node


def _tokenize(text: str) -> list[str]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            out.append(text[i:j])
            i = j
        else:
            raise UsageError(f"bad character {ch!r} in expression {text!r}")
    return out


def _parse_init(text: str, count: int | None = None) -> tuple[LaurentPoly, ...]:
    vals = tuple(parse_poly(part) for part in text.split(","))
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} initial values, got {len(vals)}")
    return vals


# --------------------------------------------------------------------------
# Configuration
# --------------------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    system: str | None = None
    suite: str | None = None
    init: str | None = None
    alpha: str | None = None
    beta: str | None = None
    alphat: str | None = None
    betat: str | None = None
    n: int | None = None
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1
    windows: int = 5
    timings: bool = False

    def echo(self) -> dict:
        keys = ("command", "system", "suite", "init", "alpha", "beta",
                "alphat", "betat", "n", "fmt", "seed", "jobs", "windows")
        return {k: getattr(self, k) for k in keys if getattr(self, k)
                is not None}


def _build_sequence(cfg: RunConfig, n_count: int):
    if cfg.system == "somos4":
        init = _parse_init(cfg.init or "1,1,1,1", 4)
        alpha = parse_poly(cfg.alpha or "1")
        beta = parse_poly(cfg.beta or "1")
        params = somos.SomosParams(alpha, beta, init)
        return somos.somos4_seq(params, n_count), params
    if cfg.system == "somos5":
        init = _parse_init(cfg.init or "1,1,1,1,1", 5)
        alpha_t = parse_poly(cfg.alphat or "1")
        beta_t = parse_poly(cfg.betat or "1")
        params = somos.Somos5Params(alpha_t, beta_t, init)
        return somos.somos5_seq(params, n_count), params
    if cfg.system == "a1q":
        init = _parse_init(cfg.init or "1,1", 2)
        beta = parse_poly(cfg.beta or "1")
        params = somos.A1QParams(beta, init)
        return somos.a1q_seq(params, n_count), params
    raise UsageError(f"unknown system {cfg.system!r}")


# --------------------------------------------------------------------------
# Verification suites
# --------------------------------------------------------------------------


def _symbolic_somos4_setup(cfg: RunConfig):
    table = default_table()
    x, y, bvar = table.var("x"), table.var("y"), table.var("b")
    if cfg.alpha:
        alpha = parse_poly(cfg.alpha)
        sqrt_alpha = table.var("r") if alpha == table.var("r") ** 2 \
            else monomial_sqrt(alpha)
        if sqrt_alpha is None:
            raise UsageError(
                f"alpha {cfg.alpha!r} is not a perfect square; this suite "
                "needs sqrt(alpha)")
    else:
        sqrt_alpha = table.var("r")
    beta = parse_poly(cfg.beta) if cfg.beta else bvar
    return table, x, y, beta, sqrt_alpha


def _suite_somos4_hankel(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 8
    table, x, y, beta, r = _symbolic_somos4_setup(cfg)
    one = table.one()
    rep = VerdictReport(suite="somos4-hankel")
    seq = somos.somos4_seq(
        somos.SomosParams(r * r, beta, (one, one, x, y)), n_max + 1)
    entries = genfun.somos4_entries(x, y, beta, sqrt_alpha=r)
    for n in range(n_max + 1):
        det = hankel.hankel_det(entries, n)
        ok = det == seq[n + 1]
        rep.add(f"n={n}", ok, None if ok else f"{det} != {seq[n + 1]}")
    return rep


def _suite_somos5_hankel(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 4
    table = default_table()
    x, y, z = table.var("x"), table.var("y"), table.var("z")
    at, bt = table.var("a"), table.var("b")
    one = table.one()
    rep = VerdictReport(suite="somos5-hankel")
    # seq[i] holds S_{i-2}: determinants at order n give S_{2n} and S_{2n+1}
    seq = somos.somos5_seq(somos.Somos5Params(at, bt, (one, one, x, y, z)),
                           2 * n_max + 3)
    p_entries, q_entries = genfun.somos5_entries(x, y, z, at, bt)
    for n in range(n_max + 1):
        even = x ** (n + 1) * hankel.hankel_det(p_entries, n)
        ok = even == seq[2 * n + 2]
        rep.add(f"even/n={n}", ok, None if ok else f"{even} != {seq[2*n+2]}")
        odd = y ** (n + 1) * hankel.hankel_det(q_entries, n)
        ok = odd == seq[2 * n + 3]
        rep.add(f"odd/n={n}", ok, None if ok else f"{odd} != {seq[2*n+3]}")
    return rep


def _suite_a1q_hankel(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 10
    table = default_table()
    x, beta = table.var("x"), table.var("b")
    rep = VerdictReport(suite="a1q-hankel")
    seq = somos.a1q_seq(somos.A1QParams(beta, (table.one(), x)), n_max)
    entries = genfun.a1q_entries(x, beta)
    for n in range(n_max + 1):
        det = hankel.hankel_det(entries, n)
        ok = det == seq[n]
        rep.add(f"n={n}", ok, None if ok else f"{det} != {seq[n]}")
    alt = genfun.a1q_entries_alt(x, beta)
    ok = alt.prefix(13) == entries.prefix(13)
    rep.add("alternate-recurrence/m<=12", ok,
            None if ok else "entry recurrences disagree")
    return rep


def _suite_jacobi(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 6
    table = default_table()
    x, beta = table.var("x"), table.var("b")
    rep = VerdictReport(suite="jacobi")
    entries = genfun.a1q_entries(x, beta)
    h0 = hankel.shifted_hankel_run(entries, n_max, 0)
    h1 = hankel.shifted_hankel_run(entries, n_max, 1)
    h2 = hankel.shifted_hankel_run(entries, n_max, 2)
    for n in range(n_max + 1):
        ok = h1[n].is_one
        rep.add(f"shift1-unity/n={n}", ok, None if ok else str(h1[n]))
    for n in range(1, n_max + 1):
        rhs = x * h0[n - 1] + (beta * h2[n - 2] if n >= 2 else table.zero())
        ok = h0[n] == rhs
        rep.add(f"recurrence-h0/n={n}", ok,
                None if ok else f"{h0[n]} != {rhs}")
    for n in range(2, n_max + 1):
        lhs = h0[n] * h2[n - 2]
        rhs = h0[n - 1] * h2[n - 1] - h1[n - 1] ** 2
        ok = lhs == rhs
        rep.add(f"desnanot-jacobi/n={n}", ok,
                None if ok else f"{lhs} != {rhs}")
        bridge = x * h2[n - 1] - h2[n - 2]
        ok = h0[n] == bridge
        rep.add(f"three-term-bridge/n={n}", ok,
                None if ok else f"{h0[n]} != {bridge}")
    return rep


def _suite_sx_lemma(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 6
    table, x, y, beta, r = _symbolic_somos4_setup(cfg)
    one = table.one()
    alpha = r * r
    rep = VerdictReport(suite="sx-lemma")
    data = genfun.somos4_theorem_data(x, y, beta, sqrt_alpha=r)
    traj = qtransform.SXTrajectory(data, n_max + 1)
    a1 = traj.a(1)
    ok = a1.is_laurent and a1.num == y.exact_div(x ** 2)
    rep.add("a1-value", ok, None if ok else str(a1))
    f1 = traj.state(1).f
    expect = (beta * x**2 - y**2 + alpha * x**3).exact_div(r * x * y)
    ok = f1.is_laurent and f1.num == expect
    rep.add("f1-value", ok, None if ok else str(f1))
    entries = genfun.somos4_entries(x, y, beta, sqrt_alpha=r)
    for n in range(n_max + 1):
        prod = qtransform.sx_hankel_product(traj, n)
        det = hankel.hankel_det(entries, n)
        ok = prod == det
        rep.add(f"product-vs-det/n={n}", ok,
                None if ok else f"{prod} != {det}")
    rep.extend_from(qtransform.sx_structure_check(traj, n_max), "structure/")
    seq = somos.somos4_seq(somos.SomosParams(alpha, beta, (one, one, x, y)),
                           n_max + 3)
    rep.extend_from(
        qtransform.sx_pivot_recursion_check(traj, x, y, alpha, beta, n_max,
                                            seq=seq), "recursion/")
    return rep


def _suite_sx_closed(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 4
    table, x, y, beta, r = _symbolic_somos4_setup(cfg)
    rep = VerdictReport(suite="sx-closed")
    data = genfun.somos4_theorem_data(x, y, beta, sqrt_alpha=r)
    traj = qtransform.SXTrajectory(data, n_max + 3)
    rep.extend_from(qtransform.sx_closed_identity_check(traj, n_max),
                    "theorem-data/")
    fam = genfun.somos4_family_initials(
        x, y, beta, genfun.FamilyParams(-1, table.one()), sqrt_alpha=r)
    ftraj = qtransform.SXTrajectory(fam, min(n_max, 3) + 3)
    rep.extend_from(qtransform.sx_closed_identity_check(ftraj,
                                                        min(n_max, 3)),
                    "family-k-1-f0-1/")
    return rep


def _suite_backlund(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 11
    table = default_table()
    x, y, z = table.var("x"), table.var("y"), table.var("z")
    at, bt = table.var("a"), table.var("b")
    one = table.one()
    rep = VerdictReport(suite="backlund")
    seq = somos.somos5_seq(somos.Somos5Params(at, bt, (one, one, x, y, z)),
                           n_max)
    f, g = somos.split_even_odd(seq)
    induced = somos.induced_somos4_params(x, y, z, at, bt)
    ok = induced.alpha == bt * bt
    rep.add("alpha-is-betaT-squared", ok, None if ok else str(induced.alpha))
    for label, half in (("even", f), ("odd", g)):
        for n in range(4, len(half)):
            res = somos.somos4_residual(half, induced.alpha, induced.beta, n)
            rep.add(f"somos4-{label}/n={n}", res.is_zero,
                    None if res.is_zero else str(res))
    bt_params = somos.BTParams(lam=at, mu=bt, eta=at * bt)
    rep.extend_from(somos.check_bt_pair(f, g, bt_params, alpha=bt * bt),
                    "coupled/")
    return rep


def _suite_even_elim(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 11
    table = default_table()
    x, y, z = table.var("x"), table.var("y"), table.var("z")
    at, bt = table.var("a"), table.var("b")
    one = table.one()
    rep = VerdictReport(suite="even-elim")
    seq = somos.somos5_seq(somos.Somos5Params(at, bt, (one, one, x, y, z)),
                           n_max)
    f, g = somos.split_even_odd(seq)
    rep.extend_from(somos.even_elimination_check(f, at, bt), "even/")
    rep.extend_from(somos.even_elimination_check(g, at, bt), "odd/")
    return rep


def _suite_three_term(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 10
    table = default_table()
    x, beta = table.var("x"), table.var("b")
    rep = VerdictReport(suite="three-term")
    seq = somos.a1q_seq(somos.A1QParams(beta, (table.one(), x)), n_max)
    rep.extend_from(somos.a1q_three_term_check(seq, x, beta), "symbolic/")
    one = table.one()
    nseq = somos.a1q_seq(somos.A1QParams(one, (one, one)), min(n_max, 6))
    vals = [t.constant_value() for t in nseq]
    ok = vals == [1, 1, 2, 5, 13, 34, 89][:len(vals)]
    rep.add("numeric-values", ok, None if ok else str(vals))
    ok = all(vals[n] == 3 * vals[n - 1] - vals[n - 2]
             for n in range(2, len(vals)))
    rep.add("numeric-coefficient-3", ok, None if ok else str(vals))
    return rep


def _suite_embedding(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 8
    table = default_table()
    x, beta = table.var("x"), table.var("b")
    rep = VerdictReport(suite="embedding")
    seq = somos.a1q_seq(somos.A1QParams(beta, (table.one(), x)), n_max)
    rep.extend_from(somos.a1q_somos4_embedding_check(seq, x, beta), "")
    return rep


def _suite_chebyshev(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 8
    table = default_table()
    x = table.var("x")
    beta = x**2 - 1
    rep = VerdictReport(suite="chebyshev")
    coeff = (x**2 + 1 + beta).exact_div(x)
    ok = coeff == 2 * x
    rep.add("coefficient-2x", ok, None if ok else str(coeff))
    seq = somos.a1q_seq(somos.A1QParams(beta, (table.one(), x)), n_max)
    for n in range(2, len(seq)):
        res = seq[n] - 2 * x * seq[n - 1] + seq[n - 2]
        rep.add(f"recurrence/n={n}", res.is_zero,
                None if res.is_zero else str(res))
    return rep


def _suite_fibonacci(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 8
    table = default_table()
    one = table.one()
    i_unit = GaussianRational(0, 1)
    x0 = table.const(-i_unit)
    beta = table.const(-1)
    rep = VerdictReport(suite="fibonacci")
    seq = somos.a1q_seq(somos.A1QParams(beta, (one, x0)), n_max)
    scaled = somos.scaled_a1q(seq, table.const(i_unit))
    oracle = [1, 1]
    while len(oracle) < len(scaled):
        oracle.append(oracle[-1] + oracle[-2])
    for n, term in enumerate(scaled):
        ok = term == oracle[n]
        rep.add(f"scaled-term/n={n}", ok,
                None if ok else f"{term} != {oracle[n]}")
    for n in range(2, len(scaled)):
        gamma_pow = table.const((-1) ** (n - 1))
        res = scaled[n] * scaled[n - 2] - scaled[n - 1] ** 2 \
            - beta * gamma_pow
        rep.add(f"twisted-recurrence/n={n}", res.is_zero,
                None if res.is_zero else str(res))
    entries = genfun.a1q_entries(x0, beta)
    scaled_entries = genfun.CoeffSeq(
        "fibonacci-p", table, [],
        lambda terms, m: table.const(i_unit) * entries.term(m))
    for n in range(min(n_max, 8)):
        det = hankel.hankel_det(scaled_entries, n)
        ok = det == oracle[n]
        rep.add(f"hankel/n={n}", ok,
                f"H_{n} = {det}" if ok else f"{det} != {oracle[n]}")
    return rep


def _suite_shift_transform(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 6
    table = default_table()
    x, beta = table.var("x"), table.var("b")
    return qtransform.sx_shift_transform_check(x, beta, n_max)


def _suite_poly4_cases(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 10
    rep = VerdictReport(suite="poly4-cases")
    for case in polyverify.SOMOS4_CASES:
        rep.extend_from(polyverify.verify_polynomial_case(case, n_max), "")
    rep.extend_from(polyverify.xyz_case_report(n_max), "xyz/")
    return rep


def _suite_poly5_cases(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 10
    rep = VerdictReport(suite="poly5-cases")
    for case in polyverify.SOMOS5_CASES:
        rep.extend_from(polyverify.verify_polynomial_case(case, n_max), "")
    return rep


def _suite_corollary_det(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 5
    return polyverify.corollary_determinant_check(n_max)


def _suite_strong_laurent(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 10
    rep = VerdictReport(suite="strong-laurent")
    rep.extend_from(
        polyverify.strong_laurent_consequence_check("somos4", n_max),
        "somos4/")
    rep.extend_from(
        polyverify.strong_laurent_consequence_check("somos5", n_max),
        "somos5/")
    return rep


def _suite_family_f0(cfg: RunConfig) -> VerdictReport:
    n_max = cfg.n if cfg.n is not None else 5
    table, x, y, beta, r = _symbolic_somos4_setup(cfg)
    one = table.one()
    rep = VerdictReport(suite="family-f0")
    seq = somos.somos4_seq(somos.SomosParams(r * r, beta, (one, one, x, y)),
                           n_max + 2)
    theorem = genfun.somos4_theorem_data(x, y, beta, sqrt_alpha=r)
    base = genfun.somos4_family_initials(
        x, y, beta, genfun.FamilyParams(1, table.zero()), sqrt_alpha=r)
    ok = base == theorem
    rep.add("k1-f0-reduces-to-theorem-data", ok,
            None if ok else "; ".join(str(v) for v in base))
    for k in (1, -1):
        for f0_label, f0 in (("0", table.zero()), ("1", one)):
            fam = genfun.somos4_family_initials(
                x, y, beta, genfun.FamilyParams(k, f0), sqrt_alpha=r)
            entries = genfun.series_entries(fam)
            for n in range(n_max + 1):
                det = hankel.hankel_det(entries, n)
                ok = det == seq[n + 1]
                rep.add(f"k={k}/f0={f0_label}/n={n}", ok,
                        None if ok else f"{det} != {seq[n + 1]}")
    return rep


SUITES = {
    "somos4-hankel": _suite_somos4_hankel,
    "somos5-hankel": _suite_somos5_hankel,
    "a1q-hankel": _suite_a1q_hankel,
    "sx-lemma": _suite_sx_lemma,
    "sx-closed": _suite_sx_closed,
    "backlund": _suite_backlund,
    "even-elim": _suite_even_elim,
    "three-term": _suite_three_term,
    "embedding": _suite_embedding,
    "chebyshev": _suite_chebyshev,
    "fibonacci": _suite_fibonacci,
    "jacobi": _suite_jacobi,
    "shift-transform": _suite_shift_transform,
    "poly4-cases": _suite_poly4_cases,
    "poly5-cases": _suite_poly5_cases,
    "corollary-det": _suite_corollary_det,
    "strong-laurent": _suite_strong_laurent,
    "family-f0": _suite_family_f0,
}


def run_suite(cfg: RunConfig) -> VerdictReport:
    if cfg.suite == "all":
        rep = VerdictReport(suite="all", config=cfg.echo())
        names = sorted(SUITES)
        if cfg.jobs > 1:
            with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(lambda s: SUITES[s](cfg), names))
        else:
            results = [SUITES[name](cfg) for name in names]
        for name, sub in zip(names, results):
            rep.extend_from(sub, f"{name}/")
        return rep
    if cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from "
                         f"{', '.join(sorted(SUITES))}, all")
    rep = SUITES[cfg.suite](cfg)
    rep.config = cfg.echo()
    return rep


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def cmd_gen(cfg: RunConfig, out) -> int:
    n_count = cfg.n if cfg.n is not None else 10
    seq, _ = _build_sequence(cfg, n_count)
    if cfg.fmt == "csv":
        if not all(t.is_constant for t in seq):
            raise UsageError("csv output is numeric-mode only; use text or "
                             "json for symbolic terms")
        out.write(",".join(str(t.constant_value()) for t in seq) + "\n")
    elif cfg.fmt == "json":
        payload = {"system": cfg.system, "config": cfg.echo(),
                   "terms": [t.to_json_dict() for t in seq]}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for n, t in enumerate(seq):
            out.write(f"{n}\t{t}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    rep = run_suite(cfg)
    if cfg.fmt == "json":
        out.write(json.dumps(rep.to_json_dict(include_timings=cfg.timings),
                             sort_keys=True) + "\n")
    else:
        out.write(rep.to_text() + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_invariant(cfg: RunConfig, out) -> int:
    windows = cfg.windows
    width = 5 if cfg.system == "somos5" else 4
    n_count = cfg.n if cfg.n is not None else windows + width - 1
    n_count = max(n_count, windows + width - 1)
    seq, params = _build_sequence(cfg, n_count)
    if cfg.system == "somos4":
        values = somos.invariant_profile(seq, params.alpha, params.beta,
                                         windows, kind="somos4")
        name = "T"
    elif cfg.system == "somos5":
        values = somos.invariant_profile(seq, params.alpha_t, params.beta_t,
                                         windows, kind="somos5")
        name = "T~"
    else:
        raise UsageError("invariant requires --system somos4 or somos5")
    agree = all(v.same_value(values[0]) for v in values)
    if cfg.fmt == "json":
        payload = {"config": cfg.echo(), "invariant": name,
                   "values": [v.text() for v in values],
                   "windows_agree": agree}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for k, v in enumerate(values):
            out.write(f"shift {k}: {name} = {v.text()}\n")
        out.write(f"windows agree: {'yes' if agree else 'no'}\n")
    return EXIT_OK if agree else EXIT_FAIL


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="somos",
        description="Hankel-determinant solutions of Somos-type recurrences")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=None,
                       help="depth (sequence length / max matrix order)")
        p.add_argument("--format", dest="fmt", default="text",
                       choices=("text", "json", "csv"))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int,
                       default=int(os.environ.get("SOMOS_JOBS", "1")))

    p_gen = sub.add_parser("gen", help="generate a sequence")
    p_gen.add_argument("--system", required=True,
                       choices=("somos4", "somos5", "a1q"))
    p_gen.add_argument("--init")
    p_gen.add_argument("--alpha")
    p_gen.add_argument("--beta")
    p_gen.add_argument("--alphat")
    p_gen.add_argument("--betat")
    common(p_gen)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True)
    p_ver.add_argument("--alpha")
    p_ver.add_argument("--beta")
    p_ver.add_argument("--timings", action="store_true",
                       help="include wall-clock times in reports")
    common(p_ver)

    p_inv = sub.add_parser("invariant",
                           help="print the conserved quantity per shift")
    p_inv.add_argument("--system", required=True,
                       choices=("somos4", "somos5"))
    p_inv.add_argument("--init")
    p_inv.add_argument("--alpha")
    p_inv.add_argument("--beta")
    p_inv.add_argument("--alphat")
    p_inv.add_argument("--betat")
    p_inv.add_argument("--windows", type=int, default=5)
    common(p_inv)
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    cfg = RunConfig(command=ns.command)
    for name in ("system", "suite", "init", "alpha", "beta", "alphat",
                 "betat", "n", "fmt", "seed", "jobs", "windows", "timings"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    try:
        if cfg.command == "gen":
            return cmd_gen(cfg, out)
        if cfg.command == "verify":
            return cmd_verify(cfg, out)
        if cfg.command == "invariant":
            return cmd_invariant(cfg, out)
        raise UsageError(f"unknown command {cfg.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ZeroTerm, NotDivisible) as exc:
        witness = getattr(exc, "witness", None)
        index = getattr(exc, "index", None)
        print(f"domain error: {exc} (index={index}, witness={witness})",
              file=sys.stderr)
        return EXIT_DOMAIN
    except SomosHankelError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    raise SystemExit(run())
