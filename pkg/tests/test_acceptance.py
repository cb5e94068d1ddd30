"""Acceptance criteria 1-9. Each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python tests/test_acceptance.py``.
"""
import functools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

import polemono.hilbert as hilbert_mod
import polemono.linalg as linalg_mod
import polemono.milnor as milnor_mod
from polemono import RunConfig, analyze, parse
from polemono.hilbert import CentralPencilError, NonReducedError, smooth_milnor_dim
from polemono.poly import graded_basis

from conftest import D12, FREE6, FREE10, GOLDEN, SAITO, SMOOTH4, SMOOTH5, TORUS, UNINODAL
from oracles import arrangement_expr, random_lines
from test_invariants import FREE6_SP0, FREE10_SP0, FREE10_SP1, SAITO_SP0, TORUS_SP0, TORUS_SP1

EXACT_COLS = 400
N_RANDOM = 50


class _RankRecorder:
    """Keeps every matrix with at most EXACT_COLS columns and its modular rank."""

    def __init__(self):
        self.seen = []

    def __enter__(self):
        self._orig = linalg_mod.rank_certified

        def wrapped(M, policy=linalg_mod.RankPolicy()):
            cert = self._orig(M, policy)
            if M.n_cols <= EXACT_COLS:
                self.seen.append((M, cert.rank))
            return cert

        for mod in (linalg_mod, hilbert_mod, milnor_mod):
            mod.rank_certified = wrapped
        return self

    def __exit__(self, *exc):
        for mod in (linalg_mod, hilbert_mod, milnor_mod):
            mod.rank_certified = self._orig
        return False


@functools.lru_cache(maxsize=None)
def timed_run(expr: str):
    """(report, seconds, recorded matrices) for a single-threaded full run."""
    with _RankRecorder() as rec:
        t0 = time.perf_counter()
        report = analyze(parse(expr), RunConfig(input=expr, mode="full", threads=1))
        elapsed = time.perf_counter() - t0
    return report, elapsed, tuple(rec.seen)


def verdict(capsys, n: int, checks: dict, note: str = ""):
    failed = [name for name, ok in checks.items() if not ok]
    line = f"criterion {n}: {'PASS' if not failed else 'FAIL'}"
    if note:
        line += f" ({note})"
    if failed:
        line += f" failed checks: {', '.join(failed)}"
    with capsys.disabled():
        print("\n" + line)
    assert not failed, line


def test_criterion_1_torus_curve(capsys):
    r, secs, _ = timed_run(TORUS)
    inv = r.invariants
    checks = {
        "mu=tau=24": inv.mu == inv.tau == 24,
        "q0=11": r.spectral.q0_observed == 11,
        "theta=0 for q>=18": all(v == 0 for v in r.tables.theta[18:]),
        "Sp1": inv.sp_P1.as_dict() == TORUS_SP1,
        "Sp0": inv.sp_P0.as_dict() == TORUS_SP0,
        "coefficient 20 at 10/8": inv.sp_P0.as_dict().get(Fraction(10, 8)) == 20,
        "runtime < 120 s": secs < 120,
    }
    verdict(capsys, 1, checks, f"{secs:.1f} s")


def test_criterion_2_free_curve(capsys):
    r, secs, _ = timed_run(FREE10)
    inv, h = r.invariants, r.hilbert
    checks = {
        "mu=70": inv.mu == 70,
        "tau=61": inv.tau == 61,
        "mdr=4": h.mdr == 4,
        "st=12": h.st == 12,
        "eps'=9 on [18,30]": all(r.tables.epsprime[q] == 9 for q in range(18, 31)),
        "certificate for all k": r.spectral.all_certified,
        "Sp1": inv.sp_P1.as_dict() == FREE10_SP1,
        "Sp0": inv.sp_P0.as_dict() == FREE10_SP0,
        "Gr_P^0 H^2 = 0": all(r.spectral.grP_H2[0, k] == 0 for k in range(1, 11)),
        "runtime < 600 s": secs < 600,
    }
    verdict(capsys, 2, checks, f"{secs:.1f} s")


def test_criterion_3_free_sextic(capsys):
    r, secs, _ = timed_run(FREE6)
    inv = r.invariants
    checks = {
        "mu=20": inv.mu == 20,
        "tau=19": inv.tau == 19,
        "q0=10": r.spectral.q0_observed == 10,
        "Sp1": str(inv.sp_P1) == "t^{11/6} + t^{13/6}",
        "Sp0": inv.sp_P0.as_dict() == FREE6_SP0,
        "runtime < 60 s": secs < 60,
    }
    verdict(capsys, 3, checks, f"{secs:.1f} s")


def test_criterion_4_high_q0(capsys):
    r, secs, _ = timed_run(D12)
    inv = r.invariants
    checks = {
        "mu=73": inv.mu == 73,
        "tau=64": inv.tau == 64,
        "eps'_20..23 = 3,2,2,3": r.tables.epsprime[20:24] == (3, 2, 2, 3),
        "q0=26": r.spectral.q0_observed == 26,
        "H^1(F)=0": inv.b1 == 0,
        "b2=455": sum(inv.delta2.exponents) == 455,
        "certificate": r.spectral.all_certified,
        "runtime < 1200 s": secs < 1200,
    }
    verdict(capsys, 4, checks, f"{secs:.1f} s")


def test_criterion_5_saito_quintics(capsys):
    expected = {"f1": (12, 11, 9), "f2": (12, 11, 8), "f3": (11, 10, 10), "f4": (11, 10, 9)}
    checks, roots, worst = {}, {}, 0.0
    for key, (mu, tau, q0) in expected.items():
        r, secs, _ = timed_run(SAITO[key])
        inv = r.invariants
        worst = max(worst, secs)
        checks[f"{key} mu/tau"] = (inv.mu, inv.tau) == (mu, tau)
        checks[f"{key} q0"] = r.spectral.q0_observed == q0
        checks[f"{key} Sp0"] = inv.sp_P0.as_dict() == SAITO_SP0[key]
        checks[f"{key} runtime < 30 s"] = secs < 30
        roots[key] = set(inv.bs.values())
    checks["8/5 in R(f2) minus R(f1)"] = Fraction(8, 5) in roots["f2"] - roots["f1"]
    checks["9/5 in R(f4) minus R(f3)"] = Fraction(9, 5) in roots["f4"] - roots["f3"]
    verdict(capsys, 5, checks, f"slowest {worst:.1f} s")


def test_criterion_6_uninodal_quintic(capsys):
    r, _, _ = timed_run(UNINODAL)
    inv, d = r.invariants, 5
    checks = {
        "mu=tau=1": inv.mu == inv.tau == 1,
        "Delta1=1": inv.delta1.is_one(),
        "Gr_P^0 H^2 dims": all(r.spectral.grP_H2[0, k] == comb(d - k - 1, 2) - 1 for k in range(1, d - 3)),
        "BS roots j/5, 3<=j<=11": inv.bs.values() == [Fraction(j, 5) for j in range(3, 12)],
    }
    verdict(capsys, 6, checks)


def test_criterion_7_smooth_curves(capsys):
    checks = {}
    for expr, d in ((SMOOTH4, 4), (SMOOTH5, 5)):
        r, _, _ = timed_run(expr)
        inv = r.invariants
        checks[f"d={d} mu=tau=0"] = inv.mu == inv.tau == 0
        checks[f"d={d} eps'=0"] = not any(r.tables.epsprime)
        checks[f"d={d} eps=0"] = not any(r.tables.eps)
        checks[f"d={d} H^1=0"] = inv.b1 == 0
        checks[f"d={d} b2=(d-1)^3"] = sum(inv.delta2.exponents) == (d - 1) ** 3
    verdict(capsys, 7, checks)


def _random_form(rng, d, density=1.0, c=3):
    terms = []
    for a, b, e in graded_basis(d).monomials:
        v = rng.randint(-c, c) if rng.random() < density else 0
        if v:
            terms.append(f"({v})*x^{a}*y^{b}*z^{e}")
    return "+".join(terms) or f"x^{d}"


def random_curve(rng) -> str:
    d = rng.randint(4, 6)
    kind = rng.choice(["dense", "sparse", "product", "lines", "pencil", "semi"])
    if kind == "dense":
        return _random_form(rng, d)
    if kind == "sparse":
        return _random_form(rng, d, density=rng.choice([0.15, 0.25]))
    if kind == "product":
        e = rng.randint(2, d - 1)
        return f"({_random_form(rng, e, 0.6)})*({_random_form(rng, d - e, 0.6)})"
    if kind == "lines":
        return arrangement_expr(random_lines(rng, d, coeff=2))
    if kind == "pencil":
        return f"({_random_form(rng, 2, 0.7)})*({_random_form(rng, d - 2, 0.7)})+({_random_form(rng, 1)})^{d}"
    # x^d + y^(d-1) z plus terms of the same weighted order: often mu > tau at (0:0:1)
    extra = "".join(f"+({rng.randint(-2, 2)})*x^{i}*y^{d - i}" for i in range(2, d) if rng.random() < 0.5)
    return f"x^{d}+y^{d - 1}*z{extra}"


def _property_failures(expr: str) -> list[str]:
    r, _, mats = timed_run(expr)
    d, inv, t = r.d, r.invariants, r.tables
    out = []
    for k in range(1, d + 1):
        if (1 if k == d else 0) - inv.delta1.multiplicity(k) + inv.delta2.multiplicity(k) != inv.chi:
            out.append(f"Euler identity k={k}")
        if t.eps[d + k] != t.epsprime[d - k]:
            out.append(f"conjugate symmetry k={k}")
    if t.eps[3 : d + 1] != t.epsprime[3 : d + 1]:
        out.append("eps = eps' on [3, d]")
    if any(a > b for a, b in zip(t.eps, t.epsprime)):
        out.append("eps <= eps'")
    T = 3 * (d - 2)
    if [smooth_milnor_dim(d, j) for j in range(T + 1)] != [smooth_milnor_dim(d, T - j) for j in range(T + 1)]:
        out.append("m(f_s) symmetry")
    h = r.hilbert
    if any(h.syz[j] != h.h2[j] + h.kw[j] for j in range(2, 4 * d + 1)):
        out.append("syz = h2 + wedge")
    for M, rank in mats:
        if linalg_mod.rank_exact(M) != rank:
            out.append(f"modular vs exact rank on {M.n_rows}x{M.n_cols}")
            break
    return [f"{expr}: {msg}" for msg in out]


def test_criterion_8_property_suites(capsys):
    rng = random.Random(8)
    curves = []
    while len(curves) < N_RANDOM:
        expr = random_curve(rng)
        try:
            timed_run(expr)
        except (NonReducedError, CentralPencilError):
            continue
        curves.append(expr)
    failures, n_mats = [], 0
    for expr in GOLDEN + curves:
        failures += _property_failures(expr)
        n_mats += len(timed_run(expr)[2])
    n_excess = sum(timed_run(e)[0].invariants.mu > timed_run(e)[0].invariants.tau for e in curves)
    checks = {f: False for f in failures} or {"all properties": True}
    note = f"{len(GOLDEN)} golden + {len(curves)} random curves, {n_excess} with mu > tau, {n_mats} exact rank checks"
    verdict(capsys, 8, checks, note)


def test_criterion_9_determinism(capsys, tmp_path):
    expr = FREE6
    a = analyze(parse(expr), RunConfig(input=expr, mode="full")).dumps()
    b = analyze(parse(expr), RunConfig(input=expr, mode="full")).dumps()
    outs = []
    for i in range(2):
        p = tmp_path / f"run{i}.json"
        subprocess.run([sys.executable, "-m", "polemono", expr, "--json", str(p), "--output", ""], check=True)
        outs.append(p.read_bytes())
    checks = {
        "in-process runs identical": a == b,
        "CLI runs byte-identical": outs[0] == outs[1],
        "CLI JSON parses": json.loads(outs[0])["schema"] == "polemono/1",
    }
    verdict(capsys, 9, checks)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
