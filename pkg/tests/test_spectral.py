import pytest

from polemono import RunConfig, analyze, parse
from polemono.linalg import kernel_dim
from polemono.spectral import build_phi, build_phi_prime, observed_q0, phi_case

from conftest import D12, FREE6, FREE10, GOLDEN, SAITO, SMOOTH4, SMOOTH5, TORUS, UNINODAL
from oracles import phi_kernel_dim

F1 = SAITO["f1"]


def test_phi_case_ranges():
    d, mdr = 5, 2
    assert [phi_case(q, d, mdr) for q in (3, 6, 7, 8, 9, 10, 11, 20)] == list("AABBCCDD")


def test_phi_prime_shape():
    f = parse(TORUS)
    M = build_phi_prime(f, 12)
    # S_{17} x S_9 rows; S^3_{10} x S^3_{2} columns
    assert (M.n_rows, M.n_cols) == (171 + 55, 3 * 66 + 3 * 6)


@pytest.mark.parametrize("q", range(3, 12))
def test_kernels_against_symbolic_equations(q):
    f = parse(F1)
    assert kernel_dim(build_phi_prime(f, q)) == phi_kernel_dim(F1, q)
    assert kernel_dim(build_phi(f, q, 2)) == phi_kernel_dim(F1, q, mdr=2)


def test_observed_q0_scan():
    assert observed_q0([0, 0, 1, 0, 0], [0, 0, 0, 0, 0], 0) == 3
    assert observed_q0([0, 0, 0, 2, 2], [0, 0, 0, 1, 0], 2) == 4
    assert observed_q0([0, 0, 0, 0, 1], [0] * 5, 0) is None


def test_torus_curve_tables(reports):
    r = reports(TORUS)
    assert r.spectral.q0_observed == 11
    assert all(v == 0 for v in r.tables.theta[18:])
    assert r.tables.theta[17] > 0
    assert all(v == 0 for v in r.tables.epsprime[11:])


def test_free_curve_tables(reports):
    r = reports(FREE10)
    assert all(r.tables.epsprime[q] == 9 for q in range(18, 31))
    assert r.spectral.q0_observed == 18
    assert r.spectral.all_certified


def test_high_q0_curve(reports):
    r = reports(D12)
    assert r.tables.epsprime[20:24] == (3, 2, 2, 3)
    assert all(r.tables.epsprime[q] == 9 for q in range(26, 49))
    assert r.spectral.q0_observed == 26
    assert r.spectral.all_certified


@pytest.mark.parametrize("key, q0", [("f1", 9), ("f2", 8), ("f3", 10), ("f4", 9)])
def test_saito_q0(reports, key, q0):
    r = reports(SAITO[key])
    assert r.spectral.q0_observed == q0
    assert r.spectral.all_certified


def test_sextic_q0(reports):
    assert reports(FREE6).spectral.q0_observed == 10


@pytest.mark.parametrize("expr", [SMOOTH4, SMOOTH5])
def test_smooth_curves_have_no_row1_terms(reports, expr):
    r = reports(expr)
    assert not any(r.tables.epsprime)
    assert not any(r.tables.eps)


@pytest.mark.parametrize("expr", GOLDEN)
def test_second_cycle_properties(reports, expr):
    r = reports(expr)
    d = r.d
    eps, epsp = r.tables.eps, r.tables.epsprime
    assert all(e <= ep for e, ep in zip(eps, epsp))
    assert eps[3 : d + 1] == epsp[3 : d + 1]
    for k in range(1, d + 1):
        assert eps[d + k] == epsp[d - k]
    assert r.spectral.all_certified


@pytest.mark.parametrize("expr", [TORUS, UNINODAL, SMOOTH4, FREE6, SAITO["f4"]])
def test_modes_agree(reports, expr):
    full = reports(expr)
    first = reports(expr, "first-cycle-only")
    assert first.spectral.grP_H1 == full.spectral.grP_H1
    assert first.invariants.delta1 == full.invariants.delta1
    if full.invariants.mu == full.invariants.tau:
        assert first.spectral.grP_H2 == full.spectral.grP_H2
        assert first.invariants.sp_P0 == full.invariants.sp_P0
    else:
        assert first.invariants.sp_P0 is None
        assert first.invariants.status == "conjectural"


def test_exact_backend_agrees():
    cfg = RunConfig(input=SAITO["f2"], mode="full", exact=True)
    a = analyze(parse(SAITO["f2"]), cfg)
    b = analyze(parse(SAITO["f2"]), RunConfig(input=SAITO["f2"], mode="full"))
    assert a.tables == b.tables
