"""The two cycles of the pole-order spectral sequence computation.

Degrees are written q = t*d + k with k in [1, d]. For every q in [3, 4d]:

first cycle
    k'_q = dim ker phi'_q and
    eps'_q = k'_q - syz_{q-d} - kw_q = dim E_2 (row s + t = 1),
    theta_q = dim E_2 (row s + t = 2).
second cycle
    k_q = dim ker phi_q (four shapes depending on q, d and mdr) and
    eps_q = dim E_3 (row s + t = 1).

Row-2 E_3 terms then follow from rank-nullity of d_2, and the per-eigenvalue
Euler characteristic decides whether E_3 already has the limit dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .hilbert import HilbertData
from .invariants import euler_complement
from .linalg import RankPolicy, SparseMatrix, kernel_dim
from .operators import BlockOperator
from .poly import HomogPoly


class NegativeDimensionError(ArithmeticError):
    """A computed dimension is negative; some modular rank came out too small."""


def build_phi_prime(f: HomogPoly, q: int) -> SparseMatrix:
    """phi'_q : S^3_{q-2} x S^3_{q-d-2} -> S_{q+d-3} x S_{q-3}.

    ((a,b,c),(u,v,w)) -> (a f_x + b f_y + c f_z, a_x + b_y + c_z - u f_x - v f_y - w f_z)
    """
    d = f.degree
    q1 = q - d
    grad = f.gradient()
    op = BlockOperator([q + d - 3, q - 3], [q - 2] * 3 + [q1 - 2] * 3)
    op.add_gradient_mul(0, 0, grad)
    op.add_divergence(1, 0)
    op.add_gradient_mul(1, 3, grad, -1)
    return op.build()


def phi_case(q: int, d: int, mdr: int) -> str:
    if q <= d + 1:
        return "A"
    if q <= d + mdr + 1:
        return "B"
    if q <= 2 * d:
        return "C"
    return "D"


def build_phi(f: HomogPoly, q: int, mdr: int) -> SparseMatrix:
    """phi_q of the second cycle; its shape depends on the range of q."""
    d = f.degree
    q1, q2 = q - d, q - 2 * d
    grad = f.gradient()
    case = phi_case(q, d, mdr)
    if case == "A":
        op = BlockOperator([q + d - 3, q - 3], [q - 2] * 3)
        op.add_gradient_mul(0, 0, grad)
        op.add_divergence(1, 0)
        return op.build()
    if case == "B":
        op = BlockOperator([q + d - 3, q - 3, q1 - 3], [q - 2] * 3 + [q1 - 2] * 3)
        op.add_gradient_mul(0, 0, grad)
        op.add_divergence(1, 0)
        op.add_gradient_mul(1, 3, grad, -1)
        op.add_divergence(2, 3)
        return op.build()
    # cases C and D: rows Phi_1 .. Phi_4, columns (a,b,c), (u,v,w), (u',v',w') [, (u'',v'',w'')]
    cols = [q - 2] * 3 + [q1 - 2] * 6
    if case == "D":
        cols += [q2 - 2] * 3
    op = BlockOperator([q + d - 3, q - 3, q - 3, q1 - 3], cols)
    op.add_gradient_mul(0, 0, grad)
    op.add_divergence(1, 0)
    op.add_gradient_mul(1, 3, grad, -1)
    op.add_gradient_mul(2, 6, grad)
    op.add_divergence(3, 3)
    op.add_divergence(3, 6, -1)
    if case == "D":
        op.add_gradient_mul(3, 9, grad, -1)
    return op.build()


@dataclass(frozen=True)
class CycleTables:
    """Sequences indexed by q in [0, 4d]; entries for q < 3 are zero by convention."""

    d: int
    kprime: tuple[int, ...]
    epsprime: tuple[int, ...]
    theta: tuple[int, ...]
    k: tuple[int, ...] | None = None
    eps: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"eps_prime": list(self.epsprime), "theta": list(self.theta)}
        if self.eps is not None:
            out["eps"] = list(self.eps)
        return out


def theta_value(data: HilbertData, q: int, eps_prime_q: int) -> int:
    """dim E_2 of the row s + t = 2 at q: m(f)_{q-3} - dim H^2(K*_f)_q + eps'_q."""
    if q < 2:
        return 0
    return data.milnor(q - 3) - data.syzygies(q) + data.kw[q] + eps_prime_q


def _kernel_task(args) -> int:
    builder, f, q, extra, policy = args
    M = build_phi_prime(f, q) if builder == "phi_prime" else build_phi(f, q, extra)
    return kernel_dim(M, policy)


def first_cycle(f: HomogPoly, data: HilbertData, policy: RankPolicy = RankPolicy(), mapper=map):
    """Return ``(kprime, epsprime, theta)`` as lists over q in [0, 4d]."""
    d = f.degree
    qs = range(3, 4 * d + 1)
    kernels = list(mapper(_kernel_task, [("phi_prime", f, q, None, policy) for q in qs]))
    kprime = [0] * (4 * d + 1)
    epsprime = [0] * (4 * d + 1)
    for q, kq in zip(qs, kernels):
        kprime[q] = kq
        epsprime[q] = kq - data.syzygies(q - d) - data.kw[q]
        if epsprime[q] < 0:
            raise NegativeDimensionError(f"eps'_{q} = {epsprime[q]} < 0")
    theta = [theta_value(data, q, epsprime[q]) for q in range(4 * d + 1)]
    for q, v in enumerate(theta):
        if v < 0:
            raise NegativeDimensionError(f"theta_{q} = {v} < 0")
    return kprime, epsprime, theta


def second_cycle(
    f: HomogPoly, data: HilbertData, kprime, policy: RankPolicy = RankPolicy(), mapper=map
):
    """Return ``(k, eps)`` as lists over q in [0, 4d]."""
    d = f.degree
    qs = range(3, 4 * d + 1)
    kernels = list(mapper(_kernel_task, [("phi", f, q, data.mdr, policy) for q in qs]))
    k = [0] * (4 * d + 1)
    eps = [0] * (4 * d + 1)
    for q, kq in zip(qs, kernels):
        k[q] = kq
        if phi_case(q, d, data.mdr) in ("A", "B"):
            eps[q] = kq - data.kw[q]
        else:
            q1 = q - d
            eps[q] = kq - data.syzygies(q1) - kprime[q1] - data.kw[q]
        if eps[q] < 0:
            raise NegativeDimensionError(f"eps_{q} = {eps[q]} < 0")
    return k, eps


@dataclass(frozen=True)
class SpectralReport:
    """E_2 / E_3 dimensions and the pole-order graded pieces they give.

    Tables are dicts keyed by ``(t, k)`` (E terms) or ``(p, k)`` (Gr_P terms)
    with k in [1, d]. ``E3_row2`` only covers t in {0, 1, 2}; when the
    second cycle was skipped for a curve with mu > tau, the row-2 E_3 data,
    Gr_P on H^2 and the certificate are left empty.
    """

    d: int
    E2_row1: dict
    E3_row1: dict
    E2_row2: dict
    E3_row2: dict
    grP_H1: dict
    grP_H2: dict
    q0_observed: int | None
    certificate: dict
    all_certified: bool
    wh_shortcut_used: bool
    euler_characteristic: int
    killed_row1: tuple[int, ...] = ()
    h2_available: bool = True

    def to_json(self) -> dict:
        def keyed(table):
            return {f"{a},{b}": v for (a, b), v in sorted(table.items())}

        return {
            "E2": {"row1": keyed(self.E2_row1), "row2": keyed(self.E2_row2)},
            "E3": {"row1": keyed(self.E3_row1), "row2": keyed(self.E3_row2)},
            "grP_H1": keyed(self.grP_H1),
            "grP_H2": keyed(self.grP_H2),
            "certificate_per_k": {str(k): v for k, v in sorted(self.certificate.items())},
            "q0_observed": self.q0_observed,
            "all_certified": self.all_certified,
            "wh_shortcut_used": self.wh_shortcut_used,
            "killed_row1": list(self.killed_row1),
        }


def observed_q0(epsprime, eps, excess: int) -> int | None:
    """Least q >= 1 with eps'_r = mu - tau and eps_r = 0 for every r in [q, 4d]."""
    top = len(epsprime) - 1
    q0 = None
    for q in range(top, 0, -1):
        if epsprime[q] == excess and eps[q] == 0:
            q0 = q
        else:
            break
    return q0


def conjugate_h1(epsprime, d: int) -> list[int]:
    """Row-1 limit terms for q <= 2d from the first cycle alone.

    Gr^1 pieces are eps'_k (k <= d); Gr^0 pieces come from Hodge symmetry,
    dim Gr_P^0 H^1_lambda = dim Gr_P^1 H^1_{conj(lambda)} = eps'_{d-k}.
    """
    out = [0] * (2 * d + 1)
    for k in range(1, d + 1):
        out[k] = epsprime[k]
        out[d + k] = epsprime[d - k] if d - k >= 3 else 0
    return out


def assemble(data: HilbertData, tables: CycleTables, mu: int) -> SpectralReport:
    d = data.d
    chi = euler_complement(d, mu)
    wh = mu == data.tau
    epsprime, theta = tables.epsprime, tables.theta
    eps = tables.eps
    h2_available = True
    if eps is None:
        if wh:
            # E_2 degenerates: the E_3 terms are the E_2 terms
            eps = epsprime
        else:
            h2_available = False
            eps = conjugate_h1(epsprime, d) + [0] * (2 * d)

    E2_row1, E3_row1, E2_row2, E3_row2 = {}, {}, {}, {}
    for t in range(4):
        for k in range(1, d + 1):
            q = t * d + k
            E2_row1[t, k] = epsprime[q]
            E2_row2[t, k] = theta[q]
            if h2_available or q <= 2 * d:
                E3_row1[t, k] = eps[q]
    grP_H1 = {(1, k): eps[k] for k in range(1, d + 1)}
    grP_H1.update({(0, k): eps[d + k] for k in range(1, d + 1)})

    grP_H2, certificate = {}, {}
    if h2_available:
        for t in range(3):
            for k in range(1, d + 1):
                q = t * d + k
                v = theta[q] - epsprime[q + d] + eps[q + d]
                if v < 0:
                    raise NegativeDimensionError(f"E_3 row-2 term at q = {q} is {v}")
                E3_row2[t, k] = v
                grP_H2[2 - t, k] = v
        for k in range(1, d + 1):
            delta = 1 if k == d else 0
            lhs = sum(E3_row2[t, k] for t in range(3)) - E3_row1[0, k] - E3_row1[1, k] + delta
            certificate[k] = lhs == chi

    q0 = observed_q0(epsprime, eps, mu - data.tau) if h2_available else None
    killed = tuple(q for q in range(2 * d + 1, 4 * d + 1) if h2_available and eps[q])
    return SpectralReport(
        d=d,
        E2_row1=E2_row1,
        E3_row1=E3_row1,
        E2_row2=E2_row2,
        E3_row2=E3_row2,
        grP_H1=grP_H1,
        grP_H2=grP_H2,
        q0_observed=q0,
        certificate=certificate,
        all_certified=bool(certificate) and all(certificate.values()),
        wh_shortcut_used=wh,
        euler_characteristic=chi,
        killed_row1=killed,
        h2_available=h2_available,
    )
