"""Monodromy and pole order filtration on the Milnor fiber cohomology of plane curves."""
from .hilbert import HilbertData, compute_hilbert
from .invariants import derive_invariants
from .linalg import RankPolicy, SparseMatrix, kernel_dim, rank_certified
from .milnor import total_milnor_number
from .pipeline import CurveReport, RunConfig, analyze, run, run_batch
from .poly import HomogPoly, parse
from .spectral import assemble, build_phi, build_phi_prime, first_cycle, second_cycle

__all__ = [
    "CurveReport",
    "HilbertData",
    "HomogPoly",
    "RankPolicy",
    "RunConfig",
    "SparseMatrix",
    "analyze",
    "assemble",
    "build_phi",
    "build_phi_prime",
    "compute_hilbert",
    "derive_invariants",
    "first_cycle",
    "kernel_dim",
    "parse",
    "rank_certified",
    "run",
    "run_batch",
    "second_cycle",
    "total_milnor_number",
]
