"""Run the whole computation for one curve, or for a file of curves."""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .hilbert import HilbertData, compute_hilbert
from .invariants import InvariantReport, derive_invariants
from .linalg import DEFAULT_SEED, RankPolicy
from .milnor import MilnorResult, total_milnor_number
from .poly import HomogPoly, parse
from .spectral import CycleTables, SpectralReport, assemble, first_cycle, second_cycle

SCHEMA = "polemono/1"
MODES = ("auto", "first-cycle-only", "full")
OUTPUTS = ("summary", "spectra", "alexander", "bs-roots", "tables", "json")


class LowDegreeError(ValueError):
    """The curve has degree below 3."""


class CertificateFailedError(RuntimeError):
    """Raised only in strict mode when the Euler certificate does not balance."""


@dataclass(frozen=True)
class RunConfig:
    input: str = ""
    mode: str = "auto"
    primes: int = 2
    exact: bool = False
    seed: int = DEFAULT_SEED
    outputs: tuple[str, ...] = ("summary", "spectra", "alexander", "bs-roots")
    batch: str | None = None
    threads: int = 1
    strict: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        unknown = set(self.outputs) - set(OUTPUTS)
        if unknown:
            raise ValueError(f"unknown outputs {sorted(unknown)}")

    @property
    def policy(self) -> RankPolicy:
        return RankPolicy(n_primes=self.primes, exact=self.exact, seed=self.seed)

    def echo(self) -> dict:
        return {"mode": self.mode, "primes": self.primes, "exact": self.exact, "seed": self.seed}


@dataclass
class CurveReport:
    f: HomogPoly
    hilbert: HilbertData
    milnor: MilnorResult
    tables: CycleTables
    spectral: SpectralReport
    invariants: InvariantReport
    mode_used: str
    config: RunConfig
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.f.degree

    def to_json(self, with_timings: bool = False) -> dict:
        spectral = self.tables.to_json()
        spectral.update(self.spectral.to_json())
        out = {
            "schema": SCHEMA,
            "input": str(self.f),
            "degree": self.d,
            "config": self.config.echo(),
            "mode_used": self.mode_used,
            "hilbert": self.hilbert.to_json(),
            "milnor": self.milnor.to_json(),
            "spectral": spectral,
            "invariants": self.invariants.to_json(),
        }
        if with_timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def dumps(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_json(with_timings), sort_keys=True)


@contextmanager
def _mapper(threads: int):
    if threads <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield pool.map


def read_input(text: str) -> str:
    path = Path(text)
    try:
        if path.is_file():
            return path.read_text().strip()
    except OSError:
        pass
    return text


def analyze(f: HomogPoly, config: RunConfig = RunConfig()) -> CurveReport:
    """Hilbert data, mu, both cycles and all derived invariants of ``f``."""
    if f.degree < 3:
        raise LowDegreeError(f"curve degree must be at least 3, got {f.degree}")
    policy = config.policy
    timings = {}
    with _mapper(config.threads) as mapper:
        t0 = time.perf_counter()
        data = compute_hilbert(f, policy, mapper)
        timings["hilbert"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        mres = total_milnor_number(f, policy, seed=config.seed, mapper=mapper)
        timings["milnor"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        kprime, epsprime, theta = first_cycle(f, data, policy, mapper)
        timings["first_cycle"] = time.perf_counter() - t0

        mode = config.mode
        if mode == "auto":
            mode = "first-cycle-only" if mres.mu == data.tau else "full"
        k = eps = None
        if mode == "full":
            t0 = time.perf_counter()
            k, eps = second_cycle(f, data, kprime, policy, mapper)
            timings["second_cycle"] = time.perf_counter() - t0
            k, eps = tuple(k), tuple(eps)

    tables = CycleTables(f.degree, tuple(kprime), tuple(epsprime), tuple(theta), k, eps)
    report = assemble(data, tables, mres.mu)
    inv = derive_invariants(report, mres.mu, data.tau)
    if config.strict and inv.status == "conjectural":
        raise CertificateFailedError(
            f"Euler certificate fails for k in {[k for k, ok in report.certificate.items() if not ok]}"
        )
    return CurveReport(f, data, mres, tables, report, inv, mode, config, timings)


def run(config: RunConfig) -> CurveReport:
    return analyze(parse(read_input(config.input)), config)


def run_batch(path: str | os.PathLike, config: RunConfig = RunConfig()) -> Iterator[dict]:
    """One JSON-ready dict per non-blank, non-comment line; failures become error objects."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            report = analyze(parse(text), config)
        except Exception as exc:  # recorded per line, the batch goes on
            yield {"schema": SCHEMA, "line": lineno, "input": text, "error": type(exc).__name__, "message": str(exc)}
        else:
            out = report.to_json()
            out["line"] = lineno
            yield out
