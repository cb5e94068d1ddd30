import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polemono import RunConfig, analyze, parse  # noqa: E402

TORUS = "(x^2+y^2)^4+(y^4+z^4)^2"
FREE10 = "(y^2*z^2-x^4)^2*y^2-x^10"
FREE6 = "x^4*y^2+y^6-3*x*y^4*z+3*x^2*y^2*z^2-x^3*z^3"
D12 = "x^4*y^4*z^4+x^12+y^12"
SAITO = {
    "f1": "x^5+y^4*z+x^4*y",
    "f2": "x^5+y^4*z+x^3*y^2",
    "f3": "x^5+x*y^3*z+y^4*z+x*y^4",
    "f4": "x^5+x*y^3*z+y^4*z",
}
UNINODAL = "x*y*z^3+x^5+y^5"
SMOOTH4 = "x^4+y^4+z^4"
SMOOTH5 = "x^5+y^5+z^5"

GOLDEN = [TORUS, FREE10, FREE6, D12, *SAITO.values(), UNINODAL, SMOOTH4, SMOOTH5]


@functools.lru_cache(maxsize=None)
def report_for(expr: str, mode: str = "full"):
    """Cached full analysis, shared by the test modules."""
    return analyze(parse(expr), RunConfig(input=expr, mode=mode))


@pytest.fixture(scope="session")
def reports():
    return report_for
