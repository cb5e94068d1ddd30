"""
Batch runs over a file of curves
================================

Each line is analysed on its own; bad lines turn into error records and
the rest of the batch goes on.
"""

import json
import tempfile
from pathlib import Path

from polemono import RunConfig, run_batch

lines = [
    "# smooth quartic, a node, a bad line and a pencil of lines",
    "x^4+y^4+z^4",
    "x*y*z^3+x^5+y^5",
    "x^3+(",
    "x^3+y^3",
]
path = Path(tempfile.mkdtemp()) / "curves.txt"
path.write_text("\n".join(lines) + "\n")

for record in run_batch(path, RunConfig()):
    if "error" in record:
        print(record["line"], record["error"], record["message"])
    else:
        inv = record["invariants"]
        print(record["line"], record["input"], "mu =", inv["mu"], "status =", inv["status"])

# the same records are what `polemono --batch` writes as JSON lines
print(json.dumps(record, sort_keys=True)[:120], "...")
