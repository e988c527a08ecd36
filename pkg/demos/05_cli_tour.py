"""Driving the command-line interface.

The `nfc` entry point accepts a surface as a built-in family, a JSON spec
file, or a small polynomial expression in z, zb, u, and emits deterministic
JSON reports (byte-identical for identical inputs).  This script calls the
CLI in-process and shows a few round trips, including a spec file written
to disk.
"""

import json
import tempfile
from pathlib import Path

from nfc.cli import main

print(__doc__)


def run(*argv):
    print(f"$ nfc {' '.join(argv)}")
    code = main(list(argv))
    print(f"(exit status {code})\n")


run("resonances", "--family", "mm", "--m", "1", "--order-total", "9")
run("charpoly", "--expr", "u*(z*zb + 1/4*z^2*zb^2)", "--order-total", "9",
    "--format", "text")
run("verify-map", "--family", "mm", "--m", "1", "--map", "ht", "--t", "1",
    "--order-total", "11", "--format", "text")
run("verify-field", "--family", "mmt", "--m", "2", "--T", "1",
    "--order-total", "9", "--format", "text")

with tempfile.TemporaryDirectory() as tmp:
    spec = Path(tmp) / "surface.json"
    spec.write_text(json.dumps({
        "order": 11,
        "series": [
            {"a": 1, "b": 1, "c": 1, "re": "1", "im": "0"},
            {"a": 2, "b": 2, "c": 2, "re": "3", "im": "0"},
            {"a": 3, "b": 3, "c": 1, "re": "1", "im": "0"},
        ],
    }))
    run("normalize", "--surface", str(spec), "--order", "4", "--format", "text")
