"""Run every bundled suite and write one JSON report per suite.

    python3 scripts/run_suites.py [--out reports/]
"""

import argparse
import contextlib
import io
import json
import sys
import time
from pathlib import Path

from qrpw.cli import SUITES, main


def run(name: str) -> tuple[int, dict]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["suite", name, "--json", "--timings"])
    return code, json.loads(buf.getvalue())


def cli() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("reports"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name in SUITES:
        t0 = time.perf_counter()
        code, doc = run(name)
        seconds = time.perf_counter() - t0
        worst = max(worst, code)
        (args.out / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        print(f"{name:18s} {doc['verdict']:4s} {len(doc['checks']):4d} checks {seconds:7.2f}s")
    return worst


if __name__ == "__main__":
    sys.exit(cli())
