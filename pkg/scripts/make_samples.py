"""Regenerate samples/ and the expected CLI outputs under samples/expected/.

Run from the repository root after a deliberate change to output formats;
the CLI tests compare against these files byte for byte.
"""

import contextlib
import io
import json
from pathlib import Path

from galois_closure.cli import main as cli
from galois_closure.graphs import cover_to_json, derived_cover

SAMPLES = {
    "s3": [(1, 0, 2), (0, 2, 1)],
    "cyclic3": [(1, 2, 0), (0, 1, 2)],
    "degree2": [(1, 0), (0, 1)],
}


def main():
    root = Path("samples")
    expected = root / "expected"
    expected.mkdir(parents=True, exist_ok=True)
    for name, gens in SAMPLES.items():
        path = root / f"{name}.json"
        path.write_text(json.dumps(cover_to_json(derived_cover(gens)), indent=2) + "\n")
        for alg in ("i", "r"):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = cli([
                    "closure", "--algorithm", alg, "--input", str(path),
                    "--output", str(expected / f"{name}.closure.{alg}.json"),
                    "--trace", str(expected / f"{name}.trace.{alg}.json"),
                ])
            if code:
                raise SystemExit(f"closure failed on {path} ({code})")
            (expected / f"{name}.summary.{alg}.json").write_text(buf.getvalue())
        print(f"wrote {path} and its expected outputs")


if __name__ == "__main__":
    main()
