"""Exhaustive check of both closure algorithms against the group-order oracle.

Enumerates every transitive action of ``--generators`` permutations on up to
``--max-points`` points, turns each into a cover of the bouquet, and tabulates
closure degrees per point count.

    python scripts/oracle_survey.py --max-points 4
"""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from itertools import permutations, product

from galois_closure import algorithm_i, algorithm_r, derived_cover, oracle_closure_degree
from galois_closure.perms import PermAction


@dataclass
class SurveyConfig:
    max_points: int = 5
    generators: int = 2
    json_out: str | None = None


def transitive_actions(n: int, generators: int):
    perms = list(permutations(range(n)))
    for gens in product(perms, repeat=generators):
        a = PermAction(n, gens)
        if a.transitive:
            yield a


def survey(cfg: SurveyConfig) -> dict:
    rows = []
    for n in range(1, cfg.max_points + 1):
        start = time.perf_counter()
        degrees, mismatches, cases = Counter(), 0, 0
        for a in transitive_actions(n, cfg.generators):
            f = derived_cover(a.generators)
            di, dr, do = algorithm_i(f).degree, algorithm_r(f).degree, oracle_closure_degree(a)
            cases += 1
            mismatches += not di == dr == do
            degrees[do] += 1
        rows.append({
            "points": n,
            "cases": cases,
            "mismatches": mismatches,
            "closure_degrees": dict(sorted(degrees.items())),
            "seconds": round(time.perf_counter() - start, 2),
        })
    return {"config": asdict(cfg), "rows": rows}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-points", type=int, default=SurveyConfig.max_points)
    p.add_argument("--generators", type=int, default=SurveyConfig.generators)
    p.add_argument("--json-out")
    cfg = SurveyConfig(**vars(p.parse_args()))
    result = survey(cfg)
    print(f"{'points':>6} {'cases':>7} {'bad':>4} {'sec':>6}  closure degree: count")
    for r in result["rows"]:
        hist = ", ".join(f"{d}: {c}" for d, c in r["closure_degrees"].items())
        print(f"{r['points']:>6} {r['cases']:>7} {r['mismatches']:>4} {r['seconds']:>6}  {hist}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(result, fh, indent=2)


if __name__ == "__main__":
    main()
