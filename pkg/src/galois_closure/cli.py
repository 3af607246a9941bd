"""Command-line front end.

JSON goes to stdout, human-readable messages to stderr.  Exit codes:
0 success, 1 contract violation (or a failing axiom report), 2 input is not
a valid cover, 3 unreadable or malformed JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import graphs, perms
from .axioms import check_axioms, sample_set
from .closure import algorithm_i, algorithm_r, aut, hom_set, is_galois
from .errors import ContractViolation, CoverError, MalformedInput

EXIT_OK, EXIT_CONTRACT, EXIT_INVALID, EXIT_MALFORMED = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        self.code, self.message = code, message


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _Fail(EXIT_MALFORMED, f"{path}: cannot read ({exc.strerror})") from exc
    except json.JSONDecodeError as exc:
        raise _Fail(EXIT_MALFORMED, f"{path}: malformed JSON ({exc})") from exc


def _instance(name: str):
    if name == "graph":
        return graphs.GRAPHS, graphs.cover_from_json, graphs.cover_to_json
    return perms.PERMS, perms.map_from_json, perms.map_to_json


def load_cover(path: str, instance: str, validate: bool = True):
    cat, parse, _ = _instance(instance)
    doc = _read_json(path)
    try:
        arrow = parse(doc)
    except MalformedInput as exc:
        raise _Fail(EXIT_MALFORMED, f"{path}: {exc}") from exc
    except CoverError as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {exc}") from exc
    if validate:
        try:
            cat.check_cover(arrow)
        except CoverError as exc:
            raise _Fail(EXIT_INVALID, f"{path}: {exc}") from exc
    return arrow


def _inputs(args, count: int | None = None) -> list[str]:
    paths = args.input or []
    if count is not None and len(paths) != count:
        raise _Fail(EXIT_CONTRACT, f"{args.command} needs exactly {count} --input path(s)")
    if not paths:
        raise _Fail(EXIT_CONTRACT, f"{args.command} needs --input")
    return paths


def _write(path: str | None, text: str):
    if path is None:
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text)


def trace_document(result, to_json) -> dict:
    doc = result.trace.to_dict()
    doc["witness"] = to_json(result.witness)
    return doc


def _closure_one(path: str, instance: str, algorithm: str, output: str | None, trace: str | None):
    cat, _, to_json = _instance(instance)
    f = load_cover(path, instance)
    run = algorithm_i if algorithm == "i" else algorithm_r
    result = run(f, cat)
    _write(output, dumps(to_json(result.closure)))
    _write(trace, dumps(trace_document(result, to_json)))
    return {
        "input": path,
        "algorithm": algorithm,
        "degree": cat.degree(f),
        "closure_degree": result.degree,
        "aut_count": len(aut(result.closure, cat)),
        "galois": is_galois(result.closure, cat),
        "iterations": len(result.trace.iterations),
        "recursion_depth": result.trace.depth(),
    }


def _closure_job(job):
    try:
        return _closure_one(*job), None
    except _Fail as exc:
        return None, (exc.code, exc.message)


def cmd_closure(args) -> int:
    if args.algorithm is None:
        raise _Fail(EXIT_CONTRACT, "closure needs --algorithm i|r")
    paths = _inputs(args)
    if len(paths) == 1:
        print(dumps(_closure_one(paths[0], args.instance, args.algorithm, args.output, args.trace)), end="")
        return EXIT_OK
    # several inputs: --output and --trace name directories
    jobs = []
    for p in paths:
        stem = Path(p).stem
        out = str(Path(args.output) / f"{stem}.closure.json") if args.output else None
        tr = str(Path(args.trace) / f"{stem}.trace.json") if args.trace else None
        jobs.append((p, args.instance, args.algorithm, out, tr))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_closure_job, jobs))
    else:
        results = [_closure_job(j) for j in jobs]
    code = EXIT_OK
    summaries = []
    for summary, err in results:
        if err is not None:
            print(err[1], file=sys.stderr)
            code = max(code, err[0])
        else:
            summaries.append(summary)
    print(dumps(summaries), end="")
    return code


def cmd_verify(args) -> int:
    cat, _, _ = _instance(args.instance)
    out = []
    for p in _inputs(args):
        f = load_cover(p, args.instance)
        out.append({"input": p, "valid": True, "degree": cat.degree(f)})
    print(dumps(out[0] if len(out) == 1 else out), end="")
    return EXIT_OK


def cmd_hom(args) -> int:
    cat, _, to_json = _instance(args.instance)
    g_path, f_path = _inputs(args, 2)
    g, f = load_cover(g_path, args.instance), load_cover(f_path, args.instance)
    homs = hom_set(g, f, cat)
    print(dumps({"count": len(homs), "degree_f": cat.degree(f), "maps": [to_json(h) for h in homs]}), end="")
    return EXIT_OK


def cmd_galois(args) -> int:
    cat, _, _ = _instance(args.instance)
    (path,) = _inputs(args, 1)
    f = load_cover(path, args.instance)
    print(dumps({"degree": cat.degree(f), "aut_count": len(aut(f, cat)), "galois": is_galois(f, cat)}), end="")
    return EXIT_OK


def cmd_pullback(args) -> int:
    cat, _, _ = _instance(args.instance)
    f_path, g_path = _inputs(args, 2)
    f, g = load_cover(f_path, args.instance), load_cover(g_path, args.instance)
    pb = cat.pullback(f, g)
    doc = {
        "apex_size": cat.size(pb.apex),
        "components": [
            {"size": cat.size(c.inclusion.dom), "degree_left": c.degree_left, "degree_right": c.degree_right}
            for c in pb.components
        ],
        "degree_left_sum": sum(pb.left_degrees),
        "degree_right_sum": sum(pb.right_degrees),
        "degree_f": cat.degree(f),
        "degree_g": cat.degree(g),
    }
    print(dumps(doc), end="")
    return EXIT_OK


def _action_of(arrow, basepoint: int = 0):
    if isinstance(arrow, graphs.GraphCover):
        return perms.monodromy(arrow, basepoint)[0]
    if arrow.cod.point_count != 1:
        raise _Fail(EXIT_CONTRACT, "oracle needs a cover of the one-point action")
    return arrow.dom


def cmd_oracle(args) -> int:
    cat, _, _ = _instance(args.instance)
    (path,) = _inputs(args, 1)
    f = load_cover(path, args.instance)
    order = perms.oracle_closure_degree(_action_of(f, args.basepoint))
    doc = {"degree": cat.degree(f), "oracle_closure_degree": order}
    if args.closure:
        closure = load_cover(args.closure, args.instance)
        doc["closure_degree"] = cat.degree(closure)
        doc["matches_closure"] = cat.degree(closure) == order
    print(dumps(doc), end="")
    return EXIT_OK


def cmd_axioms(args) -> int:
    cat, _, _ = _instance(args.instance)
    report = check_axioms(cat, sample_set(cat, args.count, args.seed), seed=args.seed)
    print(dumps(report.to_dict()), end="")
    for r in report.failures():
        print(f"FAIL {r.name} (sample {r.sample}): {r.counterexample}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CONTRACT


def cmd_monodromy(args) -> int:
    if args.instance != "graph":
        raise _Fail(EXIT_CONTRACT, "monodromy reads graph covers")
    (path,) = _inputs(args, 1)
    f = load_cover(path, "graph")
    try:
        action, _ = perms.monodromy(f, args.basepoint)
    except ContractViolation as exc:
        raise _Fail(EXIT_CONTRACT, str(exc)) from exc
    print(dumps(perms.action_to_json(action)), end="")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    (path,) = _inputs(args, 1)
    doc = _read_json(path)
    try:
        if args.instance == "perm":
            obj = perms.cover_from_action(perms.map_from_json(doc).dom)
        elif isinstance(doc, dict) and "vertices" in doc:
            obj = graphs.graph_from_json(doc)
        else:
            obj = graphs.cover_from_json(doc)
    except MalformedInput as exc:
        raise _Fail(EXIT_MALFORMED, f"{path}: {exc}") from exc
    except CoverError as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {exc}") from exc
    text = graphs.to_dot(obj, Path(path).stem.replace("-", "_").replace(".", "_") or "G")
    if args.output:
        _write(args.output, text)
    else:
        print(text, end="")
    return EXIT_OK


COMMANDS = {
    "closure": cmd_closure,
    "verify": cmd_verify,
    "hom": cmd_hom,
    "galois": cmd_galois,
    "pullback": cmd_pullback,
    "oracle": cmd_oracle,
    "axioms": cmd_axioms,
    "monodromy": cmd_monodromy,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", metavar="PATH", help="input file (repeatable)")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--trace", metavar="PATH")
    common.add_argument("--instance", choices=("graph", "perm"), default="graph")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    parser = argparse.ArgumentParser(prog="galois-closure", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "closure":
            p.add_argument("--algorithm", choices=("i", "r"))
        if name in ("oracle", "monodromy"):
            p.add_argument("--basepoint", type=int, default=0)
        if name == "oracle":
            p.add_argument("--closure", metavar="PATH", help="closure cover to compare against")
        if name == "axioms":
            p.add_argument("--count", type=int, default=100, help="number of random samples")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except _Fail as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
