"""Command-line entry point.

Exit codes: 0 found / valid / pass, 1 a negative verdict (always printed as
JSON on stdout), 2 usage or input error (diagnostic on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .algebra import (algebra_to_relation, matching_from_witness, parse_algebra_obj, relation_to_algebra,
                      verify_witness_property, witness_from_matching)
from .campaign import parse_campaign, run_campaign
from .core import Instance, as_fraction, is_rainbow_matching, validate_instance
from .errors import FormatError, RainbowError
from .generators import RandomSpec, extremal_triangles, random_instance
from .solvers.falsify import falsify
from .solvers.outcome import METHODS, SolverParams
from .solvers.pipeline import solve
from .solvers.vsearch import compute_v_exhaustive


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _emit(obj):
    sys.stdout.write(formats.dumps(obj))


def _load_instance(path, check=True) -> Instance:
    inst, locs = formats.parse_instance_located(formats.read_text(path))
    if check:
        report = validate_instance(inst)
        if not report.valid:
            v = report.violations[0]
            off = locs.get((v.colour, v.clique), locs.get((v.colour, None), 0))
            raise FormatError(v.message, off)
    return inst


def cmd_validate(args):
    inst = _load_instance(args.file)
    _emit({"status": "valid", "n": inst.n})
    return 0


def cmd_solve(args):
    inst = _load_instance(args.file)
    params = SolverParams(as_fraction(args.delta), args.max_switch_len, args.budget, args.seed, args.method,
                          args.time_limit)
    out = solve(inst, params, args.size)
    if out.found:
        assert is_rainbow_matching(inst, out.matching, out.size)
    _emit(out.to_obj(args.timing))
    return 0 if out.found else 1


def cmd_generate(args):
    if args.kind == "extremal-triangles":
        inst = extremal_triangles(args.n)
    else:
        weights = {int(k): float(v) for k, v in (w.split(":") for w in args.weights.split(","))}
        inst = random_instance(RandomSpec(args.n, args.kernel, weights, args.overlap, args.simple, args.seed))
    text = formats.dumps_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_falsify(args):
    res = falsify(args.n, args.kernel, args.simple, args.budget, args.seed)
    obj = {"status": "found" if res.found else "not-found", "evaluations": res.evaluations,
           "restarts": res.restarts}
    if res.found:
        obj["instance"] = json.loads(formats.dumps_instance(res.instance))
        obj["certificate"] = res.certificate.certificate
    _emit(obj)
    return 0 if res.found else 1


def cmd_vsearch(args):
    table = compute_v_exhaustive(args.n, args.max_kernel, args.budget)
    rows = []
    for r in table.rows:
        row = {"kernel": r.kernel, "verdict": r.verdict, "instances": r.instances}
        if r.counterexample is not None:
            row["counterexample"] = json.loads(formats.dumps_instance(r.counterexample))
        rows.append(row)
    _emit({"n": args.n, "rows": rows, "v1": table.v1})
    return 0


def cmd_algebra(args):
    if args.action == "roundtrip":
        doc = json.loads(formats.read_text(args.files[0]))
        if "ground" in doc:
            alg = parse_algebra_obj(doc)
            problems = alg.closure_problems()
            if problems:
                _emit({"status": "fail", "problems": problems})
                return 1
            _emit({"status": "pass", "relation": [list(b) for b in algebra_to_relation(alg)]})
            return 0
        inst = _load_instance(args.files[0])
        ground = sorted(inst.universe)
        bad = []
        for c in range(inst.n):
            alg = relation_to_algebra(inst, c, ground)
            back = tuple(b for b in algebra_to_relation(alg) if len(b) >= 2)
            if alg.closure_problems() or back != inst.classes[c]:
                bad.append(c)
        _emit({"status": "fail" if bad else "pass", "failed_colours": bad})
        return 1 if bad else 0
    if len(args.files) != 2:
        raise UsageError("algebra witness needs an instance file and a matching file")
    inst = _load_instance(args.files[0])
    m = formats.parse_matching(formats.read_text(args.files[1]))
    ground = sorted(inst.universe)
    algebras = [relation_to_algebra(inst, c, ground) for c in range(inst.n)]
    w = witness_from_matching(inst, m)
    report = verify_witness_property(algebras, w)
    back = matching_from_witness(algebras, w)
    ok = report.passed and is_rainbow_matching(inst, back, inst.n)
    _emit({"status": "pass" if ok else "fail", "checked": report.checked,
           "violations": len(report.violations), "matching": formats.matching_to_obj(back)})
    return 0 if ok else 1


def cmd_bench(args):
    spec = parse_campaign(json.loads(formats.read_text(args.campaign)))
    res = run_campaign(spec, args.workers)
    out = args.out or spec.output
    if out:
        Path(out).write_text(res.to_csv())
    else:
        sys.stdout.write(res.to_csv())
    frac = res.success_fraction()
    sys.stderr.write(f"{spec.suite}: {len(res.runs)} runs, success fraction {frac:.4f}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rainbowmatch", description="Rainbow matchings in unions of equivalence relations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check an instance file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="search for a rainbow matching")
    s.add_argument("file")
    s.add_argument("--method", choices=METHODS, default="greedy_switch")
    s.add_argument("--size", type=int, default=None)
    s.add_argument("--delta", default="1")
    s.add_argument("--max-switch-len", type=int, default=4)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--budget", type=int, default=1_000_000)
    s.add_argument("--time-limit", type=float, default=None)
    s.add_argument("--timing", action="store_true", help="include wall time in the output")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("generate", help="write an instance")
    s.add_argument("kind", choices=("extremal-triangles", "random"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kernel", type=int, default=None)
    s.add_argument("--weights", default="2:1,3:1,4:1", help="clique size weights, e.g. 2:1,3:2")
    s.add_argument("--overlap", type=float, default=1.0)
    s.add_argument("--simple", action="store_true")
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("falsify", help="search for an instance with no full rainbow matching")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kernel", type=int, required=True)
    s.add_argument("--simple", action="store_true")
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--seed", type=_seed, default=0)
    s.set_defaults(func=cmd_falsify)

    s = sub.add_parser("vsearch", help="exhaustive kernel-size thresholds for small n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-kernel", type=int, required=True)
    s.add_argument("--budget", type=int, default=1_000_000)
    s.set_defaults(func=cmd_vsearch)

    s = sub.add_parser("algebra", help="relation/algebra correspondence checks")
    s.add_argument("action", choices=("roundtrip", "witness"))
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("bench", help="run a campaign and write CSV")
    s.add_argument("campaign")
    s.add_argument("--out", default=None)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "generate" and args.kind == "random" and args.kernel is None:
            raise UsageError("generate random needs --kernel")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except FormatError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except (RainbowError, OSError, ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
