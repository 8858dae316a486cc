"""Command-line surface.

Subcommands: check, stability, monad, cohomology, equiv, moduli-dim,
examples, random.  Exit codes: 0 success/verified, 1 falsified expectation,
2 usage or input error, 3 inconclusive result under --strict.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from .adhm import AdhmDatum, AdhmError, random_datum
from .cohomology import (CohomologyError, HypercohomologyTable,
                         charge_and_rank, classify, instanton_vanishing_table)
from .config import RunConfig, thread_cap
from .corpus import (CorpusError, example_text, list_example_names,
                     load_example, roundtrip_ok, verify_example)
from .fields import FieldError
from .monad import (MonadError, build_monad, degeneration_info,
                    restrict_to_line, verify_complex)
from .serialize import SerializeError, load_json_file, render_json
from .stability import StabilityError, full_report
from .symmetry import (SymmetryError, find_equivalence,
                       moduli_dimension_certificate)
from .variety import VarietyError, VarietySpec

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

INPUT_ERRORS = (SerializeError, AdhmError, VarietyError, FieldError,
                CorpusError, MonadError, StabilityError, CohomologyError,
                SymmetryError)


def _emit(obj):
    sys.stdout.write(render_json(obj))


def _load_datum(path, cfg):
    return AdhmDatum.from_json(load_json_file(path), cfg.field)


def _load_variety(path, cfg):
    if path is None:
        return None
    return VarietySpec.from_json(load_json_file(path), cfg.field)


def _ambient_for(datum, cfg):
    return VarietySpec.projective_space(datum.n, cfg.field)


def cmd_check(args, cfg):
    datum = _load_datum(args.data, cfg)
    variety = _load_variety(args.variety, cfg) or _ambient_for(datum, cfg)
    ok = datum.is_adhm_solution(variety)
    print("solution: %s" % ("true" if ok else "false"))
    if args.json:
        _emit({"solution": ok, "variety": variety.to_json()})
    return EXIT_OK


def cmd_stability(args, cfg):
    datum = _load_datum(args.data, cfg)
    variety = _load_variety(args.variety, cfg) or _ambient_for(datum, cfg)
    print("seed: %d" % cfg.seed, file=sys.stderr)
    report = full_report(datum, variety, degree_bound=cfg.degree_bound,
                         samples=cfg.samples, seed=cfg.seed)
    _emit(report.to_json())
    if cfg.strict and any(v == "unknown" for v in report.verdicts.values()):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_monad(args, cfg):
    datum = _load_datum(args.data, cfg)
    variety = _load_variety(args.variety, cfg) or _ambient_for(datum, cfg)
    monad = build_monad(datum)
    out = {"complex_ok": verify_complex(monad, variety)}
    if args.emit:
        out["maps"] = monad.to_json(variety.var_names)
    if args.degeneration:
        print("seed: %d" % cfg.seed, file=sys.stderr)
        info = degeneration_info(monad, variety, degree_bound=cfg.degree_bound,
                                 samples=cfg.samples, seed=cfg.seed)
        out["degeneration"] = info.to_json()
    if args.line:
        line = restrict_to_line(monad)
        out["line_restriction"] = {
            "canonical": line["canonical"],
            "framing": [{"point": f["point"].to_json(),
                         "fiber_dim": f["fiber_dim"]}
                        for f in line["framing"]]}
    _emit(out)
    if not out["complex_ok"]:
        return EXIT_FALSIFIED
    if cfg.strict and args.degeneration \
            and not out["degeneration"]["conclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_cohomology(args, cfg):
    datum = _load_datum(args.data, cfg)
    monad = build_monad(datum)
    table = HypercohomologyTable(monad, cfg.k_min, cfg.k_max)
    out = {"table": table.to_json(),
           "rank_and_charge": list(charge_and_rank(monad))}
    if args.vanishing:
        out["vanishing"] = instanton_vanishing_table(monad)
    inconclusive = False
    if args.classify:
        variety = _load_variety(args.variety, cfg) or _ambient_for(datum, cfg)
        print("seed: %d" % cfg.seed, file=sys.stderr)
        result = classify(datum, variety, degree_bound=cfg.degree_bound,
                          samples=cfg.samples, seed=cfg.seed)
        out["classification"] = result.to_json()
        inconclusive = result.qualifier != "certified"
    if args.markdown:
        print(table.to_markdown())
    else:
        _emit(out)
    if cfg.strict and inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_equiv(args, cfg):
    d1 = _load_datum(args.a, cfg)
    d2 = _load_datum(args.b, cfg)
    print("seed: %d" % cfg.seed, file=sys.stderr)
    status, element = find_equivalence(d1, d2, framed=args.framed,
                                       trials=cfg.trials, seed=cfg.seed)
    out = {"status": status}
    if element is not None:
        rend = d1.field.render
        out["g"] = [[rend(element.g[i, j]) for j in range(element.g.ncols)]
                    for i in range(element.g.nrows)]
        if element.h is not None:
            out["h"] = [[rend(element.h[i, j]) for j in range(element.h.ncols)]
                        for i in range(element.h.nrows)]
    _emit(out)
    if status == "inconclusive" and cfg.strict:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_moduli_dim(args, cfg):
    print("seed: %d" % cfg.seed, file=sys.stderr)
    cert = moduli_dimension_certificate(args.r, args.d, trials=args.trials,
                                        seed=cfg.seed, field=cfg.field)
    if cert.get("empty"):
        print("empty (r = %d <= d = %d)" % (args.r, args.d))
    else:
        print("dim M = %d, Jacobian full rank %d/%d"
              % (cert["dim"], cert["full_rank_trials"], args.trials))
    _emit(cert)
    if not cert.get("empty") and cert["full_rank_trials"] < args.trials \
            and cfg.strict:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _verify_one(name):
    record = load_example(name)
    results = verify_example(record)
    results.append({"id": "roundtrip-byte-identical", "check": "roundtrip",
                    "kind": "identity", "ok": roundtrip_ok(name),
                    "expected": True, "actual": None})
    return name, results


def cmd_examples(args, cfg):
    names = list_example_names()
    if args.list or (not args.name and not args.all):
        for name in names:
            print(name)
        return EXIT_OK
    targets = names if args.all else [args.name]
    for t in targets:
        if t not in names:
            raise CorpusError("no example named %r (have: %s)"
                              % (t, ", ".join(names)))
    if not args.verify:
        for t in targets:
            sys.stdout.write(example_text(t))
        return EXIT_OK
    failed = False
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        for name, results in pool.map(_verify_one, targets):
            for res in results:
                mark = "ok" if res["ok"] else "FAIL"
                print("%-16s %-40s %s" % (name, res["id"], mark))
                if not res["ok"]:
                    failed = True
                    print("    expected: %r" % (res["expected"],))
                    print("    actual:   %r" % (res["actual"],))
                    if "error" in res:
                        print("    error:    %s" % res["error"])
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_random(args, cfg):
    print("seed: %d" % cfg.seed, file=sys.stderr)
    datum = random_datum(args.c, args.r, args.d, mode=args.mode,
                         seed=cfg.seed, field=cfg.field)
    _emit(datum.to_json())
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="adhm-lab",
        description="Exact computations with matrix-family data on "
                    "projective schemes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q",
                        help="coefficient field: q or fp:PRIME")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--degree-bound", dest="degree_bound", type=int,
                        default=8)
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when a verdict stays inconclusive")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=lambda **kw: argparse.ArgumentParser(
                                    parents=[common], **kw))

    p = sub.add_parser("check", help="test the quadratic equation")
    p.add_argument("--data", required=True)
    p.add_argument("--variety")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stability", help="full stability report")
    p.add_argument("--data", required=True)
    p.add_argument("--variety")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("monad", help="build and verify the complex")
    p.add_argument("--data", required=True)
    p.add_argument("--variety")
    p.add_argument("--emit", action="store_true",
                   help="print the two polynomial matrices")
    p.add_argument("--degeneration", action="store_true")
    p.add_argument("--line", action="store_true",
                   help="restrict to the marked line and report framings")
    p.set_defaults(func=cmd_monad)

    p = sub.add_parser("cohomology", help="hypercohomology tables")
    p.add_argument("--data", required=True)
    p.add_argument("--variety")
    p.add_argument("--kmin", dest="k_min", type=int, default=-2)
    p.add_argument("--kmax", dest="k_max", type=int, default=2)
    p.add_argument("--markdown", action="store_true")
    p.add_argument("--vanishing", action="store_true")
    p.add_argument("--classify", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("equiv", help="search for an equivalence")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--framed", action="store_true")
    p.add_argument("--trials", type=int, default=64)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("moduli-dim", help="dimension certificate for c = 1")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_moduli_dim)

    p = sub.add_parser("examples", help="bundled corpus")
    p.add_argument("--name")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("random", help="draw a random datum")
    p.add_argument("--mode", default="generic",
                   choices=("generic", "pn_solution_c1"))
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except INPUT_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
