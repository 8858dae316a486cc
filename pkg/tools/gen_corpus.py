"""Regenerate the bundled example corpus from the domain objects.

Run from the repository root:  python3 tools/gen_corpus.py
Writes src/adhm_lab/data/examples/*.json in canonical rendering and replays
every expectation before saving.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from adhm_lab.adhm import AdhmDatum
from adhm_lab.fields import QQ
from adhm_lab.linalg import Matrix
from adhm_lab.serialize import render_json
from adhm_lab.variety import VarietySpec, variable_names
from adhm_lab.poly import parse_poly


def M(rows):
    return Matrix(QQ, [[QQ(v) for v in row] for row in rows])


def Z(nr, nc):
    return Matrix.zeros(QQ, nr, nc)


def variety(n, gens):
    names = variable_names(n)
    return VarietySpec(n, [parse_poly(g, names, QQ) for g in gens], QQ)


def record(name, description, var, datum, expectations):
    return {"name": name, "description": description, "field": "q",
            "variety": var.to_json(), "datum": datum.to_json(),
            "expectations": expectations}


def exp(eid, check, kind, expect, args=None):
    e = {"id": eid, "check": check, "kind": kind, "expect": expect}
    if args is not None:
        e["args"] = args
    return e


records = []

# rational normal scroll in P^3, c = 1 datum with zero framing blocks
scroll_var = variety(3, ["z0*y - z1*x"])
scroll_datum = AdhmDatum(QQ, 1, 1, 1,
                         A=[M([[1]]), M([[0]])],
                         B=[M([[0]]), M([[1]])],
                         I=[Z(1, 1), Z(1, 1)],
                         J=[Z(1, 1), Z(1, 1)],
                         Aprime=[Z(1, 1), Z(1, 1)],
                         Bprime=[Z(1, 1), Z(1, 1)])
records.append(record(
    "scroll",
    "Surface scroll cut out by a single 2x2 minor; the residual reproduces "
    "its equation and the tall map degenerates along a curve.",
    scroll_var, scroll_datum,
    [
        exp("residual-matches-equation", "residual_entries", "reference",
            [["z0*y - z1*x"]]),
        exp("solution-on-scroll", "is_solution", "reference", True,
            {"on": "variety"}),
        exp("not-solution-on-ambient", "is_solution", "reference", False,
            {"on": "ambient"}),
        exp("degeneration-codim-one", "degeneration", "reference",
            {"codim": 1, "nondegenerate": False, "has_witnesses": True,
             "witnesses_have_xy_zero": True}),
        exp("wide-map-drops-rank-on-curve", "weak_stable_at", "computed",
            False, {"point": [1, 1, -1, -1]}),
        exp("classified-as-degenerate", "classification", "computed",
            {"verdict": "perverse instanton sheaf (degenerate)"}),
        exp("zero-framing-is-unstable", "stability_verdicts", "identity",
            {"stable": "false", "costable": "false"}),
    ]))

# smooth quadric threefold in P^4; framing blocks carry the z2 direction
quadric_var = variety(4, ["z0*y + z1*x + z2^2"])
quadric_datum = AdhmDatum(QQ, 1, 1, 2,
                          A=[M([[1]]), Z(1, 1), Z(1, 1)],
                          B=[Z(1, 1), M([[-1]]), Z(1, 1)],
                          I=[Z(1, 1), Z(1, 1), M([[1]])],
                          J=[Z(1, 1), Z(1, 1), M([[1]])],
                          Aprime=[Z(1, 1)] * 3,
                          Bprime=[Z(1, 1)] * 3)
records.append(record(
    "quadric",
    "Quadric hypersurface in P^4; the residual equals its equation and the "
    "wide map loses rank along a curve inside the quadric.",
    quadric_var, quadric_datum,
    [
        exp("residual-matches-equation", "residual_entries", "reference",
            [["z0*y + z1*x + z2^2"]]),
        exp("solution-on-quadric", "is_solution", "reference", True,
            {"on": "variety"}),
        exp("stable-and-costable", "stability_verdicts", "computed",
            {"stable": "true", "costable": "true"}),
        exp("wide-map-drops-rank-on-curve", "weak_stable_at", "computed",
            False, {"point": [-1, 1, 0, 1, 1]}),
        exp("gws-false-with-explicit-witness", "gws", "computed", "false",
            {"points": [[-1, 1, 0, 1, 1]]}),
        exp("tall-map-degenerates-in-codim-two", "degeneration", "computed",
            {"codim": 2, "nondegenerate": True}),
    ]))

# reducible pair of hyperplanes z0*z1 = 0 in P^3, c = 2
c2_var = variety(3, ["z0*z1"])
c2_datum = AdhmDatum(QQ, 2, 1, 1,
                     A=[M([[1, 0], [0, 1]]), M([[0, 1], [0, 0]])],
                     B=[Z(2, 2), Z(2, 2)],
                     I=[M([[1], [1]]), Z(2, 1)],
                     J=[Z(1, 2), Z(1, 2)])
records.append(record(
    "c2_reducible",
    "Two hyperplanes meeting in a line; componentwise stable while every "
    "pointwise stabilizing subspace stays proper.",
    c2_var, c2_datum,
    [
        exp("componentwise-subspace-is-full", "global_subspace_dim",
            "reference", 2),
        exp("componentwise-stable", "stability_verdicts", "reference",
            {"stable": "true", "locally_stable": "false"}),
        exp("point-subspace-generic", "point_subspace", "reference",
            {"dim": 1, "basis": [[1, 1]]}, {"point": [5, 0, 3, 7]}),
        exp("point-subspace-z0-zero", "point_subspace", "reference",
            {"dim": 0, "basis": []}, {"point": [0, 4, 3, 7]}),
        exp("pointwise-sum-strictly-smaller", "sampled_T", "reference",
            {"dim": 1, "strictly_below_S": True},
            {"points": [[5, 0, 3, 7], [0, 4, 3, 7]]}),
    ]))

# c = 3 datum solving the equation on all of P^3
c3_var = variety(3, [])
c3_datum = AdhmDatum(QQ, 3, 1, 1,
                     A=[M([[0, 0, 0], [0, 0, 1], [0, 0, 0]]),
                        M([[1, 1, 0], [0, 1, 0], [0, 0, 2]])],
                     B=[Z(3, 3), Z(3, 3)],
                     I=[M([[1], [1], [0]]), M([[0], [0], [1]])],
                     J=[Z(1, 3), Z(1, 3)])
records.append(record(
    "c3_p3",
    "A charge-three solution on all of P^3 whose pointwise stabilizing "
    "subspaces are one-dimensional on every stratum.",
    c3_var, c3_datum,
    [
        exp("solution-on-ambient", "is_solution", "reference", True,
            {"on": "ambient"}),
        exp("componentwise-subspace-is-full", "global_subspace_dim",
            "reference", 3),
        exp("point-subspace-generic", "point_subspace", "computed",
            {"dim": 1, "basis": [[1, 1, "3/2"]]}, {"point": [2, 3, 1, 1]}),
        exp("point-subspace-z0-zero", "point_subspace", "reference",
            {"dim": 1, "basis": [[0, 0, 1]]}, {"point": [0, 3, 1, 1]}),
        exp("point-subspace-z1-zero", "point_subspace", "reference",
            {"dim": 1, "basis": [[1, 1, 0]]}, {"point": [2, 0, 1, 1]}),
        exp("pointwise-sum-strictly-smaller", "sampled_T", "reference",
            {"dim": 2, "strictly_below_S": True},
            {"points": [[2, 3, 1, 1], [0, 3, 1, 1], [2, 0, 1, 1]]}),
        exp("trivial-stabilizer", "stabilizer_dim", "computed", 0),
        exp("charge-equals-c", "charge", "identity", 3),
        exp("middle-dims-at-minus-one", "hyper_dims", "computed",
            [0, 3, 0, 0], {"k": -1}),
    ]))

# ideal sheaf of a point in P^2
p2_var = variety(2, [])
p2_datum = AdhmDatum(QQ, 1, 1, 0,
                     A=[Z(1, 1)], B=[Z(1, 1)],
                     I=[M([[1]])], J=[Z(1, 1)])
records.append(record(
    "p2_ideal_point",
    "Rank-one datum on P^2 whose complex has the cohomology of the ideal "
    "sheaf of a point.",
    p2_var, p2_datum,
    [
        exp("solution-on-ambient", "is_solution", "reference", True,
            {"on": "ambient"}),
        exp("no-sections-untwisted", "hyper_dims", "reference", [0, 0, 0],
            {"k": 0}),
        exp("two-sections-at-twist-one", "hyper_dims", "reference", [2, 0, 0],
            {"k": 1}),
        exp("charge-equals-c", "charge", "identity", 1),
        exp("gws-certified", "gws", "computed", "certified_true"),
        exp("nondegenerate-point-locus", "degeneration", "computed",
            {"codim": 2, "nondegenerate": True}),
        exp("classified-as-instanton", "classification", "computed",
            {"verdict": "instanton sheaf"}),
        exp("fiber-dim-at-locus-point", "fiber_dim", "computed", 2,
            {"point": [1, 0, 0]}),
        exp("fiber-dim-on-marked-line", "fiber_dim", "computed", 1,
            {"point": [0, 1, 0]}),
    ]))


def main():
    from adhm_lab.corpus import ExampleRecord, verify_example

    out_dir = os.path.join(os.path.dirname(__file__), "..",
                           "src", "adhm_lab", "data", "examples")
    os.makedirs(out_dir, exist_ok=True)
    failed = False
    for obj in records:
        rec = ExampleRecord.from_json(obj)
        results = verify_example(rec)
        for res in results:
            mark = "ok" if res["ok"] else "FAIL"
            print("%-16s %-36s %s" % (obj["name"], res["id"], mark))
            if not res["ok"]:
                failed = True
                print("    expected: %r" % (res["expected"],))
                print("    actual:   %r" % (res["actual"],))
                if "error" in res:
                    print("    error:    %s" % res["error"])
        text = render_json(rec.to_json())
        if render_json(ExampleRecord.from_json(
                __import__("json").loads(text)).to_json()) != text:
            print("%s: round-trip NOT byte-identical" % obj["name"])
            failed = True
        with open(os.path.join(out_dir, obj["name"] + ".json"), "w",
                  encoding="utf-8") as fh:
            fh.write(text)
    if failed:
        sys.exit(1)
    print("corpus written: %d records" % len(records))


if __name__ == "__main__":
    main()
