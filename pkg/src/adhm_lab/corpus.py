"""Bundled worked examples with machine-checkable expectations.

Each record pairs a base scheme and a datum with a list of expectations.
Expectations are data, not code: every entry names a check, optional
arguments, and the expected value, plus a kind tag ("reference" for values
recorded from a worked computation, "identity" for structural facts that
must hold by construction, "computed" for values this engine derived and an
independent run should reproduce).  ``verify_example`` replays each
expectation against the engines and reports mismatches.
"""

from __future__ import annotations

from importlib import resources

from .adhm import AdhmDatum
from .cohomology import charge_and_rank, classify, hypercohomology_dims
from .fields import parse_field_spec
from .monad import build_monad, degeneration_info, fiber_cohomology_dim
from .serialize import parse_json, render_json
from .stability import (costable_fixpoint, full_report, global_weak_stability,
                        is_weak_stable_at, sampled_T_and_L,
                        stabilizing_subspace_at_point,
                        stabilizing_subspace_global)
from .symmetry import stabilizer_dimension
from .variety import PointOnY, VarietySpec


class CorpusError(Exception):
    pass


class ExampleRecord:
    """A named scheme/datum pair with its expectation list."""

    def __init__(self, name, description, field_spec, variety, datum,
                 expectations):
        self.name = name
        self.description = description
        self.field_spec = field_spec
        self.variety = variety
        self.datum = datum
        self.expectations = expectations

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise CorpusError("example record must be a JSON object")
        for key in ("name", "variety", "datum", "expectations"):
            if key not in obj:
                raise CorpusError("example record: missing key %r" % key)
        field_spec = obj.get("field", "q")
        field = parse_field_spec(field_spec)
        variety = VarietySpec.from_json(obj["variety"], field)
        datum = AdhmDatum.from_json(obj["datum"], field)
        expectations = obj["expectations"]
        if not isinstance(expectations, list):
            raise CorpusError("example record: 'expectations' must be a list")
        for i, e in enumerate(expectations):
            if not isinstance(e, dict) or "id" not in e or "check" not in e \
                    or "kind" not in e or "expect" not in e:
                raise CorpusError("expectations[%d]: need id, check, kind, "
                                  "expect" % i)
            if e["kind"] not in ("reference", "identity", "computed"):
                raise CorpusError("expectations[%d]: unknown kind %r"
                                  % (i, e["kind"]))
        return cls(obj["name"], obj.get("description", ""), field_spec,
                   variety, datum, expectations)

    def to_json(self):
        return {"name": self.name, "description": self.description,
                "field": self.field_spec,
                "variety": self.variety.to_json(),
                "datum": self.datum.to_json(),
                "expectations": self.expectations}


def _point(record, coords):
    return PointOnY(record.datum.field, coords)


def _subspace_json(field, space):
    return {"dim": space.dim,
            "basis": [[field.render(x) for x in b] for b in space.basis]}


def _run_check(record, exp):
    """Actual value of one expectation; same shape as its 'expect' field."""
    check = exp["check"]
    args = exp.get("args", {})
    datum = record.datum
    variety = record.variety
    field = datum.field

    if check == "residual_entries":
        names = variety.var_names
        return [[p.render(names) for p in row] for row in datum.mu_residual()]
    if check == "is_solution":
        target = variety if args.get("on", "variety") == "variety" \
            else VarietySpec.projective_space(datum.n, field)
        return datum.is_adhm_solution(target)
    if check == "global_subspace_dim":
        return stabilizing_subspace_global(datum).dim
    if check == "costable_fixpoint_dim":
        return costable_fixpoint(datum).dim
    if check == "point_subspace":
        p = _point(record, args["point"])
        return _subspace_json(field, stabilizing_subspace_at_point(datum, p))
    if check == "sampled_T":
        pts = [_point(record, c) for c in args["points"]]
        T, _ = sampled_T_and_L(datum, pts)
        S = stabilizing_subspace_global(datum)
        return {"dim": T.dim, "strictly_below_S": T.dim < S.dim}
    if check == "stability_verdicts":
        pts = [_point(record, c) for c in args["points"]] \
            if "points" in args else None
        report = full_report(datum, variety, points=pts)
        return {k: report.verdicts[k] for k in sorted(exp["expect"])}
    if check == "weak_stable_at":
        return is_weak_stable_at(datum, _point(record, args["point"]))
    if check == "gws":
        pts = [_point(record, c) for c in args["points"]] \
            if "points" in args else None
        verdict, _ = global_weak_stability(datum, variety, points=pts)
        return verdict
    if check == "degeneration":
        monad = build_monad(datum)
        info = degeneration_info(monad, variety)
        out = {k: v for k, v in info.to_json().items() if k in exp["expect"]}
        if "witnesses_have_xy_zero" in exp["expect"]:
            zero = info.witnesses[0].field.zero if info.witnesses else None
            out["witnesses_have_xy_zero"] = bool(info.witnesses) and all(
                p.x == zero and p.y == zero for p in info.witnesses)
        if "has_witnesses" in exp["expect"]:
            out["has_witnesses"] = bool(info.witnesses)
        return out
    if check == "hyper_dims":
        return hypercohomology_dims(build_monad(datum), args["k"])
    if check == "charge":
        return charge_and_rank(build_monad(datum))[1]
    if check == "classification":
        result = classify(datum, variety)
        return {"verdict": result.verdict}
    if check == "fiber_dim":
        return fiber_cohomology_dim(build_monad(datum),
                                    _point(record, args["point"]))
    if check == "stabilizer_dim":
        return stabilizer_dimension(datum)[0]
    raise CorpusError("unknown check %r" % check)


def verify_example(record):
    """Replay every expectation; returns a list of result dicts."""
    results = []
    for exp in record.expectations:
        try:
            actual = _run_check(record, exp)
            ok = actual == exp["expect"]
            error = None
        except Exception as exc:
            actual, ok, error = None, False, "%s: %s" % (type(exc).__name__, exc)
        entry = {"id": exp["id"], "check": exp["check"], "kind": exp["kind"],
                 "ok": ok, "expected": exp["expect"], "actual": actual}
        if error:
            entry["error"] = error
        results.append(entry)
    return results


def _data_dir():
    return resources.files("adhm_lab").joinpath("data/examples")


def list_example_names():
    names = []
    for entry in _data_dir().iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[:-5])
    return sorted(names)


def example_text(name):
    path = _data_dir().joinpath(name + ".json")
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise CorpusError("no example named %r (have: %s)"
                          % (name, ", ".join(list_example_names()))) from None


def load_example(name):
    text = example_text(name)
    return ExampleRecord.from_json(parse_json(text, source=name + ".json"))


def roundtrip_ok(name):
    """Whether parse -> render reproduces the stored file byte for byte."""
    text = example_text(name)
    record = ExampleRecord.from_json(parse_json(text, source=name + ".json"))
    return render_json(record.to_json()) == text
