from math import comb

import pytest

from adhm_lab.adhm import AdhmDatum, random_datum
from adhm_lab.cohomology import (CohomologyError, HypercohomologyTable,
                                 charge_and_rank, classify,
                                 euler_characteristic, hypercohomology_dims,
                                 instanton_vanishing_table, line_bundle_euler,
                                 sections_dim)
from adhm_lab.fields import QQ
from adhm_lab.linalg import Matrix
from adhm_lab.monad import build_monad
from adhm_lab.poly import monomials
from adhm_lab.variety import VarietySpec


def p2_ideal_point_datum():
    Z1 = Matrix.zeros(QQ, 1, 1)
    return AdhmDatum(QQ, 1, 1, 0, A=[Z1], B=[Z1],
                     I=[Matrix(QQ, [[QQ(1)]])], J=[Z1])


def test_line_bundle_euler_matches_cohomology():
    for n in (2, 3, 4):
        for m in range(-2 * n, 2 * n):
            h0 = sections_dim(m, n)
            hn = sections_dim(-m - n - 1, n)
            assert line_bundle_euler(m, n) == h0 + (-1) ** n * hn


def ideal_point_oracle(k):
    """h^q of the ideal sheaf of (1:0:0) twisted by k, via the restriction
    sequence to the point; independent of the spectral-sequence engine."""
    # h^0: degree-k forms in 3 variables vanishing at the point
    if k < 0:
        h0 = 0
        eval_rank = 0
    else:
        monos = monomials(3, k)
        # evaluation at (1, 0, 0) keeps only the pure z0^k monomial
        eval_rank = 1
        h0 = len(monos) - 1
    h1 = 1 - eval_rank          # coker of evaluation; h^1(O(k)) = 0 on P^2
    h2 = sections_dim(-k - 3, 2)  # h^2(O(k)) by duality
    return [h0, h1, h2]


def test_ideal_point_against_les_oracle():
    monad = build_monad(p2_ideal_point_datum())
    for k in range(-2, 3):
        assert hypercohomology_dims(monad, k) == ideal_point_oracle(k), k


def test_charge_and_rank():
    monad = build_monad(p2_ideal_point_datum())
    assert charge_and_rank(monad) == (1, 1)
    datum = random_datum(1, 3, 1, mode="pn_solution_c1", seed=6)
    assert charge_and_rank(build_monad(datum)) == (3, 1)


def test_euler_identity_on_random_solutions():
    for n, seed in ((2, 0), (3, 1), (4, 2), (5, 3)):
        d = n - 2
        datum = random_datum(1, d + 2, d, mode="pn_solution_c1", seed=seed)
        monad = build_monad(datum)
        for k in range(-3, 2):
            dims = hypercohomology_dims(monad, k)
            assert sum((-1) ** q * v for q, v in enumerate(dims)) \
                == euler_characteristic(monad, k)


def test_table_rejects_non_solutions():
    datum = random_datum(1, 2, 1, seed=0)
    with pytest.raises(CohomologyError, match="does not solve"):
        HypercohomologyTable(build_monad(datum), -1, 1)


def test_table_rendering():
    table = HypercohomologyTable(build_monad(p2_ideal_point_datum()), -1, 1)
    obj = table.to_json()
    assert obj["dims"]["-1"] == [0, 1, 0]
    assert obj["dims"]["0"] == [0, 0, 0]
    assert obj["dims"]["1"] == [2, 0, 0]
    md = table.to_markdown()
    assert md.splitlines()[0] == "| q \\ k | -1 | 0 | 1 |"


def test_vanishing_conditions():
    datum = random_datum(1, 5, 3, mode="pn_solution_c1", seed=11)
    results = instanton_vanishing_table(build_monad(datum))
    assert set(results) == {"(i)", "(ii)", "(iii)"}
    for key, block in results.items():
        assert block["pass"], (key, block)
    small = instanton_vanishing_table(build_monad(p2_ideal_point_datum()))
    assert set(small) == {"(i)"} and small["(i)"]["pass"]


def test_classify_instanton_and_guard():
    datum = p2_ideal_point_datum()
    ambient = VarietySpec.projective_space(2, QQ)
    result = classify(datum, ambient)
    assert result.verdict == "instanton sheaf"
    assert result.qualifier == "certified"
    assert result.evidence["charge"] == 1
    bad = random_datum(1, 2, 1, seed=0)
    with pytest.raises(CohomologyError, match="requires a solution"):
        classify(bad, VarietySpec.projective_space(3, QQ))
