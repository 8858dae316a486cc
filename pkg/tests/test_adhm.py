import random

import pytest

from adhm_lab.adhm import AdhmDatum, AdhmError, random_datum
from adhm_lab.fields import QQ, PrimeField
from adhm_lab.linalg import Matrix
from adhm_lab.variety import VarietySpec, variable_names
from adhm_lab.poly import parse_poly


def M(rows):
    return Matrix(QQ, [[QQ(v) for v in row] for row in rows])


def Z(nr, nc):
    return Matrix.zeros(QQ, nr, nc)


def scroll_datum():
    return AdhmDatum(QQ, 1, 1, 1,
                     A=[M([[1]]), M([[0]])], B=[M([[0]]), M([[1]])],
                     I=[Z(1, 1)] * 2, J=[Z(1, 1)] * 2,
                     Aprime=[Z(1, 1)] * 2, Bprime=[Z(1, 1)] * 2)


def test_shape_validation_names_block():
    with pytest.raises(AdhmError, match=r"B\[1\]: expected 2x2"):
        AdhmDatum(QQ, 2, 1, 1,
                  A=[Z(2, 2), Z(2, 2)], B=[Z(2, 2), Z(1, 2)],
                  I=[Z(2, 1), Z(2, 1)], J=[Z(1, 2), Z(1, 2)])
    with pytest.raises(AdhmError, match=r"I: expected 2 component"):
        AdhmDatum(QQ, 1, 1, 1, A=[Z(1, 1)] * 2, B=[Z(1, 1)] * 2,
                  I=[Z(1, 1)], J=[Z(1, 1)] * 2)


def test_residual_matches_pointwise_formula():
    # oracle: evaluate the residual polynomials at random points and compare
    # with the matrix expression assembled from the evaluated blocks
    rng = random.Random(2)
    for seed in range(10):
        datum = random_datum(2, 2, 1, seed=seed)
        res = datum.mu_residual()
        for _ in range(5):
            coords = [QQ.random(rng) for _ in range(datum.nvars)]
            if all(v == QQ.zero for v in coords):
                coords[0] = QQ.one
            from adhm_lab.variety import PointOnY
            pd = datum.evaluate(PointOnY(QQ, coords))
            x, y = coords[-2], coords[-1]
            expect = (pd.A * pd.Bprime - pd.B * pd.Aprime + pd.I * pd.J
                      + (pd.Bprime - pd.B).scale(x)
                      + (pd.A - pd.Aprime).scale(y))
            for i in range(datum.c):
                for j in range(datum.c):
                    assert res[i][j].evaluate(coords) == expect[i, j]


def test_solution_checks_scroll():
    names = variable_names(3)
    scroll = VarietySpec(3, [parse_poly("z0*y - z1*x", names, QQ)], QQ)
    ambient = VarietySpec.projective_space(3, QQ)
    d = scroll_datum()
    assert d.is_adhm_solution(scroll)
    assert not d.is_adhm_solution(ambient)
    wrong_dim = VarietySpec.projective_space(4, QQ)
    with pytest.raises(AdhmError, match="d = 1"):
        d.is_adhm_solution(wrong_dim)


def test_coordinate_equations_require_matching_primes():
    d = scroll_datum()
    with pytest.raises(AdhmError, match="matching primed blocks"):
        d.pn_coordinate_equations()
    sol = random_datum(1, 3, 1, mode="pn_solution_c1", seed=5)
    eqs = sol.pn_coordinate_equations()
    assert len(eqs) == 3
    for label, res in eqs:
        assert res.is_zero(), label
    assert sol.on_pn_solutions_forces_prime_equality()


def test_random_solution_mode():
    ambient = VarietySpec.projective_space(4, QQ)
    for seed in range(5):
        sol = random_datum(1, 4, 2, mode="pn_solution_c1", seed=seed)
        assert sol.is_adhm_solution(ambient)
    with pytest.raises(AdhmError, match="empty"):
        random_datum(1, 2, 2, mode="pn_solution_c1")
    with pytest.raises(AdhmError, match="c = 1"):
        random_datum(2, 3, 1, mode="pn_solution_c1")


def test_json_roundtrip_and_prime_omission():
    d = random_datum(2, 1, 1, seed=8)
    obj = d.to_json()
    assert "Aprime" in obj
    d2 = AdhmDatum.from_json(obj, QQ)
    assert d2 == d
    sol = random_datum(1, 3, 1, mode="pn_solution_c1", seed=1)
    obj2 = sol.to_json()
    assert "Aprime" not in obj2 and "Bprime" not in obj2
    assert AdhmDatum.from_json(obj2, QQ) == sol


def test_json_errors_are_path_addressed():
    good = random_datum(1, 1, 0, seed=0).to_json()
    bad = {**good, "A": [[[None]]]}
    with pytest.raises(AdhmError, match=r"A\[0\]\[0\]\[0\]"):
        AdhmDatum.from_json(bad, QQ)
    ragged = {**good, "A": [[[1, 2]]]}
    with pytest.raises(AdhmError, match=r"A\[0\]\[0\]: expected 1 entries"):
        AdhmDatum.from_json(ragged, QQ)


def test_field_reduction():
    d = random_datum(2, 2, 1, seed=4)
    fp = PrimeField(97)
    dp = d.map_field(fp)
    assert dp.field == fp
    res_q = d.mu_residual()
    res_p = dp.mu_residual()
    for i in range(2):
        for j in range(2):
            assert res_q[i][j].map_field(fp) == res_p[i][j]
