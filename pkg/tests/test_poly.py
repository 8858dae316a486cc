import random
from math import comb

import pytest

from adhm_lab.fields import QQ, PrimeField
from adhm_lab.poly import (Poly, PolyError, graded_ideal_dim, monomial_index,
                           monomials, parse_poly)

NAMES = ["z0", "z1", "x", "y"]


def test_monomials_count_and_order():
    for deg in range(5):
        ms = monomials(4, deg)
        assert len(ms) == comb(deg + 3, 3)
        assert all(sum(m) == deg for m in ms)
        assert list(ms) == sorted(ms, reverse=True)
        idx = monomial_index(4, deg)
        for i, m in enumerate(ms):
            assert idx[m] == i


def test_parse_render_roundtrip():
    texts = ["z0*y - z1*x", "z0*y + z1*x + z2^2", "-2*z0*x*y + x^3 + y^3",
             "3/2*z0^2 - y^2"]
    names5 = ["z0", "z1", "z2", "x", "y"]
    for t in texts:
        p = parse_poly(t, names5, QQ)
        assert p.render(names5) == t
        assert parse_poly(p.render(names5), names5, QQ) == p


def test_parse_rejects_garbage():
    with pytest.raises(PolyError):
        parse_poly("z0*", NAMES, QQ)
    with pytest.raises(PolyError):
        parse_poly("w0 + x", NAMES, QQ)
    with pytest.raises(PolyError):
        parse_poly("x / y", NAMES, QQ)


def test_arithmetic_matches_evaluation():
    rng = random.Random(1)
    f = parse_poly("z0*y - z1*x", NAMES, QQ)
    g = parse_poly("x^2 + z0*z1", NAMES, QQ)
    h = f * g + f
    for _ in range(20):
        pt = [QQ.random(rng) for _ in range(4)]
        assert h.evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) + f.evaluate(pt)


def test_substitute_partial():
    f = parse_poly("z0*y - z1*x", NAMES, QQ)
    s = f.substitute({0: QQ.zero, 1: QQ.zero})
    assert s.is_zero()
    s2 = f.substitute({1: QQ(1)})
    assert s2.render(NAMES) == "z0*y - x"


@pytest.mark.parametrize("field", [QQ, PrimeField(101)])
def test_graded_ideal_dim_principal(field):
    # for a single degree-e form, the degree-D piece it spans has the
    # dimension of the degree D-e piece of the polynomial ring
    names5 = ["z0", "z1", "z2", "x", "y"]
    f = parse_poly("z0*y + z1*x + z2^2", names5, field)
    for D in range(2, 6):
        assert graded_ideal_dim([f], 5, D, field) == comb(D - 2 + 4, 4)


def test_graded_ideal_dim_full_piece():
    gens = [parse_poly(t, NAMES, QQ) for t in ("x^2", "y^2", "z0^2", "z1^2",
                                               "x*y", "x*z0", "x*z1",
                                               "y*z0", "y*z1", "z0*z1")]
    assert graded_ideal_dim(gens, 4, 2, QQ) == comb(2 + 3, 3)


def test_homogeneous_degree_checks():
    f = parse_poly("z0*y - z1*x", NAMES, QQ)
    assert f.is_homogeneous() and f.degree() == 2
    g = f + Poly.constant(QQ, 4, QQ(1))
    assert not g.is_homogeneous()
