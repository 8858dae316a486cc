import pytest

from adhm_lab.adhm import AdhmDatum, random_datum
from adhm_lab.fields import QQ, PrimeField
from adhm_lab.linalg import Matrix
from adhm_lab.monad import (MonadError, build_monad, degeneration_info,
                            fiber_cohomology_dim, maximal_minors, poly_det,
                            restrict_to_line, verify_complex)
from adhm_lab.poly import Poly, parse_poly
from adhm_lab.variety import PointOnY, VarietySpec, variable_names


def make_variety(n, gens, field=QQ):
    names = variable_names(n)
    return VarietySpec(n, [parse_poly(g, names, field) for g in gens], field)


def test_product_equals_residual():
    # structural identity: the composed polynomial matrix equals the
    # quadratic residual entry by entry
    for seed in range(8):
        datum = random_datum(2, 2, 1, seed=seed)
        monad = build_monad(datum)
        assert monad.beta_alpha() == datum.mu_residual()


def test_verify_complex_iff_solution():
    scroll = make_variety(3, ["z0*y - z1*x"])
    ambient = VarietySpec.projective_space(3, QQ)
    for seed in range(10):
        datum = random_datum(1, 2, 1, seed=seed)
        monad = build_monad(datum)
        assert verify_complex(monad, scroll) == datum.is_adhm_solution(scroll)
        assert verify_complex(monad, ambient) == datum.is_adhm_solution(ambient)


def test_fiber_dimension_is_rank_on_line():
    datum = random_datum(1, 3, 1, mode="pn_solution_c1", seed=4)
    monad = build_monad(datum)
    for (xv, yv) in ((1, 0), (0, 1), (2, 5)):
        p = PointOnY.line_point(QQ, 3, QQ(xv), QQ(yv))
        # on the marked line the maps reduce to the x, y identity blocks,
        # so the middle fiber dimension is exactly r
        assert fiber_cohomology_dim(monad, p) == datum.r


def test_fiber_composition_guard():
    datum = random_datum(1, 2, 1, seed=0)  # generic: not a solution
    monad = build_monad(datum)
    ambient = VarietySpec.projective_space(3, QQ)
    assert not verify_complex(monad, ambient)
    with pytest.raises(MonadError, match="does not solve"):
        fiber_cohomology_dim(monad, PointOnY(QQ, [1, 1, 1, 1]))


def test_poly_det_and_minors():
    names = variable_names(3)
    x = parse_poly("x", names, QQ)
    y = parse_poly("y", names, QQ)
    z0 = parse_poly("z0", names, QQ)
    entries = [[x, y], [z0, x]]
    det = poly_det(entries, QQ, 4)
    assert det == x * x - y * z0
    tall = [[x], [y], [z0]]
    assert sorted(m.render(names) for m in maximal_minors(tall, QQ, 4)) \
        == ["x", "y", "z0"]


def test_degeneration_scroll_codim_one():
    scroll = make_variety(3, ["z0*y - z1*x"])
    Z1 = Matrix.zeros(QQ, 1, 1)
    datum = AdhmDatum(QQ, 1, 1, 1,
                      A=[Matrix(QQ, [[QQ(1)]]), Z1],
                      B=[Z1, Matrix(QQ, [[QQ(1)]])],
                      I=[Z1, Z1], J=[Z1, Z1],
                      Aprime=[Z1, Z1], Bprime=[Z1, Z1])
    monad = build_monad(datum)
    info = degeneration_info(monad, scroll)
    assert info.codim == 1 and info.conclusive
    assert info.nondegenerate is False
    assert info.witnesses
    for p in info.witnesses:
        assert p.x == p.field.zero and p.y == p.field.zero
        assert monad.datum.map_field(p.field) is not None


def test_degeneration_empty_locus():
    # alpha = (x; y; z0) on P^2 has no common zero at all
    datum = AdhmDatum(QQ, 1, 1, 0,
                      A=[Matrix.zeros(QQ, 1, 1)], B=[Matrix.zeros(QQ, 1, 1)],
                      I=[Matrix.zeros(QQ, 1, 1)], J=[Matrix(QQ, [[QQ(1)]])])
    ambient = VarietySpec.projective_space(2, QQ)
    monad = build_monad(datum)
    info = degeneration_info(monad, ambient)
    assert info.codim == "empty" and info.nondegenerate and info.conclusive
    assert info.certifying_degree == 1
    assert not info.witnesses


def test_restrict_to_line_canonical_forms():
    datum = random_datum(1, 3, 1, mode="pn_solution_c1", seed=9)
    monad = build_monad(datum)
    line = restrict_to_line(monad)
    assert line["canonical"]
    for f in line["framing"]:
        assert f["fiber_dim"] == datum.r
        emb = f["embedding"]
        assert emb.nrows == 2 * datum.c + datum.r and emb.ncols == datum.r
        # the embedding lands in the kernel of the restricted wide map
        pd = datum.evaluate(f["point"])
        from adhm_lab.monad import fiber_beta
        bp = fiber_beta(pd)
        for j in range(emb.ncols):
            assert all(v == QQ.zero for v in bp.apply(emb.column(j)))


def test_emitted_maps_render():
    datum = random_datum(1, 2, 1, seed=1)
    monad = build_monad(datum)
    obj = monad.to_json(variable_names(3))
    assert len(obj["alpha"]) == 2 * 1 + 2 and len(obj["alpha"][0]) == 1
    assert len(obj["beta"]) == 1 and len(obj["beta"][0]) == 4
    assert obj["blocks"]["beta"] == ("-B - y", "A + x", "I")
