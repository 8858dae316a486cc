import random
from itertools import product

import pytest

from adhm_lab.adhm import AdhmDatum, random_datum
from adhm_lab.fields import PrimeField, QQ
from adhm_lab.linalg import Matrix, Subspace
from adhm_lab.stability import (StabilityError, costable_fixpoint,
                                costable_fixpoint_at_point, full_report,
                                global_weak_stability, is_costable, is_stable,
                                is_weak_costable_at, is_weak_stable_at,
                                stabilizing_subspace_at_point,
                                stabilizing_subspace_global)
from adhm_lab.variety import PointOnY, VarietySpec, variable_names
from adhm_lab.poly import parse_poly

F3 = PrimeField(3)


def all_subspaces(field, c):
    """Every subspace of field^c, as Subspace objects (brute force)."""
    vectors = [list(v) for v in product([field(t) for t in range(field.p)],
                                        repeat=c)]
    nonzero = [v for v in vectors if any(x != field.zero for x in v)]
    seen = {}
    # every subspace is the span of some subset; spans of up to c vectors
    # suffice, and duplicates collapse through the canonical echelon basis
    from itertools import combinations
    for k in range(c + 1):
        for combo in combinations(nonzero, k):
            s = Subspace(field, c, list(combo))
            seen[tuple(tuple(b) for b in s.basis)] = s
    return list(seen.values())


def subspace_count(p, c):
    # Gaussian binomial totals for sanity: sum over k of [c choose k]_p
    def gauss(n, k):
        num = den = 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        return num // den
    return sum(gauss(c, k) for k in range(c + 1))


def test_all_subspaces_enumeration_is_complete():
    for c in (1, 2, 3):
        assert len(all_subspaces(F3, c)) == subspace_count(3, c)


def invariant(space, ops):
    for op in ops:
        for b in space.basis:
            if not space.contains(op.apply(b)):
                return False
    return True


def brute_stable(datum, spaces):
    """No proper subspace is invariant under all A, B and contains im I."""
    ops = list(datum.A) + list(datum.B)
    cols = [col for I_k in datum.I for col in I_k.columns()]
    for s in spaces:
        if s.is_full():
            continue
        if all(s.contains(col) for col in cols) and invariant(s, ops):
            return False
    return True


def brute_costable(datum, spaces):
    """No nonzero invariant subspace of the primed maps inside every ker J."""
    ops = list(datum.Aprime) + list(datum.Bprime)
    zero = datum.field.zero
    for s in spaces:
        if s.is_zero():
            continue
        inside = all(all(x == zero for x in J_k.apply(b))
                     for J_k in datum.J for b in s.basis)
        if inside and invariant(s, ops):
            return False
    return True


@pytest.mark.parametrize("c,r", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_krylov_and_fixpoint_match_brute_force(c, r):
    spaces = all_subspaces(F3, c)
    agree = 0
    for seed in range(30):
        datum = random_datum(c, r, 1, seed=seed, field=F3)
        assert is_stable(datum) == brute_stable(datum, spaces)
        assert is_costable(datum) == brute_costable(datum, spaces)
        agree += 1
    assert agree == 30


def test_pointwise_subspaces_on_c2_example():
    datum = AdhmDatum(QQ, 2, 1, 1,
                      A=[Matrix.identity(QQ, 2),
                         Matrix(QQ, [[QQ(0), QQ(1)], [QQ(0), QQ(0)]])],
                      B=[Matrix.zeros(QQ, 2, 2)] * 2,
                      I=[Matrix(QQ, [[QQ(1)], [QQ(1)]]),
                         Matrix.zeros(QQ, 2, 1)],
                      J=[Matrix.zeros(QQ, 1, 2)] * 2)
    generic = stabilizing_subspace_at_point(datum, PointOnY(QQ, [3, 0, 1, 7]))
    assert generic.dim == 1 and generic.basis == [[QQ(1), QQ(1)]]
    special = stabilizing_subspace_at_point(datum, PointOnY(QQ, [0, 5, 1, 7]))
    assert special.dim == 0
    assert stabilizing_subspace_global(datum).is_full()


def test_weak_conditions_are_rank_tests():
    datum = random_datum(1, 3, 1, mode="pn_solution_c1", seed=2)
    p = PointOnY(QQ, [1, 2, 3, 4])
    from adhm_lab.monad import fiber_alpha, fiber_beta
    pd = datum.evaluate(p)
    assert is_weak_stable_at(datum, p) == (fiber_beta(pd).rank() == 1)
    assert is_weak_costable_at(datum, p) == (fiber_alpha(pd).rank() == 1)


def test_global_weak_certificate_on_p2():
    datum = AdhmDatum(QQ, 1, 1, 0,
                      A=[Matrix.zeros(QQ, 1, 1)], B=[Matrix.zeros(QQ, 1, 1)],
                      I=[Matrix(QQ, [[QQ(1)]])], J=[Matrix.zeros(QQ, 1, 1)])
    ambient = VarietySpec.projective_space(2, QQ)
    verdict, info = global_weak_stability(datum, ambient)
    assert verdict == "certified_true"
    assert info["certifying_degree"] == 1


def test_global_weak_false_with_witness():
    names = variable_names(4)
    quadric = VarietySpec(4, [parse_poly("z0*y + z1*x + z2^2", names, QQ)], QQ)
    Z1 = Matrix.zeros(QQ, 1, 1)
    datum = AdhmDatum(QQ, 1, 1, 2,
                      A=[Matrix(QQ, [[QQ(1)]]), Z1, Z1],
                      B=[Z1, Matrix(QQ, [[QQ(-1)]]), Z1],
                      I=[Z1, Z1, Matrix(QQ, [[QQ(1)]])],
                      J=[Z1, Z1, Matrix(QQ, [[QQ(1)]])],
                      Aprime=[Z1] * 3, Bprime=[Z1] * 3)
    witness = PointOnY(QQ, [-1, 1, 0, 1, 1])
    verdict, info = global_weak_stability(datum, quadric, points=[witness])
    assert verdict == "false"
    assert info["witness"] is witness


def test_full_report_structure_and_lattice():
    datum = random_datum(1, 3, 1, mode="pn_solution_c1", seed=3)
    ambient = VarietySpec.projective_space(3, QQ)
    report = full_report(datum, ambient, samples=10, seed=1)
    keys = set(report.verdicts)
    for flavor in ("stable", "costable", "locally_stable", "locally_costable",
                   "locally_weak_stable", "locally_weak_costable",
                   "globally_stable", "globally_costable",
                   "globally_weak_stable", "globally_weak_costable",
                   "regular", "locally_regular", "locally_weak_regular",
                   "globally_regular", "globally_weak_regular"):
        assert flavor in keys
    obj = report.to_json()
    assert set(obj) == {"verdicts", "S_Y", "sampled_point_subspaces", "T_Y",
                        "L_Y", "witnesses", "notes"}
