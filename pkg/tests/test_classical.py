import itertools
import random
from fractions import Fraction

import pytest

from voa import classical as cl
from voa import liedata
from voa.classical import ClassicalPoly, QSymbolPoly


def var(i, j):
    return ClassicalPoly.variable(i, j)


def test_weyl_q_examples():
    assert cl.weyl_q(1, 0, 0) == var(0, 0) * var(0, 0)
    q = cl.weyl_q(3, 0, 1)
    assert q == sum((var(i, 0) * var(i, 1) for i in range(3)), ClassicalPoly.zero())


def test_sl2_q_examples():
    h0 = var(cl.SL2_H, 0)
    x0, y0 = var(cl.SL2_X, 0), var(cl.SL2_Y, 0)
    assert cl.sl2_q(0, 0) == h0 * h0 + (x0 * y0).scale(4)


def test_sl2_c_shape():
    c = cl.sl2_c(0, 1, 2)
    assert len(c.terms) == 6
    assert set(c.terms.values()) == {Fraction(1), Fraction(-1)}
    with pytest.raises(ValueError):
        cl.sl2_c(1, 1, 2)


def test_det_relation_2x2():
    rel = cl.det_relation(1, (0, 1), (0, 1))
    q = QSymbolPoly.q
    assert rel == q(0, 0) * q(1, 1) - q(0, 1) * q(0, 1)
    assert cl.substitute(rel, 1).is_zero()
    with pytest.raises(ValueError):
        cl.det_relation(1, (0, 0), (0, 1))


@pytest.mark.parametrize("n", [1, 2])
def test_det_relations_vanish_sample(n):
    for I in itertools.combinations(range(4), n + 1):
        for J in itertools.combinations(range(4), n + 1):
            assert cl.substitute(cl.det_relation(n, I, J), n).is_zero()


def test_det_relation_nonzero_as_symbols():
    # the relation itself is a nonzero element of the free symbol algebra
    assert not cl.det_relation(2, (0, 1, 2), (0, 1, 2)).is_zero()


def test_sl2_relations_examples():
    assert cl.substitute_sl2(cl.sl2_relation_type1(0, 0, 0, 1, 2)).is_zero()
    assert cl.substitute_sl2(cl.sl2_relation_type2(0, 1, 2, 0, 1, 2)).is_zero()
    rel2 = cl.sl2_relation_type2(0, 1, 2, 0, 1, 2)
    c012 = ("C", 0, 1, 2)
    assert rel2.terms.get((c012, c012)) == 1


def test_sl2_relations_vanish_sample():
    rng = random.Random(5)
    for _ in range(40):
        idx = [rng.randrange(4) for _ in range(5)]
        assert cl.substitute_sl2(cl.sl2_relation_type1(*idx)).is_zero()
        idx = [rng.randrange(4) for _ in range(6)]
        assert cl.substitute_sl2(cl.sl2_relation_type2(*idx)).is_zero()


def test_c_symbol_antisymmetry():
    assert QSymbolPoly.c(1, 0, 2) == QSymbolPoly.c(0, 1, 2).scale(-1)
    assert QSymbolPoly.c(2, 0, 1) == QSymbolPoly.c(0, 1, 2)
    assert QSymbolPoly.c(0, 0, 2).is_zero()


def test_polarization_examples():
    for n in (1, 2, 3):
        assert cl.polarization(1, 0, cl.weyl_q(n, 0, 0)) == cl.weyl_q(n, 0, 1).scale(2)
        assert cl.d_ring_derivative(cl.weyl_q(n, 0, 0)) == cl.weyl_q(n, 0, 1).scale(2)
    # Euler operator on a polynomial homogeneous in the j=0 variables
    p = cl.weyl_q(2, 0, 0)
    assert cl.polarization(0, 0, p) == p.scale(2)


def test_lie_invariance_examples():
    o3 = liedata.orthogonal_action(3)
    assert cl.lie_invariance_check(o3, cl.weyl_q(3, 0, 1))
    ad = liedata.adjoint_action(liedata.sl2_spec())
    assert cl.lie_invariance_check(ad, cl.sl2_c(0, 1, 2))
    assert not cl.lie_invariance_check(liedata.orthogonal_action(2), var(0, 0))


def test_polarization_preserves_invariance():
    rng = random.Random(9)
    o2 = liedata.orthogonal_action(2)
    for _ in range(15):
        p = cl.weyl_q(2, rng.randint(0, 2), rng.randint(0, 2))
        p = p * cl.weyl_q(2, rng.randint(0, 2), rng.randint(0, 2))
        r, s = rng.randint(0, 3), rng.randint(0, 3)
        assert cl.lie_invariance_check(o2, cl.polarization(r, s, p))


def test_derivative_substitution_compatibility():
    rng = random.Random(17)
    for n in (1, 2):
        for _ in range(10):
            p = QSymbolPoly.q(rng.randint(0, 2), rng.randint(0, 2))
            if rng.random() < 0.5:
                p = p * QSymbolPoly.q(rng.randint(0, 2), rng.randint(0, 2))
            lhs = cl.d_ring_derivative(cl.substitute(p, n))
            rhs = cl.substitute(cl.q_symbol_derivative(p), n)
            assert lhs == rhs


def test_derivative_substitution_compatibility_sl2():
    p = QSymbolPoly.q(0, 1) * QSymbolPoly.c(0, 1, 2)
    lhs = cl.d_ring_derivative(cl.substitute_sl2(p))
    rhs = cl.substitute_sl2(cl.q_symbol_derivative(p))
    assert lhs == rhs


def test_minimal_dring_generators():
    # rank 1: of all q_{a,b} with weight <= 8 (ordered by weight, then a),
    # the greedy minimal derivation-ring generators are the q_{0,even} family
    cands = []
    for w in range(2, 9):
        m = w - 2
        for a in range(0, m // 2 + 1):
            cands.append(((w, a), cl.weyl_q(1, a, m - a)))
    cands.sort(key=lambda t: t[0])
    survivors = cl.minimal_dring_generators([p for _, p in cands])
    assert survivors == [cl.weyl_q(1, 0, m) for m in (0, 2, 4, 6)]
    assert cl.dring_contains(cl.weyl_q(1, 1, 1), [cl.weyl_q(1, 0, 0), cl.weyl_q(1, 0, 2)])
    assert not cl.dring_contains(cl.weyl_q(1, 0, 2), [cl.weyl_q(1, 0, 0)])


def test_poly_gradings():
    p = cl.weyl_q(2, 1, 2)
    assert p.poly_degree() == 2
    assert p.poly_weight() == 5  # weights j+1: (1+1) + (2+1)
    mixed = p + cl.weyl_q(2, 0, 0)
    assert mixed.poly_weight() is None


def test_rendering():
    p = var(0, 1) * var(0, 1) + ClassicalPoly.constant(Fraction(-1, 2))
    assert repr(p) == "-1/2 + 1*x[0,1]^2"
    q = QSymbolPoly.q(0, 2) * QSymbolPoly.c(0, 1, 3)
    assert "Q[0,2]" in repr(q) and "C[0,1,3]" in repr(q)
