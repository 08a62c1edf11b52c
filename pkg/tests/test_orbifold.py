import math
import random
from fractions import Fraction

import pytest

from voa import classical as cl
from voa import liedata, orbifold as ob
from voa import vertexcore as vc
from voa.classical import det_relation
from voa.errors import ParityError, ResourceError
from voa.scalars import K, ONE
from voa.vertexcore import State

H1 = liedata.abelian(1)
H2 = liedata.abelian(2)
O1 = liedata.orthogonal_action(1)
O2 = liedata.orthogonal_action(2)
SL2 = liedata.sl2_spec()
AD = liedata.adjoint_action(SL2)


def st(mono, c=1):
    return State({mono: c})


# -- invariant subspaces ---------------------------------------------------------


def test_invariant_subspace_examples():
    assert ob.invariant_subspace(H1, O1, 2) == [st(((0, 1), (0, 1)))]
    basis3 = ob.invariant_subspace(H1, O1, 3)
    assert basis3 == [st(((0, 2), (0, 1)))]
    assert ob.invariant_subspace(SL2, AD, 1) == []


def test_invariant_subspace_closed_under_circle_products():
    rng = random.Random(31)
    basis = []
    for w in (2, 3, 4, 5, 6):
        basis += ob.invariant_subspace(H2, O2, w)
    for _ in range(10):
        a, b = rng.choice(basis), rng.choice(basis)
        for n in (-2, -1, 0, 1, 2):
            prod = vc.circle_product(H2, a, n, b)
            if prod.is_zero():
                continue
            for rho in O2.lie_generators:
                assert vc.lie_act(H2, rho, prod).is_zero()
            for M in O2.finite_elements:
                assert vc.apply_group_element(H2, M, prod) == prod


# -- quadratic generators ----------------------------------------------------------


def test_omega_examples():
    assert ob.omega(1, 0, 0) == st(((0, 1), (0, 1)))
    # :da da: expands to the depth-2 squared monomial with unit coefficient
    assert ob.omega(1, 1, 1) == st(((0, 2), (0, 2)))
    assert ob.j_gen(1, 4) == ob.omega(1, 0, 4)
    assert vc.weight(ob.omega(2, 1, 3)) == 6
    assert vc.degree(ob.omega(2, 1, 3)) == 2
    with pytest.raises(ParityError):
        ob.j_gen(1, 3)


def test_omega_dictionary():
    d = ob.omega_dictionary(1, 6)
    assert set(d.symbols()) == {
        "Om[0,0]", "Om[0,1]", "Om[0,2]", "Om[1,1]", "Om[0,3]", "Om[1,2]",
        "Om[0,4]", "Om[1,3]", "Om[2,2]",
    }
    assert d["Om[1,3]"].weight == 6 and d["Om[1,3]"].degree == 2


def test_generator_dictionary_validation():
    d = ob.GeneratorDictionary(H1)
    with pytest.raises(ValueError):
        d.add("bad", ob.omega(1, 0, 0), weight=5)
    mixed = ob.omega(1, 0, 0) + ob.omega(1, 0, 2)
    with pytest.raises(ValueError):
        d.add("mixed", mixed)


# -- formal polynomials and evaluation ------------------------------------------------


def test_evaluate_nop_examples():
    d = ob.omega_dictionary(1, 5)
    single = ob.FormalNOP.single("Om[0,0]")
    assert ob.evaluate_nop(single, d) == ob.omega(1, 0, 0)
    dOm = ob.FormalNOP.single("Om[0,0]", deriv=1)
    assert ob.evaluate_nop(dOm, d) == ob.omega(1, 0, 1).scale(2)
    with pytest.raises(KeyError):
        ob.evaluate_nop(ob.FormalNOP.single("Nope[0]"), d)


def test_express_in_generators_examples():
    d = ob.GeneratorDictionary(H1)
    d.add("Om[0,0]", ob.omega(1, 0, 0))
    d.add("Om[0,2]", ob.omega(1, 0, 2))
    got = ob.express_in_generators(ob.omega(1, 1, 1), d, max_degree=4)
    want = ob.FormalNOP(
        {(("Om[0,0]", 2),): Fraction(1, 2), (("Om[0,2]", 0),): Fraction(-1)}
    )
    assert got == want
    # target already in the dictionary
    triv = ob.express_in_generators(ob.omega(1, 0, 2), d, max_degree=4)
    assert triv == ob.FormalNOP.single("Om[0,2]")
    # no solution: the weight-4 generator is not generated by j^0 alone
    d0 = d.subset(["Om[0,0]"])
    assert ob.express_in_generators(ob.omega(1, 0, 2), d0, max_degree=4) is None


def test_quantum_correction_pipeline():
    rel = det_relation(1, (0, 1), (0, 1))
    d = ob.omega_dictionary(1, 6)
    lifted = ob.quantum_correction(rel, d)
    assert ob.evaluate_nop(lifted, d).is_zero()
    # top part is the normal ordering of the relation
    top = {m: c for m, c in lifted.terms.items() if len(m) == 2}
    assert top == {
        (("Om[0,0]", 0), ("Om[1,1]", 0)): ONE,
        (("Om[0,1]", 0), ("Om[0,1]", 0)): -ONE,
    }
    # degree-one tail projects to the remainder value (5/4 after k -> 1)
    tail = ob.FormalNOP({m: c for m, c in lifted.terms.items() if len(m) == 1})
    assert ob.pr_coefficient(tail, 4) == K.scale(Fraction(5, 4))
    # the classical image of the top part cancels exactly: substitute(rel) = 0
    evaluated_top = ob.evaluate_nop(ob.FormalNOP(top), d)
    assert evaluated_top.degree_component(4).is_zero()


def _factorial_adjusted_substitute(p, n):
    out = cl.ClassicalPoly.zero()
    for key, c in p.terms.items():
        term = cl.ClassicalPoly.constant(c)
        for sym in key:
            a, b = sym[1], sym[2]
            term = term * cl.weyl_q(n, a, b).scale(
                math.factorial(a) * math.factorial(b)
            )
        out = out + term
    return out


def test_normal_ordering_leading_symbol():
    # for a non-relation, the evaluated normal ordering has the classical
    # product as leading symbol, up to the derivative normalization
    p = cl.QSymbolPoly.q(0, 0) * cl.QSymbolPoly.q(1, 1)
    d = ob.omega_dictionary(2, 6)
    evaluated = ob.evaluate_nop(ob.normal_ordering(p), d)
    assert vc.leading_symbol(evaluated) == _factorial_adjusted_substitute(p, 2)


def test_quantum_correction_zero_relation():
    d = ob.omega_dictionary(1, 4)
    assert ob.quantum_correction(cl.QSymbolPoly.zero(), d) == ob.FormalNOP.zero()


def test_pr_coefficient_examples():
    for m in (4, 6):
        assert ob.pr_coefficient(ob.FormalNOP.single(f"Om[0,{m}]"), m) == ONE
        assert ob.pr_coefficient(
            ob.FormalNOP.single(f"Om[0,{m - 2}]", deriv=2), m
        ).is_zero()
        assert ob.pr_coefficient(ob.FormalNOP.single(f"Om[1,{m - 1}]"), m) == -ONE
        assert ob.pr_coefficient(ob.FormalNOP.single(f"Om[2,{m - 2}]"), m) == ONE
    with pytest.raises(ParityError):
        ob.pr_coefficient(ob.FormalNOP.single("Om[0,3]"), 3)


def test_remainder_direct_examples():
    assert ob.remainder_direct(1, (0, 1), (0, 1)) == Fraction(5, 4)
    from voa.remainder import r1_closed_form

    assert ob.remainder_direct(1, (0, 1), (0, 3)) == r1_closed_form((0, 1), (0, 3))
    with pytest.raises(ParityError):
        ob.remainder_direct(1, (0, 2), (0, 1))
    with pytest.raises(ResourceError):
        ob.remainder_direct(1, (0, 9), (0, 9))


@pytest.mark.slow
def test_remainder_direct_n2_diagonal():
    assert ob.remainder_direct(2, (0, 1, 2), (0, 1, 2)) == Fraction(149, 600)


@pytest.mark.slow
def test_remainder_direct_n2_off_diagonal_matches_recursion():
    # off-diagonal rank-2 cases probe the recursion's sign conventions against
    # the from-scratch computation, including the (I, J) symmetry
    from voa.remainder import rn

    for I, J in [((0, 1, 2), (0, 1, 4)), ((0, 2, 3), (0, 1, 2))]:
        direct = ob.remainder_direct(2, I, J)
        assert direct == rn(2, I, J)
        assert direct == ob.remainder_direct(2, J, I)


def test_decouple_examples():
    d = ob.GeneratorDictionary(H1)
    d.add(ob.j_symbol(0), ob.j_gen(1, 0))
    d.add(ob.j_symbol(2), ob.j_gen(1, 2))
    res = ob.decouple(H1, O1, d, ob.j_gen(1, 4), max_degree=6)
    assert res is not None
    assert ob.evaluate_nop(res.relation, d) == ob.j_gen(1, 4)
    assert res.excluded_levels == [Fraction(0)]
    # stability: a larger degree bound returns the same relation and roots
    res2 = ob.decouple(H1, O1, d, ob.j_gen(1, 4), max_degree=8)
    assert res2.relation == res.relation
    assert res2.excluded_levels == res.excluded_levels
    # trivial single-symbol relation
    triv = ob.decouple(H1, O1, d, ob.j_gen(1, 2), max_degree=4)
    assert triv.relation == ob.FormalNOP.single(ob.j_symbol(2))
    assert triv.excluded_levels == []
    # no solution is a value, not an error
    assert ob.decouple(H1, O1, d.subset([ob.j_symbol(0)]), ob.j_gen(1, 2)) is None


def test_decouple_rejects_noninvariant_target():
    d = ob.GeneratorDictionary(H1)
    d.add(ob.j_symbol(0), ob.j_gen(1, 0))
    odd = st(((0, 2), (0, 1), (0, 1)))
    with pytest.raises(ValueError):
        ob.decouple(H1, O1, d, odd, max_degree=4)


def test_sl2_tilde_generators():
    q = ob.sl2_tilde_q(0, 0)
    for rho in AD.lie_generators:
        assert vc.lie_act(SL2, rho, q).is_zero()
    assert vc.leading_symbol(q) == cl.sl2_q(0, 0)
    assert vc.leading_symbol(ob.sl2_tilde_q(1, 2)) == cl.sl2_q(1, 2).scale(2)
    c = ob.sl2_tilde_c(0, 1, 2)
    assert vc.weight(c) == 6
    assert vc.leading_symbol(c) == cl.sl2_c(0, 1, 2).scale(2)
    with pytest.raises(ValueError):
        ob.sl2_tilde_c(1, 0, 2)


def test_formal_nop_rendering_and_json():
    nop = ob.FormalNOP(
        {(("J[0]", 2),): Fraction(-7, 30), (("J[0]", 0), ("J[2]", 0)): ONE}
    )
    text = repr(nop)
    assert ":D^2 J[0]:" in text and ":J[0] J[2]:" in text
    data = nop.to_json()
    assert data[0]["monomial"] in ([["J[0]", 0], ["J[2]", 0]], [["J[0]", 2]])
