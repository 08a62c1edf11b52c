"""Exact computation kernel for affine and Heisenberg vertex algebras.

Circle products, Wick products and OPEs over the rational-function field
Q(k); classical invariant theory for the orthogonal and adjoint-sl2 actions;
invariant subspaces, quantum corrections, decoupling relations; and the
remainder recursion with its closed n=1 form.
"""

from .scalars import (
    K,
    NEG_INFINITY,
    ONE,
    ZERO,
    LevelPolynomial,
    LevelScalar,
    PoleAtLevel,
    Rational,
    arith,
    evaluate_at,
    k_degree,
)
from .errors import DescentStuck, ParityError, ResourceError
from .liedata import (
    ActionSpec,
    LieSpec,
    abelian,
    adjoint_action,
    orthogonal_action,
    sl2_spec,
    validate,
    validate_action,
)
from .vertexcore import (
    State,
    apply_group_element,
    circle_product,
    degree,
    derivative,
    leading_symbol,
    lie_act,
    locality_order,
    mode_action,
    ope,
    sugawara,
    weight,
    wick,
    wick_chain,
)
from .classical import (
    ClassicalPoly,
    QSymbolPoly,
    d_ring_derivative,
    det_relation,
    dring_contains,
    lie_invariance_check,
    minimal_dring_generators,
    polarization,
    sl2_c,
    sl2_q,
    sl2_relation_type1,
    sl2_relation_type2,
    substitute,
    substitute_sl2,
    weyl_q,
)
from .orbifold import (
    DecoupleResult,
    FormalNOP,
    GeneratorDictionary,
    decouple,
    evaluate_nop,
    express_in_generators,
    invariant_subspace,
    j_gen,
    omega,
    pr_coefficient,
    quantum_correction,
    remainder_direct,
    sl2_tilde_c,
    sl2_tilde_q,
)
from .remainder import ScanResult, r1_closed_form, rn, scan_f, table1

__version__ = "0.1.0"
