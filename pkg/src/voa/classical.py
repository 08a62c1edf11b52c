"""Classical invariant theory in the polynomial ring on variables x_{i,j}.

The ring is Sym of countably many copies of the base module, with x_{i,j}
the i-th coordinate of the j-th copy.  Polynomial weight counts x_{i,j} with
weight j+1, matching the vertex-algebra weight of the corresponding state.

Two symbol alphabets ride on top: the orthogonal quadratics Q_{a,b} and the
adjoint-sl2 cubics C_{klm}, with their determinantal relation families.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .liedata import ActionSpec

# sl2 classical variable families, in the basis order of liedata.sl2_spec()
SL2_X, SL2_Y, SL2_H = 0, 1, 2


class ClassicalPoly:
    """Exact polynomial in the variables x_{i,j}; terms map exponent keys to Q.

    A key is a sorted tuple of ((i, j), exponent) pairs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[key] = c

    @staticmethod
    def zero() -> "ClassicalPoly":
        return ClassicalPoly()

    @staticmethod
    def constant(c) -> "ClassicalPoly":
        return ClassicalPoly({(): Fraction(c)})

    @staticmethod
    def variable(i: int, j: int) -> "ClassicalPoly":
        return ClassicalPoly({(((i, j), 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, ClassicalPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        p = ClassicalPoly()
        p.terms = out
        return p

    def __neg__(self):
        p = ClassicalPoly()
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ClassicalPoly":
        c = Fraction(c)
        p = ClassicalPoly()
        if c:
            p.terms = {k: v * c for k, v in self.terms.items()}
        return p

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other: "ClassicalPoly") -> "ClassicalPoly":
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                exps = dict(k1)
                for var, e in k2:
                    exps[var] = exps.get(var, 0) + e
                key = tuple(sorted(exps.items()))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        p = ClassicalPoly()
        p.terms = out
        return p

    # -- gradings ------------------------------------------------------------

    def poly_degree(self) -> int:
        return max((sum(e for _, e in k) for k in self.terms), default=0)

    def poly_weight(self):
        """Common weight sum((j+1)*e); None when inhomogeneous, 0 when zero."""
        ws = {sum((j + 1) * e for (_, j), e in k) for k in self.terms}
        if not ws:
            return 0
        return ws.pop() if len(ws) == 1 else None

    def families(self):
        return sorted({i for k in self.terms for (i, _), _ in k})

    # -- derivations and substitutions ----------------------------------------

    def partial(self, i: int, j: int) -> "ClassicalPoly":
        out = {}
        for key, c in self.terms.items():
            exps = dict(key)
            e = exps.get((i, j), 0)
            if not e:
                continue
            if e == 1:
                del exps[(i, j)]
            else:
                exps[(i, j)] = e - 1
            k2 = tuple(sorted(exps.items()))
            s = out.get(k2, Fraction(0)) + c * e
            if s:
                out[k2] = s
            elif k2 in out:
                del out[k2]
        p = ClassicalPoly()
        p.terms = out
        return p

    def map_variables(self, fn) -> "ClassicalPoly":
        """Ring homomorphism determined by x_{i,j} |-> fn(i, j) (a ClassicalPoly)."""
        out = ClassicalPoly.zero()
        for key, c in self.terms.items():
            term = ClassicalPoly.constant(c)
            for (i, j), e in key:
                img = fn(i, j)
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def derive_variables(self, fn) -> "ClassicalPoly":
        """Derivation determined by x_{i,j} |-> fn(i, j) (a ClassicalPoly)."""
        out = ClassicalPoly.zero()
        for (i, j) in sorted({v for k in self.terms for v, _ in k}):
            out = out + self.partial(i, j) * fn(i, j)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            factors = "".join(
                f"x[{i},{j}]" + (f"^{e}" if e > 1 else "") for (i, j), e in key
            )
            parts.append(f"{c}" if not factors else f"{c}*{factors}")
        return " + ".join(parts)


# -- generators -----------------------------------------------------------------


def weyl_q(n: int, a: int, b: int) -> ClassicalPoly:
    """The orthogonal quadratic sum_i x_{i,a} x_{i,b} over n families."""
    if a < 0 or b < 0:
        raise ValueError("indices must be nonnegative")
    out = ClassicalPoly.zero()
    for i in range(n):
        out = out + ClassicalPoly.variable(i, a) * ClassicalPoly.variable(i, b)
    return out


def sl2_q(i: int, j: int) -> ClassicalPoly:
    """Adjoint quadratic: h_i h_j + 2 x_i y_j + 2 x_j y_i."""
    h_i, h_j = ClassicalPoly.variable(SL2_H, i), ClassicalPoly.variable(SL2_H, j)
    x_i, x_j = ClassicalPoly.variable(SL2_X, i), ClassicalPoly.variable(SL2_X, j)
    y_i, y_j = ClassicalPoly.variable(SL2_Y, i), ClassicalPoly.variable(SL2_Y, j)
    return h_i * h_j + (x_i * y_j).scale(2) + (x_j * y_i).scale(2)


def sl2_c(k: int, l: int, m: int) -> ClassicalPoly:
    """Adjoint cubic: the 3x3 determinant with rows (h, x, y) at orders k, l, m."""
    if not (k < l < m):
        raise ValueError("need k < l < m")
    rows = (k, l, m)
    cols = (SL2_H, SL2_X, SL2_Y)
    out = ClassicalPoly.zero()
    for perm, sign in _signed_permutations(3):
        term = ClassicalPoly.constant(sign)
        for r in range(3):
            term = term * ClassicalPoly.variable(cols[perm[r]], rows[r])
        out = out + term
    return out


def _signed_permutations(n):
    for perm in itertools.permutations(range(n)):
        inv = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        yield perm, (-1) ** inv


# -- the symbol algebra: Q_{a,b} and C_{klm} --------------------------------------


def q_symbol(a: int, b: int):
    """Canonical Q symbol; Q is symmetric so indices are sorted."""
    if a < 0 or b < 0:
        raise ValueError("indices must be nonnegative")
    return ("Q", min(a, b), max(a, b)), 1


def c_symbol(k: int, l: int, m: int):
    """Canonical C symbol with the permutation sign, or (None, 0) on repeats."""
    idx = (k, l, m)
    if len(set(idx)) < 3:
        return None, 0
    order = tuple(sorted(idx))
    perm = tuple(sorted(range(3), key=lambda t: idx[t]))
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return ("C",) + order, (-1) ** inv


class QSymbolPoly:
    """Polynomial in the abstract symbols Q_{a,b} (and C_{klm} in sl2 mode)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[key] = c

    @staticmethod
    def zero():
        return QSymbolPoly()

    @staticmethod
    def constant(c):
        return QSymbolPoly({(): Fraction(c)})

    @staticmethod
    def q(a, b):
        sym, _ = q_symbol(a, b)
        return QSymbolPoly({(sym,): Fraction(1)})

    @staticmethod
    def c(k, l, m):
        sym, sign = c_symbol(k, l, m)
        if sign == 0:
            return QSymbolPoly.zero()
        return QSymbolPoly({(sym,): Fraction(sign)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, QSymbolPoly) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        p = QSymbolPoly()
        p.terms = out
        return p

    def __neg__(self):
        p = QSymbolPoly()
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        p = QSymbolPoly()
        if c:
            p.terms = {k: v * c for k, v in self.terms.items()}
        return p

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        p = QSymbolPoly()
        p.terms = out
        return p

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            factors = "".join(
                f"{s[0]}[{','.join(str(t) for t in s[1:])}]" for s in key
            )
            parts.append(f"{c}" if not factors else f"{c}*{factors}")
        return " + ".join(parts)


def det_relation(n: int, I, J) -> QSymbolPoly:
    """The (n+1)x(n+1) determinant in Q symbols on strictly increasing lists."""
    I, J = tuple(I), tuple(J)
    if len(I) != n + 1 or len(J) != n + 1:
        raise ValueError(f"index lists must have length {n + 1}")
    for lst in (I, J):
        if any(a < 0 for a in lst) or any(x >= y for x, y in zip(lst, lst[1:])):
            raise ValueError(f"index list {lst} is not strictly increasing and nonnegative")
    out = QSymbolPoly.zero()
    for perm, sign in _signed_permutations(n + 1):
        term = QSymbolPoly.constant(sign)
        for r in range(n + 1):
            term = term * QSymbolPoly.q(I[r], J[perm[r]])
        out = out + term
    return out


def substitute(p: QSymbolPoly, n: int) -> ClassicalPoly:
    """The homomorphism Q_{a,b} -> q_{a,b} into the n-family orthogonal ring."""
    out = ClassicalPoly.zero()
    for key, c in p.terms.items():
        term = ClassicalPoly.constant(c)
        for sym in key:
            if sym[0] != "Q":
                raise ValueError("substitute handles Q symbols only; use substitute_sl2")
            term = term * weyl_q(n, sym[1], sym[2])
        out = out + term
    return out


def substitute_sl2(p: QSymbolPoly) -> ClassicalPoly:
    """Q_{a,b} -> adjoint quadratic, C_{klm} -> adjoint cubic."""
    out = ClassicalPoly.zero()
    for key, c in p.terms.items():
        term = ClassicalPoly.constant(c)
        for sym in key:
            if sym[0] == "Q":
                term = term * sl2_q(sym[1], sym[2])
            else:
                term = term * sl2_c(sym[1], sym[2], sym[3])
        out = out + term
    return out


def sl2_relation_type1(i, j, k, l, m) -> QSymbolPoly:
    """The quadratic-cubic syzygy: alternating insertion of i into the cubic.

    q_{ij} c_{klm} - q_{kj} c_{ilm} + q_{lj} c_{ikm} - q_{mj} c_{ikl}; this is
    the pairing of the four-vector dependence identity with the j-th vector,
    and vanishes under substitution for arbitrary index tuples.
    """
    return (
        QSymbolPoly.q(i, j) * QSymbolPoly.c(k, l, m)
        - QSymbolPoly.q(k, j) * QSymbolPoly.c(i, l, m)
        + QSymbolPoly.q(l, j) * QSymbolPoly.c(i, k, m)
        - QSymbolPoly.q(m, j) * QSymbolPoly.c(i, k, l)
    )


def sl2_relation_type2(i, j, k, l, m, n) -> QSymbolPoly:
    """c_{ijk} c_{lmn} + 1/4 det of the 3x3 matrix q_{(i,j,k),(l,m,n)}."""
    rows, cols = (i, j, k), (l, m, n)
    det = QSymbolPoly.zero()
    for perm, sign in _signed_permutations(3):
        term = QSymbolPoly.constant(sign)
        for r in range(3):
            term = term * QSymbolPoly.q(rows[r], cols[perm[r]])
        det = det + term
    return QSymbolPoly.c(i, j, k) * QSymbolPoly.c(l, m, n) + det.scale(Fraction(1, 4))


def q_symbol_derivative(p: QSymbolPoly) -> QSymbolPoly:
    """Symbol-level derivative: Q_{a,b} -> Q_{a+1,b} + Q_{a,b+1}, likewise on C."""
    out = QSymbolPoly.zero()
    for key, c in p.terms.items():
        for t, sym in enumerate(key):
            rest = key[:t] + key[t + 1:]
            restpoly = QSymbolPoly({rest: c})
            if sym[0] == "Q":
                a, b = sym[1], sym[2]
                bumped = QSymbolPoly.q(a + 1, b) + QSymbolPoly.q(a, b + 1)
            else:
                k_, l_, m_ = sym[1], sym[2], sym[3]
                bumped = (
                    QSymbolPoly.c(k_ + 1, l_, m_)
                    + QSymbolPoly.c(k_, l_ + 1, m_)
                    + QSymbolPoly.c(k_, l_, m_ + 1)
                )
            out = out + restpoly * bumped
    return out


# -- polarization and invariance ---------------------------------------------------


def polarization(r: int, s: int, p: ClassicalPoly) -> ClassicalPoly:
    """The operator sum_i x_{i,r} d/dx_{i,s}, over the families appearing in p."""
    out = ClassicalPoly.zero()
    for i in p.families():
        out = out + ClassicalPoly.variable(i, r) * p.partial(i, s)
    return out


def d_ring_derivative(p: ClassicalPoly) -> ClassicalPoly:
    """The ring derivation with x_{i,j} |-> x_{i,j+1}."""
    return p.derive_variables(lambda i, j: ClassicalPoly.variable(i, j + 1))


def lie_derivation(rho, p: ClassicalPoly) -> ClassicalPoly:
    """Derivation action of a Lie-algebra matrix on the family index."""
    n = len(rho)

    def image(i, j):
        out = ClassicalPoly.zero()
        for i2 in range(n):
            if rho[i2][i]:
                out = out + ClassicalPoly.variable(i2, j).scale(rho[i2][i])
        return out

    return p.derive_variables(image)


def apply_finite(M, p: ClassicalPoly) -> ClassicalPoly:
    n = len(M)

    def image(i, j):
        out = ClassicalPoly.zero()
        for i2 in range(n):
            if M[i2][i]:
                out = out + ClassicalPoly.variable(i2, j).scale(M[i2][i])
        return out

    return p.map_variables(image)


def lie_invariance_check(action: ActionSpec, p: ClassicalPoly) -> bool:
    """True iff every infinitesimal generator annihilates p and every finite
    element fixes it."""
    for rho in action.lie_generators:
        if not lie_derivation(rho, p).is_zero():
            return False
    for M in action.finite_elements:
        if apply_finite(M, p) != p:
            return False
    return True


# -- minimal generator selection for the derivation ring -----------------------------


def dring_contains(p: ClassicalPoly, generators) -> bool:
    """Whether p lies in the ring generated by the generators and their
    derivatives, decided by a graded linear solve at the weight of p."""
    w = p.poly_weight()
    if w is None:
        raise ValueError("membership test needs a weight-homogeneous polynomial")
    if p.is_zero():
        return True
    gens = [g for g in generators if not g.is_zero()]
    shifted = []
    for gi, g in enumerate(gens):
        gw = g.poly_weight()
        d = g
        for t in range(0, w - gw + 1):
            shifted.append((gw + t, d))
            d = d_ring_derivative(d)
    monos = []

    def go(start, current, wleft):
        if wleft == 0 and current:
            monos.append(list(current))
            return
        for idx in range(start, len(shifted)):
            fw, _ = shifted[idx]
            if fw <= wleft:
                current.append(idx)
                go(idx, current, wleft - fw)
                current.pop()

    go(0, [], w)
    if not monos:
        return False
    columns = []
    for mono in monos:
        prod = ClassicalPoly.constant(1)
        for idx in mono:
            prod = prod * shifted[idx][1]
        columns.append(prod)
    coords = sorted({k for q in columns for k in q.terms} | set(p.terms))
    from . import linalg

    cols = [[q.terms.get(k, Fraction(0)) for k in coords] for q in columns]
    rhs = [p.terms.get(k, Fraction(0)) for k in coords]
    return linalg.solve(cols, rhs, Fraction(0)) is not None


def minimal_dring_generators(candidates) -> list:
    """Greedy minimal generating subset for the derivation ring.

    Candidates are consumed in the given order (sort by (weight, degree) for
    the canonical choice); a candidate lying in the ring generated by earlier
    survivors and their derivatives is discarded.  Deterministic in the
    enumeration order.
    """
    survivors = []
    for c in candidates:
        if not dring_contains(c, survivors):
            survivors.append(c)
    return survivors
