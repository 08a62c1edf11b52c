"""Invariant subspaces, quadratic generators, quantum corrections, remainders.

This is the machinery that turns a classical determinantal relation into an
exact normally ordered identity: choose a normal ordering, evaluate it in the
Heisenberg algebra, and descend through the filtration, re-expressing each
leading term in the quadratic generators until the total vanishes.  The
degree-one tail of the result, projected along total derivatives, carries the
remainder coefficient.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, vertexcore as vc
from .classical import QSymbolPoly
from .errors import DescentStuck, ParityError, ResourceError
from .liedata import ActionSpec, LieSpec, abelian, sl2_spec
from .scalars import ONE, ZERO, LevelScalar
from .vertexcore import State

NopMono = tuple  # tuple of (symbol name, derivative count), canonically sorted


def omega_symbol(a: int, b: int) -> str:
    return f"Om[{a},{b}]"


def j_symbol(m: int) -> str:
    return f"J[{m}]"


_OMEGA_RE = re.compile(r"^Om\[(\d+),(\d+)\]$")


class FormalNOP:
    """Formal normally ordered polynomial in abstract generator symbols.

    Terms map monomials -- tuples of (symbol, derivative count) -- to Q(k)
    coefficients.  Evaluation is right-nested Wick in the canonical factor
    order, derivatives applied first.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = c if isinstance(c, LevelScalar) else LevelScalar.from_fraction(c)
                if not c:
                    continue
                key = tuple(sorted(mono))
                s = self.terms.get(key)
                s = c if s is None else s + c
                if s:
                    self.terms[key] = s
                elif key in self.terms:
                    del self.terms[key]

    @staticmethod
    def zero() -> "FormalNOP":
        return FormalNOP()

    @staticmethod
    def single(symbol: str, deriv: int = 0, coeff=1) -> "FormalNOP":
        return FormalNOP({((symbol, deriv),): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FormalNOP) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        p = FormalNOP()
        p.terms = out
        return p

    def __neg__(self):
        p = FormalNOP()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = c if isinstance(c, LevelScalar) else LevelScalar.from_fraction(c)
        p = FormalNOP()
        if c:
            p.terms = {m: v * c for m, v in self.terms.items()}
        return p

    def restrict_degree(self, dictionary, max_degree: int) -> "FormalNOP":
        p = FormalNOP()
        p.terms = {
            m: c
            for m, c in self.terms.items()
            if dictionary.monomial_degree(m) <= max_degree
        }
        return p

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            if not mono:
                parts.append(f"({c})")
                continue
            body = " ".join(
                (f"D^{t} {s}" if t else s) for s, t in mono
            )
            parts.append(f"({c}) * :{body}:")
        return " + ".join(parts)

    def to_json(self):
        return [
            {"monomial": [[s, t] for s, t in mono], "coeff": c.to_json()}
            for mono, c in sorted(self.terms.items())
        ]


@dataclass
class GenEntry:
    state: State
    degree: int
    weight: int


class GeneratorDictionary:
    """Ordered map from symbol names to states with declared degree and weight."""

    def __init__(self, spec: LieSpec):
        self.spec = spec
        self.entries = {}
        self._deriv_cache = {}

    def add(self, symbol: str, state: State, degree=None, weight=None):
        w = vc.weight(state)
        if w is None:
            raise ValueError(f"generator {symbol} is not weight-homogeneous")
        d = vc.degree(state)
        if degree is not None and degree != d:
            raise ValueError(f"declared degree {degree} != computed {d} for {symbol}")
        if weight is not None and weight != w:
            raise ValueError(f"declared weight {weight} != computed {w} for {symbol}")
        self.entries[symbol] = GenEntry(state, d, w)
        return self

    def __contains__(self, symbol):
        return symbol in self.entries

    def __getitem__(self, symbol) -> GenEntry:
        if symbol not in self.entries:
            raise KeyError(f"unknown generator symbol {symbol!r}")
        return self.entries[symbol]

    def symbols(self):
        return list(self.entries)

    def subset(self, symbols) -> "GeneratorDictionary":
        sub = GeneratorDictionary(self.spec)
        for s in symbols:
            e = self[s]
            sub.add(s, e.state)
        return sub

    def factor_state(self, symbol: str, deriv: int) -> State:
        key = (symbol, deriv)
        hit = self._deriv_cache.get(key)
        if hit is None:
            hit = vc.nth_derivative(self.spec, self[symbol].state, deriv)
            self._deriv_cache[key] = hit
        return hit

    def monomial_weight(self, mono: NopMono) -> int:
        return sum(self[s].weight + t for s, t in mono)

    def monomial_degree(self, mono: NopMono) -> int:
        return sum(self[s].degree for s, t in mono)


def evaluate_nop(nop: FormalNOP, dictionary: GeneratorDictionary) -> State:
    """Linear, right-nested Wick evaluation of a formal polynomial."""
    spec = dictionary.spec
    out = State.zero()
    for mono, c in nop.terms.items():
        factors = [dictionary.factor_state(s, t) for s, t in mono]
        out = out + vc.wick_chain(spec, factors).scale(c)
    return out


# -- generator constructions -----------------------------------------------------


def omega(n: int, a: int, b: int) -> State:
    """sum_i :d^a alpha_i d^b alpha_i: over the rank-n Heisenberg algebra."""
    if not (0 <= a <= b):
        raise ValueError("need 0 <= a <= b")
    spec = abelian(n)
    out = State.zero()
    for i in range(n):
        fa = vc.nth_derivative(spec, State.generator(i), a)
        fb = vc.nth_derivative(spec, State.generator(i), b)
        out = out + vc.wick(spec, fa, fb)
    return out


def j_gen(n: int, m: int) -> State:
    """The non-derivative weight-(m+2) quadratic, defined for even m."""
    if m % 2:
        raise ParityError(f"j generators exist in even weight only, got {m}")
    return omega(n, 0, m)


def omega_dictionary(n: int, max_weight: int) -> GeneratorDictionary:
    """All Om[a,b] with a+b+2 <= max_weight over the rank-n Heisenberg algebra."""
    d = GeneratorDictionary(abelian(n))
    for wt in range(2, max_weight + 1):
        m = wt - 2
        for a in range(0, m // 2 + 1):
            d.add(omega_symbol(a, m - a), omega(n, a, m - a))
    return d


def j_dictionary(n: int, ms) -> GeneratorDictionary:
    d = GeneratorDictionary(abelian(n))
    for m in ms:
        d.add(j_symbol(m), j_gen(n, m))
    return d


def sl2_tilde_q(i: int, j: int) -> State:
    """:d^i X^h d^j X^h: + 2 :d^i X^x d^j X^y: + 2 :d^i X^y d^j X^x:."""
    spec = sl2_spec()
    x, y, h = 0, 1, 2

    def dgen(g, t):
        return vc.nth_derivative(spec, State.generator(g), t)

    out = vc.wick(spec, dgen(h, i), dgen(h, j))
    out = out + vc.wick(spec, dgen(x, i), dgen(y, j)).scale(2)
    out = out + vc.wick(spec, dgen(y, i), dgen(x, j)).scale(2)
    return out


def sl2_tilde_c(k: int, l: int, m: int) -> State:
    """Alternating sum of :d^a X^x d^b X^y d^c X^h: over arrangements of (k,l,m)."""
    if not (k < l < m):
        raise ValueError("need k < l < m")
    spec = sl2_spec()
    x, y, h = 0, 1, 2

    def dgen(g, t):
        return vc.nth_derivative(spec, State.generator(g), t)

    out = State.zero()
    for (a, b, c), sign in _signed_arrangements((k, l, m)):
        out = out + vc.wick_chain(spec, [dgen(x, a), dgen(y, b), dgen(h, c)]).scale(sign)
    return out


def _signed_arrangements(idx):
    base = list(idx)
    for perm in itertools.permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        yield tuple(base[p] for p in perm), (-1) ** inv


# -- invariant subspaces -----------------------------------------------------------


def _weight_monomials(n: int, w: int):
    """All canonical monomials of weight w, in increasing key order."""
    out = []

    def go(prefix, remaining, min_key):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        # keys (-depth, gen) must be nondecreasing along the monomial
        for depth in range(remaining, 0, -1):
            for g in range(n):
                key = (-depth, g)
                if key < min_key:
                    continue
                prefix.append((g, depth))
                go(prefix, remaining - depth, key)
                prefix.pop()

    go([], w, (-w, -1))
    return sorted(out)


def invariant_subspace(spec: LieSpec, action: ActionSpec, w: int):
    """Deterministic basis of the weight-w invariants, as states over Q(k).

    Computed as the joint kernel of the infinitesimal generators intersected
    with the fixed spaces of the finite elements; all coefficients are
    level-independent rationals.
    """
    if w < 0:
        raise ValueError("weight must be nonnegative")
    basis = _weight_monomials(spec.dim, w)
    rows = []

    def add_rows(image_states, shift_identity):
        cols = []
        for mono in basis:
            st = image_states(State({mono: 1}))
            if shift_identity:
                st = st - State({mono: 1})
            cols.append(st)
        for out_mono in sorted({m for st in cols for m in st.terms}):
            row = [st.coefficient(out_mono).as_fraction() for st in cols]
            rows.append(row)

    for rho in action.lie_generators:
        add_rows(lambda s, r=rho: vc.lie_act(spec, r, s), False)
    for M in action.finite_elements:
        add_rows(lambda s, M=M: vc.apply_group_element(spec, M, s), True)

    if not rows:
        vecs = [[Fraction(1) if i == j else Fraction(0) for j in range(len(basis))]
                for i in range(len(basis))]
    else:
        vecs = linalg.kernel_basis(rows, len(basis), Fraction(0), Fraction(1))
    states = []
    for v in vecs:
        states.append(State({basis[i]: c for i, c in enumerate(v) if c}))
    return states


# -- expressing states in generators ------------------------------------------------


def enumerate_nop_monomials(dictionary: GeneratorDictionary, weight: int, max_degree: int):
    """All canonical NOP monomials of the given weight and bounded degree."""
    alphabet = []
    for sym in dictionary.symbols():
        e = dictionary[sym]
        for t in range(0, weight - e.weight + 1):
            alphabet.append((sym, t, e.weight + t, e.degree))
    alphabet.sort(key=lambda f: (f[0], f[1]))
    out = []

    def go(start, factors, wleft, dleft):
        if wleft == 0:
            if factors:
                out.append(tuple((s, t) for s, t, _, _ in factors))
            return
        for idx in range(start, len(alphabet)):
            sym, t, fw, fd = alphabet[idx]
            if fw <= wleft and fd <= dleft:
                factors.append(alphabet[idx])
                go(idx, factors, wleft - fw, dleft - fd)
                factors.pop()

    go(0, [], weight, max_degree)
    return sorted(out, key=lambda m: (dictionary.monomial_degree(m), m))


def express_in_generators(target: State, dictionary: GeneratorDictionary,
                          max_degree: int, exact_degree: int = None):
    """Solve target = normally ordered polynomial in the dictionary, or None.

    The linear system is solved exactly over Q(k) with deterministic pivoting;
    free coefficients are set to zero.  With exact_degree set, only the
    degree-exact_degree component of each evaluation is matched against target
    (the descent step of the quantum-correction algorithm).
    """
    w = vc.weight(target)
    if w is None:
        raise ValueError("target must be weight-homogeneous")
    if target.is_zero():
        return FormalNOP.zero()
    candidates = enumerate_nop_monomials(dictionary, w, max_degree)
    if exact_degree is not None:
        candidates = [
            m for m in candidates if dictionary.monomial_degree(m) == exact_degree
        ]
    if not candidates:
        return None
    evals = []
    for mono in candidates:
        st = evaluate_nop(FormalNOP({mono: ONE}), dictionary)
        if exact_degree is not None:
            st = st.degree_component(exact_degree)
        evals.append(st)
    coords = sorted({m for st in evals for m in st.terms} | set(target.terms))
    columns = [[st.coefficient(m) for m in coords] for st in evals]
    rhs = [target.coefficient(m) for m in coords]
    sol = linalg.solve(columns, rhs, ZERO)
    if sol is None:
        return None
    return FormalNOP({candidates[i]: c for i, c in enumerate(sol) if c})


# -- quantum corrections and remainders ----------------------------------------------


def _default_symbol_name(sym) -> str:
    if sym[0] == "Q":
        return omega_symbol(sym[1], sym[2])
    return f"Ct[{sym[1]},{sym[2]},{sym[3]}]"


def normal_ordering(rel: QSymbolPoly, symbol_name=_default_symbol_name) -> FormalNOP:
    """The canonical normal ordering: each symbol monomial becomes a Wick monomial."""
    terms = {}
    for key, c in rel.terms.items():
        mono = tuple(sorted((symbol_name(sym), 0) for sym in key))
        terms[mono] = terms.get(mono, ZERO) + LevelScalar.from_fraction(c)
    return FormalNOP(terms)


def quantum_correction(rel: QSymbolPoly, dictionary: GeneratorDictionary,
                       symbol_name=_default_symbol_name) -> FormalNOP:
    """Extend a vanishing classical relation to an exactly vanishing NOP.

    Starting from a normal ordering of rel, repeatedly express the top
    filtration degree of the evaluation in the generators and subtract, until
    the evaluation is exactly zero.  Raises DescentStuck if some stage cannot
    be expressed.
    """
    top = normal_ordering(rel, symbol_name)
    residual = evaluate_nop(top, dictionary)
    result = top
    last_degree = None
    while not residual.is_zero():
        d = vc.degree(residual)
        if d % 2 or (last_degree is not None and d >= last_degree) or d == 0:
            raise DescentStuck(d)
        last_degree = d
        piece = residual.degree_component(d)
        correction = express_in_generators(
            piece, dictionary, max_degree=d, exact_degree=d
        )
        if correction is None:
            raise DescentStuck(d)
        result = result - correction
        residual = residual - evaluate_nop(correction, dictionary)
    return result


def _pr_lambdas(m: int) -> dict:
    """Reduction constants Om[a,b] = lambda(a,b) J^m modulo second derivatives.

    Derived by exact linear algebra in the span of the weight-(m+2) quadratic
    symbols; integration by parts predicts lambda(a,b) = (-1)^a.
    """
    pairs = [(a, m - a) for a in range(0, m // 2 + 1)]
    index = {p: i for i, p in enumerate(pairs)}

    def vec(poly):
        v = [Fraction(0)] * len(pairs)
        for (a, b), c in poly.items():
            v[index[(min(a, b), max(a, b))]] += c
        return v

    def d_symbol(poly):
        out = {}
        for (a, b), c in poly.items():
            for key in ((a + 1, b), (a, b + 1)):
                key = (min(key), max(key))
                out[key] = out.get(key, Fraction(0)) + c
        return out

    columns = [vec({(0, m): Fraction(1)})]
    lower = [(c, m - 2 - c) for c in range(0, (m - 2) // 2 + 1)] if m >= 2 else []
    for p in lower:
        columns.append(vec(d_symbol(d_symbol({p: Fraction(1)}))))
    lambdas = {}
    for (a, b) in pairs:
        rhs = vec({(a, b): Fraction(1)})
        sol = linalg.solve(columns, rhs, Fraction(0))
        if sol is None:
            raise RuntimeError(f"projection solve failed in weight {m + 2}")
        lambdas[(a, b)] = sol[0]
    return lambdas


_PR_CACHE = {}


def pr_coefficient(nop: FormalNOP, m: int) -> LevelScalar:
    """Coefficient of J^m after projecting the degree-<=2 part along derivatives.

    Total-derivative factors project to zero; a bare Om[a,b] factor requires
    a + b = m.
    """
    if m % 2:
        raise ParityError(f"projection defined for even weight index, got m={m}")
    if m not in _PR_CACHE:
        _PR_CACHE[m] = _pr_lambdas(m)
    lambdas = _PR_CACHE[m]
    total = ZERO
    for mono, c in nop.terms.items():
        if len(mono) != 1:
            raise ValueError("pr expects a degree-<=2 formal polynomial (single factors)")
        (sym, t) = mono[0]
        if t >= 1:
            continue  # image of the derivative projects to zero
        mt = _OMEGA_RE.match(sym)
        if not mt:
            raise ValueError(f"pr expects Om[a,b] symbols, got {sym!r}")
        a, b = int(mt.group(1)), int(mt.group(2))
        if a + b != m:
            raise ValueError(f"symbol {sym} has weight index {a + b}, expected {m}")
        total = total + c.scale(lambdas[(min(a, b), max(a, b))])
    return total


#: hard cap on the weight index m for direct remainder computations
REMAINDER_MAX_M = 14


def remainder_direct(n: int, I, J, max_m: int = REMAINDER_MAX_M) -> Fraction:
    """The remainder coefficient computed from scratch in the Heisenberg algebra.

    Builds the determinant relation, lifts it by quantum corrections, extracts
    the degree-one tail, projects along total derivatives, and specializes the
    level to 1.
    """
    I, J = tuple(I), tuple(J)
    from .classical import det_relation  # validates shape and monotonicity

    rel = det_relation(n, I, J)
    m = sum(I) + sum(J) + 2 * n
    if m % 2:
        raise ParityError(f"|I|+|J|+2n = {m} is odd; the remainder needs even weight index")
    if m > max_m:
        raise ResourceError(
            f"weight index m={m} exceeds the budget {max_m} for direct computation"
        )
    dictionary = omega_dictionary(n, m + 2)
    lifted = quantum_correction(rel, dictionary)
    tail = lifted.restrict_degree(dictionary, 2)
    coeff = pr_coefficient(tail, m)
    return coeff.evaluate_at(1)


# -- decoupling relations --------------------------------------------------------------


@dataclass
class DecoupleResult:
    relation: FormalNOP
    excluded_levels: list

    def to_json(self):
        from .scalars import rational_to_str

        return {
            "relation": self.relation.to_json(),
            "excluded_levels": [rational_to_str(q) for q in self.excluded_levels],
        }


def _check_invariant(spec, action, state, what):
    for rho in action.lie_generators:
        if not vc.lie_act(spec, rho, state).is_zero():
            raise ValueError(f"{what} is not invariant under the infinitesimal action")
    for M in action.finite_elements:
        if vc.apply_group_element(spec, M, state) != state:
            raise ValueError(f"{what} is not fixed by a finite group element")


def decouple(spec: LieSpec, action: ActionSpec, dictionary: GeneratorDictionary,
             target: State, max_degree: int = 6, check_invariance: bool = True):
    """Express the target in the sub-dictionary, reporting excluded levels.

    Returns a DecoupleResult, or None when no relation exists within the
    bounds.  Excluded levels are the rational roots of the denominators of
    the relation's coefficients.
    """
    from .scalars import rational_roots

    if check_invariance:
        _check_invariant(spec, action, target, "target")
        for sym in dictionary.symbols():
            _check_invariant(spec, action, dictionary[sym].state, f"generator {sym}")
    rel = express_in_generators(target, dictionary, max_degree)
    if rel is None:
        return None
    levels = set()
    for c in rel.terms.values():
        levels.update(rational_roots(c.den))
    return DecoupleResult(rel, sorted(levels))
