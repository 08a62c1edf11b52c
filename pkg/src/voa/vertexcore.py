"""The vertex-algebra engine for universal affine and Heisenberg algebras.

States live in the level-k vacuum module and are finite linear combinations
of canonically ordered monomials

    X^{i_1}(-m_1) ... X^{i_r}(-m_r) |0>,   m_1 >= m_2 >= ... >= 1,

with ties in mode depth broken by ascending generator index, over Q(k).
The level k is always formal; kappa acts as multiplication by k.

Mode conventions: a field a(z) = sum a(n) z^{-n-1}; the n-th circle product
a o_n b is a(n)b under the state-field correspondence.  The n-th mode of
(1/m!) d^m X^i(z) is (-1)^m binom(n, m) X^i(n-m), which drives the circle
product recursion on the leftmost factor of a.

Leading symbols use the normalization x_{i,j} <-> (1/j!) d^j X^i, i.e. the
monomial factor at mode depth j+1 maps to the variable x_{i,j} with no extra
scalar.
"""

from __future__ import annotations

import math
import weakref
from fractions import Fraction

from .liedata import LieSpec
from .scalars import K, ONE, ZERO, LevelScalar

Mono = tuple  # tuple of (generator index, mode depth >= 1) pairs


_SMALL = {}


def _coerce(c) -> LevelScalar:
    if isinstance(c, LevelScalar):
        return c
    if isinstance(c, int):
        hit = _SMALL.get(c)
        if hit is None:
            hit = _SMALL[c] = LevelScalar.from_fraction(c)
        return hit
    return LevelScalar.from_fraction(c)


def mono_weight(mono: Mono) -> int:
    return sum(d for _, d in mono)


class State:
    """A vertex-algebra element: finite map from PBW monomials to Q(k).

    Treated as immutable; all operations return fresh states.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {}
        self._hash = None
        if terms:
            for mono, coeff in terms.items():
                c = _coerce(coeff)
                if c:
                    self.terms[mono] = c

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "State":
        return State()

    @staticmethod
    def vacuum(coeff=1) -> "State":
        return State({(): coeff})

    @staticmethod
    def generator(i: int, depth: int = 1, coeff=1) -> "State":
        return State({((i, depth),): coeff})

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "State") -> "State":
        out = dict(self.terms)
        _merge(out, other.terms, None)
        return _wrap(out)

    def __neg__(self) -> "State":
        return _wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "State") -> "State":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            s = -c if s is None else s - c
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return _wrap(out)

    def scale(self, c) -> "State":
        c = _coerce(c)
        if not c:
            return _wrap({})
        return _wrap({m: v * c for m, v in self.terms.items()})

    def __rmul__(self, c) -> "State":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, State) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def coefficient(self, mono: Mono) -> LevelScalar:
        return self.terms.get(mono, ZERO)

    # -- gradings -------------------------------------------------------------

    def max_weight(self) -> int:
        return max((mono_weight(m) for m in self.terms), default=0)

    def weight_components(self) -> dict:
        comps = {}
        for m, c in self.terms.items():
            comps.setdefault(mono_weight(m), {})[m] = c
        return {w: State(t) for w, t in sorted(comps.items())}

    def degree_component(self, d: int) -> "State":
        return State({m: c for m, c in self.terms.items() if len(m) == d})

    def __repr__(self):
        if not self.terms:
            return "State(0)"
        parts = [f"{c}*{m}" for m, c in sorted(self.terms.items())]
        return "State(" + " + ".join(parts) + ")"


def _wrap(terms: dict) -> State:
    st = State.__new__(State)
    st.terms = terms
    st._hash = None
    return st


def _merge(acc: dict, terms: dict, scale):
    """acc += scale * terms (scale None means 1); drops cancellations."""
    if scale is None:
        for mono, c in terms.items():
            s = acc.get(mono)
            s = c if s is None else s + c
            if s:
                acc[mono] = s
            elif mono in acc:
                del acc[mono]
    else:
        if not scale:
            return
        for mono, c in terms.items():
            v = c * scale
            s = acc.get(mono)
            s = v if s is None else s + v
            if s:
                acc[mono] = s
            elif mono in acc:
                del acc[mono]


def weight(a: State):
    """Common weight of all terms; 0 for the zero state, None when mixed."""
    ws = {mono_weight(m) for m in a.terms}
    if not ws:
        return 0
    if len(ws) == 1:
        return ws.pop()
    return None


def degree(a: State) -> int:
    """Filtration degree: the maximal monomial length."""
    return max((len(m) for m in a.terms), default=0)


# -- per-spec caches for word canonicalization, mode actions, products ---------
#
# Entries are pure functions of their keys, so concurrent insert-or-get under
# the GIL is safe: a lost race recomputes the identical value.

_CACHES = weakref.WeakKeyDictionary()


def _cache(spec: LieSpec) -> dict:
    c = _CACHES.get(spec)
    if c is None:
        c = {}
        _CACHES[spec] = c
    return c


def canonicalize_word(spec: LieSpec, word) -> State:
    """Rewrite a word of creation operators as a combination of sorted monomials.

    Adjacent out-of-order factors are swapped with the bracket correction
    X^i(-a) X^j(-b) = X^j(-b) X^i(-a) + X^[i,j](-a-b); no central terms arise
    since a+b > 0.
    """
    word = tuple(word)
    for t in range(len(word) - 1):
        g1, d1 = word[t]
        g2, d2 = word[t + 1]
        if (d1 < d2) or (d1 == d2 and g1 > g2):
            cache = _cache(spec)
            key = ("word", word)
            hit = cache.get(key)
            if hit is not None:
                return hit
            swapped = word[:t] + ((g2, d2), (g1, d1)) + word[t + 2:]
            acc = dict(canonicalize_word(spec, swapped).terms)
            for l, cl in enumerate(spec.structure[g1][g2]):
                if cl:
                    merged = word[:t] + ((l, d1 + d2),) + word[t + 2:]
                    _merge(acc, canonicalize_word(spec, merged).terms, _coerce(cl))
            result = _wrap(acc)
            cache[key] = result
            return result
    return State({word: ONE})


def _apply_mode_mono(spec: LieSpec, i: int, n: int, mono: Mono) -> State:
    if n < 0:
        return canonicalize_word(spec, ((i, -n),) + mono)
    if not mono:
        return State.zero()
    cache = _cache(spec)
    key = ("mode", i, n, mono)
    hit = cache.get(key)
    if hit is not None:
        return hit
    (j, d), rest = mono[0], mono[1:]
    # commute past the first factor, then bracket and central corrections
    acc = {}
    inner = _apply_mode_mono(spec, i, n, rest)
    for m2, c2 in inner.terms.items():
        _merge(acc, canonicalize_word(spec, ((j, d),) + m2).terms, c2)
    for l, cl in enumerate(spec.structure[i][j]):
        if cl:
            _merge(acc, _apply_mode_mono(spec, l, n - d, rest).terms, _coerce(cl))
    if n == d:
        b = spec.form[i][j]
        if b:
            _merge(acc, {rest: K.scale(n * b)}, None)
    result = _wrap(acc)
    cache[key] = result
    return result


def mode_action(spec: LieSpec, i: int, n: int, v: State) -> State:
    """The action of X^{xi_i}(n) on a state of the level-k vacuum module."""
    acc = {}
    for mono, c in v.terms.items():
        _merge(acc, _apply_mode_mono(spec, i, n, mono).terms, c)
    return _wrap(acc)


def _binom_int(j: int, m: int) -> int:
    """binom(j, m) for any integer j and m >= 0."""
    num = 1
    for t in range(m):
        num *= j - t
    return num // math.factorial(m)


def _cp_mono(spec: LieSpec, amono: Mono, n: int, b: State) -> State:
    if not amono:
        return b if n == -1 else State.zero()
    if b.is_zero():
        return State.zero()
    cache = _cache(spec)
    key = ("cp", amono, n, b)
    hit = cache.get(key)
    if hit is not None:
        return hit
    (i, d), u = amono[0], amono[1:]
    m = d - 1
    wu = mono_weight(u)
    wb = b.max_weight()
    sign = -1 if m % 2 else 1
    acc = {}
    # creation-side sum: j = n-1-p <= -1 runs over p with u o_p b nonzero
    for p in range(n, wu + wb):
        inner = _cp_mono(spec, u, p, b)
        if inner.is_zero():
            continue
        j = n - 1 - p
        coef = sign * _binom_int(j, m)
        if coef:
            _merge(acc, mode_action(spec, i, j - m, inner).terms, _coerce(coef))
    # annihilation-side sum: X^i(j-m) hits b first
    for j in range(m, m + wb + 1):
        coef = sign * _binom_int(j, m)
        xb = mode_action(spec, i, j - m, b)
        if xb.is_zero():
            continue
        inner = _cp_mono(spec, u, n - j - 1, xb)
        if not inner.is_zero():
            _merge(acc, inner.terms, _coerce(coef))
    result = _wrap(acc)
    cache[key] = result
    return result


def circle_product(spec: LieSpec, a: State, n: int, b: State) -> State:
    """The n-th circle product a o_n b, exact over Q(k)."""
    acc = {}
    for amono, c in a.terms.items():
        _merge(acc, _cp_mono(spec, amono, n, b).terms, c)
    return _wrap(acc)


def wick(spec: LieSpec, a: State, b: State) -> State:
    """The Wick product :ab: = a o_{-1} b."""
    return circle_product(spec, a, -1, b)


def wick_chain(spec: LieSpec, states) -> State:
    """Right-nested iterated Wick product :a_1 (a_2 (... a_r)):."""
    states = list(states)
    if not states:
        return State.vacuum()
    out = states[-1]
    for s in reversed(states[:-1]):
        out = wick(spec, s, out)
    return out


def derivative(spec: LieSpec, a: State) -> State:
    """Translation derivative: raises each mode depth with multiplicity."""
    out = State.zero()
    for mono, c in a.terms.items():
        for t, (g, d) in enumerate(mono):
            word = mono[:t] + ((g, d + 1),) + mono[t + 1:]
            out = out + canonicalize_word(spec, word).scale(c.scale(d))
    return out


def nth_derivative(spec: LieSpec, a: State, k: int) -> State:
    for _ in range(k):
        a = derivative(spec, a)
    return a


def ope(spec: LieSpec, a: State, b: State):
    """All singular terms: the list of (n, a o_n b) with n >= 0, descending."""
    bound = a.max_weight() + b.max_weight()
    out = []
    for n in range(bound - 1, -1, -1):
        s = circle_product(spec, a, n, b)
        if not s.is_zero():
            out.append((n, s))
    return out


def locality_order(spec: LieSpec, a: State, b: State) -> int:
    """The least N >= 0 with a o_n b = 0 for all n >= N."""
    pairs = ope(spec, a, b)
    return pairs[0][0] + 1 if pairs else 0


def leading_symbol(a: State):
    """Project the top-degree part of a to its classical polynomial.

    The coefficient of each top-degree monomial must be constant in k.
    """
    from .classical import ClassicalPoly

    if a.is_zero():
        raise ValueError("leading_symbol of the zero state is undefined")
    d = degree(a)
    terms = {}
    for mono, c in a.terms.items():
        if len(mono) != d:
            continue
        exps = {}
        for g, depth in mono:
            var = (g, depth - 1)
            exps[var] = exps.get(var, 0) + 1
        key = tuple(sorted(exps.items()))
        terms[key] = terms.get(key, Fraction(0)) + c.as_fraction()
    return ClassicalPoly(terms)


def sugawara(spec: LieSpec, h_dual) -> State:
    """The canonical Virasoro vector at non-critical level.

    Written over a basis and its B-dual basis, so an orthonormal basis is not
    required; coefficients carry the denominator (k + h_dual).
    """
    from . import linalg

    h_dual = Fraction(h_dual)
    n = spec.dim
    try:
        binv = linalg.invert(
            [list(row) for row in spec.form], Fraction(0), Fraction(1)
        )
    except ValueError:
        raise ValueError("bilinear form is not invertible; no Sugawara vector")
    pref = ONE / ((K + LevelScalar.from_fraction(h_dual)).scale(2))
    total = State.zero()
    for i in range(n):
        dual = State({((j, 1),): binv[j][i] for j in range(n) if binv[j][i]})
        total = total + wick(spec, State.generator(i), dual)
    return total.scale(pref)


def apply_group_element(spec: LieSpec, M, a: State) -> State:
    """Transform every factor's generator index by the matrix M."""
    n = spec.dim
    out = State.zero()
    for mono, c in a.terms.items():
        words = [(Fraction(1), ())]
        for g, d in mono:
            new_words = []
            for cf, word in words:
                for j in range(n):
                    mj = M[j][g]
                    if mj:
                        new_words.append((cf * mj, word + ((j, d),)))
            words = new_words
        for cf, word in words:
            out = out + canonicalize_word(spec, word).scale(c.scale(cf))
    return out


def lie_act(spec: LieSpec, rho, a: State) -> State:
    """Infinitesimal action: the derivation replacing one factor at a time."""
    n = spec.dim
    out = State.zero()
    for mono, c in a.terms.items():
        for t, (g, d) in enumerate(mono):
            for j in range(n):
                rj = rho[j][g]
                if rj:
                    word = mono[:t] + ((j, d),) + mono[t + 1:]
                    out = out + canonicalize_word(spec, word).scale(c.scale(rj))
    return out


def state_from_word(spec: LieSpec, word, coeff=1) -> State:
    """Build the state of an arbitrary creation word, re-canonicalized."""
    return canonicalize_word(spec, tuple(word)).scale(coeff)


# -- rendering and serialization ----------------------------------------------


def mono_text(spec: LieSpec, mono: Mono) -> str:
    if not mono:
        return "1"
    return " ".join(f"{spec.labels[g]}(-{d})" for g, d in mono)


def state_text(spec: LieSpec, a: State) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for mono, c in sorted(a.terms.items()):
        cs = str(c)
        if not mono:
            parts.append(cs if " " not in cs else f"({cs})")
        elif c == ONE:
            parts.append(mono_text(spec, mono))
        else:
            parts.append(f"({cs}) {mono_text(spec, mono)}")
    return " + ".join(parts)


def ope_text(spec: LieSpec, a_name: str, b_name: str, pairs) -> str:
    lhs = f"{a_name}(z) {b_name}(w)"
    if not pairs:
        return f"{lhs} ~ regular"
    body = " + ".join(f"{state_text(spec, s)} (z-w)^-{n+1}" for n, s in pairs)
    return f"{lhs} ~ {body}"


def state_to_json(spec: LieSpec, a: State) -> dict:
    return {
        "algebra": spec.name,
        "terms": [
            {"monomial": [[g, d] for g, d in mono], "coeff": c.to_json()}
            for mono, c in sorted(a.terms.items())
        ],
    }


def state_from_json(data: dict) -> State:
    terms = {}
    for t in data["terms"]:
        mono = tuple((int(g), int(d)) for g, d in t["monomial"])
        terms[mono] = LevelScalar.from_json(t["coeff"])
    return State(terms)
