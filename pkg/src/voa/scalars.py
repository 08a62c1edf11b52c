"""Exact scalar arithmetic: rationals, polynomials in the level k, and the field Q(k).

Every coefficient in the package is a ``LevelScalar``: a reduced fraction of
polynomials in the formal level variable k, with rational coefficients.  The
level is never a float; numeric levels enter only through ``evaluate_at`` on
final results.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

# Rationals are stdlib fractions: always reduced, positive denominator,
# structural equality.
Rational = Fraction

#: k-degree of the zero scalar.  A float so that the degree laws
#: deg(a*b) = deg(a) + deg(b) and deg(a+b) <= max(deg a, deg b) hold literally.
NEG_INFINITY = float("-inf")


class PoleAtLevel(ArithmeticError):
    """Raised when a scalar is evaluated at a root of its denominator."""

    def __init__(self, level: Fraction):
        self.level = Fraction(level)
        super().__init__(f"denominator vanishes at k = {self.level}")


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


class LevelPolynomial:
    """Univariate polynomial in k over Q, stored as ascending coefficients.

    Invariants: no trailing zero coefficients; the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_h")

    def __init__(self, coeffs: Iterable[Fraction] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._h = None

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def constant(q) -> "LevelPolynomial":
        return LevelPolynomial((Fraction(q),))

    @staticmethod
    def variable() -> "LevelPolynomial":
        return LevelPolynomial((Fraction(0), Fraction(1)))

    # -- structure ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LevelPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.coeffs)
        return self._h

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "LevelPolynomial") -> "LevelPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return _mkpoly(out)

    def __neg__(self) -> "LevelPolynomial":
        return _mkpoly([-c for c in self.coeffs])

    def __sub__(self, other: "LevelPolynomial") -> "LevelPolynomial":
        return self + (-other)

    def __mul__(self, other: "LevelPolynomial") -> "LevelPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _P_ZERO
        out = [_F_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return _mkpoly(out)

    def scale(self, q: Fraction) -> "LevelPolynomial":
        if not q:
            return _P_ZERO
        return _mkpoly([c * q for c in self.coeffs])

    def __divmod__(self, other: "LevelPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        quot = [_F_ZERO] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if not c:
                continue
            f = c / lead
            quot[i - d] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] -= f * oc
        return _mkpoly(quot), _mkpoly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "LevelPolynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return self if lead == 1 else self.scale(1 / lead)

    def evaluate(self, k0) -> Fraction:
        k0 = Fraction(k0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k0 + c
        return acc

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                body = rational_to_str(abs(c))
            else:
                var = "k" if j == 1 else f"k^{j}"
                body = var if abs(c) == 1 else f"{rational_to_str(abs(c))}*{var}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LevelPolynomial({self})"

    def to_json(self) -> list:
        return [rational_to_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[str]) -> "LevelPolynomial":
        return LevelPolynomial(Fraction(s) for s in data)


_F_ZERO = Fraction(0)


def _mkpoly(cs: list) -> "LevelPolynomial":
    """Internal constructor: coefficients already Fractions."""
    while cs and not cs[-1]:
        cs.pop()
    p = LevelPolynomial.__new__(LevelPolynomial)
    p.coeffs = tuple(cs)
    p._h = None
    return p


_P_ZERO = LevelPolynomial(())
_P_ONE = LevelPolynomial((Fraction(1),))


def poly_gcd(a: LevelPolynomial, b: LevelPolynomial) -> LevelPolynomial:
    """Monic gcd via the Euclidean algorithm."""
    # a nonzero constant divides everything
    if (a.coeffs and a.degree == 0) or (b.coeffs and b.degree == 0):
        return _P_ONE
    while not b.is_zero():
        a, b = b, (a % b).monic()
        if b.coeffs and b.degree == 0:
            return _P_ONE
    return a.monic()


class LevelScalar:
    """Element of Q(k): a reduced fraction of level polynomials.

    Normal form: the denominator is monic and coprime to the numerator, and
    the zero scalar is 0/1.  Equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: LevelPolynomial, den: LevelPolynomial, _normalized=False):
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._h = None

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_fraction(q) -> "LevelScalar":
        q = Fraction(q)
        if not q:
            return ZERO
        if q == 1:
            return ONE
        return LevelScalar(LevelPolynomial.constant(q), _P_ONE, _normalized=True)

    from_int = from_fraction

    @staticmethod
    def from_polynomial(p: LevelPolynomial) -> "LevelScalar":
        return LevelScalar(p, _P_ONE, _normalized=True)

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def as_fraction(self) -> Fraction:
        """The value of a constant scalar, as an exact rational."""
        if not self.is_constant():
            raise ValueError(f"scalar {self} is not constant in k")
        if self.num.is_zero():
            return Fraction(0)
        return self.num.coeffs[0] / self.den.coeffs[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LevelScalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    # -- field arithmetic -----------------------------------------------------

    def __add__(self, other: "LevelScalar") -> "LevelScalar":
        if self.den is _P_ONE and other.den is _P_ONE:
            return _mkscalar(self.num + other.num, _P_ONE)
        if self.den == other.den:
            return LevelScalar(self.num + other.num, self.den)
        return LevelScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "LevelScalar") -> "LevelScalar":
        return self + (-other)

    def __neg__(self) -> "LevelScalar":
        return LevelScalar(-self.num, self.den, _normalized=True)

    def __mul__(self, other: "LevelScalar") -> "LevelScalar":
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.den is _P_ONE and other.den is _P_ONE:
            return _mkscalar(self.num * other.num, _P_ONE)
        # cross-reduce before multiplying to keep intermediate degrees down
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        if g1.degree > 0 or g2.degree > 0:
            n = (self.num // g1) * (other.num // g2)
            d = (self.den // g2) * (other.den // g1)
        else:
            n = self.num * other.num
            d = self.den * other.den
        return _mkscalar(n, d)

    def __truediv__(self, other: "LevelScalar") -> "LevelScalar":
        return self * other.inverse()

    def inverse(self) -> "LevelScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return LevelScalar(self.den, self.num)

    def __pow__(self, e: int) -> "LevelScalar":
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    def scale(self, q) -> "LevelScalar":
        q = Fraction(q)
        if not q:
            return ZERO
        return _mkscalar(self.num.scale(q), self.den)

    # -- the k-degree and evaluation -------------------------------------------

    def k_degree(self):
        """deg(num) - deg(den); NEG_INFINITY for zero."""
        if self.is_zero():
            return NEG_INFINITY
        return self.num.degree - self.den.degree

    def evaluate_at(self, k0) -> Fraction:
        k0 = Fraction(k0)
        d = self.den.evaluate(k0)
        if d == 0:
            raise PoleAtLevel(k0)
        return self.num.evaluate(k0) / d

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        if self.den == _P_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"LevelScalar({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "LevelScalar":
        return LevelScalar(
            LevelPolynomial.from_json(data["num"]),
            LevelPolynomial.from_json(data["den"]),
        )


def _normalize(num: LevelPolynomial, den: LevelPolynomial):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator polynomial")
    if num.is_zero():
        return _P_ZERO, _P_ONE
    if den is _P_ONE:
        return num, den
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    lead = den.leading()
    if lead != 1:
        num = num.scale(1 / lead)
        den = den.scale(1 / lead)
    if den.degree == 0:
        den = _P_ONE
    return num, den


def _mkscalar(num: LevelPolynomial, den: LevelPolynomial) -> "LevelScalar":
    """Internal constructor for inputs already in normal form."""
    if not num.coeffs:
        return ZERO
    s = LevelScalar.__new__(LevelScalar)
    s.num = num
    s.den = den
    s._h = None
    return s


ZERO = LevelScalar(_P_ZERO, _P_ONE, _normalized=True)
ONE = LevelScalar(_P_ONE, _P_ONE, _normalized=True)
K = LevelScalar(LevelPolynomial.variable(), _P_ONE, _normalized=True)


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(p: LevelPolynomial) -> list:
    """All rational roots of p, exactly, via the rational root theorem."""
    if p.is_zero():
        return []
    roots = set()
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.add(Fraction(0))
    if len(coeffs) <= 1:
        return sorted(roots)
    from math import lcm

    denom_lcm = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * denom_lcm) for c in coeffs]
    a0, an = ints[0], ints[-1]
    for pnum in _divisors(a0):
        for qden in _divisors(an):
            for cand in (Fraction(pnum, qden), Fraction(-pnum, qden)):
                if p.evaluate(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def arith(a: LevelScalar, b: LevelScalar, op: str) -> LevelScalar:
    """Dispatch form of the four field operations; div raises on zero b."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def k_degree(a: LevelScalar):
    return a.k_degree()


def evaluate_at(a: LevelScalar, k0) -> Fraction:
    return a.evaluate_at(k0)
