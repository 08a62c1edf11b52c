"""The remainder coefficients R_n(I, J): closed form, recursion, table, zero-scan.

Index lists are extended off the strictly increasing cone by determinant
semantics: sorting contributes the sign of the permutation, and a repeated
entry gives zero.  The recursion substitutes entries i_k -> i_k + i_r + j_0 + 2
(and j_l likewise), which is what forces that extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParityError, ResourceError

#: table entries beyond this need the explicit opt-in flag
TABLE_MAX_DEFAULT = 8


def normalize_index_list(entries):
    """(sign, sorted tuple); sign 0 and None for lists with repeated entries."""
    entries = tuple(entries)
    if len(set(entries)) < len(entries):
        return 0, None
    order = sorted(range(len(entries)), key=lambda t: entries[t])
    inversions = sum(
        1
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if order[i] > order[j]
    )
    return (-1) ** inversions, tuple(sorted(entries))


def r1_closed_form(I, J) -> Fraction:
    """The four-bracket closed form for n = 1, on strictly increasing lists."""
    I, J = tuple(I), tuple(J)
    if len(I) != 2 or len(J) != 2:
        raise ValueError("closed form needs two index pairs")
    if not (0 <= I[0] < I[1]) or not (0 <= J[0] < J[1]):
        raise ValueError("index lists must be strictly increasing and nonnegative")
    i0, i1 = I
    j0, j1 = J
    if (i0 + i1 + j0 + j1) % 2:
        raise ParityError(f"m = {i0 + i1 + j0 + j1 + 2} is odd")
    s = lambda t: (-1) ** t
    total = s(j0) * (Fraction(s(i0), 2 + i0 + i1) + Fraction(s(j1), 2 + i1 + j1))
    total -= s(j1) * (Fraction(s(i0), 2 + i0 + i1) + Fraction(s(j0), 2 + i1 + j0))
    total += s(i1) * (Fraction(s(i0), 2 + i0 + j0) + Fraction(s(j1), 2 + j0 + j1))
    total -= s(i1) * (Fraction(s(i0), 2 + i0 + j1) + Fraction(s(j0), 2 + j0 + j1))
    return total


# One logical map; entries are pure functions of their keys, so concurrent
# insert-or-get under the GIL at worst recomputes an identical value.
_MEMO = {}


def rn(n: int, I, J, memoize: bool = True) -> Fraction:
    """R_n(I, J) for length-(n+1) lists, by recursion on n.

    The remainder is symmetric in (I, J) (the underlying determinant is), so
    memo keys fold that symmetry in.
    """
    I, J = tuple(I), tuple(J)
    if len(I) != n + 1 or len(J) != n + 1:
        raise ValueError(f"index lists must have length {n + 1}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if any(t < 0 for t in I + J):
        raise ValueError("indices must be nonnegative")
    if (sum(I) + sum(J)) % 2:
        raise ParityError(f"m = {sum(I) + sum(J) + 2 * n} is odd")
    return _rn(n, I, J, _MEMO if memoize else None)


def _rn(n, I, J, memo) -> Fraction:
    sI, I2 = normalize_index_list(I)
    if sI == 0:
        return Fraction(0)
    sJ, J2 = normalize_index_list(J)
    if sJ == 0:
        return Fraction(0)
    sign = sI * sJ
    key = (n, I2, J2) if I2 <= J2 else (n, J2, I2)
    if memo is not None:
        hit = memo.get(key)
        if hit is not None:
            return sign * hit
    if n == 1:
        val = r1_closed_form(I2, J2)
    else:
        val = Fraction(0)
        j0 = J2[0]
        Jp = J2[1:]
        for r in range(n + 1):
            ir = I2[r]
            Ir = I2[:r] + I2[r + 1:]
            outer = (-1) ** r
            shift = ir + j0 + 2
            for pos in range(n):
                ik = Ir[pos]
                sub = _rn(n - 1, Ir[:pos] + (ik + shift,) + Ir[pos + 1:], Jp, memo)
                if sub:
                    val -= outer * (-1) ** ir * sub / (ik + ir + 2)
                    val -= outer * (-1) ** j0 * sub / (ik + j0 + 2)
            for pos in range(n):
                jl = Jp[pos]
                sub = _rn(n - 1, Ir, Jp[:pos] + (jl + shift,) + Jp[pos + 1:], memo)
                if sub:
                    val -= outer * (-1) ** ir * sub / (jl + ir + 2)
                    val -= outer * (-1) ** j0 * sub / (jl + j0 + 2)
    if memo is not None:
        memo[key] = val
    return sign * val


def table1(n_max: int, allow_large: bool = False):
    """R_n at the diagonal I = J = (0, ..., n) for n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if n_max > TABLE_MAX_DEFAULT and not allow_large:
        raise ResourceError(
            f"n_max = {n_max} beyond the default bound {TABLE_MAX_DEFAULT};"
            " pass the opt-in flag to go further"
        )
    out = []
    for n in range(1, n_max + 1):
        diag = tuple(range(n + 1))
        out.append((n, rn(n, diag, diag)))
    return out


@dataclass
class ScanResult:
    values: list  # (a, R_n value)
    first_nonzero: int  # least a with f(a) != 0, or None
    bound_m: int  # (n^2 + 2n + a_0) / 2, or None

    def to_json(self):
        from .scalars import rational_to_str

        return {
            "values": [{"a": a, "value": rational_to_str(v)} for a, v in self.values],
            "first_nonzero": self.first_nonzero,
            "bound_m": self.bound_m,
        }


def scan_f(n: int, a_max: int) -> ScanResult:
    """Scan f(a) = R_n((0..n), (0..n-1, a)) over a >= n with a = n mod 2.

    The first nonzero value pins the strong-generation bound m with the
    generator set {j^0, j^2, ..., j^{2m-2}}.
    """
    I = tuple(range(n + 1))
    values = []
    first = None
    for a in range(n, a_max + 1, 2):
        J = tuple(range(n)) + (a,)
        v = rn(n, I, J)
        values.append((a, v))
        if first is None and v != 0:
            first = a
    bound = (n * n + 2 * n + first) // 2 if first is not None else None
    return ScanResult(values, first, bound)
