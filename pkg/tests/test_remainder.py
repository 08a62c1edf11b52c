import itertools
import random
from fractions import Fraction

import pytest

from voa import linalg
from voa.errors import ParityError, ResourceError
from voa.remainder import (
    ScanResult,
    normalize_index_list,
    r1_closed_form,
    rn,
    scan_f,
    table1,
)

TABLE = {
    1: Fraction(5, 4),
    2: Fraction(149, 600),
    3: Fraction(-2419, 705600),
    4: Fraction(-67619, 18670176000),
    5: Fraction(1391081, 4879637199360000),
    6: Fraction(40984649, 25145492674607585280000),
}


def test_normalize_index_list():
    assert normalize_index_list((0, 1, 2)) == (1, (0, 1, 2))
    assert normalize_index_list((2, 0, 1)) == (1, (0, 1, 2))
    assert normalize_index_list((1, 0)) == (-1, (0, 1))
    assert normalize_index_list((1, 1, 2)) == (0, None)


def test_r1_examples():
    assert r1_closed_form((0, 1), (0, 1)) == Fraction(5, 4)
    assert r1_closed_form((0, 1), (0, 3)) == Fraction(14, 15)
    with pytest.raises(ParityError):
        r1_closed_form((0, 1), (0, 2))
    with pytest.raises(ValueError):
        r1_closed_form((1, 0), (0, 1))


def test_rn_base_case_delegates():
    pairs = list(itertools.combinations(range(5), 2))
    for I in pairs:
        for J in pairs:
            if (sum(I) + sum(J)) % 2 == 0:
                assert rn(1, I, J) == r1_closed_form(I, J)


def test_table1_values():
    for n, value in table1(3):
        assert value == TABLE[n]


def test_table1_resource_bound():
    with pytest.raises(ResourceError):
        table1(9)
    with pytest.raises(ValueError):
        table1(0)


def test_rn_validation():
    with pytest.raises(ValueError):
        rn(1, (0, 1, 2), (0, 1))
    with pytest.raises(ParityError):
        rn(2, (0, 1, 2), (0, 1, 3))
    with pytest.raises(ValueError):
        rn(1, (-1, 1), (0, 2))


def test_rn_determinant_semantics():
    base = rn(2, (0, 1, 2), (0, 1, 2))
    assert rn(2, (1, 0, 2), (0, 1, 2)) == -base
    assert rn(2, (1, 0, 2), (1, 0, 2)) == base
    assert rn(2, (0, 1, 1), (0, 1, 3)) == 0
    assert rn(2, (0, 2, 2), (0, 1, 3)) == 0


def test_rn_symmetry_in_lists():
    rng = random.Random(3)
    for _ in range(6):
        I = tuple(sorted(rng.sample(range(6), 3)))
        J = tuple(sorted(rng.sample(range(6), 3)))
        if (sum(I) + sum(J)) % 2:
            continue
        assert rn(2, I, J) == rn(2, J, I)


def test_memoized_and_plain_agree():
    rng = random.Random(19)
    cases = []
    for _ in range(6):
        I = tuple(sorted(rng.sample(range(5), 3)))
        J = tuple(sorted(rng.sample(range(5), 3)))
        if (sum(I) + sum(J)) % 2 == 0:
            cases.append((2, I, J))
    cases += [(3, (0, 1, 2, 3), (0, 1, 2, 3)), (1, (0, 2), (1, 3))]
    for n, I, J in cases:
        assert rn(n, I, J, memoize=True) == rn(n, I, J, memoize=False)


def test_scan_f_examples():
    res = scan_f(1, 5)
    assert isinstance(res, ScanResult)
    assert res.values[0] == (1, Fraction(5, 4))
    assert res.first_nonzero == 1
    assert res.bound_m == 2
    assert dict(res.values)[3] == Fraction(14, 15)
    res2 = scan_f(2, 4)
    assert res2.values[0] == (2, Fraction(149, 600))
    assert res2.first_nonzero == 2
    assert res2.bound_m == (4 + 4 + 2) // 2


def test_scan_f_matches_rational_interpolant():
    # n = 1: f(a) = p(a) / ((a+2)(a+3)) with deg p <= 2; fit on 5 samples and
    # check the remaining ones
    samples = scan_f(1, 17).values
    fit, rest = samples[:5], samples[5:]
    # unknowns (p2, p1, p0, u, v) with q(a) = a^2 + u a + v:
    # p(a) - f(a) q(a) = 0  ->  p2 a^2 + p1 a + p0 - f u a - f v = f a^2
    rows = []
    rhs = []
    for a, f in fit:
        rows.append([Fraction(a * a), Fraction(a), Fraction(1), -f * a, -f])
        rhs.append(f * a * a)
    cols = [[rows[r][c] for r in range(5)] for c in range(5)]
    sol = linalg.solve(cols, rhs, Fraction(0))
    assert sol is not None
    p2, p1, p0, u, v = sol
    for a, f in rest:
        num = p2 * a * a + p1 * a + p0
        den = Fraction(a * a) + u * a + v
        assert den != 0 and num / den == f


def test_scan_json():
    data = scan_f(1, 3).to_json()
    assert data["first_nonzero"] == 1
    assert data["values"][0] == {"a": 1, "value": "5/4"}
