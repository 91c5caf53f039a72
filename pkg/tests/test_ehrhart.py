import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import descents, eulerian_number_closed_form
from zonoehr import linalg
from zonoehr.ehrhart import (
    N,
    N_PLUS_1,
    CVector,
    HStarVector,
    Poly,
    degree_of,
    degree_via_dilates,
    ehrhart_counts,
    ehrhart_oracle,
    ehrhart_stanley,
    eulerian,
    eulerian_Aj,
    format_cbasis,
    from_cbasis,
    hstar_from_poly,
    hstar_via_eulerian,
    interior_count_reciprocity,
    interpolate,
    poly_from_hstar,
    to_cbasis,
)
from zonoehr.zonotope import BudgetExceeded, count_lattice_points, make_zonotope

CUBE = make_zonotope([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
E = make_zonotope([(1, 1, 0), (-1, 1, 0), (1, 1, 2)])
Q = make_zonotope([(1, 0), (0, 2), (1, 2)])
SQUARE = make_zonotope([(1, 0), (0, 1)])
SEGMENT = make_zonotope([(1,)])


def P(*c):
    return Poly(c)


def binom_eval(h, d, n):
    return sum(hi * math.comb(n + d - i, d) for i, hi in enumerate(h))


# polynomials

def test_poly_basics():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert Poly().degree == -1
    assert (N_PLUS_1**3) == P(1, 3, 3, 1)
    assert (N_PLUS_1 * N) - N == P(0, 0, 1)
    assert P(1, 3, 6, 4)(2) == 1 + 6 + 24 + 32
    assert str(P(1, 3, 6, 4)) == "1 + 3n + 6n^2 + 4n^3"
    assert P(F(1, 2)).is_integral() is False


# Stanley and the oracle

def test_stanley_examples():
    assert ehrhart_stanley(CUBE) == P(1, 3, 3, 1)
    assert ehrhart_stanley(E) == P(1, 3, 6, 4)
    assert ehrhart_stanley(Q) == P(1, 4, 6)
    assert ehrhart_stanley(make_zonotope([], dim=2)) == P(1)


def test_oracle_examples():
    assert ehrhart_oracle(SQUARE) == P(1, 2, 1)
    assert ehrhart_counts(Q, range(3)) == [1, 11, 33]
    assert ehrhart_oracle(Q) == P(1, 4, 6)
    # brute-force counts of the dilates of the exceptional parallelepiped
    assert ehrhart_counts(E, range(4)) == [1, 14, 63, 172]
    assert ehrhart_oracle(E, verify=True) == P(1, 3, 6, 4)


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        ehrhart_oracle(make_zonotope([(40, 0, 0), (0, 40, 0), (0, 0, 40)]), budget=10**4)


def test_stanley_rejects_fractional_translate():
    with pytest.raises(ValueError):
        ehrhart_stanley(Q.translated((F(1, 2), 0)))


@given(
    st.integers(1, 3).flatmap(
        lambda d: st.lists(st.tuples(*[st.integers(-2, 2)] * d), min_size=1, max_size=4)
    ),
    st.integers(-2, 2),
)
def test_stanley_matches_oracle(g, shift):
    d = len(g[0])
    g = [v for v in g if any(v)]
    z = make_zonotope(g, (shift,) * d, dim=d)
    p = ehrhart_stanley(z)
    assert p == ehrhart_oracle(z, verify=True)
    assert p(0) == 1 and p.is_integral() and all(c >= 0 for c in p.coeffs)
    assert p.degree == linalg.rank(g)


def test_interpolate_exact():
    assert interpolate([1, 4, 9, 16]) == P(1, 2, 1)
    assert interpolate([5]) == P(5)


# bases

@pytest.mark.parametrize(
    "p,d,c",
    [(P(1, 2, 1), 2, (0, 0)), (P(1, 4, 6), 2, (2, 3)), (P(1, 3, 6, 4), 3, (0, 3, 0))],
)
def test_cbasis_examples(p, d, c):
    cv = to_cbasis(p, d)
    assert cv.c == c
    assert from_cbasis(cv) == p


def test_cbasis_errors():
    with pytest.raises(ValueError, match="not normalized"):
        to_cbasis(P(2, 1), 1)
    with pytest.raises(ValueError):
        to_cbasis(P(1, 1, 1), 1)


def test_format_cbasis():
    assert format_cbasis(CVector(3, (0, 3, 0))) == "(n+1)^3 + 3(n+1)n^2"


@pytest.mark.parametrize(
    "p,d,h",
    [(P(1, 1), 1, (1, 0)), (P(1, 3, 3, 1), 3, (1, 4, 1, 0)), (P(1, 3, 6, 4), 3, (1, 10, 13, 0))],
)
def test_hstar_examples(p, d, h):
    hv = hstar_from_poly(p, d)
    assert hv.h == h
    for n in range(6):
        assert binom_eval(h, d, n) == p(n)


@given(st.integers(1, 4).flatmap(lambda d: st.lists(st.fractions(-5, 5, max_denominator=4), min_size=d, max_size=d)))
def test_cbasis_round_trip(c):
    cv = CVector(len(c), tuple(c))
    p = from_cbasis(cv)
    assert to_cbasis(p, cv.d) == cv
    # independent evaluation of the defining sum
    d = cv.d
    for n in range(4):
        direct = (n + 1) ** d + sum(cj * (n + 1) ** (d - j) * n**j for j, cj in enumerate(c, 1))
        assert p(n) == direct


@given(st.integers(1, 4).flatmap(lambda d: st.lists(st.fractions(-5, 5, max_denominator=4), min_size=d + 1, max_size=d + 1)))
def test_hstar_round_trip(h):
    d = len(h) - 1
    hv = HStarVector(d, tuple(h))
    p = poly_from_hstar(hv)
    assert hstar_from_poly(p, d).h == hv.h
    for n in range(d + 2):
        assert p(n) == binom_eval(h, d, n)


# Eulerian polynomials

def test_eulerian_table():
    t = P(0, 1)
    assert eulerian_Aj(3, 1) == P(1, 1)
    assert eulerian_Aj(3, 2) == P(0, 2)
    assert eulerian_Aj(3, 3) == P(0, 1, 1)
    assert eulerian_Aj(4, 1) == P(1, 4, 1)
    assert eulerian_Aj(4, 2) == t * P(4, 2)
    assert eulerian_Aj(4, 3) == t * P(2, 4)
    assert eulerian_Aj(4, 4) == t * P(1, 4, 1)


def test_eulerian_cap():
    with pytest.raises(ValueError):
        eulerian_Aj(10, 1)
    with pytest.raises(ValueError):
        eulerian_Aj(3, 4)
    with pytest.raises(ValueError):
        eulerian(0)


@pytest.mark.parametrize("d", range(1, 10))
def test_eulerian_partition(d):
    total = sum((eulerian_Aj(d, j) for j in range(1, d + 1)), Poly())
    assert total == eulerian(d)
    assert eulerian(d)(1) == math.factorial(d)
    assert eulerian(d).padded(d) == tuple(eulerian_number_closed_form(d, k) for k in range(d))


@pytest.mark.parametrize("d", range(1, 6))
def test_eulerian_Aj_by_own_enumeration(d):
    for j in range(1, d + 1):
        counts = [0] * d
        for p in itertools.permutations(range(1, d + 1)):
            if p[-1] == d + 1 - j:
                counts[descents(p)] += 1
        assert eulerian_Aj(d, j) == Poly(counts)


def test_hstar_via_eulerian_examples():
    assert hstar_via_eulerian(CVector(3, (0, 0, 0))).h == (1, 4, 1, 0)
    assert hstar_via_eulerian(CVector(3, (0, 3, 0))).h == (1, 10, 13, 0)
    assert hstar_via_eulerian(CVector(2, (2, 3))).h == (1, 8, 3)
    assert hstar_via_eulerian(CVector(2, (-1, 0))).source_valid is False


@pytest.mark.parametrize("d", [1, 2, 3])
def test_eulerian_route_agrees_on_box(d):
    for c in itertools.product(range(6), repeat=d):
        cv = CVector(d, c)
        assert hstar_via_eulerian(cv).h == hstar_from_poly(from_cbasis(cv), d).h


# degree and reciprocity

def test_degree_examples():
    assert degree_of(HStarVector(3, (1, 4, 1, 0))) == 2
    assert degree_of(ehrhart_stanley(E), 3) == 2
    assert degree_of(ehrhart_stanley(SEGMENT), 1) == 0
    assert degree_of(HStarVector(0, (1,))) == 0
    assert degree_via_dilates(CUBE) == 2
    assert degree_via_dilates(E) == 2
    assert degree_via_dilates(Q) == 2
    assert degree_via_dilates(SEGMENT) == 0


def test_reciprocity_examples():
    assert interior_count_reciprocity(P(1, 4, 6), 2) == 3
    assert interior_count_reciprocity(P(1, 3, 3, 1), 3) == 0
    assert interior_count_reciprocity(P(1, 3, 6, 4), 3) == 0


@given(
    st.integers(1, 3).flatmap(
        lambda d: st.lists(st.tuples(*[st.integers(-2, 2)] * d), min_size=d, max_size=4).filter(
            lambda g: linalg.rank(g) == d
        )
    )
)
def test_zonotope_invariants(g):
    z = make_zonotope(g)
    d = z.dim_ambient
    p = ehrhart_stanley(z)
    c = to_cbasis(p, d)
    h = hstar_from_poly(p, d)
    assert c.valid and h.valid
    interior = count_lattice_points(z, strict=True)
    assert interior_count_reciprocity(p, d) == interior == c.c[-1]
    deg = degree_of(h)
    assert deg == degree_via_dilates(z)
    assert deg in (d - 1, d)
