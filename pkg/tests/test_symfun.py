import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import frobenius_character

from jacgen.errors import BadLeadingTerm, NonIntegralSchur, PositiveDegreeRequired
from jacgen.motive import C, L, ONE, MotiveElem
from jacgen.symfun import (
    SymSeries,
    change_basis,
    character,
    from_document,
    geometric_inverse,
    log_one_minus,
    multiply,
    p_derivative,
    partitions,
    plethysm,
    plethystic_inverse,
    schur_coeffs,
    to_document,
)

N = 6


def schur(f):
    return {lam: v for lam, v in change_basis(f, "schur")}


@st.composite
def coeffs(draw):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, 2), st.integers(0, 1)),
        st.integers(-3, 3), min_size=1, max_size=3))
    return MotiveElem(terms)


@st.composite
def series(draw, max_deg=3, min_deg=0, N=N):
    degs = range(min_deg, max_deg + 1)
    lams = [lam for n in degs for lam in partitions(n)]
    chosen = draw(st.lists(st.sampled_from(lams), min_size=1, max_size=4, unique=True))
    return SymSeries({lam: draw(coeffs()) for lam in chosen}, N)


# -- examples -------------------------------------------------------------------


def test_partitions_order():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert partitions(0) == ((),)
    assert [len(partitions(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_characters_match_frobenius_formula():
    for n in range(1, 7):
        for lam in partitions(n):
            for mu in partitions(n):
                assert character(lam, mu) == frobenius_character(lam, mu)


def test_character_orthogonality():
    from jacgen.symfun import z
    for n in range(1, 9):
        parts = partitions(n)
        for a in parts:
            for b in parts:
                total = sum(Fraction(character(a, mu) * character(b, mu), z(mu)) for mu in parts)
                assert total == (a == b)


def test_basis_change_examples():
    assert schur(SymSeries.p_lam((1, 1), 3)) == {(2,): ONE, (1, 1): ONE}
    assert schur(SymSeries.p(2, 3)) == {(2,): ONE, (1, 1): -ONE}
    s21 = SymSeries.s((2, 1), 3)
    assert s21.coeffs == {(1, 1, 1): Fraction(1, 3), (3,): Fraction(-1, 3)}


def test_non_integral_schur():
    with pytest.raises(NonIntegralSchur):
        schur_coeffs(SymSeries.p(2, 3) * Fraction(1, 2))


def test_products():
    s1 = SymSeries.s((1,), 4)
    assert multiply(SymSeries.p(1, 4), SymSeries.p(1, 4)).coeffs == {(1, 1): ONE}
    assert schur(s1 * s1) == {(2,): ONE, (1, 1): ONE}
    assert schur((s1 * L) * s1) == {(2,): L, (1, 1): L}


def test_plethysm_examples():
    assert plethysm(SymSeries.p(2, 6), SymSeries.p(3, 6)).coeffs == {(6,): ONE}
    f = SymSeries.s((2, 1), 5) + SymSeries.p(2, 5, L)
    assert plethysm(f, SymSeries.p(1, 5)) == f
    assert plethysm(SymSeries.p(1, 5), f) == f
    g = plethysm(SymSeries.h(2, 4), SymSeries.p(1, 4, ONE + L))
    assert schur(g) == {(2,): ONE + L + L * L, (1, 1): L}


def test_classical_plethysms():
    # textbook values
    assert schur(SymSeries.h(2, 4) @ SymSeries.h(2, 4)) == {(4,): ONE, (2, 2): ONE}
    assert schur(SymSeries.e(2, 4) @ SymSeries.e(2, 4)) == {(2, 1, 1): ONE}
    assert schur(SymSeries.h(2, 6) @ SymSeries.h(3, 6)) == {(6,): ONE, (4, 2): ONE}
    assert schur(SymSeries.h(3, 6) @ SymSeries.h(2, 6)) == {(6,): ONE, (4, 2): ONE, (2, 2, 2): ONE}


def test_adams_acts_on_inner_coefficients():
    g = SymSeries.p(1, 4, C)
    out = plethysm(SymSeries.p(2, 4), g)
    assert out.coeffs == {(2,): C * C - 2 * L}


def test_plethysm_needs_positive_inner():
    with pytest.raises(PositiveDegreeRequired):
        plethysm(SymSeries.p(1, 3), SymSeries.one(3))


def test_derivative_examples():
    assert schur(p_derivative(1, SymSeries.s((3,), 4))) == {(2,): ONE}
    assert p_derivative(2, SymSeries.s((3,), 4)).coeffs == {(1,): Fraction(1, 2)}
    assert p_derivative(1, SymSeries.p_lam((2, 1, 1), 5)).coeffs == {(2, 1): 2}


def test_inverse_examples():
    assert plethystic_inverse(SymSeries.p(1, 5)) == SymSeries.p(1, 5)
    f = SymSeries.p(1, 4) + SymSeries.h(2, 4)
    g = plethystic_inverse(f)
    assert g.agrees_with(SymSeries.p(1, 4) - SymSeries.h(2, 4), up_to=2)
    H = SymSeries.zero(6)
    for m in range(1, 7):
        H = H + SymSeries.h(m, 6)
    assert plethysm(plethystic_inverse(H), H) == SymSeries.p(1, 6)
    with pytest.raises(BadLeadingTerm):
        plethystic_inverse(SymSeries.p(1, 3, 2))


def test_series_combinators():
    assert log_one_minus(SymSeries.zero(4)).is_zero()
    p2 = SymSeries.p(2, 4)
    assert log_one_minus(p2) == -p2 - (p2 * p2) * Fraction(1, 2)
    p1 = SymSeries.p(1, 3)
    assert geometric_inverse(p1) == SymSeries.one(3) + p1 + p1 * p1 + p1 * p1 * p1
    with pytest.raises(PositiveDegreeRequired):
        geometric_inverse(SymSeries.one(3))


def test_document_round_trip_and_order():
    f = SymSeries.s((2, 1), 4, L) + SymSeries.s((3,), 4) + SymSeries.s((1,), 4, C)
    doc = to_document(f, "schur")
    assert list(doc["degrees"]) == ["1", "3"]
    assert [row["partition"] for row in doc["degrees"]["3"]] == [[3], [2, 1]]
    assert from_document(doc) == f
    assert from_document(to_document(f, "homogeneous")) == f


# -- properties ---------------------------------------------------------------


@settings(max_examples=500, deadline=None)
@given(series(max_deg=3), series(min_deg=1, max_deg=2, N=5), series(min_deg=1, max_deg=2, N=5))
def test_plethysm_associative(f, g, h):
    f = f.truncate(5)
    assert plethysm(plethysm(f, g), h) == plethysm(f, plethysm(g, h))


@settings(max_examples=500, deadline=None)
@given(series(max_deg=6), st.sampled_from(["schur", "powersum", "homogeneous"]))
def test_basis_round_trip(f, basis):
    assert SymSeries.from_basis(change_basis(f, basis), basis, f.max_degree) == f


@settings(max_examples=500, deadline=None)
@given(series(), series(), st.integers(1, 3))
def test_derivative_is_derivation(f, g, k):
    lhs = p_derivative(k, f * g)
    rhs = p_derivative(k, f) * g + f * p_derivative(k, g)
    assert lhs.agrees_with(rhs)


@settings(max_examples=500, deadline=None)
@given(series(min_deg=2, max_deg=4))
def test_inverse_identity(tail):
    f = SymSeries.p(1, N) + tail
    g = plethystic_inverse(f)
    assert plethysm(f, g) == SymSeries.p(1, N)
    assert plethysm(g, f) == SymSeries.p(1, N)


@settings(max_examples=200, deadline=None)
@given(series(min_deg=1, max_deg=3))
def test_geometric_inverse(g):
    one = SymSeries.one(N)
    assert geometric_inverse(g) * (one - g) == one


def _egf(f, n_max):
    return [f.dimension(n) for n in range(n_max + 1)]


def _egf_compose(a, b, n_max):
    # coefficients are dim_n / n!; compose as ordinary series, then rescale
    A = [v.scale(Fraction(1, math.factorial(n))) for n, v in enumerate(a)]
    B = [v.scale(Fraction(1, math.factorial(n))) for n, v in enumerate(b)]
    out = [MotiveElem() for _ in range(n_max + 1)]
    power = [ONE] + [MotiveElem() for _ in range(n_max)]
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            out[n] = out[n] + A[m] * power[n]
        nxt = [MotiveElem() for _ in range(n_max + 1)]
        for i, x in enumerate(power):
            for j, y in enumerate(B):
                if i + j <= n_max:
                    nxt[i + j] = nxt[i + j] + x * y
        power = nxt
    return [v.scale(math.factorial(n)) for n, v in enumerate(out)]


@settings(max_examples=200, deadline=None)
@given(series(max_deg=3, N=5), series(min_deg=1, max_deg=3, N=5))
def test_dimension_under_plethysm(f, g):
    assert _egf(plethysm(f, g), 5) == _egf_compose(_egf(f, 5), _egf(g, 5), 5)
