from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from torus_reduction.exactmath import (
    LinForm,
    MPoly,
    Vec,
    cone_contains,
    det,
    extend_to_basis,
    find_positive_vector,
    first_relation,
    iter_monomials,
    poly_arith,
    rank,
    solve_linear,
    solve_rational_system,
    stabilizer_order,
    to_rat,
)
from torus_reduction.exceptions import DimensionError, SingularBasisError

small_ints = st.integers(min_value=-4, max_value=4)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, small_ints, max_size=4).map(lambda terms: MPoly(2, terms))
points = st.tuples(
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
    st.fractions(min_value=-3, max_value=3, max_denominator=7),
)


@pytest.mark.parametrize(
    "value,expected",
    [
        (3, Fraction(3)),
        ("1/3", Fraction(1, 3)),
        (" -2/4 ", Fraction(-1, 2)),
        (Fraction(5, 7), Fraction(5, 7)),
        (sympy.Rational(2, 6), Fraction(1, 3)),
    ],
)
def test_to_rat(value, expected):
    assert to_rat(value) == expected


@pytest.mark.parametrize("value", [0.5, True, None])
def test_to_rat_refuses_inexact(value):
    with pytest.raises(TypeError):
        to_rat(value)


def test_to_rat_bad_string():
    with pytest.raises(ValueError, match="not a rational"):
        to_rat("one third")


def test_vec_arithmetic():
    a = Vec([1, "1/2"])
    b = Vec(["1/2", 0])
    assert a + b == Vec([Fraction(3, 2), Fraction(1, 2)])
    assert a - b == Vec([Fraction(1, 2), Fraction(1, 2)])
    assert -a == Vec([-1, Fraction(-1, 2)])
    assert a.scale(2) == Vec([2, 1])
    assert Vec.zero(3) == (0, 0, 0)


def test_vec_rank_mismatch():
    with pytest.raises(DimensionError):
        Vec([1, 2]) + Vec([1])


def test_lin_form():
    form = LinForm([1, -2])
    assert form.pair([3, 1]) == 1
    assert -form == LinForm([-1, 2])
    assert form.scale(3) == LinForm([3, -6])
    assert form.as_poly() == MPoly(2, {(1, 0): 1, (0, 1): -2})
    assert LinForm([0, 0]).is_zero
    assert LinForm([Fraction(4, 2)]) == LinForm([2])


def test_lin_form_rejects_fractions():
    with pytest.raises(ValueError):
        LinForm([Fraction(1, 2)])


def test_mpoly_canonical_form():
    poly = MPoly(2, {(1, 0): 1, (0, 1): 0})
    assert poly.terms == {(1, 0): Fraction(1)}
    assert MPoly(2, {(1, 1): 2}) - MPoly(2, {(1, 1): 2}) == MPoly.zero(2)
    assert MPoly.zero(2).is_zero
    assert MPoly.zero(2).degree == -1
    assert MPoly.constant(2, 3) == 3


def test_mpoly_is_immutable():
    poly = MPoly.one(1)
    with pytest.raises(AttributeError):
        poly.nvars = 2


def test_mpoly_square():
    u1, u2 = MPoly.variable(2, 0), MPoly.variable(2, 1)
    square = (u1 + u2) ** 2
    assert square.coefficient((1, 1)) == 2
    assert square.degree == 2
    assert square.derivative(0) == (u1 + u2).scale(2)
    assert square.evaluate(["1/2", "1/2"]) == 1


def test_mpoly_substitute():
    u1, u2 = MPoly.variable(2, 0), MPoly.variable(2, 1)
    poly = u1 * u2 + 1
    assert poly.substitute([u1 + u2, u1 - u2]) == u1**2 - u2**2 + 1


def test_mpoly_format():
    poly = MPoly(1, {(2,): 1, (0,): -3})
    assert poly.format(["t"]) == "t^2 - 3"


def test_mpoly_variable_count_mismatch():
    with pytest.raises(DimensionError):
        MPoly.one(1) + MPoly.one(2)


@pytest.mark.parametrize(
    "op,expected",
    [("add", MPoly(1, {(1,): 1, (0,): 1})), ("mul", MPoly(1, {(1,): 1}))],
)
def test_poly_arith(op, expected):
    assert poly_arith(MPoly.variable(1, 0), MPoly.one(1), op) == expected


def test_poly_arith_scale():
    assert poly_arith(MPoly.variable(1, 0), Fraction(1, 2), "scale").coefficient((1,)) == Fraction(
        1, 2
    )
    with pytest.raises(ValueError):
        poly_arith(MPoly.one(1), MPoly.one(1), "pow")


@given(polys, polys, points)
def test_evaluation_is_a_ring_homomorphism(p, q, x):
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)


@given(polys)
def test_sympy_round_trip(p):
    symbols = sympy.symbols("a b")
    assert MPoly.from_sympy(p.to_sympy(symbols), symbols) == p


def test_det_and_rank():
    assert det([[1, 0], [0, 1]]) == 1
    assert det([[2, 1], [1, 1]]) == 1
    assert det([[1, 1], [1, 1]]) == 0
    assert det([]) == 1
    assert rank([[1, 1], [2, 2]]) == 1


def add(p, q):
    return poly_arith(p, q, "add")


def mul(p, q):
    return poly_arith(p, q, "mul")


@given(polys, polys, polys)
def test_poly_arith_ring_axioms(p, q, r):
    assert add(p, q) == add(q, p)
    assert mul(p, q) == mul(q, p)
    assert add(add(p, q), r) == add(p, add(q, r))
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    assert mul(p, add(q, r)) == add(mul(p, q), mul(p, r))
    assert mul(p, MPoly.one(2)) == p
    assert add(p, poly_arith(p, -1, "scale")).is_zero


square_3 = st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3)


@given(square_3, st.integers(0, 2), small_ints)
def test_det_is_linear_in_each_row(rows, i, factor):
    scaled = [[factor * x for x in row] if j == i else row for j, row in enumerate(rows)]
    assert det(scaled) == factor * det(rows)


@given(square_3, st.integers(0, 2), st.integers(0, 2))
def test_det_flips_sign_on_row_swap(rows, i, j):
    assume(i != j)
    swapped = list(rows)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert det(swapped) == -det(rows)


def test_solve_linear():
    assert solve_linear([(1, 0), (1, 1)], [2, 3]) == Vec([-1, 3])


def test_solve_linear_singular():
    with pytest.raises(SingularBasisError):
        solve_linear([(1, 1), (2, 2)], [1, 1])


@given(st.tuples(small_ints, small_ints, small_ints, small_ints), points)
def test_solve_linear_reconstructs(entries, v):
    a, b, c, d = entries
    assume(a * d - b * c != 0)
    basis = [(a, b), (c, d)]
    s = solve_linear(basis, v)
    assert tuple(s[0] * basis[0][i] + s[1] * basis[1][i] for i in range(2)) == tuple(v)


def test_solve_rational_system():
    assert solve_rational_system([[1, 2], [3, 4]], [5, 6]) == Vec([-4, Fraction(9, 2)])
    assert solve_rational_system([[1, 2], [2, 4]], [1, 1]) is None


def test_first_relation():
    assert first_relation([(1, 0), (0, 1), (1, 1)]) == (2, {0: Fraction(1), 1: Fraction(1)})
    assert first_relation([(1, 0), (2, 0)]) == (1, {0: Fraction(2)})
    assert first_relation([(1, 0), (0, 1)]) is None


def test_extend_to_basis():
    assert extend_to_basis([LinForm((1, 1))], 2) == [LinForm((1, 1)), LinForm((1, 0))]
    assert extend_to_basis([], 2) == [LinForm((1, 0)), LinForm((0, 1))]


@pytest.mark.parametrize(
    "weights,expected",
    [
        ([(1, 0), (0, 1), (1, 1)], 1),
        ([(2, 0), (0, 2)], 4),
        ([(1, 1), (1, -1)], 2),
        ([(1, 0)], 0),
    ],
)
def test_stabilizer_order(weights, expected):
    assert stabilizer_order(weights, 2) == expected


@pytest.mark.parametrize(
    "forms",
    [[(1, 0), (0, 1)], [(1, -1), (1, 1)], [(2, -1), (-1, 2), (1, 0)]],
)
def test_find_positive_vector(forms):
    xi = find_positive_vector(forms, 2)
    assert xi is not None
    assert all(LinForm(f).pair(xi) > 0 for f in forms)


def test_find_positive_vector_none():
    assert find_positive_vector([(1,), (-1,)], 1) is None
    assert find_positive_vector([(1, 0), (-1, 1), (0, -1)], 2) is None


@pytest.mark.parametrize(
    "v,expected",
    [((1, 2), True), ((0, 1), True), ((0, 0), True), ((-1, 0), False), (("1/2", "-1/3"), False)],
)
def test_cone_contains(v, expected):
    assert cone_contains([(1, 0), (0, 1)], v) is expected


def test_cone_contains_dependent_forms():
    assert cone_contains([(1,), (2,)], ["1/3"])
    assert not cone_contains([(1,), (2,)], ["-1/3"])


def test_iter_monomials():
    monomials = list(iter_monomials(2, 2))
    assert len(monomials) == 6
    assert all(sum(m) <= 2 for m in monomials)
    assert list(iter_monomials(0, 3)) == [()]
