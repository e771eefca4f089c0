from fractions import Fraction

import pytest

from torus_reduction.config import EngineConfig
from torus_reduction.exceptions import OracleError
from torus_reduction.model import (
    class_algebra,
    product_classes,
    product_space,
    symplectic_class,
    unit_class,
)
from torus_reduction.oracle import (
    OracleMethod,
    compare_exact,
    compare_numeric,
    density_of,
    fiber_report,
    fiber_volume,
    fixed_point_enumeration,
    grid_convolution,
    grid_convolution_check,
    monte_carlo_fiber_volume,
    sphere_product_closed_form,
    support_of,
)
from torus_reduction.pairing import linear_model, pair


@pytest.mark.parametrize(
    "weights,t",
    [
        ([(1,), (1,), (1,)], ["4"]),
        ([(2,), (1,), (1,)], ["1"]),
        ([(1,), (2,)], ["5/3"]),
        ([(1,), (2,), (3,)], ["7/2"]),
        ([(1, 0), (0, 1), (1, 1)], ["1", "2"]),
        ([(1, 0), (0, 1), (1, 1), (1, 2)], ["3", "7/2"]),
        ([(1, 0), (0, 1)], ["1", "1"]),
        ([(1, 0), (0, 1)], ["-1", "1"]),
    ],
)
def test_fiber_volume_matches_engine(weights, t):
    model = linear_model(weights)
    engine_value = pair(model, unit_class(model), t).value
    assert fiber_volume(weights, t) == engine_value
    assert fiber_report(weights, t, engine_value).passed


def test_fiber_volume_values():
    assert fiber_volume([(1,), (1,), (1,)], ["4"]) == 8
    assert fiber_volume([(2,), (1,), (1,)], ["1"]) == Fraction(1, 4)
    assert fiber_volume([(1, 0), (0, 1), (1, 1)], ["1", "2"]) == 1


@pytest.mark.parametrize(
    "weights,t",
    [([(1, 0)], ["1", "0"]), ([(1,), (-1,)], ["1"]), ([(1,), (1, 0)], ["1"])],
)
def test_fiber_volume_rejects(weights, t):
    with pytest.raises(OracleError):
        fiber_volume(weights, t)


def test_degenerate_fiber():
    with pytest.raises(OracleError, match="degenerate"):
        fiber_volume([(1,), (1,)], ["0"])


def test_fiber_dimension_limit():
    config = EngineConfig(oracle={"max_fiber_dim": 1})
    with pytest.raises(OracleError, match="exceeds"):
        fiber_volume([(1,), (1,), (1,)], ["1"], config)


def test_monte_carlo_fiber_volume():
    estimate = monte_carlo_fiber_volume([(1,), (1,), (1,)], ["1"], samples=20000, seed=1)
    assert estimate == pytest.approx(0.5, abs=0.05)
    assert monte_carlo_fiber_volume([(1,), (1,)], ["-1"]) == 0.0


def test_monte_carlo_report(c3):
    engine_value = pair(c3, unit_class(c3), ["2"]).value
    report = fiber_report([(1,), (1,), (1,)], ["2"], engine_value, OracleMethod.MONTE_CARLO)
    assert report.passed
    assert report.tolerance > 0
    assert isinstance(report.to_json()["oracle_value"], float)


def test_fiber_report_rejects_other_methods():
    with pytest.raises(OracleError):
        fiber_report([(1,)], ["1"], Fraction(1), OracleMethod.ENUMERATION)


def test_grid_convolution_of_boxes():
    def box(x):
        return 1.0 if -1.0 < x < 1.0 else 0.0

    assert grid_convolution(box, box, 0.5, 1e-3, (-1.0, 1.0)) == pytest.approx(1.5, abs=1e-2)


def test_grid_convolution_check(s2):
    density = density_of(s2, unit_class(s2))
    engine_value = pair(product_space(s2, s2), unit_class(product_space(s2, s2)), ["1/2"]).value
    report = grid_convolution_check(
        density, density, Fraction(1, 2), Fraction(1, 1000), engine_value, support_of(s2)
    )
    assert engine_value == Fraction(3, 2)
    assert report.passed
    assert report.method == OracleMethod.GRID_CONVOLUTION


def test_grid_convolution_check_window(s2):
    density = density_of(s2, unit_class(s2))
    with pytest.raises(OracleError, match="support"):
        grid_convolution_check(density, density, 0, 0.01, Fraction(2), (-0.5, 0.5))

    with pytest.raises(OracleError, match="Empty"):
        grid_convolution_check(density, density, 0, 0.01, Fraction(2), (1, -1))


def test_support_and_density(s2, cp2, c3):
    assert support_of(s2) == (-1, 1)
    density = density_of(s2, unit_class(s2))
    assert density(0.0) == 1.0
    assert density(1.0) == 0.0
    assert density(3.0) == 0.0

    with pytest.raises(OracleError):
        support_of(cp2)

    with pytest.raises(OracleError):
        support_of(c3)

    with pytest.raises(OracleError):
        density_of(cp2, unit_class(cp2))


@pytest.mark.parametrize("class_name,expected", [("nu*nu*1", -2), ("nu2*1*1", 2), ("1", -3)])
def test_fixed_point_enumeration(s2_workspace, s2_cubed, class_name, expected):
    cls = s2_workspace.cls("s2_cubed", class_name)
    assert fixed_point_enumeration(s2_cubed, cls, 0) == expected
    assert pair(s2_cubed, cls, [0]).value == expected


def test_fixed_point_enumeration_rejects(cp2, s2):
    with pytest.raises(OracleError):
        fixed_point_enumeration(cp2, unit_class(cp2), 0)

    with pytest.raises(OracleError, match="moment value"):
        fixed_point_enumeration(s2, unit_class(s2), 1)

    doubled = linear_model([(2,)])
    with pytest.raises(OracleError):
        fixed_point_enumeration(doubled, unit_class(doubled), 1)


@pytest.mark.parametrize(
    "exponents,expected",
    [((1, 1, 0), -2), ((2, 0, 0), 2), ((0, 1, 1), -2), ((4, 0, 0, 0, 0), -6)],
)
def test_sphere_product_closed_form(exponents, expected):
    assert sphere_product_closed_form(exponents) == expected


@pytest.mark.parametrize("exponents", [(1, 0), (1, 1, 1), (3, 0, -1)])
def test_sphere_product_closed_form_rejects(exponents):
    with pytest.raises(OracleError):
        sphere_product_closed_form(exponents)


@pytest.mark.fuzzing
@pytest.mark.parametrize(
    "exponents", [(1, 1, 1, 1, 0), (2, 2, 0, 0, 0), (3, 1, 0, 0, 0), (2, 1, 1, 0, 0)]
)
def test_closed_form_matches_engine_on_five_spheres(s2_outward, exponents):
    nu = symplectic_class(s2_outward)
    factors = [
        (s2_outward, class_algebra({"nu": nu}, f"nu**{k}", s2_outward, f"nu{k}"))
        for k in exponents
    ]
    space = product_space(*(s for s, _ in factors))
    cls = product_classes(factors)
    expected = sphere_product_closed_form(exponents)
    assert pair(space, cls, [0]).value == expected
    assert fixed_point_enumeration(space, cls, 0) == expected


def test_compare_reports():
    exact = compare_exact(Fraction(1, 2), Fraction(1, 2), OracleMethod.TRIANGULATION)
    assert exact.passed
    assert exact.to_json() == {
        "engine_value": "1/2",
        "method": "triangulation",
        "oracle_value": "1/2",
        "pass": True,
        "tolerance": 0.0,
    }

    numeric = compare_numeric(Fraction(1, 2), 0.6, OracleMethod.MONTE_CARLO, 0.05)
    assert not numeric.passed
    assert numeric.to_json()["oracle_value"] == 0.6
