"""
Brute-force validators that recompute engine quantities by independent means: exact
fiber-polytope volumes, Monte Carlo hit counting, Riemann sums of convolutions and a
direct enumeration of sphere-product fixed points.
"""
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from torus_reduction.config import DEFAULT_CONFIG, EngineConfig
from torus_reduction.conversion import rat_to_str
from torus_reduction.exactmath import (
    LinForm,
    Vec,
    find_positive_vector,
    rank,
    rational_det,
    solve_linear,
    solve_rational_system,
)
from torus_reduction.exceptions import NonRegularValueError, OracleError
from torus_reduction.model import EquivariantClass, SpaceKind, SpaceModel, validate_class
from torus_reduction.pairing import ReducedSpace
from torus_reduction.utils.basemodel import ReductionModel

Density = Callable[[float], float]
_Constraint = Tuple[Tuple[Fraction, ...], Fraction]


class OracleMethod(str, Enum):
    TRIANGULATION = "triangulation"
    MONTE_CARLO = "monte_carlo"
    GRID_CONVOLUTION = "grid_convolution"
    ENUMERATION = "enumeration"
    CLOSED_FORM = "closed_form"


class OracleReport(ReductionModel):
    """
    An engine value next to its oracle value. Exact methods pass only on equality.
    """

    engine_value: Fraction
    oracle_value: Union[Fraction, float]
    method: OracleMethod
    tolerance: float = 0.0
    passed: bool

    def to_json(self) -> Dict[str, Any]:
        if isinstance(self.oracle_value, Fraction):
            oracle_value: Union[str, float] = rat_to_str(self.oracle_value)
        else:
            oracle_value = float(self.oracle_value)

        return {
            "engine_value": rat_to_str(self.engine_value),
            "method": self.method.value,
            "oracle_value": oracle_value,
            "pass": self.passed,
            "tolerance": self.tolerance,
        }


def compare_exact(engine_value: Fraction, oracle_value: Fraction, method: OracleMethod):
    return OracleReport(
        engine_value=engine_value,
        oracle_value=oracle_value,
        method=method,
        tolerance=0.0,
        passed=engine_value == oracle_value,
    )


def compare_numeric(
    engine_value: Fraction, oracle_value: float, method: OracleMethod, tolerance: float
) -> OracleReport:
    return OracleReport(
        engine_value=engine_value,
        oracle_value=float(oracle_value),
        method=method,
        tolerance=tolerance,
        passed=abs(float(engine_value) - float(oracle_value)) <= tolerance,
    )


class _Fiber:
    """
    The fiber ``{s >= 0 : sum(s_i w_i) = t}`` in the coordinates ``s_N`` of the weights
    outside a basis ``B``; ``s_B`` is then determined by ``t``.
    """

    def __init__(self, weights: Sequence[Sequence[int]], t: Sequence[Any]):
        self.weights = [LinForm(w) for w in weights]
        self.t = Vec(t)
        k = len(self.t)
        if any(len(w) != k for w in self.weights):
            raise OracleError(f"Weights must all have rank {k}.")

        if rank(self.weights) < k:
            raise OracleError("Weights do not span; the fiber is not a polytope.")

        if find_positive_vector(self.weights, k) is None:
            raise OracleError("Weights are not polarizable; the fiber is unbounded.")

        self.basis_index = next(
            subset
            for subset in combinations(range(len(self.weights)), k)
            if rank([self.weights[i] for i in subset]) == k
        )
        self.free_index = [i for i in range(len(self.weights)) if i not in self.basis_index]
        basis = [self.weights[i] for i in self.basis_index]
        self.scale = abs(rational_det(basis))
        self.offset = solve_linear(basis, self.t)
        self.columns = [solve_linear(basis, self.weights[j]) for j in self.free_index]

    @property
    def dim(self) -> int:
        return len(self.free_index)

    def constraints(self) -> List[_Constraint]:
        """Inequalities ``a . x >= b`` in the free coordinates."""
        d = self.dim
        result: List[_Constraint] = [
            (tuple(Fraction(int(i == j)) for j in range(d)), Fraction(0)) for i in range(d)
        ]
        for r in range(len(self.basis_index)):
            result.append((tuple(-column[r] for column in self.columns), -self.offset[r]))

        return result

    def basis_coordinates(self, free: Sequence[float]) -> np.ndarray:
        offset = np.array([float(x) for x in self.offset])
        columns = np.array([[float(x) for x in column] for column in self.columns]).reshape(
            self.dim, len(self.basis_index)
        )
        return offset - np.asarray(free) @ columns


def _vertices(constraints: List[_Constraint], d: int) -> List[Vec]:
    found: Dict[Vec, None] = {}
    for subset in combinations(constraints, d):
        point = solve_rational_system([a for a, _ in subset], [b for _, b in subset])
        if point is None:
            continue

        if all(sum((x * y for x, y in zip(a, point)), Fraction(0)) >= b for a, b in constraints):
            found.setdefault(point, None)

    return list(found)


def _affine_dim(points: Sequence[Vec]) -> int:
    if not points:
        return -1

    return rank([p - points[0] for p in points[1:]]) if len(points) > 1 else 0


def _pulling_triangulation(
    vertices: List[Vec],
    constraints: List[_Constraint],
    face: FrozenSet[int],
    dim: int,
) -> List[Tuple[int, ...]]:
    if dim == 0:
        return [tuple(face)]

    apex = min(face)
    simplices: List[Tuple[int, ...]] = []
    seen = set()
    for a, b in constraints:
        facet = frozenset(
            v
            for v in face
            if sum((x * y for x, y in zip(a, vertices[v])), Fraction(0)) == b
        )
        if apex in facet or facet in seen:
            continue

        if _affine_dim([vertices[v] for v in sorted(facet)]) != dim - 1:
            continue

        seen.add(facet)
        for simplex in _pulling_triangulation(vertices, constraints, facet, dim - 1):
            simplices.append((apex,) + simplex)

    return simplices


def polytope_volume(constraints: List[_Constraint], d: int) -> Fraction:
    """
    The exact volume of the bounded polytope ``{x : a . x >= b}`` in ``d`` dimensions.

    Raises:
        :class:`~torus_reduction.exceptions.OracleError`: When the polytope is not empty
          but has dimension below ``d``.
    """

    vertices = _vertices(constraints, d)
    if not vertices:
        return Fraction(0)

    if d == 0:
        return Fraction(1)

    if _affine_dim(vertices) != d:
        raise OracleError("The fiber is degenerate; the point is not regular.")

    volume = Fraction(0)
    for simplex in _pulling_triangulation(
        vertices, constraints, frozenset(range(len(vertices))), d
    ):
        origin = vertices[simplex[0]]
        edges = [vertices[v] - origin for v in simplex[1:]]
        volume += abs(rational_det(edges))

    return volume / factorial(d)


def fiber_volume(
    weights: Sequence[Sequence[int]],
    t: Sequence[Any],
    config: Optional[EngineConfig] = None,
) -> Fraction:
    """
    The density at ``t`` of the pushforward of Lebesgue measure on the positive orthant
    under ``s -> sum(s_i w_i)``: the volume of the fiber in the free coordinates divided
    by ``|det|`` of the basis weights.

    Raises:
        :class:`~torus_reduction.exceptions.OracleError`: For weights that do not span,
          are not polarizable or give a fiber too large to triangulate, and for
          degenerate fibers.

    Returns:
        Fraction
    """

    config = config or DEFAULT_CONFIG
    fiber = _Fiber(weights, t)
    if fiber.dim > config.oracle.max_fiber_dim:
        raise OracleError(
            f"Fiber dimension {fiber.dim} exceeds the limit {config.oracle.max_fiber_dim}."
        )

    return polytope_volume(fiber.constraints(), fiber.dim) / fiber.scale


def _monte_carlo(
    weights: Sequence[Sequence[int]],
    t: Sequence[Any],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    config: Optional[EngineConfig] = None,
) -> Tuple[float, float]:
    config = config or DEFAULT_CONFIG
    samples = samples or config.oracle.monte_carlo_samples
    seed = config.oracle.seed if seed is None else seed
    fiber = _Fiber(weights, t)
    if fiber.dim == 0:
        return float(all(x >= 0 for x in fiber.offset)) / float(fiber.scale), 0.0

    xi = find_positive_vector(fiber.weights, len(fiber.t))
    assert xi is not None
    height = sum((x * y for x, y in zip(fiber.t, xi)), Fraction(0))
    if height <= 0:
        return 0.0, 0.0

    bounds = np.array([float(height / fiber.weights[j].pair(xi)) for j in fiber.free_index])
    rng = np.random.default_rng(seed)
    free = rng.uniform(0.0, 1.0, size=(samples, fiber.dim)) * bounds
    inside = np.all(fiber.basis_coordinates(free) >= 0.0, axis=1)
    scale = float(np.prod(bounds)) / float(fiber.scale)
    hits = float(np.count_nonzero(inside)) / samples
    return hits * scale, scale * float(np.sqrt(hits * (1.0 - hits) / samples))


def monte_carlo_fiber_volume(
    weights: Sequence[Sequence[int]],
    t: Sequence[Any],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    config: Optional[EngineConfig] = None,
) -> float:
    """
    Estimate :func:`fiber_volume` by sampling the free coordinates in a bounding box.
    """

    estimate, _ = _monte_carlo(weights, t, samples=samples, seed=seed, config=config)
    return estimate


def grid_convolution(
    a: Density, b: Density, t: float, step: float, window: Tuple[float, float]
) -> float:
    """
    The midpoint Riemann sum of ``(a * b)(t)`` over the window that holds ``a``.
    """

    low, high = window
    count = int(round((high - low) / step))
    xs = low + (np.arange(count) + 0.5) * step
    av = np.array([a(float(x)) for x in xs])
    bv = np.array([b(float(t - x)) for x in xs])
    return float(np.dot(av, bv) * step)


def grid_convolution_check(
    a: Density,
    b: Density,
    t: Any,
    step: Any,
    engine_value: Fraction,
    window: Tuple[Any, Any],
    tolerance: Optional[float] = None,
    config: Optional[EngineConfig] = None,
) -> OracleReport:
    """
    Compare the engine's value of a product at ``t`` with the Riemann sum of the
    convolution of the factor densities ``a`` and ``b``.

    Raises:
        :class:`~torus_reduction.exceptions.OracleError`: When ``a`` does not vanish just
          outside ``window``.
    """

    config = config or DEFAULT_CONFIG
    low, high = float(window[0]), float(window[1])
    step = float(step)
    if low >= high:
        raise OracleError(f"Empty convolution window ({low}, {high}).")

    if a(low - step) != 0.0 or a(high + step) != 0.0:
        raise OracleError(f"Window ({low}, {high}) does not hold the support of the density.")

    oracle_value = grid_convolution(a, b, float(t), step, (low, high))
    tolerance = config.oracle.grid_tolerance if tolerance is None else tolerance
    return compare_numeric(engine_value, oracle_value, OracleMethod.GRID_CONVOLUTION, tolerance)


def support_of(space: SpaceModel) -> Tuple[Fraction, Fraction]:
    """
    The interval spanned by the moment values of a compact rank-1 space, which holds
    the support of all its pushforwards.
    """

    if space.rank != 1:
        raise OracleError(f"Space '{space.name}' has rank {space.rank}, expected 1.")

    elif space.kind != SpaceKind.COMPACT:
        raise OracleError(f"Linear space '{space.name}' has unbounded support.")

    moments = [p.moment[0] for p in space.points]
    return min(moments), max(moments)


def density_of(
    space: SpaceModel,
    cls: EquivariantClass,
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> Density:
    """
    The engine's rank-1 pushforward of ``cls`` as a float function, zero on walls.
    """

    if space.rank != 1:
        raise OracleError(f"Space '{space.name}' has rank {space.rank}, expected 1.")

    reduced = ReducedSpace(space, xi=xi, config=config)

    def density(x: float) -> float:
        try:
            return float(reduced.pair(cls, [Fraction(x)]).value)
        except NonRegularValueError:
            return 0.0

    return density


def _sphere_weights(space: SpaceModel) -> None:
    if space.rank != 1:
        raise OracleError(f"Space '{space.name}' has rank {space.rank}, expected 1.")

    for point in space.points:
        if any(abs(w[0]) != 1 for w in point.weights):
            raise OracleError(f"Fixed point '{point.id}' has weights other than +1 and -1.")


def fixed_point_enumeration(space: SpaceModel, cls: EquivariantClass, t: Any) -> Fraction:
    """
    Sum the fixed-point contributions of a rank-1 model with weights ``+1`` and ``-1``
    directly: a monomial ``c u^d`` at a point with ``n`` weights whose product is ``e``
    contributes ``c e (t - mu)^(m-1) / (m-1)!`` with ``m = n - d`` once ``t > mu``.

    Raises:
        :class:`~torus_reduction.exceptions.OracleError`: For other models, or when ``t``
          is the moment value of a contributing point.
    """

    _sphere_weights(space)
    validate_class(space, cls)
    t = Vec([t] if not isinstance(t, (list, tuple)) else t)[0]
    total = Fraction(0)
    for point in space.points:
        mu = point.moment[0]
        n = len(point.weights)
        euler = 1
        for weight in point.weights:
            euler *= weight[0]

        for (degree,), coeff in cls.restriction(point.id).items():
            m = n - degree
            if m <= 0:
                continue

            if t == mu:
                raise OracleError(f"t={t} is the moment value of '{point.id}'.")

            if t > mu:
                total += coeff * euler * (t - mu) ** (m - 1) / factorial(m - 1)

    return total


def sphere_product_closed_form(exponents: Sequence[int]) -> Fraction:
    """
    The pairing at ``t = 0`` of the class with exponents ``k_j`` of the symplectic class
    on each factor of an odd product of spheres with outward weights, for ``sum(k) = n - 1``.
    """

    n = len(exponents)
    if n % 2 == 0 or sum(exponents) != n - 1 or any(k < 0 for k in exponents):
        raise OracleError(f"No closed form for exponents {tuple(exponents)}.")

    m = sum(1 for k in exponents if k % 2)
    total = 0
    for s in range(m + 1):
        for r in range(n - m + 1):
            if 2 * (s + r) < n:
                total += comb(m, s) * comb(n - m, r) * (-1) ** (n - m - r)

    return Fraction(total)


def fiber_report(
    weights: Sequence[Sequence[int]],
    t: Sequence[Any],
    engine_value: Fraction,
    method: OracleMethod = OracleMethod.TRIANGULATION,
    config: Optional[EngineConfig] = None,
) -> OracleReport:
    config = config or DEFAULT_CONFIG
    if method == OracleMethod.TRIANGULATION:
        return compare_exact(engine_value, fiber_volume(weights, t, config), method)

    elif method == OracleMethod.MONTE_CARLO:
        estimate, error = _monte_carlo(weights, t, config=config)
        # Four standard errors.
        return compare_numeric(engine_value, estimate, method, 4 * error + 1e-12)

    raise OracleError(f"Method '{method.value}' does not apply to fiber volumes.")


__all__ = [
    "OracleMethod",
    "OracleReport",
    "compare_exact",
    "density_of",
    "fiber_report",
    "fiber_volume",
    "fixed_point_enumeration",
    "grid_convolution",
    "grid_convolution_check",
    "monte_carlo_fiber_volume",
    "polytope_volume",
    "sphere_product_closed_form",
    "support_of",
]
