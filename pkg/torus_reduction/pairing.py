"""
Pairings on reduced spaces, Duistermaat-Heckman polynomials and the structural checks
built on them.
"""
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from torus_reduction.config import DEFAULT_CONFIG, EngineConfig
from torus_reduction.conespline import (
    ConeSplineTerm,
    FormKey,
    SplineRepr,
    chamber_margins,
    convolve,
    decompose,
    evaluate,
)
from torus_reduction.conversion import rat_to_str, vec_to_json
from torus_reduction.exactmath import (
    LinForm,
    MPoly,
    Vec,
    cone_contains,
    find_positive_vector,
    iter_monomials,
    solve_rational_system,
)
from torus_reduction.exceptions import (
    CalibrationError,
    ChamberViolationError,
    DimensionError,
    GenericityError,
    InputDocumentError,
    InvalidClassError,
    NonRegularValueError,
    NotPolarizableError,
    PropertyCheckError,
)
from torus_reduction.localization import (
    LocalTerm,
    Polarization,
    candidate_xis,
    polarization_for,
    pushforward_terms,
)
from torus_reduction.model import (
    EquivariantClass,
    FixedPoint,
    PairingResult,
    SpaceKind,
    SpaceModel,
    coordinate_class,
    product_classes,
    product_space,
    unit_class,
    validate_class,
)
from torus_reduction.utils.basemodel import ReductionModel
from torus_reduction.utils.logging import logger


def variable_names(rank: int) -> List[str]:
    return ["t"] if rank == 1 else [f"t{i + 1}" for i in range(rank)]


class ChamberPolynomial(ReductionModel):
    """
    The Duistermaat-Heckman polynomial of one chamber, fitted exactly around
    ``base_point``.
    """

    base_point: Vec
    poly: MPoly
    degree_bound: int
    nodes: Tuple[Vec, ...] = ()
    held_out: Tuple[Vec, ...] = ()
    step: Fraction = Fraction(1)

    def __call__(self, t: Sequence[Any]) -> Fraction:
        return self.poly.evaluate(Vec(t))

    def format(self) -> str:
        return self.poly.format(variable_names(len(self.base_point)))

    def to_json(self) -> Dict[str, Any]:
        return {
            "base_point": vec_to_json(self.base_point),
            "degree": self.poly.degree if not self.poly.is_zero else 0,
            "degree_bound": self.degree_bound,
            "polynomial": self.format(),
            "step": rat_to_str(self.step),
            "variables": variable_names(len(self.base_point)),
        }


class RegularityReport(ReductionModel):
    t: Vec
    regular: bool
    atom: Optional[ConeSplineTerm] = None
    wall: Optional[Tuple[Tuple[int, ...], Fraction]] = None

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"t": vec_to_json(self.t), "regular": self.regular}
        if self.atom is not None:
            data["atom"] = self.atom.to_json()

        if self.wall is not None:
            normal, offset = self.wall
            data["wall"] = {"normal": list(normal), "offset": rat_to_str(offset)}

        return data


class DerivativeReport(ReductionModel):
    t0: Vec
    beta: int
    derivative: Fraction
    pairing: Fraction
    sigma: int
    passed: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            "beta": self.beta,
            "derivative": rat_to_str(self.derivative),
            "pairing": rat_to_str(self.pairing),
            "pass": self.passed,
            "sigma": self.sigma,
            "t0": vec_to_json(self.t0),
        }


class CobordismReport(ReductionModel):
    t: Vec
    xi: Tuple[int, ...]
    models: Dict[str, Fraction]
    empty: Tuple[str, ...]
    total: Fraction
    pairing: Fraction
    passed: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            "empty": list(self.empty),
            "models": {pid: rat_to_str(v) for pid, v in self.models.items()},
            "pairing": rat_to_str(self.pairing),
            "pass": self.passed,
            "t": vec_to_json(self.t),
            "total": rat_to_str(self.total),
            "xi": list(self.xi),
        }


class ComparisonReport(ReductionModel):
    """
    Values of one quantity computed in several ways at the same points.
    """

    what: str
    points: Tuple[Vec, ...]
    values: Dict[str, Tuple[Fraction, ...]]
    passed: bool

    def to_json(self) -> Dict[str, Any]:
        return {
            "pass": self.passed,
            "points": [vec_to_json(p) for p in self.points],
            "values": {
                label: [rat_to_str(v) for v in values] for label, values in self.values.items()
            },
            "what": self.what,
        }


class ReducedSpace:
    """
    A space together with one polarization, caching the cone-spline decomposition of
    every class paired on it.

    Args:
        space (:class:`~torus_reduction.model.SpaceModel`): The space to reduce.
        xi (Optional[Sequence[int]]): A polarizing vector. Searched for when not given.
        config (Optional[:class:`~torus_reduction.config.EngineConfig`]): Engine settings.
        form_key (Optional[Callable]): The elimination order of the decomposition.
    """

    def __init__(
        self,
        space: SpaceModel,
        xi: Optional[Sequence[int]] = None,
        config: Optional[EngineConfig] = None,
        form_key: Optional[FormKey] = None,
    ):
        self.space = space
        self.config = config or DEFAULT_CONFIG
        self.form_key = form_key
        self._xi = None if xi is None else tuple(int(x) for x in xi)
        self._splines: Dict[Tuple, Dict[str, SplineRepr]] = {}

    @cached_property
    def polarization(self) -> Polarization:
        return polarization_for(self.space, self._xi, self.config)

    @property
    def xi(self) -> Tuple[int, ...]:
        return self.polarization.xi

    def terms(self, cls: EquivariantClass) -> List[LocalTerm]:
        return pushforward_terms(self.space, cls, self.polarization)

    def splines(self, cls: EquivariantClass) -> Dict[str, SplineRepr]:
        key = (cls.name, tuple(sorted(cls.restrictions.items(), key=lambda item: item[0])))
        if key not in self._splines:
            self._splines[key] = {
                term.point_id: decompose(term, debug=self.config.debug, form_key=self.form_key)
                for term in self.terms(cls)
            }

        return self._splines[key]

    def spline(self, cls: EquivariantClass) -> SplineRepr:
        merged = SplineRepr()
        for point_id in sorted(self.splines(cls)):
            merged = merged + self.splines(cls)[point_id]

        return merged

    def pair(self, cls: EquivariantClass, t: Sequence[Any]) -> PairingResult:
        t = Vec(t)
        if len(t) != self.space.rank:
            raise DimensionError(self.space.rank, len(t))

        splines = self.splines(cls)
        per_point = {}
        for point_id in sorted(self.space.point_ids):
            if point_id in splines:
                per_point[point_id] = evaluate(splines[point_id], t).value
            else:
                per_point[point_id] = Fraction(0)

        value = sum(per_point.values(), Fraction(0))
        return PairingResult(value=value, per_point=per_point, regular=True, t=t, xi=self.xi)

    def regularity(self, t: Sequence[Any]) -> RegularityReport:
        t = Vec(t)
        result = evaluate(self.spline(unit_class(self.space)), t, strict=False)
        if result.regular:
            return RegularityReport(t=t, regular=True)

        atom = result.wall
        assert atom is not None
        wall = next(
            (normal, offset)
            for normal, offset in atom.facets()
            if sum((n * x for n, x in zip(normal, t)), Fraction(0)) == offset
        )
        return RegularityReport(t=t, regular=False, atom=atom, wall=wall)


def pair(
    space: SpaceModel,
    cls: EquivariantClass,
    t: Sequence[Any],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> PairingResult:
    """
    Pair ``cls`` over the reduced space at ``t``: the sum over fixed points of the
    evaluated cone-spline decompositions.

    Raises:
        :class:`~torus_reduction.exceptions.NonRegularValueError`: When ``t`` lies on a
          wall of some atom.
        :class:`~torus_reduction.exceptions.NotPolarizableError`: For linear spaces
          whose moment map is not proper.

    Returns:
        :class:`~torus_reduction.model.PairingResult`
    """

    return ReducedSpace(space, xi=xi, config=config).pair(cls, t)


def polarizable(
    weights: Sequence[Sequence[int]], rank: Optional[int] = None
) -> Optional[Tuple[int, ...]]:
    if rank is None:
        if not weights:
            raise DimensionError(1, 0, "weight count")

        rank = len(weights[0])

    return find_positive_vector(weights, rank)


def flip_form(
    weights: Sequence[Sequence[int]], xi: Sequence[int]
) -> Tuple[Tuple[LinForm, ...], int]:
    """
    Replace every weight ``b`` by ``sgn<b, xi> * b``, as when the symplectic form on
    the corresponding line is reversed.

    Returns:
        Tuple[Tuple[:class:`~torus_reduction.exactmath.LinForm`, ...], int]: The
        flipped weights and how many were flipped.
    """

    flipped = []
    count = 0
    for weight in weights:
        form = LinForm(weight)
        pairing = form.pair(xi)
        if pairing == 0:
            raise GenericityError(xi, form)

        if pairing < 0:
            form = -form
            count += 1

        flipped.append(form)

    return tuple(flipped), count


def linear_model(
    weights: Sequence[Sequence[int]], moment: Optional[Sequence[Any]] = None, name: str = "V"
) -> SpaceModel:
    forms = tuple(LinForm(w) for w in weights)
    rank = len(forms[0]) if forms else len(moment or ())
    origin = Vec(moment) if moment is not None else Vec.zero(rank)
    return SpaceModel(
        name=name,
        rank=rank,
        half_dim=len(forms),
        points=(FixedPoint(id="0", moment=origin, weights=forms),),
        kind=SpaceKind.LINEAR,
    )


def linear_product(
    v: Sequence[Sequence[int]],
    w: Sequence[Sequence[int]],
    xi: Sequence[int],
    name: str = "V*W",
) -> Tuple[SpaceModel, int]:
    """
    The linear model ``V x W`` with the weights of both factors made positive on ``xi``.

    Returns:
        Tuple[:class:`~torus_reduction.model.SpaceModel`, int]: The polarizable product
        and the total number of flipped weights.
    """

    flipped_v, count_v = flip_form(v, xi)
    flipped_w, count_w = flip_form(w, xi)
    return linear_model(flipped_v + flipped_w, name=name), count_v + count_w


def _node_values(
    reduced: ReducedSpace, unit: EquivariantClass, points: Sequence[Vec]
) -> List[Fraction]:
    return [reduced.pair(unit, point).value for point in points]


def _fit(
    nodes: List[Tuple[int, ...]], values: List[Fraction], degree: int, k: int
) -> Optional[MPoly]:
    monomials = list(iter_monomials(k, degree))
    rows = []
    for node in nodes:
        row = []
        for exps in monomials:
            entry = Fraction(1)
            for x, e in zip(node, exps):
                entry *= Fraction(x) ** e

            row.append(entry)

        rows.append(row)

    solution = solve_rational_system(rows, values)
    if solution is None:
        return None

    return MPoly(k, dict(zip(monomials, solution)))


def _step(
    margins: Sequence[Tuple[Tuple[int, ...], Fraction]], t0: Vec, spread: int
) -> Fraction:
    step = Fraction(1)
    for normal, distance in margins:
        step = min(step, distance / (2 * sum(abs(n) for n in normal) * spread))

    if step <= 0:
        raise ChamberViolationError(f"No room for an interpolation lattice around {t0}.")

    return step


def dh_polynomial(
    space: SpaceModel,
    t0: Sequence[Any],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> ChamberPolynomial:
    """
    Fit the Duistermaat-Heckman polynomial of the chamber containing ``t0``.

    The chamber is the set where no cone of the unit class changes between containing and
    missing the point (see :func:`~torus_reduction.conespline.chamber_margins`). The
    fit interpolates the exact volume on the simplex lattice ``t0 + h*i``,
    ``|i|_1 <= n - k``, with ``h`` small enough to keep the lattice in the chamber, and is
    checked at held-out points of the same chamber.

    Raises:
        :class:`~torus_reduction.exceptions.NonRegularValueError`: When ``t0`` is on a wall.
        :class:`~torus_reduction.exceptions.ChamberViolationError`: When no consistent
          fit is found.

    Returns:
        :class:`ChamberPolynomial`
    """

    config = config or DEFAULT_CONFIG
    reduced = ReducedSpace(space, xi=xi, config=config)
    unit = unit_class(space)
    t0 = Vec(t0)
    k = space.rank
    if len(t0) != k:
        raise DimensionError(k, len(t0))

    reduced.pair(unit, t0)
    degree = max(space.half_dim - k, 0)
    spread = max(degree, 1)
    step = _step(chamber_margins(reduced.spline(unit), t0), t0, spread)
    lattice = [exps for exps in iter_monomials(k, degree)]
    held_out_offsets = [
        tuple(Fraction((-1) ** (i + j), j + i + 3) * spread for i in range(k))
        for j in range(config.chamber.held_out_nodes)
    ]

    for attempt in range(config.chamber.max_retries + 1):
        nodes = [t0 + Vec(step * x for x in node) for node in lattice]
        held_out = [t0 + Vec(step * x for x in offset) for offset in held_out_offsets]
        try:
            values = _node_values(reduced, unit, nodes)
            fitted = _fit(lattice, values, degree, k)
            if fitted is None:
                raise ChamberViolationError(f"Singular interpolation system around {t0}.")

            images = [
                MPoly(k, {_unit_exps(k, i): 1 / step, (0,) * k: -t0[i] / step}) for i in range(k)
            ]
            poly = fitted.substitute(images)
            for point, value in zip(held_out, _node_values(reduced, unit, held_out)):
                if poly.evaluate(point) != value:
                    raise ChamberViolationError(
                        f"Fitted polynomial gives {poly.evaluate(point)} at {point}, "
                        f"exact value is {value}."
                    )

        except (NonRegularValueError, ChamberViolationError) as err:
            if attempt == config.chamber.max_retries:
                raise ChamberViolationError(
                    f"No consistent chamber fit around {tuple(str(x) for x in t0)}: {err}"
                ) from err

            logger.debug(f"Chamber fit retry {attempt + 1} with step {step / 2}: {err}")
            step /= 2
            continue

        return ChamberPolynomial(
            base_point=t0,
            poly=poly,
            degree_bound=degree,
            nodes=tuple(nodes),
            held_out=tuple(held_out),
            step=step,
        )

    raise ChamberViolationError(f"No chamber fit around {t0}.")


def _unit_exps(k: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(k))


@lru_cache(maxsize=None)
def calibrated_sign() -> int:
    """
    The sign relating volume derivatives to pairings with coordinate classes, fixed on
    the linear model with weights ``(1, 1)`` in rank 1 at ``t0 = 1``.
    """

    model = linear_model([(1,), (1,)], name="calibration")
    t0 = Vec([1])
    derivative = dh_polynomial(model, t0).poly.derivative(0).evaluate(t0)
    pairing = pair(model, coordinate_class(model, 0), t0).value
    if pairing == 0 or abs(derivative) != abs(pairing):
        raise CalibrationError(
            f"Calibration model gives derivative {derivative} and pairing {pairing}."
        )

    return 1 if derivative == pairing else -1


def dh_derivative_check(
    space: SpaceModel,
    t0: Sequence[Any],
    beta: int,
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
    strict: bool = True,
) -> DerivativeReport:
    """
    Compare ``d/dt_beta`` of the volume polynomial at ``t0`` with the calibrated pairing
    of the coordinate class ``u_beta``.

    Raises:
        :class:`~torus_reduction.exceptions.CalibrationError`: On a mismatch, when
          ``strict``.
    """

    t0 = Vec(t0)
    if not 0 <= beta < space.rank:
        raise DimensionError(space.rank, beta + 1, "direction index")

    sigma = calibrated_sign()
    chamber = dh_polynomial(space, t0, xi=xi, config=config)
    derivative = chamber.poly.derivative(beta).evaluate(t0)
    value = pair(space, coordinate_class(space, beta), t0, xi=xi, config=config).value
    passed = derivative == sigma * value
    report = DerivativeReport(
        t0=t0, beta=beta, derivative=derivative, pairing=value, sigma=sigma, passed=passed
    )
    if strict and not passed:
        raise CalibrationError(
            f"Derivative {derivative} along t{beta + 1} of '{space.name}' does not match "
            f"{sigma} * {value}."
        )

    return report


def cobordism_check(
    space: SpaceModel,
    cls: EquivariantClass,
    t: Sequence[Any],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
    strict: bool = True,
) -> CobordismReport:
    """
    Rebuild the pairing from one linear model per fixed point: the tangent weights made
    positive on ``xi``, the moment at the fixed point as origin, and the sign of the
    flips. The signed linear pairings must add up to the compact pairing.

    Raises:
        :class:`~torus_reduction.exceptions.PropertyCheckError`: On a mismatch, when
          ``strict``.
    """

    t = Vec(t)
    reduced = ReducedSpace(space, xi=xi, config=config)
    validate_class(space, cls)
    expected = reduced.pair(cls, t).value

    models: Dict[str, Fraction] = {}
    empty: List[str] = []
    for point in sorted(space.points, key=lambda p: p.id):
        weights, count = flip_form(point.weights, reduced.xi)
        if not cone_contains(weights, t - point.moment):
            empty.append(point.id)

        model = linear_model(weights, moment=point.moment, name=f"T_{point.id}")
        local = EquivariantClass(
            name=cls.name, space=model.name, restrictions={"0": cls.restriction(point.id)}
        )
        value = ReducedSpace(model, xi=reduced.xi, config=config).pair(local, t).value
        models[point.id] = -value if count % 2 else value

    total = sum(models.values(), Fraction(0))
    passed = total == expected
    report = CobordismReport(
        t=t,
        xi=reduced.xi,
        models=models,
        empty=tuple(empty),
        total=total,
        pairing=expected,
        passed=passed,
    )
    if strict and not passed:
        raise PropertyCheckError(
            f"Linear models of '{space.name}' add up to {total}, the pairing is {expected}."
        )

    return report


def root_euler_class(space: SpaceModel, roots: Sequence[Sequence[int]]) -> EquivariantClass:
    euler = MPoly.one(space.rank)
    for root in roots:
        form = LinForm(root)
        if form.is_zero:
            raise InvalidClassError("Roots must be nonzero.")

        elif len(form) != space.rank:
            raise DimensionError(space.rank, len(form))

        euler = euler * form.as_poly()

    return EquivariantClass(
        name="e", space=space.name, restrictions={p: euler for p in space.point_ids}
    )


def nonabelian_pair(
    space: SpaceModel,
    cls: EquivariantClass,
    roots: Sequence[Sequence[int]],
    weyl_order: int,
    t: Sequence[Any],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> Fraction:
    """
    Pair over the reduction by a nonabelian group from the data of its maximal torus:
    ``cls`` times the product of the roots, paired on the torus reduction and divided
    by the order of the Weyl group.
    """

    if weyl_order < 1:
        raise InputDocumentError(f"Weyl group order must be positive, got {weyl_order}.")

    validate_class(space, cls)
    euler = root_euler_class(space, roots)
    lifted = EquivariantClass(
        name=f"{cls.name}*e",
        space=space.name,
        restrictions={p: cls.restriction(p) * euler.restriction(p) for p in space.point_ids},
    )
    return pair(space, lifted, t, xi=xi, config=config).value / weyl_order


def regularity_check(
    space: SpaceModel,
    t: Sequence[Any],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> RegularityReport:
    return ReducedSpace(space, xi=xi, config=config).regularity(t)


def _factor_terms(
    factors: Sequence[Tuple[SpaceModel, EquivariantClass]], xi: Sequence[int]
) -> List[LocalTerm]:
    terms: Optional[List[LocalTerm]] = None
    for space, cls in factors:
        factor_terms = pushforward_terms(space, cls, polarization_for(space, xi))
        terms = factor_terms if terms is None else convolve(terms, factor_terms)

    return terms or []


def pair_via_convolution(
    factors: Sequence[Tuple[SpaceModel, EquivariantClass]],
    t: Sequence[Any],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> PairingResult:
    """
    Pair a product class by convolving the local terms of its factors, each polarized
    by the same ``xi``.
    """

    config = config or DEFAULT_CONFIG
    t = Vec(t)
    product = product_space(*(space for space, _ in factors))
    if xi is None:
        xi = polarization_for(product, None, config).xi

    per_point = {point_id: Fraction(0) for point_id in product.point_ids}
    for term in _factor_terms(factors, xi):
        per_point[term.point_id] = evaluate(decompose(term, debug=config.debug), t).value

    value = sum(per_point.values(), Fraction(0))
    return PairingResult(
        value=value,
        per_point=dict(sorted(per_point.items())),
        regular=True,
        t=t,
        xi=tuple(int(x) for x in xi),
    )


def generic_xis(space: SpaceModel, count: int, config: Optional[EngineConfig] = None):
    """
    The first ``count`` generic vectors among ``(1, N, N^2, ...)`` and their negatives.
    """

    config = config or DEFAULT_CONFIG
    found: List[Tuple[int, ...]] = []
    for candidate in candidate_xis(space.rank, config.polarization.max_candidates):
        for xi in (candidate, tuple(-x for x in candidate)):
            if len(found) == count:
                return found

            elif xi in found:
                continue

            try:
                polarization_for(space, xi, config)
            except (GenericityError, NotPolarizableError) as err:
                logger.debug(f"Skipping xi={xi}: {err}")
                continue

            found.append(xi)

    return found


def polarization_check(
    space: SpaceModel,
    cls: EquivariantClass,
    points: Sequence[Sequence[Any]],
    xis: Optional[Sequence[Sequence[int]]] = None,
    config: Optional[EngineConfig] = None,
    strict: bool = True,
) -> ComparisonReport:
    """
    Pair ``cls`` at every point under several polarizations; the values must agree.
    """

    if xis is None:
        xis = generic_xis(space, 3, config)

    vectors = tuple(Vec(p) for p in points)
    values: Dict[str, Tuple[Fraction, ...]] = {}
    for xi in xis:
        reduced = ReducedSpace(space, xi=xi, config=config)
        label = ",".join(str(int(x)) for x in xi)
        values[label] = tuple(reduced.pair(cls, p).value for p in vectors)

    passed = len(set(values.values())) <= 1
    if strict and not passed:
        raise PropertyCheckError(f"Pairings of '{cls.name}' depend on the polarization.")

    return ComparisonReport(what="polarization", points=vectors, values=values, passed=passed)


def convolution_check(
    factors: Sequence[Tuple[SpaceModel, EquivariantClass]],
    points: Sequence[Sequence[Any]],
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
    strict: bool = True,
) -> ComparisonReport:
    """
    Pair a product class directly on the product space and through convolution of the
    factors' terms; the values must agree.
    """

    product = product_space(*(space for space, _ in factors))
    cls = product_classes(factors)
    reduced = ReducedSpace(product, xi=xi, config=config)
    vectors = tuple(Vec(p) for p in points)
    direct = tuple(reduced.pair(cls, p).value for p in vectors)
    convolved = tuple(
        pair_via_convolution(factors, p, xi=reduced.xi, config=config).value for p in vectors
    )
    passed = direct == convolved
    if strict and not passed:
        raise PropertyCheckError(f"Convolution of the factors of '{product.name}' disagrees.")

    return ComparisonReport(
        what="convolution",
        points=vectors,
        values={"direct": direct, "convolution": convolved},
        passed=passed,
    )


def stabilizer_scaled(weights: Sequence[Sequence[int]], index: int, factor: int) -> SpaceModel:
    """The linear model with weight ``index`` multiplied by ``factor``."""
    forms = [LinForm(w) for w in weights]
    forms[index] = forms[index].scale(factor)
    return linear_model(forms)


__all__ = [
    "ChamberPolynomial",
    "CobordismReport",
    "ComparisonReport",
    "DerivativeReport",
    "ReducedSpace",
    "RegularityReport",
    "calibrated_sign",
    "cobordism_check",
    "convolution_check",
    "dh_derivative_check",
    "dh_polynomial",
    "flip_form",
    "generic_xis",
    "linear_model",
    "linear_product",
    "nonabelian_pair",
    "pair",
    "pair_via_convolution",
    "polarizable",
    "polarization_check",
    "regularity_check",
    "root_euler_class",
    "stabilizer_scaled",
]
