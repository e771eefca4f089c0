from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

import sympy
from pydantic import model_validator

from torus_reduction.conversion import (
    parse_form,
    parse_poly,
    parse_rat,
    parse_vec,
    rat_to_str,
    vec_to_json,
)
from torus_reduction.exactmath import LinForm, MPoly, Vec, find_positive_vector
from torus_reduction.exceptions import (
    DimensionError,
    InputDocumentError,
    InvalidClassError,
    InvalidSpaceError,
    MissingRestrictionError,
    NotPolarizableError,
)
from torus_reduction.utils.basemodel import ReductionModel

POINT_ID_SEPARATOR = ","
PRODUCT_NAME_SEPARATOR = "*"
UNIT_CLASS_NAME = "1"


class SpaceKind(str, Enum):
    COMPACT = "compact"
    LINEAR = "linear"


class FixedPoint(ReductionModel):
    """
    An isolated fixed point: its moment value and its isotropy weights.
    """

    id: str
    moment: Vec
    weights: Tuple[LinForm, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.moment)


class SpaceModel(ReductionModel):
    """
    A Hamiltonian torus space given by its fixed-point data.
    """

    name: str
    rank: int
    half_dim: int
    points: Tuple[FixedPoint, ...]
    kind: SpaceKind = SpaceKind.COMPACT

    @model_validator(mode="after")
    def _check_invariants(self) -> "SpaceModel":
        if not self.points:
            raise InvalidSpaceError(f"Space '{self.name}' has no fixed points.")

        seen: Set[str] = set()
        for point in self.points:
            if point.id in seen:
                raise InvalidSpaceError(f"Duplicate fixed point id '{point.id}' in '{self.name}'.")

            seen.add(point.id)
            if point.rank != self.rank:
                raise InvalidSpaceError(
                    f"Moment of '{point.id}' has rank {point.rank}, space rank is {self.rank}."
                )

            if len(point.weights) != self.half_dim:
                raise InvalidSpaceError(
                    f"Fixed point '{point.id}' has {len(point.weights)} weights, "
                    f"expected {self.half_dim}."
                )

            for weight in point.weights:
                if len(weight) != self.rank:
                    raise InvalidSpaceError(
                        f"Weight {tuple(weight)} at '{point.id}' has rank {len(weight)}, "
                        f"space rank is {self.rank}."
                    )

                elif weight.is_zero:
                    raise InvalidSpaceError(f"Zero weight at fixed point '{point.id}'.")

        if self.kind == SpaceKind.LINEAR:
            if len(self.points) != 1:
                raise InvalidSpaceError(
                    f"Linear space '{self.name}' must have exactly one fixed point."
                )

            if find_positive_vector(self.points[0].weights, self.rank) is None:
                raise NotPolarizableError(
                    f"Weights of linear space '{self.name}' are not polarizable: "
                    "the moment map is not proper."
                )

        return self

    @property
    def point_ids(self) -> List[str]:
        return [p.id for p in self.points]

    @property
    def is_point(self) -> bool:
        return self.half_dim == 0 and len(self.points) == 1

    def point(self, point_id: str) -> FixedPoint:
        for point in self.points:
            if point.id == point_id:
                return point

        raise InvalidSpaceError(f"No fixed point '{point_id}' in space '{self.name}'.")

    def weights(self) -> List[LinForm]:
        """Distinct weights over all fixed points, in first-seen order."""
        distinct: Dict[LinForm, None] = {}
        for point in self.points:
            for weight in point.weights:
                distinct.setdefault(weight, None)

        return list(distinct)


class EquivariantClass(ReductionModel):
    """
    An equivariant cohomology class, stored as its restrictions to the fixed points.
    """

    name: str
    space: str
    restrictions: Dict[str, MPoly]

    def restriction(self, point_id: str) -> MPoly:
        if point_id not in self.restrictions:
            raise MissingRestrictionError(self.name, point_id)

        return self.restrictions[point_id]

    @property
    def is_zero(self) -> bool:
        return all(r.is_zero for r in self.restrictions.values())


class PairingResult(ReductionModel):
    value: Fraction
    per_point: Dict[str, Fraction]
    regular: bool
    t: Vec
    xi: Tuple[int, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "per_point": {pid: rat_to_str(v) for pid, v in sorted(self.per_point.items())},
            "regular": self.regular,
            "t": vec_to_json(self.t),
            "value": rat_to_str(self.value),
            "xi": list(self.xi),
        }


def validate_space(raw: Mapping[str, Any], rank: Optional[int] = None) -> SpaceModel:
    """
    Build a :class:`SpaceModel` from parsed JSON data and check every invariant.

    Args:
        raw (Mapping): ``{"name", "kind", "points": [{"id", "moment", "weights"}]}``.
          A point may carry ``"euler"``, a polynomial its weights must multiply to.
        rank (Optional[int]): The document rank. Defaults to the length of the first
          moment.

    Raises:
        :class:`~torus_reduction.exceptions.InvalidSpaceError`: On any violated invariant.

    Returns:
        :class:`SpaceModel`
    """

    name = str(raw.get("name", "space"))
    raw_points = raw.get("points")
    if not isinstance(raw_points, list) or not raw_points:
        raise InvalidSpaceError(f"Space '{name}' needs a non-empty 'points' list.")

    try:
        kind = SpaceKind(raw.get("kind", SpaceKind.COMPACT.value))
    except ValueError as err:
        raise InvalidSpaceError(f"Unknown space kind '{raw.get('kind')}'.") from err

    points = []
    for raw_point in raw_points:
        try:
            point_id = str(raw_point["id"])
            moment = parse_vec(raw_point["moment"])
            point_rank = rank if rank is not None else len(moment)
            if len(moment) != point_rank:
                raise InvalidSpaceError(
                    f"Moment of '{point_id}' has rank {len(moment)}, expected {point_rank}."
                )

            weights = tuple(parse_form(w) for w in raw_point.get("weights", []))
        except (AttributeError, KeyError, TypeError) as err:
            raise InvalidSpaceError(f"Malformed fixed point {raw_point!r}.") from err
        except (DimensionError, InputDocumentError) as err:
            raise InvalidSpaceError(str(err)) from err

        for weight in weights:
            if len(weight) != point_rank:
                raise InvalidSpaceError(
                    f"Weight {tuple(weight)} at '{point_id}' has rank {len(weight)}, "
                    f"expected {point_rank}."
                )

        point = FixedPoint(id=point_id, moment=moment, weights=weights)
        if "euler" in raw_point:
            expected = parse_poly(raw_point["euler"], point_rank)
            if euler_polynomial(point) != expected:
                raise InvalidSpaceError(
                    f"Weights at '{point_id}' multiply to {euler_polynomial(point)!r}, "
                    f"not the declared Euler class {expected!r}."
                )

        points.append(point)

    space_rank = rank if rank is not None else points[0].rank
    half_dim = len(points[0].weights)
    return SpaceModel(name=name, rank=space_rank, half_dim=half_dim, points=points, kind=kind)


def point_space(moment: Sequence[Any], name: str = "pt") -> SpaceModel:
    point = FixedPoint(id=name, moment=Vec(parse_rat(x) for x in moment))
    return SpaceModel(name=name, rank=len(point.moment), half_dim=0, points=(point,))


def _product_kind(x: SpaceModel, y: SpaceModel) -> SpaceKind:
    if x.is_point:
        return y.kind

    elif y.is_point or x.kind == y.kind:
        return x.kind

    raise InvalidSpaceError(
        f"Cannot multiply {x.kind.value} space '{x.name}' with {y.kind.value} space '{y.name}'."
    )


def _product_of_two(x: SpaceModel, y: SpaceModel) -> SpaceModel:
    if x.rank != y.rank:
        raise DimensionError(x.rank, y.rank)

    points = [
        FixedPoint(
            id=f"{p.id}{POINT_ID_SEPARATOR}{q.id}",
            moment=p.moment + q.moment,
            weights=p.weights + q.weights,
        )
        for p in x.points
        for q in y.points
    ]
    return SpaceModel(
        name=f"{x.name}{PRODUCT_NAME_SEPARATOR}{y.name}",
        rank=x.rank,
        half_dim=x.half_dim + y.half_dim,
        points=points,
        kind=_product_kind(x, y),
    )


def product_space(*spaces: SpaceModel, name: Optional[str] = None) -> SpaceModel:
    """
    The product of spaces under the diagonal torus action.

    Fixed points are tuples whose ids join with ``","``; moments add and weights
    concatenate.
    """

    if not spaces:
        raise InvalidSpaceError("A product needs at least one factor.")

    result = spaces[0]
    for factor in spaces[1:]:
        result = _product_of_two(result, factor)

    return result if name is None else result.model_copy(update={"name": name})


def validate_class(space: SpaceModel, cls: EquivariantClass) -> EquivariantClass:
    if cls.space != space.name:
        raise InvalidClassError(
            f"Class '{cls.name}' lives on '{cls.space}', not on '{space.name}'."
        )

    for point_id in space.point_ids:
        restriction = cls.restriction(point_id)
        if restriction.nvars != space.rank:
            raise DimensionError(space.rank, restriction.nvars, "variable count")

    extra = set(cls.restrictions) - set(space.point_ids)
    if extra:
        raise InvalidClassError(
            f"Class '{cls.name}' restricts to unknown fixed points {sorted(extra)}."
        )

    return cls


def unit_class(space: SpaceModel) -> EquivariantClass:
    one = MPoly.one(space.rank)
    return EquivariantClass(
        name=UNIT_CLASS_NAME, space=space.name, restrictions={p: one for p in space.point_ids}
    )


def coordinate_class(space: SpaceModel, index: int) -> EquivariantClass:
    """
    The class ``u_{index+1}`` pulled back from a point: the same coordinate
    polynomial at every fixed point.
    """

    variable = MPoly.variable(space.rank, index)
    return EquivariantClass(
        name=f"u{index + 1}", space=space.name, restrictions={p: variable for p in space.point_ids}
    )


def symplectic_class(space: SpaceModel, name: str = "nu") -> EquivariantClass:
    """
    The class of the equivariant symplectic form, restricting to ``<mu(F), u>``.
    """

    restrictions = {}
    for point in space.points:
        restriction = MPoly.zero(space.rank)
        for index, value in enumerate(point.moment):
            restriction = restriction + MPoly.variable(space.rank, index).scale(value)

        restrictions[point.id] = restriction

    return EquivariantClass(name=name, space=space.name, restrictions=restrictions)


def product_class(
    a: EquivariantClass,
    b: EquivariantClass,
    x: SpaceModel,
    y: SpaceModel,
    name: Optional[str] = None,
) -> EquivariantClass:
    """
    The Künneth product ``a ⊠ b`` on ``x × y``; its restriction at ``(p, q)`` is the
    product of the restrictions of ``a`` at ``p`` and ``b`` at ``q``.
    """

    validate_class(x, a)
    validate_class(y, b)
    if x.rank != y.rank:
        raise DimensionError(x.rank, y.rank)

    restrictions = {
        f"{p}{POINT_ID_SEPARATOR}{q}": a.restriction(p) * b.restriction(q)
        for p in x.point_ids
        for q in y.point_ids
    }
    return EquivariantClass(
        name=name or f"{a.name}{PRODUCT_NAME_SEPARATOR}{b.name}",
        space=f"{x.name}{PRODUCT_NAME_SEPARATOR}{y.name}",
        restrictions=restrictions,
    )


def product_classes(
    factors: Sequence[Tuple[SpaceModel, EquivariantClass]], name: Optional[str] = None
) -> EquivariantClass:
    if not factors:
        raise InvalidClassError("A product class needs at least one factor.")

    space, cls = factors[0]
    validate_class(space, cls)
    for other_space, other_cls in factors[1:]:
        cls = product_class(cls, other_cls, space, other_space)
        space = product_space(space, other_space)

    return cls if name is None else cls.model_copy(update={"name": name})


def generator_names(rank: int) -> List[str]:
    return [f"u{i + 1}" for i in range(rank)]


def class_algebra(
    classes: Mapping[str, EquivariantClass],
    expression: str,
    space: SpaceModel,
    name: Optional[str] = None,
) -> EquivariantClass:
    """
    Evaluate a polynomial expression in classes pointwise on the fixed points.

    The expression may use the names of ``classes`` that are Python identifiers, the
    coordinate classes ``u1 .. uk`` and rational constants, e.g.
    ``"(nu1 + nu2)**2 / 2"``.

    Raises:
        :class:`~torus_reduction.exceptions.InvalidClassError`: For unknown names,
          non-polynomial expressions or classes living on another space.

    Returns:
        :class:`EquivariantClass`
    """

    generators = {g: coordinate_class(space, i) for i, g in enumerate(generator_names(space.rank))}
    available: Dict[str, EquivariantClass] = {
        n: c for n, c in classes.items() if n.isidentifier() and n not in generators
    }
    available.update(generators)
    symbols = {n: sympy.Symbol(n) for n in available}

    try:
        expr = sympy.sympify(expression, locals=symbols, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as err:
        raise InvalidClassError(f"Cannot parse class expression '{expression}'.") from err

    unknown = {str(s) for s in expr.free_symbols} - set(symbols)
    if unknown or expr.atoms(sympy.Function):
        raise InvalidClassError(f"Unknown names in class expression '{expression}'.")

    used = sorted(str(s) for s in expr.free_symbols) or [generator_names(space.rank)[0]]
    for used_name in used:
        if available[used_name].space != space.name:
            raise InvalidClassError(
                f"Class '{used_name}' lives on '{available[used_name].space}', "
                f"not on '{space.name}'."
            )

        validate_class(space, available[used_name])

    try:
        poly = sympy.Poly(expr, *(symbols[n] for n in used))
        terms = [(exps, parse_rat(sympy.Rational(coeff))) for exps, coeff in poly.terms()]
    except (sympy.PolynomialError, TypeError, ValueError, InputDocumentError) as err:
        raise InvalidClassError(
            f"Class expression '{expression}' is not a polynomial with rational coefficients."
        ) from err

    restrictions = {}
    for point_id in space.point_ids:
        value = MPoly.zero(space.rank)
        for exps, coeff in terms:
            term = MPoly.constant(space.rank, coeff)
            for used_name, exponent in zip(used, exps):
                if exponent:
                    term = term * available[used_name].restriction(point_id) ** exponent

            value = value + term

        restrictions[point_id] = value

    return EquivariantClass(name=name or expression, space=space.name, restrictions=restrictions)


def euler_class(point: FixedPoint) -> Tuple[LinForm, ...]:
    """
    The equivariant Euler class of the tangent space at ``point``, kept factored as
    its weight multiset.
    """

    return tuple(point.weights)


def euler_polynomial(point: FixedPoint) -> MPoly:
    result = MPoly.one(point.rank)
    for weight in euler_class(point):
        result = result * weight.as_poly()

    return result


def parse_restrictions(
    raw: Mapping[str, Any], space: SpaceModel, class_name: str
) -> Dict[str, MPoly]:
    restrictions = {}
    for point_id, raw_poly in raw.items():
        try:
            restrictions[str(point_id)] = parse_poly(raw_poly, space.rank)
        except (DimensionError, InputDocumentError) as err:
            raise InvalidClassError(
                f"Bad restriction of '{class_name}' at '{point_id}': {err}"
            ) from err

    return restrictions
