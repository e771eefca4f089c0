from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from torus_reduction.config import DEFAULT_CONFIG, EngineConfig
from torus_reduction.conversion import form_to_json, poly_to_json, vec_to_json
from torus_reduction.exactmath import LinForm, MPoly, Vec, find_positive_vector
from torus_reduction.exceptions import DimensionError, GenericityError, NotPolarizableError
from torus_reduction.model import EquivariantClass, SpaceKind, SpaceModel, validate_class
from torus_reduction.utils.basemodel import ReductionModel
from torus_reduction.utils.logging import logger


class Polarization(ReductionModel):
    """
    A generic vector ``xi`` of the Lie algebra together with, for every fixed point,
    which weights it flips to make them ``xi``-positive.
    """

    xi: Tuple[int, ...]
    flips: Dict[str, Tuple[bool, ...]]

    def sign(self, point_id: str) -> int:
        return -1 if sum(self.flips[point_id]) % 2 else 1

    @property
    def signs(self) -> Dict[str, int]:
        return {point_id: self.sign(point_id) for point_id in self.flips}


class LocalTerm(ReductionModel):
    """
    One fixed point's summand ``sign * numerator / prod(denominator)`` placed at ``apex``.
    """

    point_id: str
    numerator: MPoly
    denominator: Tuple[LinForm, ...]
    apex: Vec
    sign: int

    @property
    def rank(self) -> int:
        return len(self.apex)

    def denominator_polynomial(self) -> MPoly:
        result = MPoly.one(self.rank)
        for form in self.denominator:
            result = result * form.as_poly()

        return result

    def to_json(self) -> Dict[str, Any]:
        return {
            "point": self.point_id,
            "numerator": poly_to_json(self.numerator),
            "denominator": [form_to_json(f) for f in self.denominator],
            "apex": vec_to_json(self.apex),
            "sign": self.sign,
        }


def _flip_flags(weights: Sequence[LinForm], xi: Sequence[int], point_id: Optional[str] = None):
    flags = []
    for weight in weights:
        pairing = weight.pair(xi)
        if pairing == 0:
            raise GenericityError(xi, weight, point_id)

        flags.append(pairing < 0)

    return tuple(flags)


def polarize(space: SpaceModel, xi: Sequence[int]) -> Polarization:
    """
    Flip every weight of ``space`` to be positive on ``xi``.

    Raises:
        :class:`~torus_reduction.exceptions.GenericityError`: When some weight pairs to
          zero with ``xi``; the error names the weight and its fixed point.

    Returns:
        :class:`Polarization`
    """

    xi = tuple(int(x) for x in xi)
    if len(xi) != space.rank:
        raise DimensionError(space.rank, len(xi))

    flips = {p.id: _flip_flags(p.weights, xi, p.id) for p in space.points}
    return Polarization(xi=xi, flips=flips)


def candidate_xis(rank: int, count: int):
    """The distinct vectors ``(1, N, N^2, ...)`` for ``N = 1..count``."""
    seen = set()
    for base in range(1, count + 1):
        xi = tuple(base**i for i in range(rank))
        if xi not in seen:
            seen.add(xi)
            yield xi


def choose_generic_xi(space: SpaceModel, config: Optional[EngineConfig] = None) -> Polarization:
    config = config or DEFAULT_CONFIG
    last_error: Optional[GenericityError] = None
    for xi in candidate_xis(space.rank, config.polarization.max_candidates):
        try:
            polarization = polarize(space, xi)
        except GenericityError as err:
            logger.debug(f"Skipping xi={xi}: {err}")
            last_error = err
            continue

        logger.debug(f"Using generic xi={xi} for '{space.name}'.")
        return polarization

    assert last_error is not None
    raise last_error


def polarize_linear(space: SpaceModel, xi: Optional[Sequence[int]] = None) -> Polarization:
    """
    The polarization of a linear space: its weights must all be positive on ``xi``
    (searched for when not given), so no weight is flipped.
    """

    weights = space.points[0].weights
    if xi is None:
        found = find_positive_vector(weights, space.rank)
        if found is None:
            raise NotPolarizableError(
                f"Weights of '{space.name}' are not polarizable: the moment map is not proper."
            )

        xi = found

    polarization = polarize(space, xi)
    if any(any(flags) for flags in polarization.flips.values()):
        raise NotPolarizableError(
            f"xi={tuple(xi)} is not positive on every weight of linear space '{space.name}'."
        )

    return polarization


def polarization_for(
    space: SpaceModel,
    xi: Optional[Sequence[int]] = None,
    config: Optional[EngineConfig] = None,
) -> Polarization:
    if space.kind == SpaceKind.LINEAR:
        return polarize_linear(space, xi)

    elif xi is not None:
        return polarize(space, xi)

    return choose_generic_xi(space, config)


def pushforward_terms(
    space: SpaceModel, cls: EquivariantClass, pol: Polarization
) -> List[LocalTerm]:
    """
    The localization summands of ``cls``, one per fixed point where it does not vanish,
    sorted by point id.

    Args:
        space (:class:`~torus_reduction.model.SpaceModel`): The space.
        cls (:class:`~torus_reduction.model.EquivariantClass`): A class on ``space``.
        pol (:class:`Polarization`): A polarization of ``space``.

    Returns:
        List[:class:`LocalTerm`]
    """

    validate_class(space, cls)
    terms = []
    for point in sorted(space.points, key=lambda p: p.id):
        numerator = cls.restriction(point.id)
        if numerator.is_zero:
            continue

        flags = pol.flips[point.id]
        denominator = tuple(-w if flip else w for w, flip in zip(point.weights, flags))
        terms.append(
            LocalTerm(
                point_id=point.id,
                numerator=numerator,
                denominator=denominator,
                apex=point.moment,
                sign=pol.sign(point.id),
            )
        )

    return terms


def term_value_at(term: LocalTerm, u: Sequence[Fraction]) -> Fraction:
    """
    Evaluate the rational function of ``term`` at a point ``u`` off its poles.
    """

    return term.sign * term.numerator.evaluate(u) / term.denominator_polynomial().evaluate(u)
