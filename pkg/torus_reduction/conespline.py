"""
Cone-spline atoms and the partial-fraction decomposition that produces them.

A local term ``sign * P(u) / prod(gamma_j(u))`` is rewritten into atoms
``c / prod_{i in B} gamma_i(u)^{m_i}`` over bases ``B``. The atom at apex ``a`` is the
density ``c * prod(s_i^{m_i - 1} / (m_i - 1)!) / |det B|`` on ``a + sum(s_i gamma_i)``,
``s > 0``. Pieces whose denominators do not span, or that have no denominator at all,
are supported on walls or at the apex and are only counted.
"""
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import model_validator

from torus_reduction.conversion import (
    form_to_json,
    parse_form,
    parse_rat,
    parse_vec,
    rat_to_str,
    vec_to_json,
)
from torus_reduction.exactmath import (
    LinForm,
    MPoly,
    Vec,
    det,
    extend_to_basis,
    first_relation,
    solve_linear,
)
from torus_reduction.exceptions import (
    DecompositionError,
    DimensionError,
    InputDocumentError,
    NonRegularValueError,
    SingularBasisError,
)
from torus_reduction.localization import LocalTerm
from torus_reduction.utils.basemodel import ReductionModel
from torus_reduction.utils.logging import logger

FormKey = Callable[[LinForm], Any]


@lru_cache(maxsize=8192)
def _abs_det(basis: Tuple[LinForm, ...]) -> Fraction:
    return abs(det(basis))


class ConeSplineTerm(ReductionModel):
    """
    ``coeff`` times the truncated-power density of the simplicial cone spanned by
    ``basis`` at ``apex``, with multiplicities ``mults``.
    """

    coeff: Fraction
    apex: Vec
    basis: Tuple[LinForm, ...]
    mults: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_basis(self) -> "ConeSplineTerm":
        k = len(self.apex)
        if len(self.basis) != k or len(self.mults) != k:
            raise DimensionError(k, len(self.basis), "basis size")

        if any(m < 1 for m in self.mults):
            raise ValueError(f"Multiplicities must be positive, got {self.mults}.")

        if _abs_det(self.basis) == 0:
            raise SingularBasisError(self.basis)

        return self

    def coordinates(self, t: Sequence[Fraction]) -> Vec:
        return solve_linear(self.basis, Vec(t) - self.apex)

    def density(self, s: Sequence[Fraction]) -> Fraction:
        value = self.coeff / _abs_det(self.basis)
        for coordinate, mult in zip(s, self.mults):
            if mult > 1:
                value *= coordinate ** (mult - 1) / factorial(mult - 1)

        return value

    def facets(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        """
        The hyperplanes ``n . t = c`` bounding the cone, with primitive integer ``n``.
        """

        k = len(self.apex)
        hyperplanes = []
        for i in range(k):
            # The i-th coordinate function s_i is the i-th dual basis form.
            dual = [solve_linear(self.basis, _unit_vec(k, j))[i] for j in range(k)]
            scale = 1
            for x in dual:
                scale = scale * x.denominator // gcd(scale, x.denominator)

            normal = [int(x * scale) for x in dual]
            divisor = 0
            for x in normal:
                divisor = gcd(divisor, abs(x))

            normal = [x // divisor for x in normal]
            offset = sum((n * a for n, a in zip(normal, self.apex)), Fraction(0))
            hyperplanes.append((tuple(normal), offset))

        return hyperplanes

    def to_json(self) -> Dict[str, Any]:
        return {
            "coeff": rat_to_str(self.coeff),
            "apex": vec_to_json(self.apex),
            "basis": [form_to_json(f) for f in self.basis],
            "mults": list(self.mults),
        }


def _unit_vec(k: int, i: int) -> Vec:
    return Vec(1 if j == i else 0 for j in range(k))


class PieceKind(str, Enum):
    CONE = "cone"
    LOWER_DIM = "lower_dim"
    POINT = "point"


class RationalPiece(ReductionModel):
    """
    One summand of a decomposition, kept in debug mode: ``numerator`` over the product
    of ``denominator`` forms raised to their multiplicities.
    """

    kind: PieceKind
    numerator: MPoly
    denominator: Tuple[Tuple[LinForm, int], ...]
    apex: Vec


class SplineRepr(ReductionModel):
    terms: Tuple[ConeSplineTerm, ...] = ()
    discarded_lower_dim: int = 0
    discarded_point_supported: int = 0
    pieces: Tuple[RationalPiece, ...] = ()

    def __add__(self, other: "SplineRepr") -> "SplineRepr":
        return SplineRepr(
            terms=self.terms + other.terms,
            discarded_lower_dim=self.discarded_lower_dim + other.discarded_lower_dim,
            discarded_point_supported=(
                self.discarded_point_supported + other.discarded_point_supported
            ),
            pieces=self.pieces + other.pieces,
        )


class SplineEvaluation(ReductionModel):
    value: Optional[Fraction]
    regular: bool
    wall: Optional[ConeSplineTerm] = None


def default_form_key(form: LinForm) -> Tuple[int, ...]:
    return tuple(form)


def _split_dependent(
    forms: List[LinForm], start: Tuple[int, ...], numerator: MPoly
) -> Dict[Tuple[int, ...], MPoly]:
    # Keys are multiplicity vectors over ``forms``. Each rewrite trades one copy of a
    # circuit member i for one copy of the circuit's largest member j > i, so the
    # vector drops lexicographically; popping the largest key first means a finished
    # key is never produced again.
    pending: Dict[Tuple[int, ...], MPoly] = {start: numerator}
    finished: Dict[Tuple[int, ...], MPoly] = {}
    while pending:
        mults = max(pending)
        current = pending.pop(mults)
        if current.is_zero:
            continue

        support = [i for i, m in enumerate(mults) if m]
        relation = first_relation([forms[i] for i in support])
        if relation is None:
            finished[mults] = current
            continue

        local_j, coefficients = relation
        j = support[local_j]
        for local_i, coefficient in coefficients.items():
            i = support[local_i]
            reduced = tuple(
                m - 1 if index == i else m + 1 if index == j else m
                for index, m in enumerate(mults)
            )
            if not reduced < mults:
                raise DecompositionError(
                    f"Rewrite of {mults} to {reduced} does not decrease the measure."
                )

            previous = pending.get(reduced, MPoly.zero(numerator.nvars))
            pending[reduced] = previous + current.scale(coefficient)

    return finished


def decompose(
    term: LocalTerm, debug: bool = False, form_key: Optional[FormKey] = None
) -> SplineRepr:
    """
    Rewrite a local term into simplicial cone-spline atoms.

    Args:
        term (:class:`~torus_reduction.localization.LocalTerm`): A polarized term.
        debug (bool): Keep every piece, including the discarded ones, and verify that
          they add back up to the term.
        form_key (Optional[Callable]): Sort key giving the order in which dependent
          forms are eliminated. The evaluated distribution does not depend on it.

    Returns:
        :class:`SplineRepr`
    """

    k = term.rank
    forms = sorted(set(term.denominator), key=form_key or default_form_key)
    start = tuple(term.denominator.count(f) for f in forms)
    finished = _split_dependent(forms, start, term.numerator.scale(term.sign))

    atoms: List[ConeSplineTerm] = []
    pieces: List[RationalPiece] = []
    lower_dim = point_supported = 0
    for mults in sorted(finished, reverse=True):
        numerator = finished[mults]
        support = [forms[i] for i, m in enumerate(mults) if m]
        support_mults = [m for m in mults if m]
        basis = extend_to_basis(support, k)
        # With y = A u for the rows A of ``basis``, u_i = sum_r (A^-1)[i][r] y_r.
        images = []
        for i in range(k):
            row = solve_linear(basis, _unit_vec(k, i))
            images.append(MPoly(k, {_unit_tuple(k, r): row[r] for r in range(k) if row[r]}))

        adapted = numerator.substitute(images)
        for exps, coeff in adapted.items():
            remaining = [m - exps[r] for r, m in enumerate(support_mults)]
            spanning = [r for r, m in enumerate(remaining) if m > 0]
            if len(spanning) == k:
                atoms.append(
                    ConeSplineTerm(
                        coeff=coeff, apex=term.apex, basis=tuple(support), mults=tuple(remaining)
                    )
                )
                kind = PieceKind.CONE
            elif spanning:
                lower_dim += 1
                kind = PieceKind.LOWER_DIM
            else:
                point_supported += 1
                kind = PieceKind.POINT

            if debug:
                piece_numerator = MPoly.constant(k, coeff)
                for r, form in enumerate(basis):
                    power = exps[r] if r >= len(support) else max(-remaining[r], 0)
                    if power:
                        piece_numerator = piece_numerator * form.as_poly() ** power

                denominator = tuple((support[r], remaining[r]) for r in spanning)
                pieces.append(
                    RationalPiece(
                        kind=kind,
                        numerator=piece_numerator,
                        denominator=denominator,
                        apex=term.apex,
                    )
                )

    logger.debug(
        f"Term at '{term.point_id}': {len(atoms)} atoms, {lower_dim} lower-dimensional, "
        f"{point_supported} point-supported pieces."
    )
    result = SplineRepr(
        terms=tuple(atoms),
        discarded_lower_dim=lower_dim,
        discarded_point_supported=point_supported,
        pieces=tuple(pieces),
    )
    if debug:
        verify_decomposition(term, result)

    return result


def _unit_tuple(k: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(k))


def verify_decomposition(term: LocalTerm, spline: SplineRepr) -> None:
    """
    Check ``sum(pieces) == term`` as rational functions by clearing denominators.

    Raises:
        :class:`~torus_reduction.exceptions.DecompositionError`: When the identity fails
          or the representation holds no pieces.
    """

    if not spline.pieces and not term.numerator.is_zero:
        raise DecompositionError("Decomposition pieces are only kept in debug mode.")

    k = term.rank
    exponents: Dict[LinForm, int] = {}
    for form in term.denominator:
        exponents[form] = max(exponents.get(form, 0), term.denominator.count(form))

    for piece in spline.pieces:
        for form, mult in piece.denominator:
            exponents[form] = max(exponents.get(form, 0), mult)

    def cofactor(denominator: Dict[LinForm, int]) -> MPoly:
        result = MPoly.one(k)
        for form, top in exponents.items():
            power = top - denominator.get(form, 0)
            if power:
                result = result * form.as_poly() ** power

        return result

    original: Dict[LinForm, int] = {}
    for form in term.denominator:
        original[form] = original.get(form, 0) + 1

    expected = term.numerator.scale(term.sign) * cofactor(original)
    actual = MPoly.zero(k)
    for piece in spline.pieces:
        actual = actual + piece.numerator * cofactor(dict(piece.denominator))

    if actual != expected:
        raise DecompositionError(f"Decomposition of the term at '{term.point_id}' is not exact.")


def decompose_terms(
    terms: Sequence[LocalTerm], debug: bool = False, form_key: Optional[FormKey] = None
) -> Dict[str, SplineRepr]:
    return {term.point_id: decompose(term, debug=debug, form_key=form_key) for term in terms}


def evaluate(spline: SplineRepr, t: Sequence[Any], strict: bool = True) -> SplineEvaluation:
    """
    Evaluate the atoms of ``spline`` at ``t``.

    An atom contributes where every cone coordinate is positive. When some coordinate
    is zero while the others are non-negative, ``t`` lies on a wall of that atom: the
    result is not regular and carries no value.

    Raises:
        :class:`~torus_reduction.exceptions.NonRegularValueError`: On a wall, when
          ``strict``.

    Returns:
        :class:`SplineEvaluation`
    """

    t = Vec(t)
    total = Fraction(0)
    for atom in spline.terms:
        if len(t) != len(atom.apex):
            raise DimensionError(len(atom.apex), len(t))

        s = atom.coordinates(t)
        if all(x > 0 for x in s):
            total += atom.density(s)
        elif all(x >= 0 for x in s):
            if strict:
                raise NonRegularValueError(t, atom)

            return SplineEvaluation(value=None, regular=False, wall=atom)

    return SplineEvaluation(value=total, regular=True)


def convolve(a: Sequence[LocalTerm], b: Sequence[LocalTerm]) -> List[LocalTerm]:
    """
    Pairwise products of two term lists polarized by the same ``xi``: numerators
    multiply, denominators concatenate, apexes add and signs multiply.
    """

    products = []
    for left in a:
        for right in b:
            if left.rank != right.rank:
                raise DimensionError(left.rank, right.rank)

            products.append(
                LocalTerm(
                    point_id=f"{left.point_id},{right.point_id}",
                    numerator=left.numerator * right.numerator,
                    denominator=left.denominator + right.denominator,
                    apex=left.apex + right.apex,
                    sign=left.sign * right.sign,
                )
            )

    return sorted(products, key=lambda term: term.point_id)


def dump_terms(spline: SplineRepr) -> List[Dict[str, Any]]:
    return [atom.to_json() for atom in spline.terms]


def load_terms(raw: Sequence[Dict[str, Any]]) -> List[ConeSplineTerm]:
    atoms = []
    for entry in raw:
        try:
            apex = parse_vec(entry["apex"])
            atoms.append(
                ConeSplineTerm(
                    coeff=parse_rat(entry["coeff"]),
                    apex=apex,
                    basis=tuple(parse_form(f, len(apex)) for f in entry["basis"]),
                    mults=tuple(int(m) for m in entry["mults"]),
                )
            )
        except (KeyError, TypeError, ValueError) as err:
            raise InputDocumentError(f"Malformed cone-spline term {entry!r}.") from err

    return atoms


def _l1(normal: Sequence[int]) -> int:
    return sum(abs(n) for n in normal)


def chamber_margins(
    spline: SplineRepr, t: Sequence[Any]
) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """
    The facet hyperplanes ``n . t = c`` that ``t`` must not cross for the indicator of
    every atom's closed cone to stay constant, each with its distance ``|n . t - c|``.

    Inside a cone every facet binds. Outside, only the facet with the largest violation
    (relative to ``|n|_1``) does, so extensions of facets through ``t`` impose nothing.

    Raises:
        :class:`~torus_reduction.exceptions.NonRegularValueError`: When ``t`` lies on the
          boundary of some atom's cone.
    """

    point = parse_vec(t)
    margins = []
    for atom in spline.terms:
        sides = [
            (normal, sum((n * x for n, x in zip(normal, point)), Fraction(0)) - offset)
            for normal, offset in atom.facets()
        ]
        violated = [(normal, -side) for normal, side in sides if side < 0]
        if violated:
            margins.append(max(violated, key=lambda m: m[1] / _l1(m[0])))
        elif any(side == 0 for _, side in sides):
            raise NonRegularValueError(point, atom)
        else:
            margins.extend(sides)

    return sorted(set(margins))



__all__ = [
    "ConeSplineTerm",
    "PieceKind",
    "RationalPiece",
    "SplineEvaluation",
    "SplineRepr",
    "chamber_margins",
    "convolve",
    "decompose",
    "decompose_terms",
    "dump_terms",
    "evaluate",
    "load_terms",
    "verify_decomposition",
]
