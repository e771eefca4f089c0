"""
Conversions between the JSON interchange forms and the exact engine types.

Rationals travel as ``"p/q"`` strings (or integers on input), linear forms as integer
arrays and polynomials as lists of ``{"exps": [...], "coeff": "p/q"}`` objects.
"""
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from torus_reduction.exactmath import LinForm, MPoly, Vec, to_rat
from torus_reduction.exceptions import DimensionError, InputDocumentError


def rat_to_str(value: Fraction) -> str:
    value = to_rat(value)
    if value.denominator == 1:
        return str(value.numerator)

    return f"{value.numerator}/{value.denominator}"


def parse_rat(raw: Any) -> Fraction:
    if isinstance(raw, float):
        raise InputDocumentError(f"Rationals must be integers or 'p/q' strings, got {raw!r}.")

    try:
        return to_rat(raw)
    except (TypeError, ValueError, ZeroDivisionError) as err:
        raise InputDocumentError(str(err)) from err


def vec_to_json(vec: Sequence[Fraction]) -> List[str]:
    return [rat_to_str(x) for x in vec]


def parse_vec(raw: Any, rank: Optional[int] = None) -> Vec:
    if isinstance(raw, (int, str)) and not isinstance(raw, bool):
        raw = [raw]

    if not isinstance(raw, (list, tuple)):
        raise InputDocumentError(f"Expected a list of rationals, got {raw!r}.")

    vec = Vec(parse_rat(x) for x in raw)
    if rank is not None and len(vec) != rank:
        raise DimensionError(rank, len(vec))

    return vec


def parse_point(text: str, rank: Optional[int] = None) -> Vec:
    """
    Parse a command-line point such as ``"0,0"`` or ``"1/3"``.
    """

    parts = [p for p in text.replace(" ", "").split(",") if p]
    return parse_vec(parts, rank=rank)


def form_to_json(form: Sequence[int]) -> List[int]:
    return [int(c) for c in form]


def parse_form(raw: Any, rank: Optional[int] = None) -> LinForm:
    if isinstance(raw, int) and not isinstance(raw, bool):
        raw = [raw]

    if not isinstance(raw, (list, tuple)) or any(
        isinstance(c, bool) or not isinstance(c, int) for c in raw
    ):
        raise InputDocumentError(f"Weights must be integer arrays, got {raw!r}.")

    form = LinForm(raw)
    if rank is not None and len(form) != rank:
        raise DimensionError(rank, len(form))

    return form


def poly_to_json(poly: MPoly) -> List[Dict[str, Any]]:
    return [{"exps": list(exps), "coeff": rat_to_str(coeff)} for exps, coeff in poly.items()]


def parse_poly(raw: Any, nvars: int) -> MPoly:
    if isinstance(raw, (int, str)) and not isinstance(raw, bool):
        return MPoly.constant(nvars, parse_rat(raw))

    if not isinstance(raw, list):
        raise InputDocumentError(f"Expected a list of polynomial terms, got {raw!r}.")

    terms: Dict[tuple, Fraction] = {}
    for entry in raw:
        if not isinstance(entry, dict) or "exps" not in entry or "coeff" not in entry:
            raise InputDocumentError(f"Polynomial terms need 'exps' and 'coeff', got {entry!r}.")

        raw_exps = entry["exps"]
        if not isinstance(raw_exps, list) or not all(
            isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in raw_exps
        ):
            raise InputDocumentError(f"Exponents must be a list of naturals, got {raw_exps!r}.")

        exps = tuple(raw_exps)
        if len(exps) != nvars:
            raise DimensionError(nvars, len(exps), "variable count")

        terms[exps] = terms.get(exps, Fraction(0)) + parse_rat(entry["coeff"])

    try:
        return MPoly(nvars, terms)
    except (TypeError, ValueError) as err:
        raise InputDocumentError(str(err)) from err
