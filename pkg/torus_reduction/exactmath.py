"""
Exact rational scalars, vectors, linear forms and sparse multivariate polynomials.

Scalars are :class:`fractions.Fraction`. Matrices are handed to ``sympy`` for the
determinants, inverses, ranks and null spaces, with every entry converted to a
``sympy.Rational`` so no floating point ever enters.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import floor, gcd, lcm
from typing import (
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import sympy
from pydantic_core import core_schema

from torus_reduction.exceptions import DimensionError, SingularBasisError

Rat = Fraction
RationalLike = Union[int, str, Fraction, "sympy.Rational"]
Monomial = Tuple[int, ...]


def to_rat(value: RationalLike) -> Fraction:
    """
    Convert an integer, a ``"p/q"`` string, a ``Fraction`` or a ``sympy.Rational``
    into a ``Fraction``. Floats are refused; they are never exact inputs.
    """

    if isinstance(value, Fraction):
        return value

    elif isinstance(value, bool):
        raise TypeError("Booleans are not rationals.")

    elif isinstance(value, int):
        return Fraction(value)

    elif isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as err:
            raise ValueError(f"'{value}' is not a rational number.") from err

    elif isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))

    raise TypeError(f"Cannot convert {value!r} to an exact rational.")


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    value = sympy.sympify(value)
    if not isinstance(value, sympy.Rational):
        raise TypeError(f"Expected an exact rational, got {value}.")

    return Fraction(int(value.p), int(value.q))


def _matrix(rows: Sequence[Sequence[RationalLike]]) -> sympy.Matrix:
    return sympy.Matrix([[_to_sympy(to_rat(x)) for x in row] for row in rows])


class Vec(tuple):
    """
    A point of the dual Lie algebra with exact rational coordinates.
    """

    def __new__(cls, entries: Iterable[RationalLike]) -> "Vec":
        return super().__new__(cls, tuple(to_rat(e) for e in entries))

    @classmethod
    def __get_pydantic_core_schema__(cls, source, handler):
        return core_schema.no_info_plain_validator_function(
            lambda value: value if isinstance(value, cls) else cls(value)
        )

    @classmethod
    def zero(cls, rank: int) -> "Vec":
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self)

    def _check(self, other: Sequence) -> None:
        if len(other) != len(self):
            raise DimensionError(len(self), len(other))

    def __add__(self, other: Sequence[RationalLike]) -> "Vec":  # type: ignore[override]
        self._check(other)
        return Vec(a + to_rat(b) for a, b in zip(self, other))

    def __sub__(self, other: Sequence[RationalLike]) -> "Vec":
        self._check(other)
        return Vec(a - to_rat(b) for a, b in zip(self, other))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self)

    def scale(self, factor: RationalLike) -> "Vec":
        factor = to_rat(factor)
        return Vec(factor * a for a in self)

    def __repr__(self) -> str:
        return f"Vec({', '.join(str(x) for x in self)})"


class LinForm(tuple):
    """
    An integral linear form in ``u_1 .. u_k``, e.g. an isotropy weight.
    """

    def __new__(cls, coefficients: Iterable[Union[int, Fraction]]) -> "LinForm":
        entries = []
        for coeff in coefficients:
            if isinstance(coeff, bool):
                raise TypeError("Booleans are not weight coefficients.")

            elif isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise ValueError(f"Weight coefficients must be integers, got {coeff}.")

                coeff = coeff.numerator

            elif not isinstance(coeff, int):
                raise TypeError(f"Weight coefficients must be integers, got {coeff!r}.")

            entries.append(int(coeff))

        return super().__new__(cls, tuple(entries))

    @classmethod
    def __get_pydantic_core_schema__(cls, source, handler):
        return core_schema.no_info_plain_validator_function(
            lambda value: value if isinstance(value, cls) else cls(value)
        )

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def is_zero(self) -> bool:
        return not any(self)

    def __neg__(self) -> "LinForm":
        return LinForm(-c for c in self)

    def scale(self, factor: int) -> "LinForm":
        return LinForm(factor * c for c in self)

    def pair(self, point: Sequence[RationalLike]) -> Fraction:
        """
        Evaluate the form at ``point``; for an integer vector ``xi`` of the Lie algebra
        this is the pairing ``<gamma, xi>``.
        """

        if len(point) != len(self):
            raise DimensionError(len(self), len(point))

        return sum((c * to_rat(x) for c, x in zip(self, point)), Fraction(0))

    def as_poly(self) -> "MPoly":
        k = len(self)
        return MPoly(k, {_unit(k, i): c for i, c in enumerate(self) if c})

    def __repr__(self) -> str:
        return f"LinForm{tuple(self)}"


def _unit(k: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(k))


class MPoly:
    """
    A sparse polynomial with rational coefficients in a fixed number of variables.

    Instances are immutable; arithmetic returns new polynomials in canonical form
    (no stored zero coefficients).
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], RationalLike]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars:
                raise DimensionError(nvars, len(key), "variable count")

            elif any(e < 0 for e in key):
                raise ValueError(f"Negative exponent in {key}.")

            cleaned[key] = cleaned.get(key, Fraction(0)) + to_rat(coeff)

        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", {k: v for k, v in cleaned.items() if v})

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable.")

    @classmethod
    def __get_pydantic_core_schema__(cls, source, handler):
        return core_schema.is_instance_schema(cls)

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: RationalLike) -> "MPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "MPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise DimensionError(nvars, index + 1, "variable index")

        return cls(nvars, {_unit(nvars, index): 1})

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms sorted by exponent tuple, highest first."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1

        return max(sum(e) for e in self._terms)

    def _coerce(self, other: Union["MPoly", RationalLike]) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise DimensionError(self.nvars, other.nvars, "variable count")

            return other

        return MPoly.constant(self.nvars, to_rat(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms

        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other: Union["MPoly", RationalLike]) -> "MPoly":
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff

        return MPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["MPoly", RationalLike]) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: RationalLike) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["MPoly", RationalLike]) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(to_rat(other))

        other = self._coerce(other)
        terms: Dict[Monomial, Fraction] = {}
        for (e1, c1), (e2, c2) in product(self._terms.items(), other._terms.items()):
            key = tuple(a + b for a, b in zip(e1, e2))
            terms[key] = terms.get(key, Fraction(0)) + c1 * c2

        return MPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MPoly":
        if exponent < 0:
            raise ValueError("Polynomials only take non-negative powers.")

        result = MPoly.one(self.nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base

            base = base * base
            exponent >>= 1

        return result

    def scale(self, factor: RationalLike) -> "MPoly":
        factor = to_rat(factor)
        return MPoly(self.nvars, {e: factor * c for e, c in self._terms.items()})

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError(self.nvars, len(point), "variable count")

        values = [to_rat(x) for x in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for value, exponent in zip(values, exps):
                if exponent:
                    term *= value**exponent

            total += term

        return total

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """
        Replace ``u_i`` by ``images[i]``; all images share one variable count.
        """

        if len(images) != self.nvars:
            raise DimensionError(self.nvars, len(images), "variable count")

        target = images[0].nvars if images else 0
        powers: Dict[Tuple[int, int], MPoly] = {}

        def power(index: int, exponent: int) -> MPoly:
            key = (index, exponent)
            if key not in powers:
                powers[key] = images[index] ** exponent

            return powers[key]

        result = MPoly.zero(target)
        for exps, coeff in self._terms.items():
            term = MPoly.constant(target, coeff)
            for index, exponent in enumerate(exps):
                if exponent:
                    term = term * power(index, exponent)

            result = result + term

        return result

    def derivative(self, index: int) -> "MPoly":
        if not 0 <= index < self.nvars:
            raise DimensionError(self.nvars, index + 1, "variable index")

        terms: Dict[Monomial, Fraction] = {}
        for exps, coeff in self._terms.items():
            if exps[index]:
                key = tuple(e - 1 if i == index else e for i, e in enumerate(exps))
                terms[key] = coeff * exps[index]

        return MPoly(self.nvars, terms)

    def to_sympy(self, symbols: Sequence[sympy.Symbol]) -> sympy.Expr:
        if len(symbols) != self.nvars:
            raise DimensionError(self.nvars, len(symbols), "variable count")

        expr = sympy.Integer(0)
        for exps, coeff in self.items():
            monomial = sympy.Mul(*(s**e for s, e in zip(symbols, exps)))
            expr += _to_sympy(coeff) * monomial

        return expr

    @classmethod
    def from_sympy(cls, expr: sympy.Expr, symbols: Sequence[sympy.Symbol]) -> "MPoly":
        if not symbols:
            return cls.constant(0, _from_sympy(expr))

        poly = sympy.Poly(sympy.expand(expr), *symbols)

        return cls(len(symbols), {m: _from_sympy(c) for m, c in poly.terms()})

    def format(self, names: Sequence[str]) -> str:
        symbols = sympy.symbols(list(names)) if names else []
        return str(self.to_sympy(symbols)).replace("**", "^")

    def __repr__(self) -> str:
        names = [f"u{i + 1}" for i in range(self.nvars)]
        return f"MPoly({self.format(names)})"


def poly_arith(p: MPoly, q: Union[MPoly, RationalLike], op: str) -> MPoly:
    """
    Combine two polynomials exactly.

    Args:
        p (:class:`~torus_reduction.exactmath.MPoly`): The left operand.
        q (Union[:class:`~torus_reduction.exactmath.MPoly`, Rat]): The right operand; a
          rational when ``op`` is ``"scale"``.
        op (str): One of ``add``, ``mul`` or ``scale``.

    Returns:
        :class:`~torus_reduction.exactmath.MPoly`
    """

    if op == "add":
        if not isinstance(q, MPoly):
            raise TypeError("'add' takes two polynomials.")

        return p + q

    elif op == "mul":
        if not isinstance(q, MPoly):
            raise TypeError("'mul' takes two polynomials.")

        return p * q

    elif op == "scale":
        if isinstance(q, MPoly):
            raise TypeError("'scale' takes a rational factor.")

        return p.scale(q)

    raise ValueError(f"Unknown polynomial operation '{op}'.")


def _check_square(forms: Sequence[Sequence[int]], rank: Optional[int] = None) -> int:
    k = len(forms) if rank is None else rank
    for form in forms:
        if len(form) != k:
            raise DimensionError(k, len(form))

    return k


def det(forms: Sequence[Sequence[int]]) -> Fraction:
    """
    The determinant of ``k`` forms of length ``k``.
    """

    k = _check_square(forms)
    if k == 0:
        return Fraction(1)

    return _from_sympy(_matrix(forms).det())


def rational_det(rows: Sequence[Sequence[RationalLike]]) -> Fraction:
    _check_square(rows)
    if not rows:
        return Fraction(1)

    return _from_sympy(_matrix(rows).det())


def rank(rows: Sequence[Sequence[RationalLike]]) -> int:
    if not rows:
        return 0

    return int(_matrix(rows).rank())


@lru_cache(maxsize=8192)
def _column_inverse(forms: Tuple[LinForm, ...]) -> Optional[Tuple[Tuple[Fraction, ...], ...]]:
    k = len(forms)
    columns = _matrix([[form[row] for form in forms] for row in range(k)])
    if columns.det() == 0:
        return None

    inverse = columns.inv()
    return tuple(tuple(_from_sympy(inverse[i, j]) for j in range(k)) for i in range(k))


def solve_linear(basis: Sequence[Sequence[int]], v: Sequence[RationalLike]) -> Vec:
    """
    Coordinates ``s`` with ``v = sum(s_i * basis[i])``.

    Args:
        basis (Sequence[:class:`~torus_reduction.exactmath.LinForm`]): ``k`` forms of
          length ``k``.
        v (Sequence[Rat]): The point to express.

    Raises:
        :class:`~torus_reduction.exceptions.DimensionError`: When shapes disagree.
        :class:`~torus_reduction.exceptions.SingularBasisError`: When the forms are
          dependent.

    Returns:
        :class:`~torus_reduction.exactmath.Vec`
    """

    k = _check_square(basis, rank=len(v))
    if len(basis) != k:
        raise DimensionError(k, len(basis), "basis size")

    inverse = _column_inverse(tuple(LinForm(f) for f in basis))
    if inverse is None:
        raise SingularBasisError(basis)

    values = [to_rat(x) for x in v]
    return Vec(sum((row[j] * values[j] for j in range(k)), Fraction(0)) for row in inverse)


def solve_rational_system(
    rows: Sequence[Sequence[RationalLike]], rhs: Sequence[RationalLike]
) -> Optional[Vec]:
    """
    Solve the square system ``rows · x = rhs``; ``None`` when it is singular.
    """

    k = _check_square(rows)
    if len(rhs) != k:
        raise DimensionError(k, len(rhs))

    if k == 0:
        return Vec([])

    matrix = _matrix(rows)
    if matrix.det() == 0:
        return None

    solution = matrix.LUsolve(_matrix([[x] for x in rhs]))
    return Vec(_from_sympy(solution[i, 0]) for i in range(k))


_Relation = Tuple[int, Tuple[Tuple[int, Fraction], ...]]


@lru_cache(maxsize=8192)
def _first_relation(forms: Tuple[LinForm, ...]) -> Optional[_Relation]:
    k = len(forms[0]) if forms else 0
    for j in range(1, len(forms)):
        prefix = forms[: j + 1]
        if j < k and rank(prefix) == j + 1:
            continue

        columns = _matrix([[form[row] for form in prefix] for row in range(k)])
        null = columns.nullspace()
        if not null:
            continue

        vector = null[0]
        pivot = _from_sympy(vector[j])
        if pivot == 0:
            # Smaller prefixes were independent, so the last column always takes part.
            raise SingularBasisError(prefix)

        coefficients = tuple(
            (i, -_from_sympy(vector[i]) / pivot) for i in range(j) if vector[i] != 0
        )
        return j, coefficients

    return None


def first_relation(
    forms: Sequence[LinForm],
) -> Optional[Tuple[int, Dict[int, Fraction]]]:
    """
    Find the first index ``j`` whose form lies in the span of the forms before it.

    Returns ``(j, a)`` with ``forms[j] == sum(a[i] * forms[i])`` over ``i < j``, or
    ``None`` when the forms are independent. The support of ``a`` together with ``j``
    is a circuit whose largest member, in the given order, is ``j``.
    """

    found = _first_relation(tuple(LinForm(f) for f in forms))
    if found is None:
        return None

    j, coefficients = found
    return j, dict(coefficients)


def extend_to_basis(forms: Sequence[LinForm], k: int) -> List[LinForm]:
    """
    Extend independent ``forms`` to a basis of the ``k``-dimensional space with unit forms.
    """

    basis = [LinForm(f) for f in forms]
    for i in range(k):
        if len(basis) == k:
            break

        candidate = LinForm(_unit(k, i))
        if rank(basis + [candidate]) == len(basis) + 1:
            basis.append(candidate)

    if len(basis) != k:
        raise SingularBasisError(forms)

    return basis


def stabilizer_order(weights: Sequence[Sequence[int]], k: int) -> int:
    """
    The index of the lattice spanned by ``weights`` inside ``Z^k``: the gcd of all
    ``k x k`` minors, or 0 when the weights do not span.
    """

    index = 0
    for subset in combinations(weights, k):
        minor = det(subset)
        index = gcd(index, abs(minor.numerator))

    return index


def _fourier_motzkin_point(
    constraints: List[Tuple[Tuple[Fraction, ...], Fraction]], nvars: int
) -> Optional[List[Fraction]]:
    # Each constraint (a, b) reads a . x >= b.
    if nvars == 0:
        return [] if all(b <= 0 for _, b in constraints) else None

    last = nvars - 1
    lower, upper, rest = [], [], []
    for a, b in constraints:
        if a[last] > 0:
            lower.append((a, b))
        elif a[last] < 0:
            upper.append((a, b))
        else:
            rest.append((a[:last], b))

    reduced = list(rest)
    for (a_low, b_low), (a_up, b_up) in product(lower, upper):
        p, q = -a_up[last], a_low[last]
        reduced.append(
            (tuple(p * a_low[i] + q * a_up[i] for i in range(last)), p * b_low + q * b_up)
        )

    head = _fourier_motzkin_point(reduced, last)
    if head is None:
        return None

    def bound(a: Tuple[Fraction, ...], b: Fraction) -> Fraction:
        return (b - sum((a[i] * head[i] for i in range(last)), Fraction(0))) / a[last]

    lows = [bound(a, b) for a, b in lower]
    highs = [bound(a, b) for a, b in upper]
    if lows:
        value = max(lows)
    elif highs:
        value = min(Fraction(0), Fraction(floor(min(highs))))
    else:
        value = Fraction(0)

    return head + [value]


def find_positive_vector(forms: Sequence[Sequence[int]], k: int) -> Optional[Tuple[int, ...]]:
    """
    A primitive integer vector ``xi`` with ``<f, xi> > 0`` for every form, found by
    Fourier-Motzkin elimination on ``<f, xi> >= 1``; ``None`` when none exists.
    """

    for form in forms:
        if len(form) != k:
            raise DimensionError(k, len(form))

    if not forms:
        return tuple(1 if i == 0 else 0 for i in range(k))

    constraints = [(tuple(Fraction(c) for c in form), Fraction(1)) for form in forms]
    point = _fourier_motzkin_point(constraints, k)
    if point is None:
        return None

    scale = lcm(*(x.denominator for x in point)) if point else 1
    integral = [int(x * scale) for x in point]
    divisor = 0
    for x in integral:
        divisor = gcd(divisor, abs(x))

    return tuple(x // divisor for x in integral) if divisor else tuple(integral)


def cone_contains(forms: Sequence[Sequence[int]], v: Sequence[RationalLike]) -> bool:
    """
    Whether ``v`` lies in the closed cone spanned by ``forms``, i.e. ``v = sum(s_i f_i)``
    for some ``s >= 0``.
    """

    k = len(v)
    for form in forms:
        if len(form) != k:
            raise DimensionError(k, len(form))

    n = len(forms)
    target = [to_rat(x) for x in v]
    constraints: List[Tuple[Tuple[Fraction, ...], Fraction]] = []
    for i in range(n):
        constraints.append((tuple(Fraction(int(i == j)) for j in range(n)), Fraction(0)))

    for row in range(k):
        coefficients = tuple(Fraction(form[row]) for form in forms)
        constraints.append((coefficients, target[row]))
        constraints.append((tuple(-c for c in coefficients), -target[row]))

    return _fourier_motzkin_point(constraints, n) is not None


def iter_monomials(k: int, degree: int) -> Iterator[Monomial]:
    """All exponent tuples in ``k`` variables of total degree at most ``degree``."""
    if k == 0:
        yield ()
        return

    for first in range(degree + 1):
        for rest in iter_monomials(k - 1, degree - first):
            yield (first,) + rest
