"""
Path Algebra Elements
Exact rational scalars and polynomials of KQ: arithmetic, leading data,
monic normalization and uniform decomposition.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union
import logging

from src.core.order import PathOrder
from src.core.quiver_core import Path, Quiver, compose
from src.errors import UsageError

logger = logging.getLogger(__name__)

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]


def to_scalar(value: ScalarLike) -> Fraction:
    """Exact rational from an int, Fraction or 'p/q' string; floats are refused."""
    if isinstance(value, float):
        raise UsageError("floating point coefficients are not exact; use a Fraction or 'p/q'")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise UsageError(f"cannot use {value!r} as a coefficient")


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Term:
    """A nonzero coefficient times a path."""
    coefficient: Fraction
    path: Path

    def __post_init__(self):
        if self.coefficient == 0:
            raise UsageError("a term needs a nonzero coefficient")


class Polynomial:
    """
    Element of KQ: a finite map path -> nonzero rational.

    Storage is order independent; every order-dependent query (leading term,
    canonical text) takes the PathOrder explicitly.
    """

    __slots__ = ('quiver', '_terms', '_hash')

    def __init__(self, quiver: Quiver, terms: Optional[Mapping[Path, ScalarLike]] = None):
        self.quiver = quiver
        support: Dict[Path, Fraction] = {}
        for path, coefficient in (terms or {}).items():
            if path.quiver is not quiver:
                raise UsageError("term path belongs to a different quiver")
            value = coefficient if isinstance(coefficient, Fraction) else to_scalar(coefficient)
            if value:
                support[path] = value
        self._terms = support
        self._hash: Optional[int] = None

    @classmethod
    def _from_clean(cls, quiver: Quiver, support: Dict[Path, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.quiver = quiver
        poly._terms = support
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, quiver: Quiver) -> "Polynomial":
        return cls._from_clean(quiver, {})

    @classmethod
    def monomial(cls, path: Path, coefficient: ScalarLike = 1) -> "Polynomial":
        return cls(path.quiver, {path: coefficient})

    @classmethod
    def identity(cls, quiver: Quiver) -> "Polynomial":
        """Sum of all trivial paths; the unit of KQ for a finite quiver."""
        return cls(quiver, {p: 1 for p in quiver.trivial_paths()})

    # --- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Path, Fraction]]:
        return iter(self._terms.items())

    def terms(self) -> Dict[Path, Fraction]:
        return dict(self._terms)

    def monomials(self) -> List[Path]:
        """Mon(f)."""
        return list(self._terms)

    def coefficient(self, path: Path) -> Fraction:
        return self._terms.get(path, Fraction(0))

    def max_length(self) -> int:
        return max((p.length for p in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({p.length for p in self._terms}) <= 1

    def is_uniform(self) -> bool:
        return len({(p.source, p.target) for p in self._terms}) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.quiver is other.quiver and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((id(self.quiver), frozenset(self._terms.items())))
        return self._hash

    # --- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.quiver is not self.quiver:
            raise UsageError("polynomials belong to different quivers")

    def add(self, other: "Polynomial", factor: Fraction = Fraction(1)) -> "Polynomial":
        """self + factor * other, dropping cancelled terms."""
        self._check(other)
        support = dict(self._terms)
        for path, coefficient in other._terms.items():
            value = support.get(path, 0) + factor * coefficient
            if value:
                support[path] = value
            else:
                support.pop(path, None)
        return Polynomial._from_clean(self.quiver, support)

    def scale(self, factor: ScalarLike) -> "Polynomial":
        value = factor if isinstance(factor, Fraction) else to_scalar(factor)
        if not value:
            return Polynomial.zero(self.quiver)
        return Polynomial._from_clean(self.quiver, {p: c * value for p, c in self._terms.items()})

    def negate(self) -> "Polynomial":
        return self.scale(-1)

    def multiply(self, other: "Polynomial") -> "Polynomial":
        """Bilinear extension of path composition."""
        self._check(other)
        support: Dict[Path, Fraction] = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                product = compose(left, right)
                if product is None:
                    continue
                value = support.get(product, 0) + a * b
                if value:
                    support[product] = value
                else:
                    support.pop(product, None)
        return Polynomial._from_clean(self.quiver, support)

    def sandwich(self, left: Optional[Path] = None, right: Optional[Path] = None,
                 factor: Fraction = Fraction(1)) -> "Polynomial":
        """factor * left * self * right for paths; either side may be omitted."""
        support: Dict[Path, Fraction] = {}
        for path, coefficient in self._terms.items():
            product: Optional[Path] = path
            if left is not None:
                product = compose(left, product)
            if product is not None and right is not None:
                product = compose(product, right)
            if product is not None:
                value = support.get(product, 0) + factor * coefficient
                if value:
                    support[product] = value
                else:
                    support.pop(product, None)
        return Polynomial._from_clean(self.quiver, support)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return self.add(other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self.add(other, Fraction(-1))

    def __neg__(self) -> "Polynomial":
        return self.negate()

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return self.multiply(other)
        if isinstance(other, Path):
            return self.sandwich(right=other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Path):
            return self.sandwich(left=other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # --- order dependent ----------------------------------------------------

    def leading(self, order: PathOrder) -> Term:
        if not self._terms:
            raise UsageError("no leading term: the polynomial is zero")
        path = order.max(self._terms)
        return Term(self._terms[path], path)

    def lm(self, order: PathOrder) -> Path:
        return self.leading(order).path

    def lc(self, order: PathOrder) -> Fraction:
        return self.leading(order).coefficient

    def lt(self, order: PathOrder) -> "Polynomial":
        term = self.leading(order)
        return Polynomial._from_clean(self.quiver, {term.path: term.coefficient})

    def sorted_terms(self, order: PathOrder, descending: bool = True) -> List[Tuple[Path, Fraction]]:
        return [(p, self._terms[p]) for p in order.sorted(self._terms, descending=descending)]

    def monic(self, order: PathOrder) -> "Polynomial":
        """f / LC(f)."""
        return self.scale(1 / self.lc(order))

    def uniform_components(self) -> List[Tuple[int, int, "Polynomial"]]:
        """Split by (source, target) of each monomial, in first-seen order."""
        if not self._terms:
            raise UsageError("the zero polynomial has no uniform components")
        groups: Dict[Tuple[int, int], Dict[Path, Fraction]] = {}
        for path, coefficient in self._terms.items():
            groups.setdefault((path.source, path.target), {})[path] = coefficient
        return [(u, v, Polynomial._from_clean(self.quiver, support)) for (u, v), support in groups.items()]

    def format(self, order: PathOrder) -> str:
        """Canonical text: terms descending under ``order``, coefficient 1 elided."""
        if not self._terms:
            return "0"
        pieces = []
        for index, (path, coefficient) in enumerate(self.sorted_terms(order)):
            magnitude = abs(coefficient)
            body = str(path) if magnitude == 1 else f"{format_scalar(magnitude)}*{path}"
            if index == 0:
                pieces.append(f"-{body}" if coefficient < 0 else body)
            else:
                pieces.append(f" - {body}" if coefficient < 0 else f" + {body}")
        return ''.join(pieces)

    def __repr__(self) -> str:
        if not self._terms:
            return "Polynomial(0)"
        inner = ' + '.join(f"{format_scalar(c)}*{p}" for p, c in self._terms.items())
        return f"Polynomial({inner})"


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.add(g)


def scale(c: ScalarLike, f: Polynomial) -> Polynomial:
    return f.scale(c)


def negate(f: Polynomial) -> Polynomial:
    return f.negate()


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.multiply(g)


def leading(f: Polynomial, order: PathOrder) -> Term:
    return f.leading(order)


def monic(f: Polynomial, order: PathOrder) -> Polynomial:
    return f.monic(order)


def uniform_components(f: Polynomial) -> List[Tuple[int, int, Polynomial]]:
    return f.uniform_components()


def polynomial_sum(quiver: Quiver, parts: Iterable[Polynomial]) -> Polynomial:
    total = Polynomial.zero(quiver)
    for part in parts:
        total = total.add(part)
    return total
