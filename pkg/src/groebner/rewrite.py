"""
Rewriting
Left, right and two-sided division producing standard representations,
total reduction, and set (inter)reduction.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from src.config import get_settings
from src.core.algebra import Polynomial, format_scalar
from src.core.order import PathOrder, Side
from src.core.quiver_core import (
    Path, left_divisor_witness, leftmost_occurrence, right_divisor_witness,
)
from src.errors import GroebnerError, StepCapExceededError, UsageError
from src.groebner.schemas import QuotientModel, StandardRepresentationModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuotientTerm:
    """coefficient * left * f * right; the side a division does not use is None."""
    coefficient: Fraction
    left: Optional[Path] = None
    right: Optional[Path] = None

    def apply(self, f: Polynomial) -> Polynomial:
        return f.sandwich(self.left, self.right, self.coefficient)

    def describe(self) -> Dict[str, Optional[str]]:
        return {
            'coefficient': format_scalar(self.coefficient),
            'left': None if self.left is None else str(self.left),
            'right': None if self.right is None else str(self.right),
        }


@dataclass
class StandardRepresentation:
    """g = sum of quotient multiples of the divisors + remainder."""
    side: Side
    order: PathOrder
    dividend: Polynomial
    divisors: Tuple[Polynomial, ...]
    quotients: Tuple[Tuple[QuotientTerm, ...], ...]
    remainder: Polynomial
    sweeps: int = 0
    leading_trace: Tuple[Path, ...] = field(default_factory=tuple)

    def reconstruct(self) -> Polynomial:
        total = self.remainder
        for f, terms in zip(self.divisors, self.quotients):
            for term in terms:
                total = total.add(term.apply(f))
        return total

    def quotient_polynomial(self, index: int) -> Polynomial:
        """g_i of a one-sided representation (sum of coefficient * multiplier)."""
        if self.side is Side.TWOSIDED:
            raise UsageError("two-sided quotients are pairs (w, z); use .quotients")
        total = Polynomial.zero(self.dividend.quiver)
        for term in self.quotients[index]:
            path = term.left if self.side is Side.LEFT else term.right
            total = total.add(Polynomial.monomial(path, term.coefficient))
        return total

    def check_conditions(self) -> List[str]:
        """Problems with this representation; empty when every condition holds."""
        problems = []
        if self.reconstruct() != self.dividend:
            problems.append("reconstruction does not give the dividend")
        leads = [f.lm(self.order) for f in self.divisors]
        for path in self.remainder.monomials():
            for lead in leads:
                if _locate(lead, path, self.side) is not None:
                    problems.append(f"remainder monomial {path} is divisible by {lead}")
        top = self.dividend.lm(self.order)
        for index, (lead, terms) in enumerate(zip(leads, self.quotients)):
            for term in terms:
                product = Polynomial.monomial(lead).sandwich(term.left, term.right)
                if product.is_zero():
                    problems.append(f"quotient term of divisor {index} annihilates its leading monomial")
                    continue
                path = product.lm(self.order)
                if self.order.key(path) > self.order.key(top):
                    problems.append(f"quotient multiple {path} exceeds LM(g) = {top}")
                for earlier in leads[:index]:
                    if _locate(earlier, path, self.side) is not None:
                        problems.append(f"{path} was charged to divisor {index} but an earlier divisor divides it")
        for before, after in zip(self.leading_trace, self.leading_trace[1:]):
            if self.order.key(after) >= self.order.key(before):
                problems.append(f"leading monomial did not descend: {before} then {after}")
        return problems

    def to_model(self) -> StandardRepresentationModel:
        return StandardRepresentationModel(
            side=self.side.value,
            order=self.order.name,
            dividend=self.dividend.format(self.order),
            divisors=[f.format(self.order) for f in self.divisors],
            quotients={
                str(index): [QuotientModel(**term.describe()) for term in terms]
                for index, terms in enumerate(self.quotients)
            },
            remainder=self.remainder.format(self.order),
            sweeps=self.sweeps,
        )


def _locate(lead: Path, path: Path, side: Side) -> Optional[Tuple[Optional[Path], Optional[Path]]]:
    """Multipliers (w, z) with path = w*lead*z for the side; left-most occurrence for two-sided."""
    if side is Side.LEFT:
        w = left_divisor_witness(lead, path)
        return None if w is None else (w, None)
    if side is Side.RIGHT:
        z = right_divisor_witness(lead, path)
        return None if z is None else (None, z)
    return leftmost_occurrence(lead, path)


def is_reducible(path: Path, leads: Sequence[Path], side: Side) -> bool:
    return any(_locate(lead, path, side) is not None for lead in leads)


def divide(g: Polynomial, divisors: Sequence[Polynomial], order: PathOrder,
           side: Side = Side.TWOSIDED, *, unsafe: bool = False,
           max_steps: Optional[int] = None) -> StandardRepresentation:
    """
    Division of g by the divisors in sweeps. Each sweep charges every term of
    the current polynomial to the first divisor (in sequence order) whose
    leading monomial divides it, moves uncharged terms to the remainder and
    subtracts all charged multiples at once; the next sweep starts afresh.
    """
    divisors = tuple(divisors)
    if g.is_zero():
        raise UsageError("cannot divide the zero polynomial")
    if not divisors:
        raise UsageError("division needs at least one divisor")
    for f in divisors:
        if f.is_zero():
            raise UsageError("divisors must be nonzero")
        if f.quiver is not g.quiver:
            raise UsageError("divisor belongs to a different quiver")
    if max_steps is not None and max_steps < 1:
        raise UsageError("max_steps must be positive")
    order.require_admissible(side, unsafe)
    cap = None if order.is_well_ordered else (max_steps or get_settings().max_division_steps)

    quiver = g.quiver
    leads = [f.leading(order) for f in divisors]
    quotients: List[List[QuotientTerm]] = [[] for _ in divisors]
    remainder = Polynomial.zero(quiver)
    current = g
    trace: List[Path] = []
    sweeps = 0

    while not current.is_zero():
        if cap is not None and sweeps >= cap:
            partial = StandardRepresentation(
                side, order, g, divisors, tuple(tuple(q) for q in quotients),
                remainder.add(current), sweeps, tuple(trace),
            )
            raise StepCapExceededError(f"division did not finish within {cap} sweeps", partial)
        sweeps += 1
        top = current.lm(order)
        if trace and order.is_well_ordered and order.key(top) >= order.key(trace[-1]):
            raise GroebnerError(f"leading monomial did not descend: {trace[-1]} then {top}")
        trace.append(top)

        terms = current.sorted_terms(order)
        claimed: Dict[Path, Fraction] = {}
        correction = Polynomial.zero(quiver)
        for index, (f, lead) in enumerate(zip(divisors, leads)):
            for path, coefficient in terms:
                if path in claimed:
                    continue
                witness = _locate(lead.path, path, side)
                if witness is None:
                    continue
                term = QuotientTerm(coefficient / lead.coefficient, *witness)
                quotients[index].append(term)
                claimed[path] = coefficient
                correction = correction.add(term.apply(f))

        leftover = Polynomial(quiver, {p: c for p, c in terms if p not in claimed})
        remainder = remainder.add(leftover)
        current = current.add(leftover, Fraction(-1)).add(correction, Fraction(-1))
        logger.debug(f"Sweep {sweeps}: LM {top}, {len(claimed)} terms charged, {len(leftover)} to remainder")

    return StandardRepresentation(
        side, order, g, divisors, tuple(tuple(q) for q in quotients),
        remainder, sweeps, tuple(trace),
    )


def divide_left(g: Polynomial, divisors: Sequence[Polynomial], order: PathOrder,
                **kwargs) -> StandardRepresentation:
    return divide(g, divisors, order, Side.LEFT, **kwargs)


def divide_right(g: Polynomial, divisors: Sequence[Polynomial], order: PathOrder,
                 **kwargs) -> StandardRepresentation:
    return divide(g, divisors, order, Side.RIGHT, **kwargs)


def divide_twosided(g: Polynomial, divisors: Sequence[Polynomial], order: PathOrder,
                    **kwargs) -> StandardRepresentation:
    return divide(g, divisors, order, Side.TWOSIDED, **kwargs)


def reduce_total(g: Polynomial, divisors: Sequence[Polynomial], order: PathOrder,
                 side: Side = Side.TWOSIDED, *, unsafe: bool = False,
                 max_steps: Optional[int] = None) -> Polynomial:
    """Red_H(g): the remainder of division; zero stays zero."""
    divisors = [f for f in divisors if not f.is_zero()]
    if g.is_zero() or not divisors:
        return g
    return divide(g, divisors, order, side, unsafe=unsafe, max_steps=max_steps).remainder


def set_reduce(generators: Sequence[Polynomial], order: PathOrder,
               side: Side = Side.TWOSIDED, *, unsafe: bool = False,
               max_steps: Optional[int] = None) -> List[Polynomial]:
    """
    Interreduce a generating set into a reduced monic set of the same ideal.

    The maximal remaining element (first one on ties) is reduced by all the
    others; whenever that changes it, the pass restarts with the partial
    result merged back in. Output is sorted by increasing leading monomial.
    """
    pending = list(generators)
    if any(f.is_zero() for f in pending):
        raise UsageError("set reduction needs nonzero elements")
    restarts = 0
    while True:
        work = list(pending)
        reduced: List[Polynomial] = []
        changed = False
        while work:
            k = max(range(len(work)), key=lambda i: order.key(work[i].lm(order)))
            candidate = work.pop(k)
            others = work + reduced
            result = reduce_total(candidate, others, order, side, unsafe=unsafe, max_steps=max_steps)
            if not result.is_zero():
                reduced.append(result.monic(order))
            if result != candidate:
                pending = work + reduced
                changed = True
                restarts += 1
                break
        if not changed:
            logger.debug(f"Set reduction: {len(generators)} in, {len(reduced)} out, {restarts} restarts")
            return sorted(reduced, key=lambda f: order.key(f.lm(order)))
