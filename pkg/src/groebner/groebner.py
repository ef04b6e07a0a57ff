"""
Groebner Bases
Overlaps, S-polynomials, the Buchberger completion loop, certification of
Groebner bases and ideal membership for left, right and two-sided ideals.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union
import logging

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from src.config import get_settings
from src.core.algebra import Polynomial
from src.core.order import PathOrder, Side
from src.core.quiver_core import (
    Path, compose, factor_occurrences, left_divisor_witness, right_divisor_witness,
)
from src.errors import UsageError
from src.groebner.rewrite import (
    StandardRepresentation, divide, is_reducible, reduce_total, set_reduce,
)
from src.groebner.schemas import (
    CertificateModel, GBResultModel, MembershipModel, OverlapModel, TraceEntryModel,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Overlap:
    """
    Witness of a common multiple of two leading monomials.

    twosided: LM(f)*p = q*LM(g), p and q of positive length
    left:     p*LM(f) = q*LM(g)
    right:    LM(f)*p = LM(g)*q
    """
    i: int
    j: int
    p: Path
    q: Path
    kind: Side = Side.TWOSIDED

    def to_model(self) -> OverlapModel:
        return OverlapModel(i=self.i, j=self.j, p=str(self.p), q=str(self.q), kind=self.kind.value)


@dataclass(frozen=True)
class InclusionAmbiguity:
    """LM(g_j) = left * LM(g_i) * right with i != j."""
    i: int
    j: int
    left: Path
    right: Path

    def describe(self) -> dict:
        return {'i': str(self.i), 'j': str(self.j), 'left': str(self.left), 'right': str(self.right)}


class GBStatus(Enum):
    COMPLETED = "completed"
    CAP_REACHED = "cap_reached"


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    overlap: Overlap
    added: Polynomial


@dataclass
class GeneratorSet:
    """Nonempty generators of one ideal, all nonzero and over one quiver."""
    generators: Tuple[Polynomial, ...]
    side: Side = Side.TWOSIDED

    def __post_init__(self):
        self.generators = tuple(self.generators)
        if not self.generators:
            raise UsageError("a generator set needs at least one generator")
        quiver = self.generators[0].quiver
        for f in self.generators:
            if f.is_zero():
                raise UsageError("generators must be nonzero")
            if f.quiver is not quiver:
                raise UsageError("generators belong to different quivers")

    @property
    def quiver(self):
        return self.generators[0].quiver

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


class CompletionLimits(BaseModel):
    """Caps and switches for one completion run."""
    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default_factory=lambda: get_settings().max_iterations, gt=0)
    max_path_length: int = Field(default_factory=lambda: get_settings().max_path_length, gt=0)
    max_division_steps: int = Field(default_factory=lambda: get_settings().max_division_steps, gt=0)
    proper_overlaps: bool = False
    initial_reduce: bool = True
    unsafe: bool = False


@dataclass
class GBResult:
    basis: List[Polynomial]
    status: GBStatus
    iterations: int
    pending: int
    trace: List[TraceEntry]
    order: PathOrder
    side: Side

    @property
    def completed(self) -> bool:
        return self.status is GBStatus.COMPLETED

    def formatted_basis(self) -> List[str]:
        return [f.format(self.order) for f in self.basis]

    def _trace_rows(self) -> List[dict]:
        return [
            {
                'iteration': entry.iteration,
                'i': entry.overlap.i,
                'j': entry.overlap.j,
                'p': str(entry.overlap.p),
                'q': str(entry.overlap.q),
                'added': entry.added.format(self.order),
            }
            for entry in self.trace
        ]

    def trace_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self._trace_rows(), columns=['iteration', 'i', 'j', 'p', 'q', 'added'])

    def to_model(self) -> GBResultModel:
        return GBResultModel(
            side=self.side.value,
            order=self.order.name,
            status=self.status.value,
            iterations=self.iterations,
            pending=self.pending,
            basis=self.formatted_basis(),
            trace=[TraceEntryModel(**row) for row in self._trace_rows()],
        )


@dataclass
class GroebnerCertificate:
    ok: bool
    reason: str
    uniform: bool
    pairwise_nondivisible: bool
    failing: Optional[Union[Overlap, InclusionAmbiguity]] = None
    s_polynomial: Optional[Polynomial] = None
    remainder: Optional[Polynomial] = None
    order: Optional[PathOrder] = field(default=None, repr=False)

    def to_model(self) -> CertificateModel:
        failing = None
        if isinstance(self.failing, Overlap):
            failing = {k: str(v) for k, v in self.failing.to_model().model_dump().items()}
        elif isinstance(self.failing, InclusionAmbiguity):
            failing = self.failing.describe()
        return CertificateModel(
            ok=self.ok,
            reason=self.reason,
            uniform=self.uniform,
            pairwise_nondivisible=self.pairwise_nondivisible,
            failing=failing,
            s_polynomial=None if self.s_polynomial is None else self.s_polynomial.format(self.order),
            remainder=None if self.remainder is None else self.remainder.format(self.order),
        )


@dataclass
class MembershipResult:
    member: bool
    normal_form: Polynomial
    heuristic: bool
    representation: Optional[StandardRepresentation] = None

    def to_model(self, order: PathOrder) -> MembershipModel:
        return MembershipModel(
            member=self.member,
            heuristic=self.heuristic,
            normal_form=self.normal_form.format(order),
            representation=None if self.representation is None else self.representation.to_model(),
        )


# --- overlaps and S-polynomials ------------------------------------------------

def overlaps(f: Polynomial, g: Polynomial, order: PathOrder, kind: Side = Side.TWOSIDED,
             proper: bool = True, i: int = 0, j: int = 0) -> List[Overlap]:
    """
    All (f, g) overlaps of the given kind, by increasing length of p.

    Two-sided overlaps share a suffix of LM(f) with a prefix of LM(g); with
    ``proper=False`` the plain concatenation LM(f)*LM(g) (p = LM(g)) is added
    last when it is composable. One-sided overlaps are suffix (left) or
    prefix (right) containments of one leading monomial in the other; the
    trivial witness of an element with itself is skipped.
    """
    if f.is_zero() or g.is_zero():
        raise UsageError("overlaps need nonzero polynomials")
    a, b = f.lm(order), g.lm(order)
    found: List[Overlap] = []

    if kind is Side.TWOSIDED:
        for k in range(min(a.length, b.length) - 1, 0, -1):
            if a.arrows[a.length - k:] == b.arrows[:k]:
                found.append(Overlap(i, j, b.slice(k, b.length), a.slice(0, a.length - k), kind))
        if not proper and not a.is_trivial and not b.is_trivial and a.target == b.source:
            found.append(Overlap(i, j, b, a, kind))
        return found

    quiver = f.quiver
    if kind is Side.LEFT:
        w = left_divisor_witness(a, b)
        if w is not None:
            found.append(Overlap(i, j, w, quiver.trivial(b.source), kind))
        w = left_divisor_witness(b, a)
        if w is not None:
            found.append(Overlap(i, j, quiver.trivial(a.source), w, kind))
    else:
        z = right_divisor_witness(a, b)
        if z is not None:
            found.append(Overlap(i, j, z, quiver.trivial(b.target), kind))
        z = right_divisor_witness(b, a)
        if z is not None:
            found.append(Overlap(i, j, quiver.trivial(a.target), z, kind))

    unique: List[Overlap] = []
    for ov in found:
        if ov in unique:
            continue
        if f == g and ov.p == ov.q:
            continue
        unique.append(ov)
    return sorted(unique, key=lambda ov: ov.p.length)


def _check_witness(left: Optional[Path], right: Optional[Path], relation: str) -> None:
    if left is None or right is None or left != right:
        raise UsageError(f"invalid overlap witness: {relation} does not hold")


def s_polynomial(f: Polynomial, g: Polynomial, ov: Overlap, order: PathOrder) -> Polynomial:
    """S(f, g, p, q) = f*p / LC(f) - q*g / LC(g); one-sided overlaps are dispatched by kind."""
    if ov.kind is Side.LEFT:
        return s_polynomial_left(f, g, ov, order)
    if ov.kind is Side.RIGHT:
        return s_polynomial_right(f, g, ov, order)
    if ov.p.is_trivial or ov.q.is_trivial:
        raise UsageError("two-sided overlap witnesses need positive length")
    a, b = f.lm(order), g.lm(order)
    _check_witness(compose(a, ov.p), compose(ov.q, b), "LM(f)*p = q*LM(g)")
    return f.sandwich(right=ov.p, factor=1 / f.lc(order)).add(
        g.sandwich(left=ov.q, factor=1 / g.lc(order)), Fraction(-1))


def s_polynomial_left(f: Polynomial, g: Polynomial, ov: Overlap, order: PathOrder) -> Polynomial:
    """S_L(f, g) = p*f / LC(f) - q*g / LC(g)."""
    a, b = f.lm(order), g.lm(order)
    _check_witness(compose(ov.p, a), compose(ov.q, b), "p*LM(f) = q*LM(g)")
    return f.sandwich(left=ov.p, factor=1 / f.lc(order)).add(
        g.sandwich(left=ov.q, factor=1 / g.lc(order)), Fraction(-1))


def s_polynomial_right(f: Polynomial, g: Polynomial, ov: Overlap, order: PathOrder) -> Polynomial:
    """S_R(f, g) = f*p / LC(f) - g*q / LC(g)."""
    a, b = f.lm(order), g.lm(order)
    _check_witness(compose(a, ov.p), compose(b, ov.q), "LM(f)*p = LM(g)*q")
    return f.sandwich(right=ov.p, factor=1 / f.lc(order)).add(
        g.sandwich(right=ov.q, factor=1 / g.lc(order)), Fraction(-1))


def all_overlaps(elements: Sequence[Polynomial], order: PathOrder, side: Side,
                 proper: bool = False) -> List[Overlap]:
    """Schedule over every ordered pair (i, j), self pairs included: by i, then j, then length of p."""
    schedule: List[Overlap] = []
    for i, f in enumerate(elements):
        for j, g in enumerate(elements):
            schedule.extend(overlaps(f, g, order, side, proper=proper, i=i, j=j))
    return schedule


# --- completion ----------------------------------------------------------------

def side_components(f: Polynomial, side: Side) -> List[Polynomial]:
    """
    Split f into the pieces its ideal is generated by: two-sided by
    (source, target), left by source, right by target.
    """
    groups = {}
    for u, v, part in f.uniform_components():
        key = (u, v) if side is Side.TWOSIDED else (u if side is Side.LEFT else v)
        groups[key] = part if key not in groups else groups[key].add(part)
    return list(groups.values())


def is_side_uniform(f: Polynomial, side: Side) -> bool:
    return len(side_components(f, side)) == 1


def buchberger(generators: Union[GeneratorSet, Sequence[Polynomial]], order: PathOrder,
               limits: Optional[CompletionLimits] = None,
               side: Optional[Side] = None) -> GBResult:
    """
    Complete a generating set to a (reduced, monic) Groebner basis.

    Each iteration reduces the S-polynomial of every scheduled overlap by the
    current basis, adds the nonzero results and interreduces. Completion may
    not terminate; the iteration cap and the path-length cap on new elements
    both stop with CapReached and the partial basis.

    Args:
        generators: GeneratorSet, or plain polynomials together with ``side``
        order: an admissible path order
        limits: caps and switches (defaults from Settings)

    Returns:
        GBResult with status, basis, trace and pending-work count
    """
    if not isinstance(generators, GeneratorSet):
        generators = GeneratorSet(tuple(generators), side or Side.TWOSIDED)
    side = generators.side
    limits = limits or CompletionLimits()
    order.require_admissible(side, limits.unsafe)
    proper = limits.proper_overlaps
    steps = limits.max_division_steps

    basis: List[Polynomial] = []
    for f in generators:
        for part in side_components(f, side):
            monic = part.monic(order)
            if monic not in basis:
                basis.append(monic)
    if limits.initial_reduce:
        basis = set_reduce(basis, order, side, unsafe=limits.unsafe, max_steps=steps)
    logger.info(f"Starting {side.value} completion of {len(basis)} elements under {order.name}")

    trace: List[TraceEntry] = []
    iteration = 0
    while True:
        if iteration >= limits.max_iterations:
            pending = len(all_overlaps(basis, order, side, proper))
            logger.warning(f"Iteration cap {limits.max_iterations} reached with {len(basis)} elements, {pending} overlaps pending")
            return GBResult(basis, GBStatus.CAP_REACHED, iteration, pending, trace, order, side)
        iteration += 1

        additions: List[Polynomial] = []
        deferred = 0
        for ov in all_overlaps(basis, order, side, proper):
            s = s_polynomial(basis[ov.i], basis[ov.j], ov, order)
            if s.is_zero():
                continue
            r = reduce_total(s, basis, order, side, unsafe=limits.unsafe, max_steps=steps)
            if r.is_zero():
                continue
            for part in side_components(r, side):
                monic = part.monic(order)
                if monic.lm(order).length > limits.max_path_length:
                    deferred += 1
                    continue
                if monic in additions:
                    continue
                additions.append(monic)
                trace.append(TraceEntry(iteration, ov, monic))
                logger.debug(f"Iteration {iteration}: overlap ({ov.i}, {ov.j}, {ov.p}, {ov.q}) adds {monic.format(order)}")

        if not additions and not deferred:
            logger.info(f"✅ Completed after {iteration} iterations with {len(basis)} elements")
            return GBResult(basis, GBStatus.COMPLETED, iteration, 0, trace, order, side)
        if additions:
            if limits.initial_reduce:
                basis = set_reduce(basis + additions, order, side, unsafe=limits.unsafe, max_steps=steps)
            else:
                basis = basis + additions
        logger.info(f"Iteration {iteration}: {len(additions)} added, basis now {len(basis)} elements")
        if deferred:
            logger.warning(f"Path length cap {limits.max_path_length} deferred {deferred} S-polynomials")
            return GBResult(basis, GBStatus.CAP_REACHED, iteration, deferred, trace, order, side)


# --- certification and membership ---------------------------------------------

def _inclusions(elements: Sequence[Polynomial], order: PathOrder) -> Iterable[InclusionAmbiguity]:
    leads = [f.lm(order) for f in elements]
    for j, outer in enumerate(leads):
        for i, inner in enumerate(leads):
            if i == j:
                continue
            for left, right in factor_occurrences(inner, outer):
                yield InclusionAmbiguity(i, j, left, right)


def is_groebner(elements: Iterable[Polynomial], order: PathOrder, side: Side = Side.TWOSIDED,
                proper: bool = False) -> GroebnerCertificate:
    """
    Decide whether the elements form a Groebner basis by reducing every
    S-polynomial (self overlaps included) by the whole set.

    For two-sided sets whose leading monomials divide one another the
    inclusion ambiguities are checked as well.
    """
    elements = list(elements)
    if not elements or any(f.is_zero() for f in elements):
        raise UsageError("is_groebner needs a nonempty set of nonzero elements")
    order.require_admissible(side)
    uniform = all(is_side_uniform(f, side) for f in elements)
    leads = [f.lm(order) for f in elements]
    pairwise = not any(
        i != j and is_reducible(b, [a], side)
        for i, a in enumerate(leads) for j, b in enumerate(leads)
    )
    flags = dict(uniform=uniform, pairwise_nondivisible=pairwise, order=order)
    if not uniform:
        return GroebnerCertificate(False, "elements are not uniform", **flags)

    for ov in all_overlaps(elements, order, side, proper):
        s = s_polynomial(elements[ov.i], elements[ov.j], ov, order)
        if s.is_zero():
            continue
        r = reduce_total(s, elements, order, side)
        if not r.is_zero():
            logger.debug(f"Overlap ({ov.i}, {ov.j}, {ov.p}, {ov.q}) leaves {r.format(order)}")
            return GroebnerCertificate(False, "S-polynomial does not reduce to zero", failing=ov,
                                       s_polynomial=s, remainder=r, **flags)

    if side is Side.TWOSIDED and not pairwise:
        for amb in _inclusions(elements, order):
            f, g = elements[amb.i], elements[amb.j]
            s = f.sandwich(amb.left, amb.right, 1 / f.lc(order)).add(g.monic(order), Fraction(-1))
            r = reduce_total(s, elements, order, side)
            if not r.is_zero():
                return GroebnerCertificate(False, "inclusion ambiguity does not resolve", failing=amb,
                                           s_polynomial=s, remainder=r, **flags)
    return GroebnerCertificate(True, "every S-polynomial reduces to zero", **flags)


def ideal_member(f: Polynomial, basis: Union[GBResult, Sequence[Polynomial]], order: PathOrder,
                 side: Side = Side.TWOSIDED) -> MembershipResult:
    """
    Membership by division: f lies in the ideal iff its remainder is zero.

    The verdict is flagged heuristic unless the basis is a completed result
    or passes is_groebner.
    """
    if isinstance(basis, GBResult):
        elements = list(basis.basis)
        certified = basis.completed and basis.side is side
    else:
        elements = list(basis)
        certified = is_groebner(elements, order, side).ok
    if f.is_zero():
        return MembershipResult(True, f, not certified)
    representation = divide(f, elements, order, side)
    member = representation.remainder.is_zero()
    if not certified:
        logger.warning("Membership answered against an uncertified basis")
    return MembershipResult(member, representation.remainder, not certified,
                            representation if member else None)
