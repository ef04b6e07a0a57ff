"""
Membership Oracle
Brute-force ideal membership up to a path-length bound: bounded multiples of
the generators become rows of a sparse matrix over QQ, and membership is a
rank comparison with and without the candidate row.
"""

from typing import Dict, Iterable, List, Optional
import logging

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.config import get_settings
from src.core.algebra import Polynomial
from src.core.order import Side
from src.core.quiver_core import Path
from src.errors import OracleInconclusiveError, UsageError

logger = logging.getLogger(__name__)


class SpanOracle:
    """
    Row-reduced basis of span{u*g*w : g a generator, all monomials of length <= max_len}
    with side-appropriate multipliers (left: u only, right: w only).

    Containment is exact within the bound. A negative answer is certified only
    for homogeneous generators, whose ideal is graded so every element of
    bounded length is already a combination of bounded multiples.
    """

    def __init__(self, generators: Iterable[Polynomial], max_len: int,
                 side: Side = Side.TWOSIDED, path_cap: Optional[int] = None):
        self.generators = [g for g in generators if not g.is_zero()]
        if max_len < 0:
            raise UsageError("max_len must be non-negative")
        self.max_len = max_len
        self.side = side
        self.path_cap = path_cap or get_settings().oracle_path_cap
        self.homogeneous = all(g.is_homogeneous() for g in self.generators)
        self._columns: Dict[Path, int] = {}
        self._basis: Optional[DomainMatrix] = None
        self._rank = 0
        if not self.generators:
            return

        quiver = self.generators[0].quiver
        for g in self.generators:
            if g.max_length() > max_len:
                raise OracleInconclusiveError(
                    f"bound too small: generator of length {g.max_length()} exceeds max_len {max_len}"
                )
        total = quiver.count_paths(max_len)
        if total > self.path_cap:
            raise OracleInconclusiveError(f"{total} paths up to length {max_len} exceed the cap {self.path_cap}")
        paths = list(quiver.enumerate_paths(max_len))
        self._columns = {path: index for index, path in enumerate(paths)}

        rows: Dict[int, Dict[int, object]] = {}
        for g in self.generators:
            room = max_len - g.max_length()
            lefts = [p for p in paths if p.length <= room] if side is not Side.RIGHT else [None]
            for u in lefts:
                used = 0 if u is None else u.length
                rights = [p for p in paths if p.length <= room - used] if side is not Side.LEFT else [None]
                for w in rights:
                    multiple = g.sandwich(u, w)
                    if not multiple.is_zero():
                        rows[len(rows)] = self._entries(multiple)

        matrix = DomainMatrix(rows, (len(rows), len(paths)), QQ)
        self._basis, pivots = matrix.rref()
        self._rank = len(pivots)
        logger.debug(f"Span oracle: {len(rows)} multiples, rank {self._rank}, bound {max_len}")

    @property
    def rank(self) -> int:
        return self._rank

    def _entries(self, f: Polynomial) -> Dict[int, object]:
        return {self._columns[path]: QQ(c.numerator, c.denominator) for path, c in f}

    def contains(self, f: Polynomial) -> bool:
        """True when f is a combination of the bounded multiples; raises when no certified False exists."""
        if f.is_zero():
            return True
        if f.max_length() > self.max_len:
            raise OracleInconclusiveError(f"bound too small: f has length {f.max_length()} > {self.max_len}")
        if not self.generators:
            return False
        row = DomainMatrix({0: self._entries(f)}, (1, len(self._columns)), QQ)
        if self._basis.vstack(row).rank() == self._rank:
            return True
        if self.homogeneous:
            return False
        raise OracleInconclusiveError("not in the bounded span, but the generators are not homogeneous")


def membership_oracle(f: Polynomial, generators: Iterable[Polynomial], max_len: int,
                      side: Side = Side.TWOSIDED, path_cap: Optional[int] = None) -> bool:
    return SpanOracle(generators, max_len, side, path_cap).contains(f)


def oracle_agrees(f: Polynomial, generators: List[Polynomial], max_len: int, verdict: bool,
                  side: Side = Side.TWOSIDED) -> Optional[bool]:
    """Compare a membership verdict with the oracle; None when the oracle cannot decide."""
    try:
        return membership_oracle(f, generators, max_len, side) == verdict
    except OracleInconclusiveError as e:
        logger.debug(f"Oracle inconclusive: {e}")
        return None
