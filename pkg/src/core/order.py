"""
Path Orders
The four lexicographic path orders, comparison, and admissibility checking.
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, List, Optional, Sequence, Tuple
import itertools
import logging

import numpy as np
import pandas as pd

from src.core.quiver_core import Path, Quiver, compose
from src.errors import NonAdmissibleOrderError, UsageError

logger = logging.getLogger(__name__)


class OrderKind(Enum):
    """Order names double as the DSL/CLI vocabulary."""
    LLEX = "llex"
    RLEX = "rlex"
    LEN_LLEX = "lenllex"
    LEN_RLEX = "lenrlex"


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Side(Enum):
    """Which ideal (and which divisibility) an operation works with."""
    LEFT = "left"
    RIGHT = "right"
    TWOSIDED = "twosided"


@dataclass(frozen=True)
class PathOrder:
    """
    A path order on one quiver. Precedence: vertices before arrows, each in
    declaration order. Under llex (rlex) a proper prefix (suffix) is smaller.
    """
    kind: OrderKind
    quiver: Quiver = field(repr=False)

    @classmethod
    def named(cls, name: str, quiver: Quiver) -> "PathOrder":
        try:
            return cls(OrderKind(name.lower()), quiver)
        except ValueError:
            choices = ', '.join(k.value for k in OrderKind)
            raise UsageError(f"unknown order '{name}' (expected one of {choices})") from None

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def is_well_ordered(self) -> bool:
        return self.kind in (OrderKind.LEN_LLEX, OrderKind.LEN_RLEX)

    def admissible_for(self, side: Side) -> bool:
        # Length-refined orders are compatible with composition on both sides.
        return self.is_well_ordered

    def require_admissible(self, side: Side, unsafe: bool = False) -> None:
        if self.admissible_for(side):
            return
        if not unsafe:
            raise NonAdmissibleOrderError(
                f"order '{self.name}' is not a well-ordering; pass unsafe=True to run under a step cap"
            )
        logger.warning(f"Running {side.value} reduction under non-well-ordered '{self.name}'")

    def key(self, path: Path) -> Tuple:
        if path.is_trivial:
            return (0, (path.start,))
        if self.kind is OrderKind.LEN_LLEX:
            return (path.length, path.arrows)
        if self.kind is OrderKind.LEN_RLEX:
            return (path.length, path.arrows[::-1])
        if self.kind is OrderKind.LLEX:
            return (1, path.arrows)
        return (1, path.arrows[::-1])

    def compare(self, x: Path, y: Path) -> Comparison:
        if x.quiver is not self.quiver or y.quiver is not self.quiver:
            raise UsageError("paths do not belong to this order's quiver")
        kx, ky = self.key(x), self.key(y)
        if kx == ky:
            return Comparison.EQUAL
        return Comparison.LESS if kx < ky else Comparison.GREATER

    def max(self, paths: Iterable[Path]) -> Path:
        return max(paths, key=self.key)

    def sorted(self, paths: Iterable[Path], descending: bool = False) -> List[Path]:
        return sorted(paths, key=self.key, reverse=descending)


def compare(order: PathOrder, x: Path, y: Path) -> Comparison:
    return order.compare(x, y)


@dataclass
class Violation:
    condition: str
    witness: Tuple[str, ...]
    detail: str = ""


@dataclass
class AdmissibilityReport:
    """Violations of the admissibility conditions found on a finite sample."""
    order: PathOrder
    sample_size: int
    checks: dict = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    descending_chain: List[Path] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.descending_chain

    def violations_of(self, condition: str) -> List[Violation]:
        return [v for v in self.violations if v.condition == condition]

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {'condition': v.condition, 'witness': ' | '.join(v.witness), 'detail': v.detail}
            for v in self.violations
        ]
        if self.descending_chain:
            rows.append({
                'condition': 'b',
                'witness': ' > '.join(str(p) for p in self.descending_chain),
                'detail': 'descending chain with growing lengths',
            })
        return pd.DataFrame(rows, columns=['condition', 'witness', 'detail'])

    def summary(self) -> dict:
        return {
            'order': self.order.name,
            'sample_size': self.sample_size,
            'checks': dict(self.checks),
            'violations': {c: len(self.violations_of(c)) for c in ('a', 'c', 'd', 'e')},
            'descending_chain': [str(p) for p in self.descending_chain],
            'ok': self.ok,
        }


def _descending_chain(order: PathOrder, sample: Sequence[Path]) -> List[Path]:
    """Longest chain whose lengths strictly grow while the order strictly descends."""
    by_length = sorted(sample, key=lambda p: (p.length, order.key(p)))
    best: List[List[Path]] = []
    for i, path in enumerate(by_length):
        chain = [path]
        for j in range(i):
            earlier = by_length[j]
            if earlier.length < path.length and order.key(earlier) > order.key(path):
                if len(best[j]) + 1 > len(chain):
                    chain = best[j] + [path]
        best.append(chain)
    return max(best, key=len, default=[])


def admissibility_report(order: PathOrder, sample: Iterable[Path],
                         chain_threshold: int = 3,
                         max_violations: int = 50) -> AdmissibilityReport:
    """
    Check totality (a), right compatibility (c), left compatibility (d) and the
    factor condition (e) on every applicable pair/triple of the sample.

    Well-ordering (b) can only be sampled: a chain of at least
    ``chain_threshold`` sample paths with strictly growing lengths on which the
    order strictly descends is reported as evidence of an infinite descent.
    """
    paths = list(dict.fromkeys(sample))
    if not paths:
        raise UsageError("admissibility report needs a nonempty sample")
    report = AdmissibilityReport(order=order, sample_size=len(paths))
    checks = {'a': 0, 'c': 0, 'd': 0, 'e': 0}

    def record(condition: str, witness: Sequence[Path], detail: str) -> None:
        if len(report.violations_of(condition)) < max_violations:
            report.violations.append(Violation(condition, tuple(str(p) for p in witness), detail))

    for x, y in itertools.permutations(paths, 2):
        checks['a'] += 1
        forward, backward = order.compare(x, y), order.compare(y, x)
        if forward is Comparison.EQUAL or forward != -backward:
            record('a', (x, y), 'distinct paths not strictly comparable')
            continue
        if forward is not Comparison.LESS:
            continue
        for z in paths:
            xz, yz = compose(x, z), compose(y, z)
            if xz is not None and yz is not None:
                checks['c'] += 1
                if order.compare(xz, yz) is not Comparison.LESS:
                    record('c', (x, y, z), 'x < y but not xz < yz')
            wx, wy = compose(z, x), compose(z, y)
            if wx is not None and wy is not None:
                checks['d'] += 1
                if order.compare(wx, wy) is not Comparison.LESS:
                    record('d', (x, y, z), 'x < y but not wx < wy')

    for x in paths:
        for cut in range(1, x.length):
            checks['e'] += 1
            head, tail = x.slice(0, cut), x.slice(cut, x.length)
            if order.compare(x, head) is Comparison.LESS or order.compare(x, tail) is Comparison.LESS:
                record('e', (x, head, tail), 'x = yz but x < y or x < z')

    chain = _descending_chain(order, paths)
    if len(chain) >= chain_threshold:
        report.descending_chain = chain
    report.checks = checks
    logger.debug(f"Admissibility of {order.name} on {len(paths)} paths: {len(report.violations)} violations")
    return report


def check_order_suite(order: PathOrder, depth: int, samples: int = 200,
                      seed: Optional[int] = 0) -> AdmissibilityReport:
    """Exhaustive report on all paths up to ``depth`` plus randomized triples."""
    paths = list(order.quiver.enumerate_paths(depth))
    report = admissibility_report(order, paths)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x, y, z = (paths[int(i)] for i in rng.integers(len(paths), size=3))
        xy, yz, xz = order.compare(x, y), order.compare(y, z), order.compare(x, z)
        if xy is Comparison.LESS and yz is Comparison.LESS and xz is not Comparison.LESS:
            report.violations.append(Violation('a', (str(x), str(y), str(z)), 'not transitive'))
        if xy is not Comparison.LESS:
            continue
        right = compose(x, z), compose(y, z)
        if None not in right and order.compare(*right) is not Comparison.LESS:
            report.violations.append(Violation('c', (str(x), str(y), str(z)), 'random triple'))
        left = compose(z, x), compose(z, y)
        if None not in left and order.compare(*left) is not Comparison.LESS:
            report.violations.append(Violation('d', (str(x), str(y), str(z)), 'random triple'))
    report.checks['random'] = samples
    logger.info(f"Order suite for {order.name}: {report.sample_size} paths, {samples} random triples")
    return report
