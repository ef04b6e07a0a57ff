"""
Quiver Core
Quivers, paths, composition and the divisibility witnesses used by every
reduction routine.

Vertices and arrows are dense indices in declaration order; names only matter
at the I/O boundary. Composition of non-composable paths returns None, which
stands for the zero of the path algebra and is never stored as a Path.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union
import logging

import networkx as nx

from src.errors import QuiverError, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Arrow:
    """A named arrow between two vertex indices."""
    name: str
    source: int
    target: int


class Quiver:
    """
    Finite quiver Q = (Q0, Q1, s, t).

    Declaration order is precedence: every vertex precedes every arrow, and
    within each kind earlier-declared is smaller.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, int, int]]):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self._vertex_index: Dict[str, int] = {}
        for index, name in enumerate(self.vertices):
            if name in self._vertex_index:
                raise QuiverError(f"duplicate vertex '{name}'")
            self._vertex_index[name] = index

        self._arrow_index: Dict[str, int] = {}
        checked: List[Arrow] = []
        for name, source, target in arrows:
            if name in self._arrow_index:
                raise QuiverError(f"duplicate arrow '{name}'")
            if name in self._vertex_index:
                raise QuiverError(f"arrow '{name}' clashes with a vertex name")
            for end in (source, target):
                if not 0 <= end < len(self.vertices):
                    raise QuiverError(f"arrow '{name}' refers to unknown vertex index {end}")
            self._arrow_index[name] = len(checked)
            checked.append(Arrow(name, source, target))
        self.arrows: Tuple[Arrow, ...] = tuple(checked)

        outgoing: Dict[int, List[int]] = {v: [] for v in range(len(self.vertices))}
        for index, arrow in enumerate(self.arrows):
            outgoing[arrow.source].append(index)
        self._outgoing = {v: tuple(a) for v, a in outgoing.items()}

    @classmethod
    def from_names(cls, vertices: Sequence[str],
                   arrows: Sequence[Tuple[str, str, str]]) -> "Quiver":
        """Build a quiver from (arrow, source name, target name) triples."""
        index = {name: i for i, name in enumerate(vertices)}
        resolved = []
        for name, source, target in arrows:
            for end in (source, target):
                if end not in index:
                    raise QuiverError(f"arrow '{name}' refers to unknown vertex '{end}'")
            resolved.append((name, index[source], index[target]))
        return cls(vertices, resolved)

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def has_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_index

    def vertex_index(self, name: str) -> int:
        try:
            return self._vertex_index[name]
        except KeyError:
            raise QuiverError(f"unknown vertex '{name}'") from None

    def arrow_index(self, name: str) -> int:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise QuiverError(f"unknown arrow '{name}'") from None

    def outgoing(self, vertex: int) -> Tuple[int, ...]:
        return self._outgoing[vertex]

    def trivial(self, vertex: Union[int, str]) -> "Path":
        if isinstance(vertex, str):
            vertex = self.vertex_index(vertex)
        return Path(self, vertex)

    def trivial_paths(self) -> List["Path"]:
        return [Path(self, v) for v in range(self.num_vertices)]

    def path(self, arrows: Sequence[Union[int, str]]) -> "Path":
        """Path through the given arrows (indices or names); raises if not composable."""
        indices = tuple(self.arrow_index(a) if isinstance(a, str) else a for a in arrows)
        if not indices:
            raise UsageError("an arrow path needs at least one arrow; use trivial() for vertices")
        return Path(self, self.arrows[indices[0]].source, indices)

    def parse_path(self, text: str) -> "Path":
        """Parse 'a*b*c' or a vertex literal '[v]'."""
        text = text.strip()
        if text.startswith('[') and text.endswith(']'):
            return self.trivial(text[1:-1].strip())
        return self.path([part.strip() for part in text.split('*')])

    def path_name(self, path: "Path") -> str:
        if path.is_trivial:
            return f"[{self.vertices[path.start]}]"
        return '*'.join(self.arrows[a].name for a in path.arrows)

    def to_graph(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for arrow in self.arrows:
            graph.add_edge(arrow.source, arrow.target, key=arrow.name)
        return graph

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_graph())

    def enumerate_paths(self, max_length: int) -> Iterator["Path"]:
        """All paths of length <= max_length: by length, then arrow sequence."""
        if max_length < 0:
            return
        level = self.trivial_paths()
        yield from level
        for _ in range(max_length):
            extended = []
            for path in level:
                for arrow in self._outgoing[path.target]:
                    extended.append(Path(self, path.start, path.arrows + (arrow,)))
            if not extended:
                return
            yield from extended
            level = extended

    def all_paths(self) -> List["Path"]:
        """Every path of an acyclic quiver; refused when the path set is infinite."""
        if not self.is_acyclic():
            raise QuiverError("quiver has an oriented cycle: its path set is infinite")
        return list(self.enumerate_paths(self.num_vertices))

    def count_paths(self, max_length: int) -> int:
        ending_at = [1] * self.num_vertices
        total = sum(ending_at)
        for _ in range(max_length):
            step = [0] * self.num_vertices
            for arrow in self.arrows:
                step[arrow.target] += ending_at[arrow.source]
            ending_at = step
            total += sum(step)
            if not any(step):
                break
        return total


@dataclass(frozen=True)
class Path:
    """
    A trivial path (no arrows, sitting at vertex ``start``) or a composable
    sequence of arrow indices starting at ``start``.
    """
    quiver: Quiver = field(repr=False)
    start: int
    arrows: Tuple[int, ...] = ()

    def __post_init__(self):
        table = self.quiver.arrows
        if self.arrows:
            if table[self.arrows[0]].source != self.start:
                raise UsageError("path start does not match its first arrow")
            for left, right in zip(self.arrows, self.arrows[1:]):
                if table[left].target != table[right].source:
                    raise UsageError(
                        f"path {table[left].name}*{table[right].name} not composable: "
                        f"target({table[left].name})={self.quiver.vertices[table[left].target]}, "
                        f"source({table[right].name})={self.quiver.vertices[table[right].source]}"
                    )

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def source(self) -> int:
        return self.start

    @property
    def target(self) -> int:
        if not self.arrows:
            return self.start
        return self.quiver.arrows[self.arrows[-1]].target

    def vertex_at(self, position: int) -> int:
        """Vertex reached after the first ``position`` arrows."""
        if position == 0:
            return self.start
        return self.quiver.arrows[self.arrows[position - 1]].target

    def slice(self, begin: int, end: int) -> "Path":
        if not 0 <= begin <= end <= self.length:
            raise UsageError(f"slice [{begin}:{end}] outside a path of length {self.length}")
        if begin == end:
            return Path(self.quiver, self.vertex_at(begin))
        return Path(self.quiver, self.vertex_at(begin), self.arrows[begin:end])

    def __str__(self) -> str:
        return self.quiver.path_name(self)


def _same_quiver(x: Path, y: Path) -> None:
    if x.quiver is not y.quiver:
        raise UsageError("paths belong to different quivers")


def compose(x: Path, y: Path) -> Optional[Path]:
    """Concatenation x*y, or None (the zero) when target(x) != source(y)."""
    _same_quiver(x, y)
    if x.target != y.source:
        return None
    if x.is_trivial:
        return y
    if y.is_trivial:
        return x
    return Path(x.quiver, x.start, x.arrows + y.arrows)


def left_divisor_witness(x: Path, y: Path) -> Optional[Path]:
    """The w with y = w*x when x is a suffix of y."""
    _same_quiver(x, y)
    if x.length > y.length:
        return None
    if x.is_trivial:
        return y if y.target == x.start else None
    if y.arrows[y.length - x.length:] != x.arrows:
        return None
    return y.slice(0, y.length - x.length)


def right_divisor_witness(x: Path, y: Path) -> Optional[Path]:
    """The z with y = x*z when x is a prefix of y."""
    _same_quiver(x, y)
    if x.length > y.length:
        return None
    if x.is_trivial:
        return y if y.source == x.start else None
    if y.arrows[:x.length] != x.arrows:
        return None
    return y.slice(x.length, y.length)


def factor_occurrences(x: Path, y: Path) -> List[Tuple[Path, Path]]:
    """Every factorization y = w*x*z, left-most occurrence first."""
    _same_quiver(x, y)
    found: List[Tuple[Path, Path]] = []
    if x.is_trivial:
        for position in range(y.length + 1):
            if y.vertex_at(position) == x.start:
                found.append((y.slice(0, position), y.slice(position, y.length)))
        return found
    width = x.length
    for position in range(y.length - width + 1):
        if y.arrows[position:position + width] == x.arrows:
            found.append((y.slice(0, position), y.slice(position + width, y.length)))
    return found


def leftmost_occurrence(x: Path, y: Path) -> Optional[Tuple[Path, Path]]:
    """The first (w, z) of factor_occurrences without building the rest."""
    _same_quiver(x, y)
    if x.is_trivial:
        for position in range(y.length + 1):
            if y.vertex_at(position) == x.start:
                return y.slice(0, position), y.slice(position, y.length)
        return None
    width = x.length
    for position in range(y.length - width + 1):
        if y.arrows[position:position + width] == x.arrows:
            return y.slice(0, position), y.slice(position + width, y.length)
    return None


def divides(x: Path, y: Path) -> bool:
    return leftmost_occurrence(x, y) is not None


def vertex_endpoints(path: Path) -> Tuple[int, int]:
    """The (u, v) with path = u*path*v."""
    return path.source, path.target
