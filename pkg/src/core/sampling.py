"""
Sampling
Seeded random quivers, paths and polynomials for randomized checks.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.core.algebra import Polynomial
from src.core.quiver_core import Path, Quiver

logger = logging.getLogger(__name__)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_acyclic_quiver(rng: np.random.Generator, max_vertices: int = 4,
                          max_arrows: int = 7) -> Quiver:
    """Vertices v1..vn with arrows only from lower to higher index, so every ideal completes."""
    n = int(rng.integers(2, max_vertices + 1))
    vertices = [f"v{i + 1}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    count = int(rng.integers(n - 1, max_arrows + 1))
    arrows = []
    # a spine keeps long paths available
    for i in range(n - 1):
        arrows.append((f"a{len(arrows) + 1}", i, i + 1))
    while len(arrows) < count:
        i, j = pairs[int(rng.integers(len(pairs)))]
        arrows.append((f"a{len(arrows) + 1}", i, j))
    return Quiver(vertices, arrows)


def random_path(rng: np.random.Generator, paths: Sequence[Path]) -> Path:
    return paths[int(rng.integers(len(paths)))]


def random_coefficient(rng: np.random.Generator, bound: int = 5) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = int(rng.integers(-bound, bound + 1))
    return Fraction(numerator, int(rng.integers(1, 3)))


def random_polynomial(rng: np.random.Generator, paths: Sequence[Path], max_terms: int = 3) -> Polynomial:
    """Sum of up to ``max_terms`` random terms over the given paths (may be uniform or not)."""
    quiver = paths[0].quiver
    terms: Dict[Path, Fraction] = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        terms[random_path(rng, paths)] = random_coefficient(rng)
    return Polynomial(quiver, terms)


def _groups(paths: Sequence[Path], homogeneous: bool) -> List[List[Path]]:
    buckets: Dict[Tuple, List[Path]] = {}
    for path in paths:
        key = (path.source, path.target, path.length if homogeneous else None)
        buckets.setdefault(key, []).append(path)
    return [bucket for bucket in buckets.values()]


def random_uniform_polynomial(rng: np.random.Generator, paths: Sequence[Path],
                              max_terms: int = 3, homogeneous: bool = False,
                              min_length: int = 1) -> Polynomial:
    """Random uniform element; with ``homogeneous`` all terms share one length."""
    candidates = [p for p in paths if p.length >= min_length]
    groups = _groups(candidates, homogeneous)
    rich = [g for g in groups if len(g) >= 2]
    group = (rich or groups)[int(rng.integers(len(rich or groups)))]
    chosen = rng.permutation(len(group))[:int(rng.integers(1, max_terms + 1))]
    quiver = group[0].quiver
    return Polynomial(quiver, {group[int(i)]: random_coefficient(rng) for i in chosen})


def random_generators(rng: np.random.Generator, quiver: Quiver, count: int = 2,
                      max_length: int = 3, homogeneous: bool = False) -> List[Polynomial]:
    paths = list(quiver.enumerate_paths(max_length))
    return [random_uniform_polynomial(rng, paths, homogeneous=homogeneous) for _ in range(count)]


def random_path_triples(rng: np.random.Generator, paths: Sequence[Path],
                        count: int) -> List[Tuple[Path, Path, Path]]:
    return [
        (random_path(rng, paths), random_path(rng, paths), random_path(rng, paths))
        for _ in range(count)
    ]
