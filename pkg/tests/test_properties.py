"""Randomized checks over seeded acyclic quivers under the length orders."""

from fractions import Fraction

import pytest

from src.core.algebra import Polynomial, polynomial_sum, to_scalar
from src.core.order import OrderKind, PathOrder, Side
from src.core.quiver_core import (
    Quiver, compose, factor_occurrences, left_divisor_witness, right_divisor_witness,
)
from src.core.sampling import (
    make_rng, random_acyclic_quiver, random_coefficient, random_generators, random_path,
    random_path_triples, random_polynomial, random_uniform_polynomial,
)
from src.groebner.groebner import (
    CompletionLimits, GeneratorSet, buchberger, ideal_member, is_groebner, side_components,
)
from src.groebner.oracle import oracle_agrees
from src.groebner.rewrite import divide, is_reducible, reduce_total, set_reduce

ORDERS = (OrderKind.LEN_LLEX, OrderKind.LEN_RLEX)
SIDES = (Side.LEFT, Side.RIGHT, Side.TWOSIDED)


def _setting(rng):
    quiver = random_acyclic_quiver(rng)
    paths = list(quiver.enumerate_paths(3))
    order = PathOrder(ORDERS[int(rng.integers(len(ORDERS)))], quiver)
    return quiver, paths, order


def _times(x, y):
    """Path product with None standing for zero."""
    if x is None or y is None:
        return None
    return compose(x, y)


def _random_combination(rng, generators, paths, side):
    """Sum of several c*u*g*w over distinct generators, multipliers restricted by the side."""
    quiver = generators[0].quiver
    total = Polynomial.zero(quiver)
    for _ in range(int(rng.integers(2, 6))):
        g = generators[int(rng.integers(len(generators)))]
        u = None if side is Side.RIGHT else random_path(rng, paths)
        w = None if side is Side.LEFT else random_path(rng, paths)
        total = total + g.sandwich(u, w, random_coefficient(rng))
    return total


# --- paths -----------------------------------------------------------------------

@pytest.mark.parametrize('seed', range(4))
def test_composition_is_associative_with_zero_absorbing(seed):
    rng = make_rng(200 + seed)
    for _ in range(5):
        _, paths, _ = _setting(rng)
        for a, b, c in random_path_triples(rng, paths, 50):
            assert _times(_times(a, b), c) == _times(a, _times(b, c))
            if _times(a, b) is None:
                assert _times(_times(a, b), c) is None


@pytest.mark.parametrize('seed', range(4))
def test_divisor_witnesses_are_sound(seed):
    rng = make_rng(300 + seed)
    for _ in range(5):
        _, paths, _ = _setting(rng)
        for a, b, c in random_path_triples(rng, paths, 50):
            ab = compose(a, b)
            if ab is not None:
                assert left_divisor_witness(b, ab) == a
                assert right_divisor_witness(a, ab) == b
            w = left_divisor_witness(a, c)
            if w is not None:
                assert compose(w, a) == c
            z = right_divisor_witness(a, c)
            if z is not None:
                assert compose(a, z) == c


@pytest.mark.parametrize('seed', range(4))
def test_factor_occurrences_match_every_split_point(seed):
    rng = make_rng(400 + seed)
    for _ in range(5):
        _, paths, _ = _setting(rng)
        for x, y, _ in random_path_triples(rng, paths, 50):
            if rng.integers(2):
                begin = int(rng.integers(y.length + 1))
                x = y.slice(begin, int(rng.integers(begin, y.length + 1)))
            expected = [
                (y.slice(0, i), y.slice(i + x.length, y.length))
                for i in range(y.length - x.length + 1)
                if y.slice(i, i + x.length) == x
            ]
            assert factor_occurrences(x, y) == expected
            for w, z in expected:
                assert compose(compose(w, x), z) == y


# --- polynomials -------------------------------------------------------------------

@pytest.mark.parametrize('seed', range(4))
def test_ring_axioms(seed):
    rng = make_rng(500 + seed)
    for _ in range(5):
        quiver, paths, _ = _setting(rng)
        one = Polynomial.identity(quiver)
        for a, b, c in random_path_triples(rng, paths, 50):
            f = random_polynomial(rng, paths) + Polynomial.monomial(a, random_coefficient(rng))
            g = random_polynomial(rng, paths) + Polynomial.monomial(b, random_coefficient(rng))
            h = random_polynomial(rng, paths) + Polynomial.monomial(c, random_coefficient(rng))
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert (f + g) * h == f * h + g * h
            assert one * f == f == f * one
            assert f - f == Polynomial.zero(quiver)


@pytest.mark.parametrize('seed', range(4))
def test_leading_monomial_is_multiplicative(seed):
    rng = make_rng(600 + seed)
    for _ in range(5):
        _, paths, order = _setting(rng)
        for _ in range(50):
            f = random_uniform_polynomial(rng, paths)
            [(u, v, _)] = f.uniform_components()
            w = random_path(rng, [p for p in paths if p.target == u])
            z = random_path(rng, [p for p in paths if p.source == v])
            product = f.sandwich(w, z)
            assert product.lm(order) == compose(compose(w, f.lm(order)), z)
            assert product.lc(order) == f.lc(order)


@pytest.mark.parametrize('seed', range(4))
def test_scalars_are_exact(seed):
    rng = make_rng(700 + seed)
    _, paths, _ = _setting(rng)
    for _ in range(50):
        a = int(rng.integers(1, 10_000)) * (1 if rng.integers(2) else -1)
        b = int(rng.integers(1, 10_000))
        sign = 1 if a > 0 else -1
        q = to_scalar(f"{a}/{b}")
        assert q * to_scalar(f"{sign * b}/{abs(a)}") == 1
        f = random_polynomial(rng, paths, max_terms=4)
        assert f.scale(q).scale(Fraction(b, a)) == f
        assert f.scale(q).monic(PathOrder(OrderKind.LEN_LLEX, f.quiver)) == f.monic(
            PathOrder(OrderKind.LEN_LLEX, f.quiver))


@pytest.mark.parametrize('seed', range(4))
def test_uniform_components_reassemble(seed):
    rng = make_rng(800 + seed)
    for _ in range(5):
        quiver, paths, _ = _setting(rng)
        for _ in range(50):
            f = random_polynomial(rng, paths, max_terms=6)
            parts = f.uniform_components()
            assert polynomial_sum(quiver, [part for _, _, part in parts]) == f
            assert len({(u, v) for u, v, _ in parts}) == len(parts)
            for u, v, part in parts:
                assert part.is_uniform()
                assert all((p.source, p.target) == (u, v) for p, _ in part)


# --- division and completion -----------------------------------------------------

@pytest.mark.parametrize('seed', range(4))
def test_division_gives_standard_representations(seed):
    rng = make_rng(seed)
    cases = 0
    while cases < 60:
        quiver, paths, order = _setting(rng)
        side = SIDES[cases % 3]
        divisors = [random_uniform_polynomial(rng, paths) for _ in range(int(rng.integers(1, 4)))]
        g = random_polynomial(rng, paths, max_terms=5)
        if g.is_zero():
            continue
        rep = divide(g, divisors, order, side)
        assert rep.check_conditions() == []
        assert rep.reconstruct() == g
        leads = [f.lm(order) for f in divisors]
        for path, _ in rep.remainder:
            assert not is_reducible(path, leads, side)
        for earlier, later in zip(rep.leading_trace, rep.leading_trace[1:]):
            assert order.key(later) < order.key(earlier)
        cases += 1


@pytest.mark.parametrize('seed', range(4))
def test_reduction_is_idempotent(seed):
    rng = make_rng(100 + seed)
    for _ in range(50):
        quiver, paths, order = _setting(rng)
        side = SIDES[int(rng.integers(3))]
        divisors = [random_uniform_polynomial(rng, paths) for _ in range(int(rng.integers(1, 4)))]
        g = random_polynomial(rng, paths, max_terms=5)
        once = reduce_total(g, divisors, order, side)
        assert reduce_total(once, divisors, order, side) == once


@pytest.mark.parametrize('seed', range(20))
def test_completion_of_random_ideals(seed):
    rng = make_rng(1000 + seed)
    quiver, paths, order = _setting(rng)
    side = SIDES[seed % 3]
    generators = random_generators(rng, quiver, count=int(rng.integers(2, 4)))
    limits = CompletionLimits(max_iterations=50)
    result = buchberger(GeneratorSet(tuple(generators), side), order, limits)
    assert result.completed
    assert is_groebner(result.basis, order, side).ok
    for g in generators:
        assert reduce_total(g, result.basis, order, side).is_zero()
    for _ in range(50):
        combination = _random_combination(rng, generators, paths, side)
        assert reduce_total(combination, result.basis, order, side).is_zero()

    shuffled = [generators[int(i)] for i in rng.permutation(len(generators))]
    again = buchberger(GeneratorSet(tuple(shuffled), side), order, limits)
    assert sorted(again.formatted_basis()) == sorted(result.formatted_basis())


def _additions_are_irreducible(generators, order, side, cap):
    """Elements added in iteration k+1 have leads irreducible by the basis after iteration k."""
    result = buchberger(GeneratorSet(tuple(generators), side), order, CompletionLimits(max_iterations=cap))
    checked = 0
    for k in range(result.iterations):
        added = [entry.added for entry in result.trace if entry.iteration == k + 1]
        if not added:
            continue
        if k == 0:
            parts = []
            for f in generators:
                for part in side_components(f, side):
                    if part.monic(order) not in parts:
                        parts.append(part.monic(order))
            basis = set_reduce(parts, order, side)
        else:
            basis = buchberger(GeneratorSet(tuple(generators), side), order,
                               CompletionLimits(max_iterations=k)).basis
        leads = [g.lm(order) for g in basis]
        for f in added:
            assert not is_reducible(f.lm(order), leads, side)
            checked += 1
    return checked


@pytest.mark.parametrize('seed', range(4))
def test_completion_trace_is_monotone(seed):
    rng = make_rng(9000 + seed)
    for index in range(50):
        quiver, _, order = _setting(rng)
        side = SIDES[index % 3]
        generators = random_generators(rng, quiver, count=int(rng.integers(2, 4)))
        _additions_are_irreducible(generators, order, side, 50)


def test_infinite_completion_trace_is_monotone():
    quiver = Quiver(['v'], [('y', 0, 0), ('x', 0, 0)])
    f = Polynomial(quiver, {quiver.path(['x', 'x']): 1, quiver.path(['x', 'y']): -1})
    order = PathOrder(OrderKind.LEN_LLEX, quiver)
    assert _additions_are_irreducible([f], order, Side.TWOSIDED, 6) >= 6


@pytest.mark.parametrize('seed', range(5))
def test_membership_agrees_with_the_oracle(seed):
    rng = make_rng(5000 + seed)
    queries = 0
    while queries < 24:
        quiver, paths, order = _setting(rng)
        generators = random_generators(rng, quiver, count=2, homogeneous=True)
        result = buchberger(generators, order, CompletionLimits(max_iterations=50))
        assert result.completed
        for index in range(4):
            if index % 2:
                f = _random_combination(rng, generators, paths, Side.TWOSIDED)
            else:
                f = random_polynomial(rng, paths, max_terms=3)
            if f.is_zero():
                continue
            verdict = ideal_member(f, result, order).member
            assert oracle_agrees(f, generators, 4, verdict) is True
            queries += 1


def test_compositions_stay_within_the_quiver():
    rng = make_rng(7)
    quiver = random_acyclic_quiver(rng)
    paths = list(quiver.enumerate_paths(3))
    for x in paths:
        for y in paths:
            xy = compose(x, y)
            if xy is not None:
                assert xy.length == x.length + y.length
                assert (xy.source, xy.target) == (x.source, y.target)
