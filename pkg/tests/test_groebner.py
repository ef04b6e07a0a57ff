import pytest
from pydantic import ValidationError

from conftest import lenllex, poly
from src.core.order import OrderKind, PathOrder, Side
from src.errors import NonAdmissibleOrderError, UsageError
from src.groebner.groebner import (
    CompletionLimits, GBStatus, GeneratorSet, Overlap, buchberger, ideal_member,
    is_groebner, overlaps, s_polynomial, s_polynomial_left, s_polynomial_right,
)
from src.groebner.oracle import membership_oracle
from src.groebner import rewrite
from src.groebner.rewrite import reduce_total


def _pairs(found):
    return [(str(ov.p), str(ov.q)) for ov in found]


def _square_ideal(quiver):
    return [poly(quiver, "a*b - g*d"), poly(quiver, "b*e"), poly(quiver, "e^3")]


# --- overlaps and S-polynomials ------------------------------------------------

def test_overlaps_of_two_loops(loops_x_first):
    order = lenllex(loops_x_first)
    f = poly(loops_x_first, "5*y*y*x*y*x - 2*x*x")
    g = poly(loops_x_first, "x*y*x*y - 7*y")
    assert _pairs(overlaps(f, g, order)) == [("y", "y*y"), ("y*x*y", "y*y*x*y")]
    assert _pairs(overlaps(g, g, order)) == [("x*y", "x*y")]


def test_spolynomials_of_two_loops(loops_x_first):
    order = lenllex(loops_x_first)
    f = poly(loops_x_first, "5*y*y*x*y*x - 2*x*x")
    g = poly(loops_x_first, "x*y*x*y - 7*y")
    found = [s_polynomial(f, g, ov, order).format(order) for ov in overlaps(f, g, order)]
    assert found == ["7*y*y*y - 2/5*x*x*y", "7*y*y*x*y*y - 2/5*x*x*y*x*y"]
    (self_overlap,) = overlaps(g, g, order)
    assert s_polynomial(g, g, self_overlap, order).format(order) == "-7*y*x*y + 7*x*y*y"


def test_square_overlaps(square_b):
    order = lenllex(square_b)
    f, g, h = _square_ideal(square_b)
    assert _pairs(overlaps(g, h, order)) == [("e*e", "b")]
    assert s_polynomial(g, h, overlaps(g, h, order)[0], order).is_zero()
    (ov,) = overlaps(f, g, order)
    assert _pairs([ov]) == [("e", "a")]
    assert s_polynomial(f, g, ov, order).format(order) == "-g*d*e"


def test_no_overlap_between_unrelated_leads(square_a):
    order = lenllex(square_a)
    f, _, h = _square_ideal(square_a)
    assert str(f.lm(order)) == "g*d"
    assert overlaps(f, h, order) == []
    assert _pairs(overlaps(f, h, order, proper=False)) == [("e*e*e", "g*d")]


def test_invalid_witness_is_refused(loops_x_first):
    order = lenllex(loops_x_first)
    g = poly(loops_x_first, "x*y*x*y - 7*y")
    bad = Overlap(0, 0, loops_x_first.parse_path('y'), loops_x_first.parse_path('x'))
    with pytest.raises(UsageError):
        s_polynomial(g, g, bad, order)


def test_right_spolynomial(right_quiver):
    order = PathOrder(OrderKind.LEN_RLEX, right_quiver)
    f1, f2 = poly(right_quiver, "z*t*x^3"), poly(right_quiver, "z*t + y")
    (ov,) = overlaps(f1, f2, order, Side.RIGHT)
    assert _pairs([ov]) == [("[v3]", "x*x*x")]
    assert s_polynomial_right(f1, f2, ov, order).format(order) == "-y*x*x*x"
    assert overlaps(f1, f1, order, Side.RIGHT) == []


def test_left_spolynomials(three_loops):
    order = lenllex(three_loops)
    f = poly(three_loops, "x*y - z")
    v = three_loops.trivial('v')
    assert s_polynomial_left(f, f, Overlap(0, 0, v, v, Side.LEFT), order).is_zero()
    g = poly(three_loops, "y")
    (ov,) = overlaps(f, g, order, Side.LEFT)
    assert _pairs([ov]) == [("[v]", "x")]
    assert s_polynomial_left(f, g, ov, order).format(order) == "-z"


# --- completion -------------------------------------------------------------------

def test_square_already_a_basis(square_a):
    order = lenllex(square_a)
    result = buchberger(GeneratorSet(tuple(_square_ideal(square_a))), order)
    assert result.status is GBStatus.COMPLETED
    assert result.iterations == 1
    assert result.formatted_basis() == ["b*e", "g*d - a*b", "e*e*e"]
    assert result.trace == []


def test_square_completion_adds_one_element(square_b):
    order = lenllex(square_b)
    result = buchberger(_square_ideal(square_b), order)
    assert result.completed
    assert result.iterations == 2
    assert result.formatted_basis() == ["b*e", "a*b - g*d", "e*e*e", "g*d*e"]
    (entry,) = result.trace
    assert (entry.iteration, entry.overlap.i, entry.overlap.j) == (1, 1, 0)
    assert entry.added.format(order) == "g*d*e"
    frame = result.trace_frame()
    assert list(frame.columns) == ['iteration', 'i', 'j', 'p', 'q', 'added']
    assert frame.iloc[0]['added'] == "g*d*e"
    assert is_groebner(result.basis, order).ok


def test_right_completion_without_interreduction(right_quiver):
    order = PathOrder(OrderKind.LEN_RLEX, right_quiver)
    gens = GeneratorSet((poly(right_quiver, "z*t*x^3"), poly(right_quiver, "z*t + y")), Side.RIGHT)
    result = buchberger(gens, order, CompletionLimits(initial_reduce=False))
    assert result.completed
    assert result.formatted_basis() == ["z*t*x*x*x", "z*t + y", "y*x*x*x"]
    cert = is_groebner(result.basis, order, Side.RIGHT)
    assert cert.ok
    assert not cert.pairwise_nondivisible


def test_right_completion_with_interreduction(right_quiver):
    order = PathOrder(OrderKind.LEN_RLEX, right_quiver)
    gens = GeneratorSet((poly(right_quiver, "z*t*x^3"), poly(right_quiver, "z*t + y")), Side.RIGHT)
    result = buchberger(gens, order)
    assert result.completed
    assert result.formatted_basis() == ["z*t + y", "y*x*x*x"]


def test_completion_hits_the_iteration_cap(loops_y_first):
    order = lenllex(loops_y_first)
    f = poly(loops_y_first, "x*x - x*y")
    result = buchberger([f], order, CompletionLimits(max_iterations=5))
    assert result.status is GBStatus.CAP_REACHED
    assert result.iterations == 5
    assert result.pending > 0
    basis = result.formatted_basis()
    for expected in ("x*x - x*y", "x*y*x - x*y*y", "x*y*y*x - x*y*y*y"):
        assert expected in basis
    for element in result.basis:
        if element.max_length() <= 6:
            assert membership_oracle(element, [f], 6)


def test_completion_hits_the_path_length_cap(loops_y_first):
    order = lenllex(loops_y_first)
    f = poly(loops_y_first, "x*x - x*y")
    result = buchberger([f], order, CompletionLimits(max_path_length=4))
    assert result.status is GBStatus.CAP_REACHED
    assert result.iterations == 2
    assert result.pending >= 1
    assert "x*y*y*x - x*y*y*y" in result.formatted_basis()
    assert all(g.lm(order).length <= 4 for g in result.basis)


def test_completion_refuses_llex(loop_chain):
    with pytest.raises(NonAdmissibleOrderError):
        buchberger([poly(loop_chain, "a*b")], PathOrder(OrderKind.LLEX, loop_chain))


def test_non_uniform_generators_are_split(square_a):
    order = lenllex(square_a)
    result = buchberger([poly(square_a, "a*b + e")], order)
    assert result.completed
    assert sorted(result.formatted_basis()) == ["a*b", "e"]


def test_limits_and_generator_sets_validate(three_loops):
    with pytest.raises(ValidationError):
        CompletionLimits(max_iterations=0)
    with pytest.raises(UsageError):
        GeneratorSet(())
    with pytest.raises(UsageError):
        GeneratorSet((poly(three_loops, "0"),))


# --- certification and membership ---------------------------------------------

def test_raw_square_is_not_a_basis(square_b):
    order = lenllex(square_b)
    cert = is_groebner(_square_ideal(square_b), order)
    assert not cert.ok
    assert (cert.failing.i, cert.failing.j) == (0, 1)
    assert (str(cert.failing.p), str(cert.failing.q)) == ("e", "a")
    assert cert.remainder.format(order) == "-g*d*e"
    assert cert.to_model().remainder == "-g*d*e"

    completed = _square_ideal(square_b) + [poly(square_b, "g*d*e")]
    assert is_groebner(completed, order).ok


def test_monomial_singleton_is_a_basis(loops_x_first):
    cert = is_groebner([poly(loops_x_first, "x*y*x")], lenllex(loops_x_first))
    assert cert.ok
    assert cert.uniform and cert.pairwise_nondivisible


def test_inclusion_ambiguity_is_checked(three_loops):
    order = lenllex(three_loops)
    cert = is_groebner([poly(three_loops, "x*y - z"), poly(three_loops, "x*y*x - y")], order)
    assert not cert.pairwise_nondivisible
    assert not cert.ok


def test_membership_of_an_exact_combination(three_loops):
    order = lenllex(three_loops)
    f1, f2 = poly(three_loops, "x*y - x"), poly(three_loops, "x*x - x*z")
    zx, z, x = (three_loops.parse_path(t) for t in ('z*x', 'z', 'x'))
    combination = f1.sandwich(zx, x) + f2.sandwich(z, x)
    result = ideal_member(combination, [f1, f2], order)
    assert result.member
    assert result.representation.reconstruct() == combination


def test_membership_against_a_completed_basis(square_b):
    order = lenllex(square_b)
    gens = _square_ideal(square_b)
    result = buchberger(gens, order)
    yes = ideal_member(poly(square_b, "g*d*e"), result, order)
    assert yes.member and not yes.heuristic
    assert yes.representation.check_conditions() == []
    no = ideal_member(poly(square_b, "g*d"), result, order)
    assert not no.member
    assert no.normal_form.format(order) == "g*d"
    assert membership_oracle(poly(square_b, "g*d*e"), gens, 4)
    assert not membership_oracle(poly(square_b, "g*d"), gens, 4)


def test_generators_reduce_to_zero(square_b):
    order = lenllex(square_b)
    gens = _square_ideal(square_b)
    result = buchberger(gens, order)
    for g in gens:
        assert reduce_total(g, result.basis, order).is_zero()


def test_result_model(square_b):
    order = lenllex(square_b)
    model = buchberger(_square_ideal(square_b), order).to_model()
    assert model.status == "completed"
    assert model.trace[0].q == "a"
    assert model.basis[-1] == "g*d*e"


def test_completion_passes_its_division_cap(square_b, monkeypatch):
    seen = []
    original = rewrite.divide

    def recording_divide(*args, **kwargs):
        seen.append(kwargs.get('max_steps'))
        return original(*args, **kwargs)

    monkeypatch.setattr(rewrite, 'divide', recording_divide)
    result = buchberger(_square_ideal(square_b), lenllex(square_b), CompletionLimits(max_division_steps=7))
    assert result.completed
    assert seen and set(seen) == {7}
