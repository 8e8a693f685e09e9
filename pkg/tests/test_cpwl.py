from fractions import Fraction as Q
import math
import random

import pytest
from hypothesis import given, strategies as st

from artifact.cones import cones_equal, GeneratedCone, HalfspaceCone
from artifact.cpwl import (
    CpwlFunction,
    activity,
    box_indicator,
    check_witness,
    component_max,
    decompose_subgradient,
    evaluate,
    from_support_function,
    in_cell,
    inf_norm,
    is_subgradient,
    normal_cone_domain,
    subdifferential,
    tangent_cone_domain,
)
from artifact.errors import ContractError, DomainError, NotASubgradientError
from artifact.exactla import dot

from conftest import functions, vectors


def test_evaluate(fig):
    assert evaluate(fig, (1,)) == Q(1, 2)
    assert evaluate(fig, (3,)) == math.inf
    assert evaluate(fig, (-2,)) == 2


def test_activity(fig):
    assert activity(fig, (1,)).K == {1, 2} and activity(fig, (1,)).I == set()
    assert activity(fig, (2,)).K == {2} and activity(fig, (2,)).I == {1}
    assert activity(fig, (Q(1, 2),)).K == {1}


def test_activity_off_domain(fig):
    with pytest.raises(DomainError):
        activity(fig, (3,))


def test_in_cell(fig):
    assert in_cell(fig, 1, (Q(1, 2),))
    assert not in_cell(fig, 2, (0,))
    assert not in_cell(fig, 3, (3,))


def test_subdifferential(fig):
    s = subdifferential(fig, (1,))
    assert sorted(s.hull_points) == [(Q(1, 2),), (Q(2),)] and not s.ray_gens
    s = subdifferential(fig, (2,))
    assert s.hull_points == ((2,),) and s.ray_gens == ((1,),)
    assert sorted(subdifferential(fig, (0,)).hull_points) == [(-1,), (Q(1, 2),)]


def test_domain_cones(fig):
    assert tangent_cone_domain(fig, (1,)) == HalfspaceCone(1)
    assert cones_equal(tangent_cone_domain(fig, (2,)), HalfspaceCone(1, (), [(1,)]))
    assert cones_equal(tangent_cone_domain(fig, (-2,)), HalfspaceCone(1, (), [(-1,)]))
    assert cones_equal(normal_cone_domain(fig, (1,)), GeneratedCone(1))
    assert cones_equal(normal_cone_domain(fig, (2,)), GeneratedCone(1, (), [(1,)]))
    assert cones_equal(normal_cone_domain(box_indicator(2), (1, 1)), GeneratedCone(2, (), [(1, 0), (0, 1)]))


def test_decompose_examples(fig):
    w = decompose_subgradient(fig, (1,), (1,))
    assert w.lam == ((1, Q(2, 3)), (2, Q(1, 3))) and w.J1 == {1, 2} and w.J2 == set()
    w = decompose_subgradient(fig, (1,), (2,))
    assert dict(w.lam) == {1: 0, 2: 1} and w.J1 == {2}
    w = decompose_subgradient(fig, (2,), (3,))
    assert dict(w.lam) == {2: 1} and dict(w.mu) == {1: 1} and w.J1 == {2} and w.J2 == {1}


def test_decompose_rejects(fig):
    with pytest.raises(NotASubgradientError):
        decompose_subgradient(fig, (1,), (3,))


def test_support_function():
    f = from_support_function([(1, 0), (-1, 0), (0, 1), (0, -1)])
    g = inf_norm(2)
    for x in [(Q(1, 2), -3), (0, 0), (2, 2)]:
        assert evaluate(f, x) == evaluate(g, x)
    assert evaluate(from_support_function([(0,)]), (5,)) == 0
    assert evaluate(from_support_function([(1, 0), (0, 1)]), (3, -1)) == evaluate(component_max(2), (3, -1))


def test_empty_domain_rejected():
    with pytest.raises(ContractError):
        CpwlFunction(1, [((1,), 0)], [((1,), -1), ((-1,), -1)])


def test_dimension_checked():
    with pytest.raises(ContractError):
        CpwlFunction(2, [((1,), 0)])


@given(functions(), st.integers(0, 10 ** 6))
def test_decompose_round_trip(f, seed):
    rng = random.Random(seed)
    x = tuple(Q(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(f.dim))
    if not f.in_domain(x):
        x = (Q(0),) * f.dim
    pat = activity(f, x)
    lam = [Q(rng.randint(1, 5)) for _ in pat.K]
    total = sum(lam)
    v = [Q(0)] * f.dim
    for c, i in zip(lam, sorted(pat.K)):
        v = [a + c / total * b for a, b in zip(v, f.a(i))]
    for t in sorted(pat.I):
        m = rng.randint(0, 2)
        v = [a + m * b for a, b in zip(v, f.d(t))]
    assert is_subgradient(f, x, v)
    w = decompose_subgradient(f, x, v)
    assert check_witness(f, x, v, w)
    assert check_witness(f, x, v, decompose_subgradient(f, x, v, rng=rng))


@given(functions(dim=1), vectors(1, lo=-3, hi=3, max_den=2), vectors(1, lo=-3, hi=3, max_den=2))
def test_subgradient_inequality(f, x, y):
    """v in the subdifferential at x implies f(y) >= f(x) + <v, y - x> on the domain."""
    if not f.in_domain(x) or not f.in_domain(y):
        return
    s = subdifferential(f, x)
    for v in s.hull_points:
        assert evaluate(f, y) >= evaluate(f, x) + dot(v, tuple(b - a for a, b in zip(x, y)))
