from fractions import Fraction as Q
import random

import pytest
from hypothesis import given, strategies as st

from artifact.cones import (
    GeneratedCone,
    HalfspaceCone,
    cones_equal,
    contains,
    contains_generated,
    covered_by_union,
    dimension,
    double_description,
    farkas_polarity_check,
    generated_polar_of_halfspace,
    intersect,
    is_subspace,
    member,
    member_generated,
    member_halfspace,
    minkowski_sum,
    polar_of_generated,
    to_halfspace,
    unions_equal,
)
from artifact.errors import CapabilityError, ContractError
from artifact.exactla import add, scale, unit

from conftest import functions, vectors

E1, E2 = (1, 0), (0, 1)


def gen(dim, span=(), rays=()):
    return GeneratedCone(dim, span, rays)


def test_member_generated_examples():
    c = gen(1, rays=[(Q(-3, 2),)])
    assert member_generated((0,), c)
    assert member_generated((Q(-3, 2),), c)
    assert not member_generated((1,), c)


def test_member_halfspace_examples():
    c = HalfspaceCone(1, (), [(Q(-3, 2),)])
    assert member_halfspace((0,), c)
    assert member_halfspace((2,), c)
    assert not member_halfspace((-2,), c)


def test_polar_examples():
    assert polar_of_generated(gen(2)) == HalfspaceCone(2)
    assert cones_equal(polar_of_generated(gen(2, span=[E1])), HalfspaceCone(2, [E1]))
    assert cones_equal(polar_of_generated(gen(2, rays=[E1])), HalfspaceCone(2, (), [E1]))


def test_double_description_examples():
    assert cones_equal(double_description(HalfspaceCone(2, (), [E1])), gen(2, [E2], [(-1, 0)]))
    zero = double_description(HalfspaceCone(2, [E1, E2]))
    assert not zero.span_gens and not zero.ray_gens
    assert dimension(double_description(HalfspaceCone(2))) == 2


def test_dd_bound():
    with pytest.raises(CapabilityError):
        double_description(HalfspaceCone(9, (), [unit(9, 0)]))


def test_dimension_mismatch():
    with pytest.raises(ContractError):
        GeneratedCone(2, [(1, 0, 0)])


def test_containment_examples():
    c = gen(2, [E1], [E2])
    assert contains_generated(c, c)
    assert contains_generated(c, gen(2))
    assert not contains_generated(gen(1, rays=[(1,)]), gen(1, span=[(1,)]))


def test_minkowski_examples():
    a = gen(2, rays=[E1, (1, 1)])
    assert cones_equal(minkowski_sum(a, gen(2)), a)
    assert cones_equal(minkowski_sum(gen(2, rays=[E1]), gen(2, rays=[(-1, 0)])), gen(2, span=[E1]))
    assert cones_equal(minkowski_sum(gen(2, rays=[E1]), gen(2, rays=[E2])), HalfspaceCone(2, (), [(-1, 0), (0, -1)]))


def test_subspace_detection():
    assert is_subspace(gen(2, rays=[E1, (-1, 0)]))
    assert not is_subspace(gen(2, rays=[E1]))


def test_union_cover_split():
    plane = HalfspaceCone(2)
    halves = [HalfspaceCone(2, (), [E1]), HalfspaceCone(2, (), [(-1, 0)])]
    assert covered_by_union(plane, halves)
    assert not covered_by_union(plane, halves[:1])
    quadrants = [HalfspaceCone(2, (), [(-s, 0), (0, -t)]) for s in (1, -1) for t in (1, -1)]
    assert covered_by_union(plane, quadrants)
    assert not covered_by_union(plane, quadrants[:3])


def test_union_cover_ignores_thin_members():
    # a line does not help covering a halfplane
    half = HalfspaceCone(2, (), [E1])
    parts = [HalfspaceCone(2, (), [E1, E2]), HalfspaceCone(2, [E2])]
    assert not covered_by_union(half, parts)
    assert covered_by_union(half, parts + [HalfspaceCone(2, (), [(0, -1)])])


def test_unions_equal_different_splits():
    a = [HalfspaceCone(2, (), [E1]), HalfspaceCone(2, (), [(-1, 0)])]
    b = [HalfspaceCone(2, (), [E2]), HalfspaceCone(2, (), [(0, -1)])]
    assert unions_equal(a, b)
    assert not unions_equal(a, a[:1])


def test_farkas_examples(fig):
    assert farkas_polarity_check(fig, {1, 2}, {1, 2}, set(), set())
    assert farkas_polarity_check(fig, {2}, {1, 2}, set(), set())
    assert farkas_polarity_check(fig, {2}, {2}, {1}, {1})


cone3 = st.builds(
    lambda s, r: GeneratedCone(3, s, r),
    st.lists(vectors(3, lo=-2, hi=2, max_den=1), max_size=1),
    st.lists(vectors(3, lo=-2, hi=2, max_den=1), max_size=4),
)


@given(cone3)
def test_polarity_involution(c):
    h = to_halfspace(c)
    assert cones_equal(double_description(h), c)
    assert cones_equal(generated_polar_of_halfspace(polar_of_generated(c)), c)


@given(cone3, st.lists(vectors(3, lo=-3, hi=3, max_den=2), min_size=1, max_size=6))
def test_member_agrees_between_representations(c, probes):
    h = to_halfspace(c)
    for w in probes:
        assert member_generated(w, c) == member_halfspace(w, h)


@given(cone3, cone3)
def test_intersection_is_contained(a, b):
    both = intersect(to_halfspace(a), to_halfspace(b))
    assert contains(a, both) and contains(b, both)


@given(cone3, cone3, st.integers(0, 10 ** 6))
def test_union_cover_against_probes(c, other, seed):
    """A cover claim is checked on points of c; any cone is covered by itself plus anything."""
    assert covered_by_union(c, [c, other])
    members = [to_halfspace(other), HalfspaceCone(3, (), [(1, 0, 0)]), HalfspaceCone(3, (), [(-1, 0, 0)])]
    members = [intersect(m, to_halfspace(c)) for m in members[1:]] + members[:1]
    rng = random.Random(seed)
    if covered_by_union(c, members):
        for _ in range(20):
            w = (0, 0, 0)
            for g in c.generators():
                w = add(w, scale(Q(rng.randint(0, 3)), g))
            assert any(member(w, m) for m in members)


@given(functions(max_pieces=4, max_constraints=3), st.data())
def test_farkas_random(f, data):
    q1 = data.draw(st.sets(st.sampled_from(sorted(f.T1)), min_size=1))
    p1 = data.draw(st.sets(st.sampled_from(sorted(q1))))
    q2 = data.draw(st.sets(st.sampled_from(sorted(f.T2)))) if f.T2 else set()
    p2 = data.draw(st.sets(st.sampled_from(sorted(q2)))) if q2 else set()
    assert farkas_polarity_check(f, p1, q1, p2, q2)
