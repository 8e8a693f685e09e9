from fractions import Fraction as Q
from itertools import product

import pytest

from artifact.closedforms import (
    SignVector,
    box_indicator_domain_and_value,
    component_max_value,
    inf_norm_domain,
    inf_norm_index_data,
    inf_norm_value_bound,
    one_norm_domain_and_value,
)
from artifact.cones import GeneratedCone, HalfspaceCone, cones_equal, contains, covered_by_union, member
from artifact.cpwl import box_indicator, inf_norm, one_norm
from artifact.errors import DomainError, MathError
from artifact.graphgeo import graph_point
from artifact.secondorder import second_order_value


def test_sign_vector():
    assert SignVector.of([Q(-1, 2), 0, 3]).entries == (-1, 0, 1)


def test_component_max_examples():
    assert cones_equal(component_max_value((0, 0), (Q(1, 2), Q(1, 2)), (1, 1)), HalfspaceCone(2, [(1, 1)]))
    assert cones_equal(component_max_value((0, 0), (1, 0), (0, 1)), HalfspaceCone(2, [(1, 1)], [(0, -1)]))
    c = component_max_value((0, 0, -1), (Q(1, 2), Q(1, 2), 0), (2, 2, 5))
    # the third coordinate is not active, so it is forced to zero
    assert member((1, -1, 0), c) and not member((0, 1, -1), c) and not member((0, 0, 1), c)


def test_component_max_rejects():
    with pytest.raises(MathError):
        component_max_value((0, 0), (1, 1), (0, 0))
    with pytest.raises(DomainError):
        component_max_value((0, 0), (Q(1, 2), Q(1, 2)), (0, 1))


def test_inf_norm_domain_examples():
    assert inf_norm_domain((1, 0)) == HalfspaceCone(2)
    assert cones_equal(inf_norm_domain((Q(1, 2), Q(1, 2))), HalfspaceCone(2, [(1, -1)]))
    assert cones_equal(inf_norm_domain((Q(1, 2), Q(-1, 2))), HalfspaceCone(2, [(1, 1)]))


def test_inf_norm_flags():
    assert inf_norm_value_bound((Q(1, 2), Q(1, 2)), (0, 0))[1]
    assert inf_norm_value_bound((Q(1, 2), Q(1, 2)), (1, 1))[1]
    cone, flag = inf_norm_value_bound((1, 0), (0, 0))
    assert flag
    g = graph_point(inf_norm(2), (0, 0), (1, 0))
    union = second_order_value(g, (0, 0)).members
    assert all(contains(cone, m) for m in union) and covered_by_union(cone, list(union))


def test_inf_norm_multivalued_sign_at_zero():
    data = inf_norm_index_data((1, 0), (0, 0))
    assert dict(data.nu)[2] == {1, -1}


def test_inf_norm_negative_level_needs_flipped_generators():
    v, u = (Q(1, 2), Q(1, 2)), (-1, -1)
    g = graph_point(inf_norm(2), (0, 0), v)
    union = second_order_value(g, u).members
    literal, _ = inf_norm_value_bound(v, u, literal=True)
    bound, _ = inf_norm_value_bound(v, u)
    w = (-1, -1)
    assert any(member(w, m) for m in union)
    assert not member(w, literal)
    assert member(w, bound) and all(contains(bound, m) for m in union)


def test_box_examples():
    dom, val, _ = box_indicator_domain_and_value((1, 1), (1, 1), (0, 0))
    assert cones_equal(dom, GeneratedCone(2)) and cones_equal(val, GeneratedCone(2, [(1, 0), (0, 1)]))
    dom, val, data = box_indicator_domain_and_value((1, Q(1, 2)), (1, 0), (0, 1))
    assert data.i_inf == {1} and cones_equal(dom, HalfspaceCone(2, [(1, 0)]))
    # index 1 sits on a face with u_1 = 0, so its line survives
    assert cones_equal(val, GeneratedCone(2, [(1, 0)]))
    g = graph_point(box_indicator(2), (1, Q(1, 2)), (1, 0))
    union = second_order_value(g, (0, 1)).members
    assert all(contains(val, m) for m in union) and covered_by_union(val, list(union))
    _, val, _ = box_indicator_domain_and_value((1,), (2,), (0,))
    assert cones_equal(val, GeneratedCone(1, [(1,)]))


def test_box_outside_domain():
    _, val, _ = box_indicator_domain_and_value((1, Q(1, 2)), (1, 0), (1, 0))
    assert val is None


def test_one_norm_examples():
    assert cones_equal(one_norm_domain_and_value((0,), (1,), (1,))[1], GeneratedCone(1))
    assert cones_equal(one_norm_domain_and_value((0,), (1,), (-1,))[1], GeneratedCone(1, (), [(-1,)]))
    assert one_norm_domain_and_value((0,), (1,), (0,))[1] == HalfspaceCone(1)


def _agrees(closed, union):
    return all(contains(closed, m) for m in union) and covered_by_union(closed, list(union))


@pytest.mark.parametrize("x", list(product([-1, 0, 1], repeat=2)))
def test_one_norm_against_pipeline(x):
    f = one_norm(2)
    choices = [[Q(k, 2) for k in range(-2, 3)] if c == 0 else [Q(c)] for c in x]
    for v in product(*choices):
        g = graph_point(f, x, v)
        for w in product(range(-1, 2), repeat=2):
            _, val, _ = one_norm_domain_and_value(x, v, w)
            union = second_order_value(g, w).members
            assert (val is None) == (not union)
            if val is not None:
                assert _agrees(val, union)
