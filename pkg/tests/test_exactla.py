from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from artifact.errors import ContractError
from artifact.exactla import dot, format_rational, nullspace, primitive, rank, rref, solve_linear, to_rational

from conftest import vectors


def test_rank_examples():
    assert rank([(1, 0), (0, 1)]) == 2
    assert rank([(0, 0, 0)] * 3) == 0
    assert rank([(1, 1, 1), (2, 2, 2), (0, 1, 0)]) == 2


def test_solve_identity():
    assert solve_linear([(1, 0), (0, 1)], (Q(3, 2), -1)) == (Q(3, 2), Q(-1))


def test_solve_underdetermined_by_substitution():
    x = solve_linear([(1, 1)], (2,))
    assert x is not None and x[0] + x[1] == 2


def test_solve_inconsistent():
    assert solve_linear([(1, 0), (1, 0)], (1, 2)) is None


@pytest.mark.parametrize("text,value", [("3", Q(3)), ("-2/4", Q(-1, 2)), ("+7/3", Q(7, 3))])
def test_to_rational_strings(text, value):
    assert to_rational(text) == value


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "1.5", "x", None])
def test_to_rational_rejects(bad):
    with pytest.raises(ContractError):
        to_rational(bad)


def test_format_rational():
    assert format_rational(Q(3)) == "3"
    assert format_rational(Q(-6, 4)) == "-3/2"


@given(st.lists(vectors(3), min_size=1, max_size=4))
def test_nullspace_is_orthogonal_and_complementary(rows):
    ns = nullspace(rows, 3)
    assert all(dot(r, z) == 0 for r in rows for z in ns)
    assert rank(rows) + len(ns) == 3


@given(st.lists(vectors(3), min_size=1, max_size=4), vectors(3))
def test_solve_round_trip(rows, x):
    b = tuple(dot(r, x) for r in rows)
    y = solve_linear(rows, b)
    assert y is not None
    assert all(dot(r, y) == c for r, c in zip(rows, b))


@given(st.lists(vectors(3), min_size=1, max_size=4))
def test_rref_pivots_are_unit_columns(rows):
    m, pivots = rref(rows)
    for r, c in enumerate(pivots):
        assert [row[c] for row in m] == [1 if i == r else 0 for i in range(len(m))]
    assert all(not any(row) for row in m[len(pivots):])


@given(vectors(3))
def test_primitive_is_positive_multiple(v):
    p = primitive(v)
    if not any(v):
        assert not any(p)
        return
    ratios = {a / b for a, b in zip(p, v) if b != 0}
    assert len(ratios) == 1 and ratios.pop() > 0
    assert all(c.denominator == 1 for c in p)
