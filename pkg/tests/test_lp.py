from fractions import Fraction as Q

from hypothesis import given, strategies as st

from artifact import lp
from artifact.exactla import dot

from conftest import vectors


def system(dim, eq=(), le=(), lt=()):
    return lp.LinearSystem(dim, eq_rows=list(eq), le_rows=list(le), lt_rows=list(lt))


def test_forced_point():
    out = lp.feasible(system(1, le=[((1,), 1), ((-1,), -1)]))
    assert out.status == lp.FEASIBLE and out.witness == (Q(1),)


def test_contradiction():
    assert lp.feasible(system(1, le=[((1,), -1), ((-1,), -1)])).status == lp.INFEASIBLE


def test_segment_witness_exact():
    sys = system(2, eq=[((1, 1), 1)], le=[((-1, 0), 0), ((0, -1), 0)])
    out = lp.feasible(sys)
    assert out.ok and sys.satisfied_by(out.witness)


def test_maximize_examples():
    assert lp.maximize((1,), system(1, le=[((1,), 2)])).optimum == 2
    assert lp.maximize((1,), system(1, le=[((-1,), 0)])).status == lp.UNBOUNDED
    out = lp.maximize((1, 1), system(2, le=[((1, 0), 1), ((0, 1), 1)]))
    assert out.optimum == 2 and out.witness == (1, 1)


def test_strict_examples():
    assert lp.strictly_feasible(system(1, eq=[((1,), 0)], lt=[((1,), 1)])) == (0,)
    assert lp.strictly_feasible(system(1, lt=[((1,), 0), ((-1,), 0)])) is None


def test_strict_needs_interior():
    # x <= 0 and -x <= 0 is feasible, but not strictly
    assert lp.feasible(system(1, le=[((1,), 0), ((-1,), 0)])).ok
    assert lp.strictly_feasible(system(1, lt=[((1,), 0), ((-1,), 0)])) is None


rows2 = st.lists(st.tuples(vectors(2, lo=-3, hi=3, max_den=2), st.integers(-3, 3).map(Q)), min_size=1, max_size=5)


@given(rows2, rows2)
def test_witness_satisfies_system(le, eq):
    sys = system(2, eq=eq[:1], le=le)
    out = lp.feasible(sys)
    if out.ok:
        assert sys.satisfied_by(out.witness)


@given(rows2)
def test_strict_witness_is_strict(lt):
    sys = system(2, lt=lt)
    w = lp.strictly_feasible(sys)
    if w is not None:
        assert all(dot(r, w) < b for r, b in lt)
    else:
        # then no grid point satisfies it strictly either
        grid = [(Q(a, 2), Q(b, 2)) for a in range(-12, 13) for b in range(-12, 13)]
        assert not any(all(dot(r, x) < b for r, b in lt) for x in grid)


@given(rows2, vectors(2, lo=-2, hi=2, max_den=1))
def test_strong_duality(le, c):
    """max c.x s.t. Ax <= b against min b.y s.t. A^T y = c, y >= 0."""
    primal = lp.maximize(c, system(2, le=le))
    m = len(le)
    cols = [tuple(r[j] for r, _ in le) for j in range(2)]
    dual_sys = system(m, eq=[(cols[j], c[j]) for j in range(2)], le=[(tuple(-1 if k == i else 0 for k in range(m)), 0) for i in range(m)])
    dual = lp.maximize(tuple(-b for _, b in le), dual_sys)
    if primal.status == lp.FEASIBLE:
        assert dual.status == lp.FEASIBLE and -dual.optimum == primal.optimum
    elif primal.status == lp.UNBOUNDED:
        assert dual.status == lp.INFEASIBLE
    else:
        assert dual.status in (lp.INFEASIBLE, lp.UNBOUNDED)
