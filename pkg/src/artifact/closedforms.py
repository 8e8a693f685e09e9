"""Closed-form second-order values for four standard functions.

These are the component maximum, the infinity norm at the origin with a
boundary subgradient, the indicator of the unit box, and the 1-norm (via the
conjugate pair it forms with the box indicator).  Index sets are 1-based.
They double as independent checks of the general pipeline in
:mod:`artifact.secondorder`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cones import GeneratedCone, HalfspaceCone, member_halfspace
from .errors import ContractError, DomainError, MathError
from .exactla import Vector, sub, unit, vector


def _sgn(q) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class SignVector:
    entries: tuple

    @classmethod
    def of(cls, v: Sequence) -> "SignVector":
        return cls(tuple(_sgn(Fraction(x)) for x in v))


@dataclass(frozen=True)
class InfNormIndexData:
    j_inf: frozenset
    j_inf_c: frozenset
    gamma: Fraction
    L1: frozenset
    L2: frozenset
    nu: tuple  # ((index, frozenset of signs), ...) on L1 and j_inf
    mu: tuple  # ((index, frozenset of signs), ...) on L2
    flipped: tuple  # ((index, sign), ...): i in j_inf with sign*u_i > gamma, only possible for gamma < 0


@dataclass(frozen=True)
class BoxIndexData:
    i_inf: frozenset
    h_v: frozenset
    e1: frozenset
    e2: frozenset


@dataclass(frozen=True)
class OneNormIndexData:
    h_v: frozenset
    i_inf: frozenset
    c1: frozenset
    c2: frozenset


def _vec(v, n: Optional[int] = None) -> Vector:
    v = vector(v)
    if n is not None and len(v) != n:
        raise ContractError(f"expected dimension {n}, got {len(v)}")
    return v


# component maximum

def component_max_value(x: Sequence, v: Sequence, u: Sequence) -> HalfspaceCone:
    """Value of the second-order subdifferential of ``max_i x_i`` at ``(x, v)`` in direction ``u``."""
    x = _vec(x)
    n = len(x)
    v, u = _vec(v, n), _vec(u, n)
    top = max(x)
    K = {i for i in range(1, n + 1) if x[i - 1] == top}
    if any(c < 0 for c in v) or sum(v) != 1 or any(v[i - 1] != 0 for i in range(1, n + 1) if i not in K):
        raise MathError("v is not a subgradient of the component maximum at x")
    J1 = [i for i in range(1, n + 1) if v[i - 1] > 0]
    level = u[J1[0] - 1]
    if any(u[i - 1] != level for i in J1):
        raise DomainError("u must be constant on the support of v")
    above = [i for i in sorted(K) if u[i - 1] > level]
    below = [i for i in sorted(K) if u[i - 1] < level]
    zero_on = sorted(set(range(1, n + 1)) - K) + below
    eq = [tuple(Fraction(1) for _ in range(n))] + [unit(n, i - 1) for i in zero_on]
    ineq = [unit(n, i - 1, -1) for i in above]
    return HalfspaceCone(n, eq, ineq)


# infinity norm at the origin

def _check_inf_boundary(v: Vector):
    if sum(abs(c) for c in v) != 1:
        raise MathError("v must lie on the boundary of the unit 1-norm ball")


def inf_norm_domain(v: Sequence) -> HalfspaceCone:
    """Directions ``u`` with ``sgn(v_i) u_i`` equal across the support of ``v``."""
    v = _vec(v)
    _check_inf_boundary(v)
    n = len(v)
    support = [i for i in range(n) if v[i] != 0]
    signed = [unit(n, i, _sgn(v[i])) for i in support]
    return HalfspaceCone(n, [sub(s, signed[0]) for s in signed[1:]], ())


def inf_norm_index_data(v: Sequence, u: Sequence) -> InfNormIndexData:
    v = _vec(v)
    n = len(v)
    u = _vec(u, n)
    _check_inf_boundary(v)
    if not member_halfspace(u, inf_norm_domain(v)):
        raise DomainError("u lies outside the domain")
    j_inf = frozenset(i for i in range(1, n + 1) if v[i - 1] != 0)
    j_inf_c = frozenset(range(1, n + 1)) - j_inf
    first = min(j_inf)
    gamma = _sgn(v[first - 1]) * u[first - 1]
    L1 = frozenset(i for i in j_inf_c if u[i - 1] == gamma or -u[i - 1] == gamma)
    L2 = frozenset(i for i in j_inf_c if u[i - 1] > gamma or -u[i - 1] > gamma)
    # every sign s with s*u_i = gamma (resp. > gamma); both qualify when u_i = gamma = 0
    nu = tuple((i, frozenset(s for s in (1, -1) if s * u[i - 1] == gamma)) for i in sorted(L1 | j_inf))
    mu = tuple((i, frozenset(s for s in (1, -1) if s * u[i - 1] > gamma)) for i in sorted(L2))
    flipped = tuple((i, -_sgn(v[i - 1])) for i in sorted(j_inf) if -_sgn(v[i - 1]) * u[i - 1] > gamma)
    return InfNormIndexData(j_inf, j_inf_c, gamma, L1, L2, nu, mu, flipped)


def inf_norm_value_bound(v: Sequence, u: Sequence, literal: bool = False) -> tuple:
    """Bounding cone for the value at ``u`` and whether equality is certified.

    Returns ``(cone, equality_flag)``.  The flag is true for ``u = 0`` and
    when ``min(u_i, -u_i) < gamma`` for every coordinate.

    When ``gamma < 0`` a support index ``i`` also satisfies
    ``-sgn(v_i) u_i > gamma``, and the vector ``-sgn(v_i) e_i`` then belongs
    with the conic generators; without it the cone is not an upper bound.
    ``literal=True`` leaves those generators out, for comparison.
    """
    v = _vec(v)
    n = len(v)
    u = _vec(u, n)
    data = inf_norm_index_data(v, u)
    level = [unit(n, i - 1, s) for i, signs in data.nu for s in sorted(signs)]
    higher = [unit(n, i - 1, s) for i, signs in data.mu for s in sorted(signs)]
    if not literal:
        higher += [unit(n, i - 1, s) for i, s in data.flipped]
    span = [sub(p, level[0]) for p in level[1:]]
    rays = [sub(p, q) for p in higher for q in level]
    flag = all(c == 0 for c in u) or all(min(c, -c) < data.gamma for c in u)
    return GeneratedCone(n, span, rays), flag


# indicator of the unit box

def _box_data(v: Vector, x: Vector) -> tuple:
    n = len(v)
    if any(abs(c) > 1 for c in v) or not any(abs(c) == 1 for c in v):
        raise MathError("v must lie on the boundary of the unit box")
    for i in range(n):
        if abs(v[i]) < 1 and x[i] != 0:
            raise MathError("x is not a normal to the box at v")
        if abs(v[i]) == 1 and v[i] * x[i] < 0:
            raise MathError("x is not a normal to the box at v")
    i_inf = frozenset(i for i in range(1, n + 1) if x[i - 1] != 0)
    h_v = frozenset(i for i in range(1, n + 1) if abs(v[i - 1]) == 1)
    return i_inf, h_v


def box_indicator_domain_and_value(v: Sequence, x: Sequence, u: Sequence) -> tuple:
    """Domain and value for the box indicator at the point ``v`` with normal ``x``.

    Returns ``(domain, value, data)``; ``value`` is None when ``u`` is
    outside the domain.
    """
    v = _vec(v)
    n = len(v)
    x, u = _vec(x, n), _vec(u, n)
    i_inf, h_v = _box_data(v, x)
    domain = HalfspaceCone(n, [unit(n, i - 1) for i in sorted(i_inf)], ())
    e1 = frozenset(i for i in h_v if u[i - 1] == 0)
    e2 = frozenset(i for i in h_v if v[i - 1] * u[i - 1] > 0)
    data = BoxIndexData(i_inf, h_v, e1, e2)
    if not member_halfspace(u, domain):
        return domain, None, data
    value = GeneratedCone(n, [unit(n, i - 1) for i in sorted(e1)], [unit(n, i - 1, _sgn(v[i - 1])) for i in sorted(e2)])
    return domain, value, data


# 1-norm, through the conjugate box indicator

def one_norm_domain_and_value(x: Sequence, v: Sequence, w: Sequence) -> tuple:
    """Domain and value for the 1-norm at ``(x, v)`` in direction ``w``.

    Uses the equivalence ``u ∈ value(w)`` iff ``-w`` lies in the box
    indicator's value at ``(v, x)`` in direction ``-u``.  Returns
    ``(domain, value, data)`` with ``value`` None outside the domain.
    """
    x = _vec(x)
    n = len(x)
    v, w = _vec(v, n), _vec(w, n)
    if any(abs(c) > 1 for c in v) or any(x[i] != 0 and v[i] != _sgn(x[i]) for i in range(n)):
        raise MathError("v is not a subgradient of the 1-norm at x")
    h_v = frozenset(i for i in range(1, n + 1) if abs(v[i - 1]) == 1)
    i_inf = frozenset(i for i in range(1, n + 1) if x[i - 1] != 0)
    domain = HalfspaceCone(n, [unit(n, i - 1) for i in range(1, n + 1) if i not in h_v], ())
    c1 = frozenset(i for i in h_v if w[i - 1] != 0)
    c2 = frozenset(i for i in c1 if v[i - 1] * w[i - 1] > 0)
    data = OneNormIndexData(h_v, i_inf, c1, c2)
    if not member_halfspace(w, domain):
        return domain, None, data
    eq = [unit(n, i - 1) for i in sorted(c2 | i_inf)]
    ineq = [unit(n, i - 1, _sgn(v[i - 1])) for i in sorted(c1 - c2)]
    return domain, HalfspaceCone(n, eq, ineq), data
