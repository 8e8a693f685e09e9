"""Convex piecewise linear functions and their first-order calculus.

A function is stored as affine pieces ``<a_i, x> - alpha_i`` (indexed
1..l) together with domain constraints ``<d_t, x> <= beta_t`` (indexed
1..m).  Its value is the largest piece on the domain and ``+inf`` off it.
Index sets are ``frozenset`` objects of 1-based indices everywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from . import lp
from .cones import GeneratedCone, HalfspaceCone
from .errors import ContractError, DomainError, NotASubgradientError
from .exactla import Vector, add, dot, linear_combination, unit, vector, zeros

INF = math.inf


def _vec(v, dim: int) -> Vector:
    v = tuple(Fraction(x) for x in v)
    if len(v) != dim:
        raise ContractError(f"expected a vector of dimension {dim}, got {len(v)}")
    return v


@dataclass(frozen=True)
class CpwlFunction:
    dim: int
    pieces: tuple
    constraints: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise ContractError("dimension must be positive")
        if not self.pieces:
            raise ContractError("at least one affine piece is required")
        pieces = tuple((_vec(a, self.dim), Fraction(alpha)) for a, alpha in self.pieces)
        cons = tuple((_vec(d, self.dim), Fraction(beta)) for d, beta in self.constraints)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "constraints", cons)
        if cons and not lp.feasible(lp.LinearSystem(self.dim, le_rows=cons)).ok:
            raise ContractError("the domain of the function is empty")

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)

    @property
    def T1(self) -> frozenset:
        return frozenset(range(1, len(self.pieces) + 1))

    @property
    def T2(self) -> frozenset:
        return frozenset(range(1, len(self.constraints) + 1))

    def a(self, i: int) -> Vector:
        return self.pieces[i - 1][0]

    def alpha(self, i: int) -> Fraction:
        return self.pieces[i - 1][1]

    def d(self, t: int) -> Vector:
        return self.constraints[t - 1][0]

    def beta(self, t: int) -> Fraction:
        return self.constraints[t - 1][1]

    def piece_value(self, i: int, x: Sequence) -> Fraction:
        return dot(self.a(i), x) - self.alpha(i)

    def in_domain(self, x: Sequence) -> bool:
        return all(dot(d, x) <= beta for d, beta in self.constraints)

    def pieces_only(self) -> "CpwlFunction":
        """The max-affine part with the domain constraints dropped."""
        return CpwlFunction(self.dim, self.pieces)

    def domain_indicator(self) -> "CpwlFunction":
        """The indicator function of the domain, as a single zero piece."""
        return CpwlFunction(self.dim, [(zeros(self.dim), 0)], self.constraints)


@dataclass(frozen=True)
class ActivityPattern:
    K: frozenset
    I: frozenset


@dataclass(frozen=True)
class ConvexPolyhedronV:
    """``co(hull_points) + cone(ray_gens)``."""

    hull_points: tuple
    ray_gens: tuple = ()

    def __post_init__(self):
        if not self.hull_points:
            raise ContractError("a polyhedron needs at least one hull point")
        object.__setattr__(self, "hull_points", tuple(tuple(p) for p in self.hull_points))
        object.__setattr__(self, "ray_gens", tuple(tuple(r) for r in self.ray_gens))

    @property
    def dim(self) -> int:
        return len(self.hull_points[0])

    def contains(self, v: Sequence) -> bool:
        return hull_cone_member(v, self.hull_points, self.ray_gens)


@dataclass(frozen=True)
class SubgradientWitness:
    v1: Vector
    v2: Vector
    lam: tuple  # ((index, multiplier), ...)
    mu: tuple
    J1: frozenset
    J2: frozenset

    @property
    def lambda_(self) -> dict:
        return dict(self.lam)

    @property
    def mu_map(self) -> dict:
        return dict(self.mu)


def _check_x(f: CpwlFunction, x) -> Vector:
    return _vec(x, f.dim)


def _multiplier_system(points: Sequence, rays: Sequence, v: Sequence, dim: int) -> lp.LinearSystem:
    """Variables (lambda, mu) >= 0 with sum(lambda) = 1 and sum lambda p + sum mu r = v."""
    np_, nr = len(points), len(rays)
    nv = np_ + nr
    gens = list(points) + list(rays)
    eq = [(tuple(g[k] for g in gens), v[k]) for k in range(dim)]
    eq.append((tuple([Fraction(1)] * np_ + [Fraction(0)] * nr), Fraction(1)))
    le = [(unit(nv, j, -1), 0) for j in range(nv)]
    return lp.LinearSystem(nv, eq_rows=eq, le_rows=le)


def hull_cone_member(v: Sequence, points: Sequence, rays: Sequence) -> bool:
    """Whether ``v`` lies in ``co(points) + cone(rays)``; false when ``points`` is empty."""
    if not points:
        return False
    return lp.feasible(_multiplier_system(points, rays, v, len(v))).ok


def evaluate(f: CpwlFunction, x: Sequence):
    """The value at ``x``: a Fraction, or :data:`INF` outside the domain."""
    x = _check_x(f, x)
    if not f.in_domain(x):
        return INF
    return max(f.piece_value(i, x) for i in range(1, f.n_pieces + 1))


def activity(f: CpwlFunction, x: Sequence) -> ActivityPattern:
    x = _check_x(f, x)
    if not f.in_domain(x):
        raise DomainError("point lies outside the domain")
    vals = [f.piece_value(i, x) for i in range(1, f.n_pieces + 1)]
    top = max(vals)
    K = frozenset(i for i, val in enumerate(vals, 1) if val == top)
    I = frozenset(t for t in range(1, f.n_constraints + 1) if dot(f.d(t), x) == f.beta(t))
    return ActivityPattern(K, I)


def in_cell(f: CpwlFunction, i: int, x: Sequence) -> bool:
    if i not in f.T1:
        raise ContractError(f"piece index {i} out of range")
    x = _check_x(f, x)
    if not f.in_domain(x):
        return False
    return i in activity(f, x).K


def subdifferential(f: CpwlFunction, x: Sequence) -> ConvexPolyhedronV:
    pat = activity(f, x)
    return ConvexPolyhedronV([f.a(i) for i in sorted(pat.K)], [f.d(t) for t in sorted(pat.I)])


def is_subgradient(f: CpwlFunction, x: Sequence, v: Sequence) -> bool:
    x = _check_x(f, x)
    if not f.in_domain(x):
        return False
    return subdifferential(f, x).contains(_vec(v, f.dim))


def tangent_cone_domain(f: CpwlFunction, x: Sequence) -> HalfspaceCone:
    pat = activity(f, x)
    return HalfspaceCone(f.dim, (), [f.d(t) for t in sorted(pat.I)])


def normal_cone_domain(f: CpwlFunction, x: Sequence) -> GeneratedCone:
    pat = activity(f, x)
    return GeneratedCone(f.dim, (), [f.d(t) for t in sorted(pat.I)])


def decompose_subgradient(
    f: CpwlFunction, x: Sequence, v: Sequence, rng: Optional[random.Random] = None
) -> SubgradientWitness:
    """Split ``v`` into a convex combination of active gradients plus a domain normal.

    Without ``rng`` the phase-one vertex of the multiplier system is used.
    With ``rng`` a random positive weighting of the multipliers is minimised,
    which lands on a (generally different) vertex.
    """
    x = _check_x(f, x)
    v = _vec(v, f.dim)
    pat = activity(f, x)
    K, I = sorted(pat.K), sorted(pat.I)
    sys = _multiplier_system([f.a(i) for i in K], [f.d(t) for t in I], v, f.dim)
    if rng is None:
        out = lp.feasible(sys)
    else:
        weights = tuple(Fraction(-rng.randint(1, 97), rng.randint(1, 13)) for _ in range(sys.dim))
        out = lp.maximize(weights, sys)
    if not out.ok:
        raise NotASubgradientError("vector is not a subgradient at this point")
    return witness_from_multipliers(f, K, I, out.witness[: len(K)], out.witness[len(K):])


def witness_from_multipliers(f: CpwlFunction, K: Sequence, I: Sequence, lam: Sequence, mu: Sequence) -> SubgradientWitness:
    v1 = linear_combination(lam, [f.a(i) for i in K], f.dim)
    v2 = linear_combination(mu, [f.d(t) for t in I], f.dim)
    return SubgradientWitness(
        v1=v1,
        v2=v2,
        lam=tuple(zip(K, lam)),
        mu=tuple(zip(I, mu)),
        J1=frozenset(i for i, c in zip(K, lam) if c > 0),
        J2=frozenset(t for t, c in zip(I, mu) if c > 0),
    )


def check_witness(f: CpwlFunction, x: Sequence, v: Sequence, w: SubgradientWitness) -> bool:
    """All defining relations of a decomposition, checked exactly."""
    pat = activity(f, x)
    lam, mu = dict(w.lam), dict(w.mu)
    return (
        set(lam) == set(pat.K)
        and set(mu) == set(pat.I)
        and all(c >= 0 for c in lam.values())
        and all(c >= 0 for c in mu.values())
        and sum(lam.values()) == 1
        and w.v1 == linear_combination([lam[i] for i in sorted(lam)], [f.a(i) for i in sorted(lam)], f.dim)
        and w.v2 == linear_combination([mu[t] for t in sorted(mu)], [f.d(t) for t in sorted(mu)], f.dim)
        and add(w.v1, w.v2) == tuple(v)
        and w.J1 == frozenset(i for i, c in lam.items() if c > 0)
        and w.J2 == frozenset(t for t, c in mu.items() if c > 0)
    )


def from_support_function(vertices: Sequence) -> CpwlFunction:
    """The support function of the convex hull of ``vertices``."""
    if not vertices:
        raise ContractError("at least one vertex is required")
    vertices = [vector(p) for p in vertices]
    return CpwlFunction(len(vertices[0]), [(p, 0) for p in vertices])


# standard instances

def component_max(n: int) -> CpwlFunction:
    return CpwlFunction(n, [(unit(n, i), 0) for i in range(n)])


def inf_norm(n: int) -> CpwlFunction:
    """Pieces e_1..e_n followed by -e_1..-e_n."""
    return CpwlFunction(n, [(unit(n, i), 0) for i in range(n)] + [(unit(n, i, -1), 0) for i in range(n)])


def box_indicator(n: int) -> CpwlFunction:
    """Indicator of [-1,1]^n; constraints e_1..e_n then -e_1..-e_n."""
    cons = [(unit(n, i), 1) for i in range(n)] + [(unit(n, i, -1), 1) for i in range(n)]
    return CpwlFunction(n, [(zeros(n), 0)], cons)


def one_norm(n: int) -> CpwlFunction:
    """All 2^n sign vectors as pieces, in lexicographic order with -1 first."""
    return CpwlFunction(n, [(tuple(Fraction(s) for s in signs), 0) for signs in product((-1, 1), repeat=n)])


def staircase() -> CpwlFunction:
    """One-dimensional example with three pieces on [-2, 2]."""
    pieces = [((Fraction(1, 2),), 0), ((Fraction(2),), Fraction(3, 2)), ((Fraction(-1),), 0)]
    cons = [((Fraction(1),), 2), ((Fraction(-1),), 2)]
    return CpwlFunction(1, pieces, cons)
