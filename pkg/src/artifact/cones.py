"""Polyhedral cones in generator form and in halfspace form.

A :class:`GeneratedCone` is ``span(span_gens) + cone(ray_gens)`` and a
:class:`HalfspaceCone` is ``{u : <e,u> = 0 for e in eq_normals, <g,u> <= 0
for g in ineq_normals}``.  Conversion from halfspace form to generator form
uses the double description method after splitting off the lineality space.
Comparisons are semantic; no representation is ever assumed minimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import lp
from .errors import CapabilityError, ContractError
from .exactla import (
    dot,
    is_zero,
    linear_combination,
    neg,
    nullspace,
    primitive,
    rank,
    solve_linear,
    transpose,
)

DD_DIMENSION_BOUND = 8


def _vectors(vs: Iterable, dim: int) -> tuple:
    out = []
    for v in vs:
        v = tuple(Fraction(x) for x in v)
        if len(v) != dim:
            raise ContractError(f"generator of dimension {len(v)} in a cone of dimension {dim}")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class GeneratedCone:
    dim: int
    span_gens: tuple = ()
    ray_gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "span_gens", _vectors(self.span_gens, self.dim))
        object.__setattr__(self, "ray_gens", _vectors(self.ray_gens, self.dim))

    def generators(self) -> list:
        """Every vector whose nonnegative combinations give the cone."""
        return list(self.span_gens) + [neg(s) for s in self.span_gens] + list(self.ray_gens)


@dataclass(frozen=True)
class HalfspaceCone:
    dim: int
    eq_normals: tuple = ()
    ineq_normals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "eq_normals", _vectors(self.eq_normals, self.dim))
        object.__setattr__(self, "ineq_normals", _vectors(self.ineq_normals, self.dim))

    def system(self) -> lp.LinearSystem:
        zero = Fraction(0)
        return lp.LinearSystem(
            self.dim,
            eq_rows=[(e, zero) for e in self.eq_normals],
            le_rows=[(g, zero) for g in self.ineq_normals],
        )


@dataclass(frozen=True)
class ConeProduct:
    first: GeneratedCone
    second: HalfspaceCone

    def __post_init__(self):
        if self.first.dim != self.second.dim:
            raise ContractError("product factors must have equal dimension")


@dataclass(frozen=True)
class ConeUnion:
    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))


def _check_dim(a: int, b: int):
    if a != b:
        raise ContractError(f"dimension mismatch: {a} vs {b}")


def zero_cone(dim: int) -> GeneratedCone:
    return GeneratedCone(dim)


def whole_space(dim: int) -> HalfspaceCone:
    return HalfspaceCone(dim)


def member_generated(w: Sequence, c: GeneratedCone) -> bool:
    _check_dim(len(w), c.dim)
    w = tuple(Fraction(x) for x in w)
    if is_zero(w):
        return True
    gens = list(c.span_gens) + list(c.ray_gens)
    if not gens:
        return False
    if not c.ray_gens:
        return solve_linear(transpose(gens), w) is not None
    ns, nr = len(c.span_gens), len(c.ray_gens)
    cols = transpose(gens)
    sys = lp.LinearSystem(
        ns + nr,
        eq_rows=[(cols[k], w[k]) for k in range(c.dim)],
        le_rows=[(tuple(Fraction(-1) if j == ns + i else Fraction(0) for j in range(ns + nr)), 0) for i in range(nr)],
    )
    return lp.feasible(sys).ok


def member_halfspace(u: Sequence, c: HalfspaceCone) -> bool:
    _check_dim(len(u), c.dim)
    return all(dot(e, u) == 0 for e in c.eq_normals) and all(dot(g, u) <= 0 for g in c.ineq_normals)


def polar_of_generated(c: GeneratedCone) -> HalfspaceCone:
    return HalfspaceCone(c.dim, c.span_gens, c.ray_gens)


def generated_polar_of_halfspace(c: HalfspaceCone) -> GeneratedCone:
    """The polar of a halfspace cone, which by Farkas' lemma is generated by its normals."""
    return GeneratedCone(c.dim, c.eq_normals, c.ineq_normals)


def negate_generated(c: GeneratedCone) -> GeneratedCone:
    return GeneratedCone(c.dim, c.span_gens, [neg(r) for r in c.ray_gens])


def negate_halfspace(c: HalfspaceCone) -> HalfspaceCone:
    return HalfspaceCone(c.dim, c.eq_normals, [neg(g) for g in c.ineq_normals])


def intersect(*cones: HalfspaceCone) -> HalfspaceCone:
    dim = cones[0].dim
    eq, ineq = [], []
    for c in cones:
        _check_dim(c.dim, dim)
        eq.extend(c.eq_normals)
        ineq.extend(c.ineq_normals)
    return HalfspaceCone(dim, eq, ineq)


def minkowski_sum(a: GeneratedCone, b: GeneratedCone) -> GeneratedCone:
    _check_dim(a.dim, b.dim)
    return GeneratedCone(a.dim, a.span_gens + b.span_gens, a.ray_gens + b.ray_gens)


def _pointed_extreme_rays(rows: list, k: int) -> list:
    """Extreme rays of the pointed cone ``{y in Q^k : rows @ y <= 0}``.

    Incremental double description with the algebraic adjacency test.
    """
    rows = [r for r in rows if not is_zero(r)]
    if k == 0:
        return []
    # start from k independent rows: the simplicial cone they cut out
    chosen: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise ContractError("cone is not pointed")
    base = [rows[i] for i in chosen]
    rays = []
    for i in range(k):
        rhs = [Fraction(-1) if j == i else Fraction(0) for j in range(k)]
        rays.append(primitive(solve_linear(base, rhs)))
    processed = list(chosen)

    def tight(r):
        return frozenset(i for i in processed if dot(rows[i], r) == 0)

    tights = [tight(r) for r in rays]
    for idx, h in enumerate(rows):
        if idx in chosen:
            continue
        vals = [dot(h, r) for r in rays]
        plus = [i for i, s in enumerate(vals) if s > 0]
        if not plus:
            processed.append(idx)
            tights = [t | {idx} if vals[i] == 0 else t for i, t in enumerate(tights)]
            continue
        minus = [i for i, s in enumerate(vals) if s < 0]
        new_rays = [rays[i] for i, s in enumerate(vals) if s <= 0]
        new_tights = [tights[i] | ({idx} if vals[i] == 0 else frozenset()) for i, s in enumerate(vals) if s <= 0]
        for p in plus:
            for m in minus:
                common = tights[p] & tights[m]
                if k >= 2 and len(common) >= k - 2 and rank([rows[i] for i in common]) == k - 2:
                    r = linear_combination((vals[p], -vals[m]), (rays[m], rays[p]), k)
                    if is_zero(r):
                        continue
                    new_rays.append(primitive(r))
                    new_tights.append(common | {idx})
        processed.append(idx)
        rays, tights = new_rays, new_tights
    # drop duplicates while keeping order
    seen, out = set(), []
    for r in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


@lru_cache(maxsize=65536)
def double_description(c: HalfspaceCone, bound: int = DD_DIMENSION_BOUND) -> GeneratedCone:
    """Generator form of a halfspace cone: a lineality basis plus extreme rays."""
    if c.dim > bound:
        raise CapabilityError(f"double description is limited to dimension {bound}, got {c.dim}")
    n = c.dim
    normals = list(c.eq_normals) + list(c.ineq_normals)
    lineality = nullspace(normals, n)
    sub = nullspace(list(c.eq_normals) + lineality, n)
    k = len(sub)
    restricted = [tuple(dot(g, b) for b in sub) for g in c.ineq_normals]
    rays_y = _pointed_extreme_rays(restricted, k)
    rays = [primitive(linear_combination(y, sub, n)) for y in rays_y]
    return GeneratedCone(n, [primitive(l) for l in lineality], rays)


@lru_cache(maxsize=65536)
def to_halfspace(c: GeneratedCone) -> HalfspaceCone:
    """Halfspace form of a generated cone, via the polar and double description."""
    dual = double_description(polar_of_generated(c))
    return HalfspaceCone(c.dim, dual.span_gens, dual.ray_gens)


def as_generated(c) -> GeneratedCone:
    return c if isinstance(c, GeneratedCone) else double_description(c)


def as_halfspace(c) -> HalfspaceCone:
    return c if isinstance(c, HalfspaceCone) else to_halfspace(c)


def contains_generated(outer: GeneratedCone, inner: GeneratedCone) -> bool:
    _check_dim(outer.dim, inner.dim)
    return all(member_generated(w, outer) for w in inner.generators())


def contains(outer, inner) -> bool:
    """Containment ``inner ⊆ outer`` for cones in either representation."""
    _check_dim(outer.dim, inner.dim)
    gens = as_generated(inner).generators()
    if isinstance(outer, HalfspaceCone):
        return all(member_halfspace(w, outer) for w in gens)
    return all(member_generated(w, outer) for w in gens)


def cones_equal(a, b) -> bool:
    return contains(a, b) and contains(b, a)


def member(w: Sequence, c) -> bool:
    if isinstance(c, HalfspaceCone):
        return member_halfspace(w, c)
    return member_generated(w, c)


def is_subspace(c) -> bool:
    g = as_generated(c)
    return all(member_generated(neg(r), g) for r in g.ray_gens)


def dimension(c) -> int:
    """Dimension of the linear span of a cone."""
    return rank(as_generated(c).generators())


def covered_by_union(c, members: Sequence) -> bool:
    """Whether the cone ``c`` lies inside the union of the cones ``members``.

    Exact.  Members meeting ``c`` in a lower-dimensional set are discarded
    (the union is closed, so covering a dense part of ``c`` is enough).  The
    part of ``c`` outside one remaining member splits into pieces cut by
    its violated rows, and each piece must be covered by the others.
    """
    c = as_halfspace(c)
    return _covered(c, [as_halfspace(m) for m in members])


def _covered(c: HalfspaceCone, members: list) -> bool:
    if not members:
        return False
    gens = as_generated(c).generators()
    dim_c = rank(gens)
    if dim_c == 0:
        return True
    live = [m for m in members if dimension(intersect(c, m)) == dim_c]
    if not live:
        return False
    for m in live:
        if all(member_halfspace(w, m) for w in gens):
            return True
    first, rest = live[0], live[1:]
    violated = list(first.ineq_normals) + list(first.eq_normals) + [neg(e) for e in first.eq_normals]
    for g in violated:
        if any(dot(g, w) > 0 for w in gens):
            if not _covered(HalfspaceCone(c.dim, c.eq_normals, c.ineq_normals + (neg(g),)), rest):
                return False
    return True


def unions_equal(a: Sequence, b: Sequence) -> bool:
    return all(covered_by_union(m, b) for m in a) and all(covered_by_union(m, a) for m in b)


def farkas_polarity_check(f, p1, q1, p2, q2) -> bool:
    """Whether the polar of the halfspace cone built from the index sets equals the generated one."""
    from .graphgeo import build_F, build_G

    gen = build_F(f, p1, q1, p2, q2)
    half = build_G(f, p1, q1, p2, q2)
    # polar of the halfspace cone, computed from its own generators
    polar = double_description(polar_of_generated(double_description(half)))
    return contains_generated(polar, gen) and contains_generated(gen, polar)
