"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` values, which are always stored in
lowest terms with a positive denominator.  Vectors are tuples of fractions and
matrices are tuples of such row tuples.  Everything here is immutable and
free of side effects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ContractError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(value) -> Fraction:
    """Parse an int, a Fraction or a ``"p/q"`` string into a Fraction.

    Floats and booleans are refused because they cannot be trusted to be
    exact.  A zero denominator raises :class:`ContractError`.
    """
    if isinstance(value, bool):
        raise ContractError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if not m:
            raise ContractError(f"not a rational number: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ContractError(f"zero denominator in {value!r}")
        return Fraction(num, den)
    raise ContractError(f"not a rational number: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int, sign: int = 1) -> Vector:
    """The ``i``-th standard basis vector of dimension ``n`` (0-based), times ``sign``."""
    return tuple(Fraction(sign) if k == i else Fraction(0) for k in range(n))


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ContractError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise ContractError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    if len(a) != len(b):
        raise ContractError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def linear_combination(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for c, vec in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(vec):
                out[k] += c * x
    return tuple(out)


def transpose(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not rows:
        return tuple(() for _ in range(ncols or 0))
    return tuple(tuple(col) for col in zip(*rows))


def _check_rect(rows: Sequence[Sequence]) -> int:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ContractError("matrix rows have unequal lengths")
    return widths.pop() if widths else 0


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    ncols = _check_rect(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve_linear(rows: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[Vector]:
    """Some exact solution of ``rows @ x = b``, or None when inconsistent.

    ``ncols`` is needed only when ``rows`` is empty.
    """
    if len(b) != len(rows):
        raise ContractError(f"right-hand side has {len(b)} entries for {len(rows)} rows")
    width = _check_rect(rows) if rows else (ncols or 0)
    if ncols is not None and rows and width != ncols:
        raise ContractError("matrix width does not match ncols")
    aug = [list(r) + [b_i] for r, b_i in zip(rows, b)]
    m, pivots = rref(aug)
    if width in pivots:
        return None
    x = [Fraction(0)] * width
    for i, c in enumerate(pivots):
        x[c] = m[i][width]
    return tuple(x)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """A basis of ``{x : rows @ x = 0}``."""
    if rows and _check_rect(rows) != ncols:
        raise ContractError("matrix width does not match ncols")
    m, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fc]
        basis.append(tuple(x))
    return basis


def row_space_basis(rows: Sequence[Sequence]) -> list[Vector]:
    m, pivots = rref(rows) if rows else ([], [])
    return [tuple(m[i]) for i in range(len(pivots))]


def primitive(v: Sequence) -> Vector:
    """Positive rescaling of ``v`` to coprime integer entries (zero stays zero)."""
    from math import gcd, lcm

    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, abs(k))
    return tuple(Fraction(k // g) for k in ints)
