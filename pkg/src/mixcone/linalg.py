"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are lists of such tuples.  Nothing in this package touches floating
point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction
RVector = tuple  # tuple[Fraction, ...]
RMatrix = list  # list[RVector]


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: an exact engine must not silently round its input.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec(entries: Iterable) -> RVector:
    return tuple(Q(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> RMatrix:
    m = [vec(r) for r in rows]
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("matrix rows have unequal length")
    return m


def zeros(n: int) -> RVector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> RVector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence, v: Sequence) -> RVector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> RVector:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> RVector:
    return tuple(c * a for a in v)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> RVector:
    """Return ``sum(c * v)`` over paired coefficients and vectors in dimension n."""
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                out[i] += c * a
    return tuple(out)


def matvec(m: Sequence[Sequence], v: Sequence) -> RVector:
    return tuple(dot(row, v) for row in m)


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> RMatrix:
    if not m:
        return [()] * (ncols or 0)
    return [tuple(col) for col in zip(*m)]


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def rref(m: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[RMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are kept at the bottom so the result has the shape of ``m``.
    """
    rows = [list(vec(r)) for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [a / piv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in rows], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def kernel_basis(m: Sequence[Sequence], ncols: Optional[int] = None) -> list[RVector]:
    """Basis of ``{x : m x = 0}``; ``ncols`` is required when ``m`` has no rows."""
    if not m:
        if ncols is None:
            raise ValueError("ncols is required for a matrix without rows")
        return [unit(ncols, i) for i in range(ncols)]
    n = len(m[0]) if ncols is None else ncols
    red, pivots = rref(m, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[RVector]:
    """One exact solution of ``m x = b``, or None when the system is inconsistent."""
    if len(b) != len(m):
        raise ValueError(f"dimension mismatch: {len(m)} rows but rhs of length {len(b)}")
    if not m:
        if ncols is None:
            raise ValueError("ncols is required for a matrix without rows")
        return zeros(ncols)
    n = len(m[0]) if ncols is None else ncols
    aug = [tuple(row) + (bi,) for row, bi in zip(vec_rows(m), vec(b))]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


def vec_rows(m: Sequence[Sequence]) -> RMatrix:
    return [vec(r) for r in m]


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a greedy rank-growing subsequence of ``vectors``."""
    chosen: list[int] = []
    basis: RMatrix = []
    for i, v in enumerate(vectors):
        if is_zero(v):
            continue
        trial = basis + [vec(v)]
        if rank(trial) == len(trial):
            basis = trial
            chosen.append(i)
    return chosen


def left_inverse(columns: Sequence[Sequence], n: int) -> RMatrix:
    """Matrix P with ``P @ B = I`` where B has the given independent columns.

    Coordinates of a vector ``w`` in span(B) are then ``P @ w``.  Rows of P are
    supported on a set of pivot coordinates of B.
    """
    d = len(columns)
    if d == 0:
        return []
    # rows of B^T are the columns; pivots of B^T pick d independent coordinates
    _, coords = rref(columns, n)
    sub_b = [[Fraction(columns[j][c]) for j in range(d)] for c in coords]
    inv = inverse(sub_b)
    p = []
    for i in range(d):
        row = [Fraction(0)] * n
        for k, c in enumerate(coords):
            row[c] = inv[i][k]
        p.append(tuple(row))
    return p


def inverse(m: Sequence[Sequence]) -> RMatrix:
    n = len(m)
    aug = [tuple(vec(row)) + unit(n, i) for i, row in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of ``v`` to a primitive integer vector.

    The direction is preserved, so this is the canonical form of a ray.
    """
    fr = vec(v)
    den = reduce(lcm, (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def primitive_line(v: Sequence) -> tuple[int, ...]:
    """Canonical integer representative of the line through ``v``.

    Like :func:`primitive` but the first nonzero entry is made positive.
    """
    p = primitive(v)
    for a in p:
        if a != 0:
            return p if a > 0 else tuple(-b for b in p)
    return p


def subspace_basis(vectors: Iterable[Sequence], n: int) -> list[tuple[int, ...]]:
    """Canonical basis of the span: primitive rows of the RREF, sorted."""
    rows = [vec(v) for v in vectors]
    if not rows:
        return []
    red, pivots = rref(rows, n)
    return sorted(primitive_line(r) for r in red[: len(pivots)])


def format_rational(x) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v: Sequence) -> list[str]:
    return [format_rational(a) for a in v]
