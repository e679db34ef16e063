"""Exact Phase-I simplex for conic feasibility.

Decides whether ``v`` is a nonnegative combination of given columns and
returns either the combination or a Farkas functional.  Bland's rule keeps
the method finite; all arithmetic is in :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence


class ConicFeasibility(NamedTuple):
    feasible: bool
    coefficients: Optional[tuple]  # lambda >= 0 with sum lambda_j g_j == v
    farkas: Optional[tuple]  # y with y.g_j >= 0 for all j and y.v < 0


def conic_feasibility(columns: Sequence[Sequence], v: Sequence) -> ConicFeasibility:
    m = len(v)
    k = len(columns)
    signs = [1 if Fraction(b) >= 0 else -1 for b in v]
    # tableau rows: [lambda_1..lambda_k | art_1..art_m | rhs]
    rows = []
    for i in range(m):
        s = signs[i]
        row = [Fraction(s * columns[j][i]) for j in range(k)]
        row += [Fraction(int(i == r)) for r in range(m)]
        row.append(Fraction(s) * Fraction(v[i]))
        rows.append(row)
    basis = [k + i for i in range(m)]
    ncol = k + m

    def reduced_costs():
        # phase-I cost is 1 on artificials, 0 elsewhere
        cb = [1 if b >= k else 0 for b in basis]
        out = []
        for j in range(ncol):
            cj = 1 if j >= k else 0
            out.append(cj - sum(c * rows[r][j] for r, c in enumerate(cb) if c))
        return out

    while True:
        d = reduced_costs()
        entering = next((j for j in range(ncol) if d[j] < 0), None)
        if entering is None:
            break
        best = None
        for r in range(m):
            a = rows[r][entering]
            if a > 0:
                ratio = rows[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:  # cannot happen: phase I is bounded below by zero
            raise ArithmeticError("unbounded phase-I problem")
        r = best[1]
        piv = rows[r][entering]
        rows[r] = [a / piv for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][entering] != 0:
                f = rows[i][entering]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        basis[r] = entering

    infeasibility = sum(rows[r][-1] for r in range(m) if basis[r] >= k)
    if infeasibility == 0:
        lam = [Fraction(0)] * k
        for r, b in enumerate(basis):
            if b < k:
                lam[b] = rows[r][-1]
        return ConicFeasibility(True, tuple(lam), None)

    # simplex multipliers y = c_B B^{-1}; B^{-1} sits in the artificial columns
    cb = [1 if b >= k else 0 for b in basis]
    y = [sum(c * rows[r][k + i] for r, c in enumerate(cb) if c) for i in range(m)]
    w = tuple(-signs[i] * y[i] for i in range(m))
    return ConicFeasibility(False, None, w)
