"""Dense exact linear algebra over Q (and over any ring with exact division).

Sizes here are tiny (interpolation systems with <= 10 unknowns, Macaulay
matrices up to ~70x70), so clarity beats asymptotics: plain fraction
arithmetic for solving, fraction-free Bareiss elimination for
determinants over polynomial rings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .errors import PreconditionError

Matrix = List[List]


def gauss_solve(a: Matrix, b: Sequence) -> Optional[List[Fraction]]:
    """Solve the square system a*x = b exactly; None if a is singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def solve_underdetermined(a: Matrix, b: Sequence):
    """Row-reduce the (possibly non-square) system a*x = b.

    Returns (particular, basis, free_cols) where `particular` has zeros in
    all free columns and `basis` spans the kernel (one vector per free
    column, with a 1 in that column).  Raises if the system is
    inconsistent.
    """
    rows, cols = len(a), len(a[0]) if a else 0
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []  # (row, col)
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [v - f * w for v, w in zip(m[i], m[r])]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            raise PreconditionError("inconsistent linear system")
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    particular = [Fraction(0)] * cols
    for (pr, pc) in pivots:
        particular[pc] = m[pr][cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for (pr, pc) in pivots:
            vec[pc] = -m[pr][fc]
        basis.append(vec)
    return particular, basis, free_cols


def bareiss_det(matrix: Matrix, exact_div: Callable = None):
    """Fraction-free determinant (Bareiss); exact over any integral domain.

    `exact_div(a, b)` must implement exact division; defaults to `/`
    (fine for Fraction entries).
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    div = exact_div if exact_div is not None else (lambda x, y: x / y)
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            piv = next((r for r in range(k + 1, n) if m[r][k]), None)
            if piv is None:
                zero = m[k][k]
                return zero  # a zero of the right type
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else div(num, prev)
            m[i][k] = m[k][k] * 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def vandermonde_solve(nodes: Sequence[Fraction], values: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients (b_0..b_{n-1}) of the unique poly of degree < n through (node_i, value_i).

    Newton divided differences, fully exact.  Repeated nodes are rejected.
    """
    nodes = [Fraction(x) for x in nodes]
    values = [Fraction(y) for y in values]
    n = len(nodes)
    if n != len(values):
        raise PreconditionError("nodes and values must have equal length")
    if len(set(nodes)) != n:
        raise PreconditionError("singular Vandermonde: repeated nodes")
    # divided-difference table
    dd = list(values)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level])
    # expand Newton form into monomial coefficients
    coeffs = [Fraction(0)] * n
    coeffs[0] = dd[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # multiply running poly by (x - nodes[i]) then add dd[i]
        for j in range(deg, -1, -1):
            coeffs[j + 1] += coeffs[j]
            coeffs[j] = -nodes[i] * coeffs[j]
        deg += 1
        coeffs[0] += dd[i]
    return coeffs
