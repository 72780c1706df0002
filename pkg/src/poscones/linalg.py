"""Exact linear algebra over the rationals.

Matrices are lists of rows; entries are ``int`` or ``Fraction``.  Nothing
here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(m: Sequence[Sequence]) -> list[list]:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), 0)


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = to_fraction_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return identity(ncols)
    r, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def det(m: Sequence[Sequence]) -> Fraction:
    a = to_fraction_matrix(m)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                factor = a[i][c] / a[c][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Inverse of a square matrix; raises ``ZeroDivisionError`` if singular."""
    n = len(m)
    aug = [list(row) + identity(n)[i] for i, row in enumerate(to_fraction_matrix(m))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector, same direction."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def berkowitz(m: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial ``det(x I - m)`` by Berkowitz's algorithm.

    Division free.  Returns coefficients from the leading term down, so the
    result has ``len(m) + 1`` entries and starts with 1.
    """
    a = to_fraction_matrix(m)
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    # Toeplitz product over the leading principal submatrices.
    poly = [Fraction(1), -a[0][0]]
    for r in range(1, n):
        # a is split as [[A_r, C], [R, a_rr]] with A_r the leading r x r block.
        col = [a[i][r] for i in range(r)]
        row = a[r][:r]
        block = [ai[:r] for ai in a[:r]]
        # Column of the Toeplitz matrix: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        t = [Fraction(1), -a[r][r]]
        vec = col
        for _ in range(r):
            t.append(-sum((x * y for x, y in zip(row, vec)), Fraction(0)))
            vec = matvec(block, vec)
        # Multiply the (r+2) x (r+1) lower-triangular Toeplitz matrix by poly.
        poly = [
            sum((t[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(t)), Fraction(0))
            for i in range(r + 2)
        ]
    return poly
