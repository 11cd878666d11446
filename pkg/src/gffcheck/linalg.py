"""Exact linear algebra over scalar fields and rationals.

Square matrices are plain nested sequences (lists or numpy object arrays)
of :class:`ScalarField` entries.  Determinants and inverses use
fraction-free (Bareiss) elimination over the polynomial ring, so the only
gcds computed are the final cancellations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from sympy.polys.rings import PolyElement

from .scalars import Chart, ScalarField, polynomial_ring

Matrix = Sequence[Sequence[ScalarField]]


def _chart_of(m: Matrix) -> Chart:
    try:
        return m[0][0].chart
    except (IndexError, AttributeError):
        raise ValueError("expected a non-empty matrix of scalar fields") from None


def _check_square(m: Matrix) -> int:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square and non-empty")
    return n


def _polynomial_rows(m: Matrix):
    """Clear denominators row by row.

    Returns the polynomial rows and the product of the row multipliers, so
    that det(m) = det(rows) / multiplier.
    """
    ring = _chart_of(m).ring
    rows, mult = [], ring.one
    for row in m:
        den = ring.one
        for f in row:
            if f.den != 1:
                den = den.lcm(f.den)
        if den == 1:
            rows.append([f.num for f in row])
        else:
            rows.append([f.num * den.exquo(f.den) for f in row])
            mult *= den
    return rows, mult


def bareiss_det(rows: list[list[PolyElement]], ring) -> PolyElement:
    """Fraction-free determinant of a square matrix of polynomials."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, ring.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = akk * a[i][j] - aik * a[k][j]
                a[i][j] = num if prev == 1 else num.exquo(prev)
        prev = akk
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def matrix_det(m: Matrix) -> ScalarField:
    """Exact determinant."""
    _check_square(m)
    chart = _chart_of(m)
    rows, mult = _polynomial_rows(m)
    det = bareiss_det(rows, chart.ring)
    return ScalarField(chart, det, mult).reduced()


def matrix_inverse(m: Matrix) -> np.ndarray:
    """Exact inverse by fraction-free Gauss-Jordan elimination.

    Raises ``ZeroDivisionError`` when ``m`` is identically singular.
    """
    n = _check_square(m)
    chart = _chart_of(m)
    ring = chart.ring
    rows, _ = _polynomial_rows(m)
    # Row i was scaled by its own multiplier; remember them to undo it.
    scales = []
    for row in m:
        den = ring.one
        for f in row:
            if f.den != 1:
                den = den.lcm(f.den)
        scales.append(den)
    a = [r + [ring.one if i == j else ring.zero for j in range(n)] for i, r in enumerate(rows)]
    prev = ring.one
    for k in range(n):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise ZeroDivisionError("matrix is identically singular")
        akk = a[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = a[i][k]
            for j in range(2 * n):
                if j == k:
                    continue
                num = akk * a[i][j] - aik * a[k][j]
                a[i][j] = num if prev == 1 else num.exquo(prev)
            a[i][k] = ring.zero
        prev = akk
    # Now the left block is diag(d, ..., d) where d = a[n-1][n-1].  The
    # right block B satisfies rows * B' = d I after undoing row swaps, and
    # since the scaled matrix is S*m with S = diag(scales): m^-1 = B S / d.
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        d = a[i][i]
        for j in range(n):
            out[i, j] = ScalarField(chart, a[i][n + j] * scales[j], d).reduced()
    return out


def matrix_rank(m: Matrix) -> int:
    """Generic rank over the field of rational functions."""
    if not len(m):
        return 0
    chart = _chart_of(m)
    ring = chart.ring
    rows = []
    for row in m:
        den = ring.one
        for f in row:
            if f.den != 1:
                den = den.lcm(f.den)
        rows.append([f.num * den.exquo(f.den) if f.den != 1 else f.num for f in row])
    ncols = len(rows[0])
    rank, prev = 0, ring.one
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            aic = rows[i][col]
            for j in range(col, ncols):
                num = p * rows[i][j] - aic * rows[rank][j]
                rows[i][j] = num if prev == 1 else num.exquo(prev)
        prev = p
        rank += 1
    return rank


def char_poly_ring(chart: Chart, name: str = "lambda"):
    """Ring over the chart coordinates plus an auxiliary variable."""
    while name in chart.coords:
        name = name + "_"
    return polynomial_ring(chart.coords + (name,)), name


def matrix_char_poly(m: Matrix, name: str = "lambda") -> PolyElement:
    """det(m - lambda I) as a polynomial in the coordinates and lambda."""
    n = _check_square(m)
    chart = _chart_of(m)
    ring, _ = char_poly_ring(chart, name)
    lam = ring.gens[-1]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            f = m[i][j].reduced()
            if f.den != 1:
                raise ValueError("characteristic polynomial needs polynomial entries")
            p = f.num.set_ring(ring)
            row.append(p - lam if i == j else p)
        rows.append(row)
    return bareiss_det(rows, ring)


def evaluate_matrix(m: Matrix, point: Mapping[str, Fraction]) -> list[list[Fraction]]:
    return [[f.evaluate(point) for f in row] for row in m]


def rational_inertia(a: list[list[Fraction]]) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Symmetric congruence diagonalization: pivot on a nonzero diagonal
    entry when one exists; otherwise replace e_i by e_i + e_j for some
    nonzero off-diagonal a_ij, which creates the diagonal entry 2 a_ij.
    """
    a = [[Fraction(v) for v in row] for row in a]
    n = len(a)
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    plus = minus = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and a[i][j] != 0), None
            )
            if pair is None:
                break  # the remaining block is zero
            i, j = pair
            # row/column operation: e_i <- e_i + e_j
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return plus, minus, n - plus - minus


def signature_at_point(m: Matrix, point: Mapping[str, Fraction]) -> tuple[int, int]:
    """(n_plus, n_minus) of a symmetric matrix of fields at a rational point."""
    values = evaluate_matrix(m, point)
    plus, minus, zero = rational_inertia(values)
    if zero:
        raise ZeroDivisionError("matrix is singular at the point")
    return plus, minus
