"""Exact-rational simplex for feasibility systems with Farkas certificates.

Systems have variables x >= 0 and rows ``sum a_j x_j (>= | =) b``.  Phase-1
minimizes the artificial total; a positive optimum is an infeasibility proof
and the dual vector read off the final tableau is returned as an exact
Farkas certificate (verified by the caller against the original rows).
Pivoting uses the most-negative reduced cost but falls back to Bland's rule
after degenerate stretches, which keeps termination guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)
_DEGENERATE_LIMIT = 12


@dataclass
class Row:
    """coeffs: variable index -> coefficient; sense '>=' or '=' against rhs."""

    coeffs: dict[int, Fraction]
    sense: str
    rhs: Fraction


@dataclass
class SimplexResult:
    feasible: bool
    model: Optional[list[Fraction]] = None
    farkas: Optional[list[Fraction]] = None  # one multiplier per input row
    pivots: int = 0


def solve_feasibility(num_vars: int, rows: Sequence[Row]) -> SimplexResult:
    """Decide feasibility of {x >= 0, rows}; return a model or a Farkas
    vector y with: y_i >= 0 on '>=' rows, y free on '=' rows,
    sum_i y_i a_i <= 0 componentwise, and sum_i y_i b_i > 0."""
    m = len(rows)
    if m == 0:
        return SimplexResult(True, [_ZERO] * num_vars)

    # normalized working rows with rhs >= 0; remember sign flips
    flip = [False] * m
    work: list[tuple[dict[int, Fraction], str, Fraction]] = []
    for i, row in enumerate(rows):
        coeffs, sense, rhs = dict(row.coeffs), row.sense, Fraction(row.rhs)
        if rhs < 0:
            coeffs = {j: -c for j, c in coeffs.items()}
            rhs = -rhs
            flip[i] = True
            if sense == ">=":
                sense = "<="
        work.append((coeffs, sense, rhs))

    # column layout: real vars | slack/surplus | row markers (artificial or
    # slack serving as the initial identity)
    ncols = num_vars
    surplus_col: list[Optional[int]] = [None] * m
    for i, (_, sense, _) in enumerate(work):
        if sense == ">=":
            surplus_col[i] = ncols
            ncols += 1
    marker_col = [0] * m
    artificial = [False] * m
    for i, (_, sense, _) in enumerate(work):
        if sense == "<=":
            marker_col[i] = ncols  # plain slack, starts basic
        else:
            marker_col[i] = ncols
            artificial[i] = True
        ncols += 1

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (coeffs, sense, rhs) in enumerate(work):
        line = [_ZERO] * (ncols + 1)
        for j, c in coeffs.items():
            line[j] = Fraction(c)
        if surplus_col[i] is not None:
            line[surplus_col[i]] = -_ONE
        line[marker_col[i]] = _ONE
        line[ncols] = rhs
        tableau.append(line)
        basis.append(marker_col[i])

    # phase-1 objective: minimize the sum of artificial variables
    cost = [_ZERO] * ncols
    for i in range(m):
        if artificial[i]:
            cost[marker_col[i]] = _ONE
    # reduced-cost row: z_j - c_j for basis-cost projection
    obj = [_ZERO] * (ncols + 1)
    for i in range(m):
        if artificial[i]:
            for j in range(ncols + 1):
                obj[j] += tableau[i][j]
    # entering condition: obj[j] - cost[j] > 0 (minimization)

    pivots = 0
    degenerate_run = 0
    enterable = [j for j in range(ncols) if not (cost[j] == _ONE)]
    while True:
        use_bland = degenerate_run >= _DEGENERATE_LIMIT
        enter = -1
        best = _ZERO
        for j in enterable:
            red = obj[j] - cost[j]
            if red > 0:
                if use_bland:
                    enter = j
                    break
                if red > best:
                    best = red
                    enter = j
        if enter < 0:
            break
        leave = -1
        best_ratio: Optional[Fraction] = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][ncols] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise ArithmeticError("phase-1 objective unbounded; invalid system")
        if best_ratio == 0:
            degenerate_run += 1
        else:
            degenerate_run = 0
        _pivot(tableau, obj, basis, leave, enter, ncols)
        pivots += 1

    total_infeasibility = obj[ncols]
    if total_infeasibility > 0:
        # Farkas vector: y_i = phase-1 basis cost applied to column B^-1 e_i
        y = []
        for i in range(m):
            col = marker_col[i]
            yi = _ZERO
            for r in range(m):
                if cost[basis[r]] == _ONE:
                    yi += tableau[r][col]
            if flip[i]:
                yi = -yi
            y.append(yi)
        return SimplexResult(False, None, y, pivots)

    model = [_ZERO] * num_vars
    for i in range(m):
        if basis[i] < num_vars:
            model[basis[i]] = tableau[i][ncols]
    return SimplexResult(True, model, None, pivots)


def _pivot(tableau, obj, basis, leave, enter, ncols):
    line = tableau[leave]
    piv = line[enter]
    if piv != 1:
        inv = _ONE / piv
        tableau[leave] = line = [v * inv for v in line]
    for row in tableau:
        if row is line:
            continue
        f = row[enter]
        if f:
            for j in range(ncols + 1):
                if line[j]:
                    row[j] -= f * line[j]
    f = obj[enter]
    if f:
        for j in range(ncols + 1):
            if line[j]:
                obj[j] -= f * line[j]
    basis[leave] = enter


def verify_farkas(num_vars: int, rows: Sequence[Row], y: Sequence[Fraction]) -> bool:
    """Exact check that y certifies infeasibility of {x >= 0, rows}."""
    if len(y) != len(rows):
        return False
    combo = [_ZERO] * num_vars
    total = _ZERO
    for row, yi in zip(rows, y):
        if row.sense == ">=" and yi < 0:
            return False
        for j, c in row.coeffs.items():
            combo[j] += yi * c
        total += yi * row.rhs
    return all(c <= 0 for c in combo) and total > 0
