"""Literal data tables for the bases b = 5 * 2^n.

These grids are embedded as constants, keyed by grid cell and by n mod 4,
and verified computationally by the test suite and :mod:`.verify`.  They are
never used as the computation itself, so a transcription slip shows up as a
mismatch against measurement instead of silently steering results.

Grid cells: a pair with both coordinates divisible by g = b/5 is written
g*(p, q) and identified with the cell (p, q), 0 <= q <= p <= 4.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pairs import Pair

Cell = tuple[int, int]

# After exactly n+1 steps, the orbit of g*(p, q) arrives at g*(column entry).
_ARRIVAL_GRID: dict[Cell, tuple[Cell, Cell, Cell, Cell]] = {
    (1, 0): ((1, 0), (4, 3), (2, 1), (3, 2)),
    (2, 0): ((4, 3), (2, 1), (3, 2), (1, 0)),
    (3, 0): ((3, 2), (1, 0), (4, 3), (2, 1)),
    (4, 0): ((2, 1), (3, 2), (1, 0), (4, 3)),
    (4, 1): ((4, 2), (2, 0), (4, 2), (2, 0)),
    (1, 1): ((4, 2), (2, 0), (4, 2), (2, 0)),
    (4, 4): ((4, 2), (2, 0), (4, 2), (2, 0)),
    (3, 2): ((2, 0), (4, 2), (2, 0), (4, 2)),
    (2, 2): ((2, 0), (4, 2), (2, 0), (4, 2)),
    (3, 3): ((2, 0), (4, 2), (2, 0), (4, 2)),
}

# The remaining five cells leave the grid question trivial: (0,0) is a fixed
# pair, and these four step straight onto the fixed pair g*(3, 1).
_ONE_STEP_TO_FIXED: frozenset[Cell] = frozenset({(2, 1), (3, 1), (4, 2), (4, 3)})


@dataclass(frozen=True)
class GridArrival:
    steps: int
    cell: Cell


def grid_arrival(p: int, q: int, n: int) -> GridArrival:
    """Tabulated pair reached from g*(p, q), with the step count."""
    if not 0 <= q <= p <= 4:
        raise ValueError(f"({p}, {q}) is not a canonical grid cell")
    if (p, q) == (0, 0):
        return GridArrival(steps=1, cell=(0, 0))
    if (p, q) in _ONE_STEP_TO_FIXED:
        return GridArrival(steps=1, cell=(3, 1))
    return GridArrival(steps=n + 1, cell=_ARRIVAL_GRID[(p, q)][n % 4])


# ---------------------------------------------------------------------------
# Starting pairs attaining the landing bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LandingWitness:
    start: Pair
    steps: int
    cell: Cell


_FIXED_WITNESS_ROWS: tuple[tuple[Pair, int, tuple[Cell, Cell, Cell, Cell]], ...] = (
    ((4, 1), 1, ((4, 1), (4, 1), (4, 1), (4, 1))),
    ((5, 1), 1, ((4, 0), (4, 0), (4, 0), (4, 0))),
    ((5, 2), 1, ((3, 0), (3, 0), (3, 0), (3, 0))),
    ((9, 1), 2, ((2, 0), (4, 2), (2, 0), (4, 2))),
    ((7, 3), 2, ((4, 2), (2, 0), (4, 2), (2, 0))),
)

_HALVING_WITNESS_ROWS: tuple[tuple[int, tuple[Cell, Cell, Cell, Cell]], ...] = (
    (2, ((3, 2), (1, 0), (4, 3), (2, 1))),
    (4, ((2, 1), (3, 2), (1, 0), (4, 3))),
    (8, ((4, 3), (2, 1), (3, 2), (1, 0))),
    (16, ((1, 0), (4, 3), (2, 1), (3, 2))),
)


def landing_witnesses(n: int) -> list[LandingWitness]:
    """Starting pairs whose landing attains the bound, for base b = 5 * 2^n.

    The first five rows need only n >= 2; the (b/2^k, 5) rows apply once
    their first coordinate is an integer strictly larger than 5.
    """
    if n < 2:
        raise ValueError(f"witness rows need n >= 2, got {n}")
    b = 5 * 2**n
    col = n % 4
    out = [
        LandingWitness(start=start, steps=mult * n, cell=cells[col])
        for start, mult, cells in _FIXED_WITNESS_ROWS
    ]
    for divisor, cells in _HALVING_WITNESS_ROWS:
        if b % divisor == 0 and b // divisor > 5:
            out.append(
                LandingWitness(start=(b // divisor, 5), steps=2 * n + 2, cell=cells[col])
            )
    return out


# ---------------------------------------------------------------------------
# Total steps to the fixed numeral, by first grid cell encountered
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellBound:
    """Bound on total steps from any start whose first grid cell is this one.

    ``cycles`` marks rows whose orbit never reaches the fixed numeral; there
    ``steps`` bounds the step count to the first periodic value instead.  The
    column maxima over non-cycle rows are attained (they equal the worst-case
    distance) once n >= 5.
    """

    steps: int
    cycles: bool


def _lin(a: int, c: int, cycles: bool = False):
    return (a, c, cycles)


_CELL_BOUND_ROWS: dict[Cell, tuple[tuple[int, int, bool], ...]] = {
    (2, 1): (_lin(2, 4), _lin(2, 4), _lin(2, 4), _lin(2, 4)),
    (4, 2): (_lin(2, 2), _lin(2, 2), _lin(2, 2), _lin(2, 2)),
    (4, 3): (_lin(2, 4), _lin(2, 4), _lin(2, 4), _lin(2, 4)),
    (1, 0): (_lin(2, 3, True), _lin(3, 5), _lin(3, 5), _lin(4, 6)),
    (2, 0): (_lin(3, 3), _lin(3, 3), _lin(2, 1, True), _lin(5, 5)),
    (3, 0): (_lin(3, 4), _lin(3, 4), _lin(2, 3), _lin(2, 3)),
    (4, 0): (_lin(2, 3), _lin(3, 4), _lin(3, 4), _lin(2, 3)),
    (4, 1): (_lin(2, 3), _lin(3, 4), _lin(2, 3), _lin(5, 6)),
    (1, 1): (_lin(1, 3), _lin(2, 4), _lin(1, 3), _lin(4, 6)),
    (4, 4): (_lin(1, 3), _lin(2, 4), _lin(1, 3), _lin(4, 6)),
    (3, 2): (_lin(4, 6), _lin(3, 5), _lin(2, 3, True), _lin(3, 5)),
    (2, 2): (_lin(2, 4), _lin(1, 3), _lin(0, 2, True), _lin(1, 3)),
    (3, 3): (_lin(2, 4), _lin(1, 3), _lin(0, 2, True), _lin(1, 3)),
    (0, 0): (_lin(0, 1, True), _lin(0, 1, True), _lin(0, 1, True), _lin(0, 1, True)),
    (3, 1): (_lin(0, 1), _lin(0, 1), _lin(0, 1), _lin(0, 1)),
}


def cell_step_bound(p: int, q: int, n: int) -> CellBound:
    if not 0 <= q <= p <= 4:
        raise ValueError(f"({p}, {q}) is not a canonical grid cell")
    a, c, cycles = _CELL_BOUND_ROWS[(p, q)][n % 4]
    return CellBound(steps=a * n + c, cycles=cycles)


def max_total_steps(n: int) -> int:
    """Largest non-cycle entry of the column for n, over all grid cells."""
    best = 0
    for row in _CELL_BOUND_ROWS.values():
        a, c, cycles = row[n % 4]
        if not cycles:
            best = max(best, a * n + c)
    return best


def cycle_cells(n: int) -> list[Cell]:
    """Grid cells whose column entry is a cycle marker, in sorted order."""
    return sorted(
        cell for cell, row in _CELL_BOUND_ROWS.items() if row[n % 4][2]
    )
