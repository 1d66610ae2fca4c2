"""Orbit analysis: trajectories, distance maps over the pair graph, and
per-base convergence statistics.

Two independent routes produce the same statistics.  For bases divisible
by 5 the pair graph is walked backwards from the fixed pair and each pair
is weighted by how many numerals carry it; for tiny bases (2 and 4) and as
a validation mode, every integer orbit is enumerated outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digits import DigitQuad, check_base, join_digits, split_digits, step_value, to_digits
from .pairs import (
    Pair,
    canonical_pairs,
    fixed_pair,
    pair_count,
    pair_of_digits,
    predecessors_of,
    step_pair,
)


@dataclass(frozen=True)
class FixedNumeral:
    """Orbit ends on a non-zero numeral equal to its own image."""

    value: int


@dataclass(frozen=True)
class ZeroSink:
    """Orbit falls into the all-zero numeral."""


@dataclass(frozen=True)
class Cycle:
    """Orbit enters a cycle of period >= 2 after ``entry_step`` steps."""

    period: int
    entry_step: int


Terminal = FixedNumeral | ZeroSink | Cycle


class UndeterminedOrbitError(RuntimeError):
    """An orbit neither repeated nor reached a fixed value within its budget."""


def default_step_budget(b: int) -> int:
    # the orbit's pair repeats within ~b^2/2 steps; the slack covers tiny bases
    return b * b + 16


@dataclass
class Trajectory:
    base: int
    start: DigitQuad
    states: list[DigitQuad]
    terminal: Terminal
    distance: int | None


def trajectory(start: DigitQuad, max_steps: int | None = None) -> Trajectory:
    """Full orbit of ``start`` with a terminal verdict.

    ``distance`` is set only for fixed-numeral terminals: the number of steps
    until the fixed numeral first appears.  The state list stops at the fixed
    numeral, or just before the first repeated state.
    """
    b = start.base
    if max_steps is None:
        max_steps = default_step_budget(b)
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")

    values = [start.value]
    seen = {start.value: 0}
    terminal: Terminal
    distance: int | None = None
    while True:
        cur = values[-1]
        nxt = step_value(cur, b)
        if nxt == cur:
            if cur == 0:
                terminal = ZeroSink()
            else:
                terminal = FixedNumeral(cur)
                distance = len(values) - 1
            break
        if nxt in seen:
            entry = seen[nxt]
            terminal = Cycle(period=len(values) - entry, entry_step=entry)
            break
        if len(values) - 1 >= max_steps:
            raise UndeterminedOrbitError(
                f"orbit of {start.value} in base {b} undetermined after {max_steps} steps"
            )
        seen[nxt] = len(values)
        values.append(nxt)

    states = [to_digits(v, b) for v in values]
    return Trajectory(base=b, start=start, states=states, terminal=terminal, distance=distance)


# ---------------------------------------------------------------------------
# Pair-graph distances
# ---------------------------------------------------------------------------


@dataclass
class PairDistanceMap:
    """Least step counts from each canonical pair to the fixed pair.

    Pairs whose orbit never reaches the fixed pair are simply absent from
    ``steps``.
    """

    base: int
    fixed: Pair
    steps: dict[Pair, int]

    def distance(self, pair: Pair) -> int | None:
        return self.steps.get(pair)


def _forward_pair_distances(b: int, fixed: Pair) -> dict[Pair, int]:
    steps: dict[Pair, int] = {fixed: 0}
    for start in canonical_pairs(b):
        path: list[Pair] = []
        on_path: set[Pair] = set()
        cur = start
        while cur not in steps and cur not in on_path:
            path.append(cur)
            on_path.add(cur)
            cur = step_pair(cur, b)
        if cur in steps:
            base_steps = steps[cur]
            for offset, q in enumerate(reversed(path), start=1):
                steps[q] = base_steps + offset
        # a revisit within the path means a cycle avoiding the fixed pair:
        # every pair on the path stays absent
    return steps


def pair_distance_map(b: int) -> PairDistanceMap:
    """Reverse breadth-first distances to the fixed pair; needs 5 | b.

    For bases 2 and 4 there is no fixed pair; use the enumeration route of
    :func:`base_report` instead.
    """
    target = fixed_pair(b)
    steps: dict[Pair, int] = {target: 0}
    frontier = [target]
    while frontier:
        nxt: list[Pair] = []
        for p in frontier:
            for q in predecessors_of(p, b):
                if q not in steps:
                    steps[q] = steps[p] + 1
                    nxt.append(q)
        frontier = nxt
    assert steps == _forward_pair_distances(b, target), b
    return PairDistanceMap(base=b, fixed=target, steps=steps)


def fixed_numeral_value(b: int) -> int:
    """The unique non-zero fixed numeral for 5 | b.

    Computed as the one-step image of any numeral carrying the fixed pair,
    not from a digit formula, so it stays independent of the closed-form
    predictors.
    """
    d, dp = fixed_pair(b)
    representative = join_digits((d, dp, 0, 0), b)
    return step_value(representative, b)


def integer_distance(q: DigitQuad, pdm: PairDistanceMap) -> int | None:
    """Distance of a numeral to the fixed numeral via the pair map.

    A numeral whose pair sits t steps from the fixed pair lies exactly t+1
    steps from the fixed numeral (the last pair step lands on the fixed
    numeral itself and no earlier step can), except for the fixed numeral.
    """
    if q.base != pdm.base:
        raise ValueError(f"numeral base {q.base} != distance map base {pdm.base}")
    if q.value == fixed_numeral_value(q.base):
        return 0
    s = pdm.steps.get(pair_of_digits(q.digits))
    return None if s is None else s + 1


# ---------------------------------------------------------------------------
# Per-base statistics
# ---------------------------------------------------------------------------


@dataclass
class BaseReport:
    """Convergence statistics of one base.

    ``max_distance`` is None when no non-zero fixed numeral exists.
    ``basin_sizes`` (fixed numeral -> basin size) is filled only by the
    enumeration route, where several fixed numerals can coexist.
    """

    base: int
    max_distance: int | None
    convergent_count: int
    convergent_fraction: Fraction
    histogram: dict[int, int]
    fixed_numerals: list[int]
    basin_sizes: dict[int, int] | None = None


def _pairs_report(b: int) -> BaseReport:
    pdm = pair_distance_map(b)
    hist: dict[int, int] = {0: 1, 1: pair_count(pdm.fixed, b) - 1}
    for p, s in pdm.steps.items():
        if p == pdm.fixed:
            continue
        hist[s + 1] = hist.get(s + 1, 0) + pair_count(p, b)
    count = sum(hist.values())
    return BaseReport(
        base=b,
        max_distance=max(hist),
        convergent_count=count,
        convergent_fraction=Fraction(count, b**4),
        histogram=dict(sorted(hist.items())),
        fixed_numerals=[fixed_numeral_value(b)],
    )


def _empty_report(b: int) -> BaseReport:
    return BaseReport(
        base=b,
        max_distance=None,
        convergent_count=0,
        convergent_fraction=Fraction(0, 1),
        histogram={},
        fixed_numerals=[],
    )


def base_report(b: int, method: str = "auto") -> BaseReport:
    """Convergence statistics for one base.

    method:
      - "auto": pair-weighted counting for multiples of 5, full enumeration
        for bases 2 and 4, empty report for fixed-point-free bases.
      - "pairs": force the pair route (multiples of 5 only).
      - "enumeration": force the brute-force integer route.
    """
    check_base(b)
    if method == "enumeration":
        from .enumeration import convergence_report

        return convergence_report(b, with_basins=b in (2, 4))
    if method == "pairs":
        return _pairs_report(b)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if b % 5 == 0:
        return _pairs_report(b)
    if b in (2, 4):
        from .enumeration import convergence_report

        return convergence_report(b, with_basins=True)
    return _empty_report(b)


def distance_histogram(b: int) -> dict[int, int]:
    """Distance -> numeral count; only for bases with a fixed numeral."""
    if b % 5 != 0 and b not in (2, 4):
        raise ValueError(f"base {b} has no non-zero fixed numeral")
    return base_report(b).histogram
