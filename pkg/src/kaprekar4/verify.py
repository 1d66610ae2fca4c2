"""Prediction-versus-measurement harness.

``verify_base`` compares the closed-form predictors against the measured
dynamics of one base.  Depth "formulas" checks the two headline numbers;
depth "deep" also exercises the structural claims behind them (predecessor
tables, basin structure, grid landing bounds, the literal data tables, and
integer-level cycle entries).  Mismatches are reported as data, never
raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .digits import join_digits, step_value
from .dynamics import (
    Cycle,
    ZeroSink,
    base_report,
    fixed_numeral_value,
    pair_distance_map,
    trajectory,
)
from .digits import to_digits
from .pairs import (
    Pair,
    PairType,
    canonical_pairs,
    classify_pair,
    condensed_predecessors_of,
    fixed_pair,
    predecessors_of,
    step_pair,
)
from .predictions import (
    FiveMultiple,
    NoFixedPoint,
    TwoOrFour,
    classify_base,
    grid_landing,
    landing_bound,
    predict_convergent_fraction,
    predict_max_distance,
)
from .tables import (
    cell_step_bound,
    cycle_cells,
    grid_arrival,
    landing_witnesses,
    max_total_steps,
)

DEPTHS = ("formulas", "deep")

MATCH = "match"
MISMATCH = "mismatch"
NOT_PREDICTED = "not-predicted"


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class PredictionReport:
    base: int
    depth: str
    predicted_max_distance: int | None
    measured_max_distance: int | None
    max_distance_verdict: str
    predicted_fraction: Fraction | None
    measured_fraction: Fraction | None
    fraction_verdict: str
    checks: list[Check] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return (
            self.max_distance_verdict != MISMATCH
            and self.fraction_verdict != MISMATCH
            and all(c.passed for c in self.checks)
        )


def _verdict(predicted, measured) -> str:
    if predicted is None:
        return NOT_PREDICTED
    return MATCH if predicted == measured else MISMATCH


# ---------------------------------------------------------------------------
# Deep checks
# ---------------------------------------------------------------------------


def _pair_numerals(pair: Pair, b: int):
    """One numeral value per sorted digit multiset realising ``pair``."""
    d, dp = pair
    for s in range(b - d):
        for t in range(d - dp + 1):
            yield join_digits((s + d, s + t + dp, s + t, s), b)


def _check_fixed_numeral_landing(b: int) -> Check:
    """Numerals on the fixed pair step onto the fixed numeral; numerals on a
    first-generation predecessor pair never do."""
    target = fixed_pair(b)
    v_fixed = fixed_numeral_value(b)
    for x in _pair_numerals(target, b):
        if step_value(x, b) != v_fixed:
            return Check("fixed-numeral-landing", False, f"{x} misses the fixed numeral")
    for p in predecessors_of(target, b) - {target}:
        for x in _pair_numerals(p, b):
            if step_value(x, b) == v_fixed:
                return Check(
                    "fixed-numeral-landing", False, f"{x} (pair {p}) short-circuits"
                )
    return Check("fixed-numeral-landing", True)


def _check_predecessor_inversion(b: int) -> Check:
    preimage: dict[Pair, set[Pair]] = {}
    for p in canonical_pairs(b):
        preimage.setdefault(step_pair(p, b), set()).add(p)
    for p in canonical_pairs(b):
        scanned = preimage.get(p, set())
        if predecessors_of(p, b) != scanned:
            return Check("predecessor-inversion", False, f"table wrong at {p}")
        if b % 4 == 0 and b > 4 and condensed_predecessors_of(p, b) != scanned:
            return Check("predecessor-inversion", False, f"condensed rules wrong at {p}")
    return Check("predecessor-inversion", True)


def _check_fixed_pair_unique(b: int) -> Check:
    self_fixed = {p for p in canonical_pairs(b) if step_pair(p, b) == p}
    expected = {(0, 0), fixed_pair(b)}
    ok = self_fixed == expected
    return Check("fixed-pair-unique", ok, "" if ok else f"self-fixed pairs {self_fixed}")


def _check_no_fixed_numeral(b: int) -> Check:
    self_fixed = {p for p in canonical_pairs(b) if step_pair(p, b) == p}
    ok = self_fixed == {(0, 0)}
    return Check("no-fixed-numeral", ok, "" if ok else f"self-fixed pairs {self_fixed}")


def _canon(x: int, y: int) -> Pair:
    return (x, y) if x >= y else (y, x)


def _h_set(pair: Pair, b: int) -> frozenset[Pair]:
    x, y = pair
    return frozenset(
        {_canon(x, y), _canon(x, b - y), _canon(y, b - x), _canon(b - y, b - x)}
    )


def _basin_structure_checks(b: int, m: int, n: int) -> list[Check]:
    """Structural claims about the fixed pair's predecessor closure, m > 1."""
    closure = set(pair_distance_map(b).steps)
    checks = []

    bad_type = [p for p in closure if classify_pair(p, b) is not PairType.A]
    checks.append(
        Check(
            "basin-pairs-type-a",
            not bad_type,
            "" if not bad_type else f"non-(a) pairs {sorted(bad_type)[:4]}",
        )
    )
    bad_mult = [p for p in closure if p[0] % m or p[1] % m]
    checks.append(
        Check(
            "basin-coordinates-multiples",
            not bad_mult,
            "" if not bad_mult else f"coords not multiples of {m}: {sorted(bad_mult)[:4]}",
        )
    )
    expected = 4 ** (n + 1)
    checks.append(
        Check(
            "basin-pair-count",
            len(closure) == expected,
            f"{len(closure)} pairs, expected {expected}",
        )
    )

    families = {_h_set(p, b) for p in closure}
    covered: set[Pair] = set()
    ok = True
    detail = ""
    for fam in families:
        if len(fam) != 4 or not fam <= closure or fam & covered:
            ok = False
            detail = f"family {sorted(fam)} breaks the partition"
            break
        covered |= fam
    if ok and covered != closure:
        ok = False
        detail = "families do not cover the closure"
    checks.append(Check("basin-four-families", ok, detail))
    return checks


def _grid_checks(b: int, n: int) -> list[Check]:
    """Landing bounds, data-table rows, and iterate identities for b = 5*2^n."""
    checks = []
    g = 2**n

    # measured landing of every canonical pair, grouped by cell
    worst: dict[Pair, int] = {}
    over: list[Pair] = []
    for p in canonical_pairs(b):
        landing = grid_landing(p, b)
        if landing.steps > landing_bound(*landing.cell, n):
            over.append(p)
        worst[landing.cell] = max(worst.get(landing.cell, -1), landing.steps)
    checks.append(
        Check(
            "landing-bounds",
            not over,
            "" if not over else f"bound exceeded from {over[:4]}",
        )
    )

    # arrival table: iterate each grid cell the stated number of steps
    arrivals_ok = True
    detail = ""
    for p in range(5):
        for q in range(p + 1):
            entry = grid_arrival(p, q, n)
            cur = (p * g, q * g)
            for _ in range(entry.steps):
                cur = step_pair(cur, b)
            if cur != (entry.cell[0] * g, entry.cell[1] * g):
                arrivals_ok = False
                detail = f"cell ({p},{q}) reaches {cur}, table says {entry.cell}"
                break
    checks.append(Check("grid-arrival-table", arrivals_ok, detail))

    # iterate identities along the two slow approach chains
    cur = (1, 1)
    ok = True
    for t in range(1, n + 2):
        cur = step_pair(cur, b)
        if cur != (b - 2 ** (t - 1), b - 3 * 2 ** (t - 1)):
            ok = False
            break
    checks.append(Check("iterates-from-(1,1)", ok))
    cur = (1, 0)
    ok = True
    for t in range(1, n + 3):
        cur = step_pair(cur, b)
        if t >= 3 and cur != (b - 2 ** (t - 2), b - 2 ** (t - 1)):
            ok = False
            break
    checks.append(Check("iterates-from-(1,0)", ok))

    if n < 5:
        return checks

    # tightness: witness rows, per-cell attainment, column maxima, cycle rows
    ok = True
    detail = ""
    for w in landing_witnesses(n):
        landing = grid_landing(w.start, b)
        if (landing.steps, landing.cell) != (w.steps, w.cell):
            ok = False
            detail = f"start {w.start}: measured {landing}, stated ({w.steps}, {w.cell})"
            break
    checks.append(Check("landing-witnesses", ok, detail))

    unattained = [
        cell
        for cell, steps in sorted(worst.items())
        if steps != landing_bound(*cell, n)
    ]
    checks.append(
        Check(
            "landing-attainment",
            not unattained,
            "" if not unattained else f"bound not attained for cells {unattained}",
        )
    )

    predicted = predict_max_distance(b)
    column_max = max_total_steps(n)
    checks.append(
        Check(
            "cell-bound-column-max",
            column_max == predicted,
            f"column max {column_max}, predicted distance {predicted}",
        )
    )
    checks.append(_check_cycle_rows(b, n))
    return checks


def _pair_on_cycle(pair: Pair, b: int) -> bool:
    cur = step_pair(pair, b)
    for _ in range(2 * b):
        if cur == pair:
            return True
        cur = step_pair(cur, b)
    return False


def _cycle_row_representatives(cell: Pair, b: int, n: int) -> list[int]:
    g = 2**n
    if cell == (0, 0):
        repunit = join_digits((1, 1, 1, 1), b)
        return [repunit, 2 * repunit]
    starts = [(cell[0] * g, cell[1] * g)]
    starts.extend(w.start for w in landing_witnesses(n) if w.cell == cell)
    values = []
    for d, dp in starts:
        values.append(join_digits((d, dp, 0, 0), b))
        if d + 1 < b:
            values.append(join_digits((d + 1, dp + 1, 1, 1), b))  # shifted carrier
    return values


def _check_cycle_rows(b: int, n: int) -> Check:
    """Cycle-marked cells: sampled orbits must turn periodic within the
    tabulated step count.

    When the cell's grid pair sits off the loop itself, the count is exactly
    attained by any carrier of that pair and equality is required.  When the
    grid pair is a member of the loop, worst-case orbits provably turn
    periodic one or more steps before the tabulated count (they merge into
    the loop just before landing on the grid), so only the bound is asserted
    and the measured entries are reported.
    """
    details = []
    g = 2**n
    for cell in cycle_cells(n):
        bound = cell_step_bound(*cell, n)
        exact = cell != (0, 0) and not _pair_on_cycle((cell[0] * g, cell[1] * g), b)
        entries = []
        for value in _cycle_row_representatives(cell, b, n):
            t = trajectory(to_digits(value, b))
            if cell == (0, 0):
                ok = isinstance(t.terminal, ZeroSink) and len(t.states) - 1 == bound.steps
                entries.append(len(t.states) - 1)
            else:
                ok = isinstance(t.terminal, Cycle) and t.terminal.period >= 2
                if ok:
                    entries.append(t.terminal.entry_step)
                    if exact:
                        ok = t.terminal.entry_step == bound.steps
                    else:
                        ok = t.terminal.entry_step <= bound.steps
            if not ok:
                return Check(
                    "cycle-rows",
                    False,
                    f"cell {cell}: start {value} gives {t.terminal}, tabulated {bound.steps}",
                )
        details.append(f"{cell}: entries {sorted(set(entries))} within {bound.steps}")
    return Check("cycle-rows", True, "; ".join(details))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def verify_base(b: int, depth: str = "formulas") -> PredictionReport:
    if depth not in DEPTHS:
        raise ValueError(f"depth must be one of {DEPTHS}, got {depth!r}")
    cls = classify_base(b)
    report = base_report(b)
    measured_max = report.max_distance
    measured_fraction = report.convergent_fraction if report.fixed_numerals else None
    predicted_max = predict_max_distance(b)
    predicted_fraction = predict_convergent_fraction(b)

    out = PredictionReport(
        base=b,
        depth=depth,
        predicted_max_distance=predicted_max,
        measured_max_distance=measured_max,
        max_distance_verdict=_verdict(predicted_max, measured_max),
        predicted_fraction=predicted_fraction,
        measured_fraction=measured_fraction,
        fraction_verdict=_verdict(predicted_fraction, measured_fraction),
    )
    if depth != "deep":
        return out

    if isinstance(cls, NoFixedPoint):
        out.checks.append(_check_no_fixed_numeral(b))
        return out

    out.checks.append(_check_predecessor_inversion(b))
    if isinstance(cls, TwoOrFour):
        out.checks.append(
            Check(
                "fixed-numerals-exist",
                bool(report.fixed_numerals),
                f"fixed numerals {report.fixed_numerals}",
            )
        )
        return out

    assert isinstance(cls, FiveMultiple)
    out.checks.append(_check_fixed_pair_unique(b))
    out.checks.append(_check_fixed_numeral_landing(b))
    if cls.m > 1:
        out.checks.extend(_basin_structure_checks(b, cls.m, cls.n))
    elif cls.n >= 2:
        out.checks.extend(_grid_checks(b, cls.n))
    return out
