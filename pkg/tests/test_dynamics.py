import random

import pytest

from kaprekar4.digits import DigitQuad, join_digits, to_digits
from kaprekar4.dynamics import (
    Cycle,
    FixedNumeral,
    UndeterminedOrbitError,
    ZeroSink,
    base_report,
    distance_histogram,
    fixed_numeral_value,
    integer_distance,
    pair_distance_map,
    trajectory,
)
from kaprekar4.pairs import canonical_pairs, pair_count, step_pair
from oracles import oracle_distance, oracle_step


def test_worked_chain_from_0889():
    t = trajectory(to_digits(889, 10))
    assert [s.value for s in t.states] == [889, 8991, 8082, 8532, 6174]
    assert t.terminal == FixedNumeral(6174)
    assert t.distance == 4


def test_repdigit_reaches_zero_sink():
    t = trajectory(DigitQuad(10, (5, 5, 5, 5)))
    assert t.terminal == ZeroSink()
    assert [s.value for s in t.states] == [5555, 0]
    assert t.distance is None


def test_zero_start():
    t = trajectory(to_digits(0, 10))
    assert t.terminal == ZeroSink()
    assert len(t.states) == 1


def test_base5_orbit_of_one():
    t = trajectory(to_digits(1, 5))
    assert [s.value for s in t.states] == [1, 124, 496, 392]
    assert t.terminal == FixedNumeral(392)
    assert t.distance == 3  # within the base-5 worst case of 4


def test_start_at_fixed_numeral():
    t = trajectory(to_digits(6174, 10))
    assert t.distance == 0
    assert len(t.states) == 1


def test_cycle_terminal_base_20():
    t = trajectory(to_digits(64000, 20))  # digits (8,0,0,0)
    assert t.terminal == Cycle(period=6, entry_step=1)
    assert len(t.states) == 7
    # consecutive states follow the step map
    for cur, nxt in zip(t.states, t.states[1:]):
        assert oracle_step(cur.value, 20) == nxt.value


def test_undetermined_orbit():
    with pytest.raises(UndeterminedOrbitError):
        trajectory(to_digits(889, 10), max_steps=1)
    with pytest.raises(ValueError):
        trajectory(to_digits(889, 10), max_steps=0)


# ---------------------------------------------------------------------------
# pair distance map
# ---------------------------------------------------------------------------


def test_pair_distance_map_base_10():
    pdm = pair_distance_map(10)
    assert pdm.fixed == (6, 2)
    assert pdm.distance((6, 2)) == 0
    assert pdm.distance((8, 1)) == 2
    assert pdm.distance((9, 0)) == pdm.distance((8, 1)) + 1
    assert pdm.distance((5, 5)) == 4  # (5,5) -> (1,1) -> (9,7) -> ... -> (6,2)
    assert pdm.distance((0, 0)) is None
    assert max(pdm.steps.values()) == 6


def test_pair_distance_map_needs_multiple_of_five():
    with pytest.raises(ValueError):
        pair_distance_map(7)
    with pytest.raises(ValueError):
        pair_distance_map(4)


def test_pair_distances_decrease_along_step():
    for b in (5, 10, 15, 20, 40):
        pdm = pair_distance_map(b)
        for p, s in pdm.steps.items():
            if s > 0:
                assert pdm.steps[step_pair(p, b)] == s - 1


# ---------------------------------------------------------------------------
# integer distance
# ---------------------------------------------------------------------------


def test_integer_distance_examples():
    pdm = pair_distance_map(10)
    assert integer_distance(to_digits(6174, 10), pdm) == 0
    assert integer_distance(to_digits(8532, 10), pdm) == 1
    assert integer_distance(to_digits(889, 10), pdm) == 4
    assert integer_distance(to_digits(5555, 10), pdm) is None
    with pytest.raises(ValueError):
        integer_distance(to_digits(1, 5), pdm)


def test_integer_distance_matches_orbit_sampling():
    rng = random.Random(1729)
    for b in (10, 20):
        pdm = pair_distance_map(b)
        fixed = {fixed_numeral_value(b)}
        for _ in range(200):
            x = rng.randrange(b**4)
            assert integer_distance(to_digits(x, b), pdm) == oracle_distance(x, b, fixed)


# ---------------------------------------------------------------------------
# base reports
# ---------------------------------------------------------------------------


def test_base_report_10():
    rep = base_report(10)
    assert rep.max_distance == 7
    assert rep.convergent_count == 9990
    assert rep.fixed_numerals == [6174]
    assert rep.histogram == {0: 1, 1: 383, 2: 576, 3: 2400, 4: 1272, 5: 1518, 6: 1656, 7: 2184}
    assert sum(rep.histogram.values()) == rep.convergent_count
    assert max(rep.histogram) == rep.max_distance


def test_base_report_15():
    rep = base_report(15)
    assert rep.convergent_count == 2160
    assert rep.max_distance == 2


def test_base_report_2_and_4():
    rep2 = base_report(2)
    assert rep2.max_distance == 1
    assert rep2.convergent_count == 14 == 2**4 - 2
    assert rep2.fixed_numerals == [7, 9]
    assert rep2.basin_sizes == {7: 8, 9: 6}

    rep4 = base_report(4)
    assert rep4.max_distance == 3
    assert rep4.convergent_count == 84
    assert rep4.fixed_numerals == [201]
    assert rep4.basin_sizes == {201: 84}
    assert rep4.histogram == {0: 1, 1: 47, 2: 24, 3: 12}


def test_base_report_no_fixed_point():
    rep = base_report(6)
    assert rep.max_distance is None
    assert rep.convergent_count == 0
    assert rep.histogram == {}
    assert rep.fixed_numerals == []


def test_base_report_methods_agree():
    # every multiple of 5 up to 60, field by field
    for b in range(5, 61, 5):
        via_pairs = base_report(b, method="pairs")
        via_enum = base_report(b, method="enumeration")
        assert via_pairs.max_distance == via_enum.max_distance, b
        assert via_pairs.convergent_count == via_enum.convergent_count, b
        assert via_pairs.convergent_fraction == via_enum.convergent_fraction, b
        assert via_pairs.histogram == via_enum.histogram, b
        assert via_pairs.fixed_numerals == via_enum.fixed_numerals, b
    with pytest.raises(ValueError):
        base_report(7, method="pairs")
    with pytest.raises(ValueError):
        base_report(7, method="nope")


def test_pair_weighted_histogram_structure():
    # distance-1 bin counts every carrier of the fixed pair except the
    # fixed numeral itself
    for b in (5, 10, 20, 25):
        rep = base_report(b)
        from kaprekar4.pairs import fixed_pair

        assert rep.histogram[1] == pair_count(fixed_pair(b), b) - 1
        assert rep.histogram[0] == 1


def test_distance_histogram():
    hist = distance_histogram(10)
    assert set(hist) <= set(range(8))
    assert sum(hist.values()) == 9990
    hist5 = distance_histogram(5)
    assert set(hist5) <= set(range(5))
    assert sum(hist5.values()) == 620
    with pytest.raises(ValueError):
        distance_histogram(6)


# ---------------------------------------------------------------------------
# enumeration-level invariants
# ---------------------------------------------------------------------------


def test_zero_orbits_are_exactly_repdigits():
    from kaprekar4.enumeration import zero_orbit_values

    for b in (5, 10):
        repunit = join_digits((1, 1, 1, 1), b)
        assert list(zero_orbit_values(b)) == [c * repunit for c in range(b)]


def test_cycles_only_where_expected():
    from kaprekar4.enumeration import distance_table, zero_orbit_values

    # every orbit converges (no cycles) exactly when the convergent set has
    # size b^4 - b: bases 2, and 5 * 2^n with n = 0 or n odd
    cases = (
        (2, False),
        (4, True),
        (5, False),
        (10, False),
        (15, True),
        (20, True),
        (30, True),
        (40, False),
    )
    for b, expect_cycles in cases:
        dist, _ = distance_table(b)
        unresolved = int((dist < 0).sum()) - len(zero_orbit_values(b))
        assert (unresolved > 0) == expect_cycles, b


def test_all_canonical_pairs_realised():
    for b in (3, 11):
        for p in canonical_pairs(b):
            assert pair_count(p, b) >= 1
