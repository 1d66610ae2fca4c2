"""Difference pairs: the two digit spreads that determine the next step.

For sorted digits s3 >= s2 >= s1 >= s0 the pair is (s3 - s0, s2 - s1),
written (outer, inner).  The subtraction step's output value is
outer*(b^3 - 1) + inner*(b^2 - b), so the pair is a sufficient statistic:
two numerals with the same pair have the same image.  That collapses the
b^4 integer states to b*(b+1)/2 canonical pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .digits import DigitQuad, Digits, check_base

Pair = tuple[int, int]


class PairType(Enum):
    ZERO = "zero"
    A = "a"
    B = "b"
    C = "c"


@dataclass(frozen=True)
class DifferencePair:
    """Canonical difference pair: 0 <= inner <= outer <= base - 1."""

    base: int
    outer: int
    inner: int

    def __post_init__(self) -> None:
        check_base(self.base)
        if not 0 <= self.inner <= self.outer <= self.base - 1:
            raise ValueError(
                f"({self.outer}, {self.inner}) is not canonical for base {self.base}"
            )

    def as_tuple(self) -> Pair:
        return (self.outer, self.inner)

    def scaled(self, c: int) -> "DifferencePair":
        """Coordinate-wise multiple (c*outer, c*inner) of this pair."""
        return DifferencePair(self.base, c * self.outer, c * self.inner)


def canonical_pairs(b: int) -> Iterator[Pair]:
    """All canonical pairs of a base, outer-major order."""
    check_base(b)
    for d in range(b):
        for dp in range(d + 1):
            yield (d, dp)


def pair_of_digits(digits: Digits) -> Pair:
    s0, s1, s2, s3 = sorted(digits)
    return (s3 - s0, s2 - s1)


def pair_of(q: DigitQuad) -> DifferencePair:
    d, dp = pair_of_digits(q.digits)
    return DifferencePair(q.base, d, dp)


def classify_pair(pair: Pair, b: int) -> PairType:
    """Classify with precedence ZERO, C, B, A so every pair gets one tag.

    A bare (d, 0) with d > 0 satisfies the A condition too, but only the C
    step formula matches the integer dynamics, so C wins.
    """
    d, dp = pair
    if d == 0:
        return PairType.ZERO
    if dp == 0:
        return PairType.C
    if d == dp or d + dp == b:
        return PairType.B
    return PairType.A


def classify(p: DifferencePair) -> PairType:
    return classify_pair(p.as_tuple(), p.base)


def step_pair(pair: Pair, b: int) -> Pair:
    """Image of a canonical pair under the subtraction step, re-canonicalized.

    For the B case only the larger coordinate enters the formula; when the
    coordinates sum to b, substituting the smaller one yields the same
    unordered result, so the choice is immaterial.
    """
    d, dp = pair
    if d == 0:
        return (0, 0)
    if dp == 0:
        x, y = d - 1, b - d
    elif d == dp or d + dp == b:
        x, y = abs(2 * d - (b - 1)), abs(2 * d - (b + 1))
    else:
        x, y = abs(2 * d - b), abs(2 * dp - b)
    return (x, y) if x >= y else (y, x)


def pair_step(p: DifferencePair) -> DifferencePair:
    d, dp = step_pair(p.as_tuple(), p.base)
    return DifferencePair(p.base, d, dp)


def fixed_pair(b: int) -> Pair:
    """The pair (3b/5, b/5) of the non-zero fixed numeral; needs 5 | b."""
    check_base(b)
    if b % 5 != 0:
        raise ValueError(f"base {b} is not a multiple of 5, no fixed pair exists")
    return (3 * b // 5, b // 5)


# ---------------------------------------------------------------------------
# Predecessor enumeration
# ---------------------------------------------------------------------------
#
# Inverting the four-case step formula gives, for each target type, a short
# list of candidate predecessors guarded by parity and sum conditions.  The
# class of unordered B-type predecessors {e, b-e} collapses to the governed
# component e in the derivations below.
#
# One published form of this inversion lists, for an odd base, the row
# "d = d' = (b+1)/2  <-  ((b+2)/2, 0)", which is not integral; the correct
# row (re-derived from the C step {e-1, b-e} with e-1 = b-e) is
# "d = d' = (b-1)/2  <-  ((b+1)/2, 0)" and is what is implemented here.
# The exhaustive-scan tests pin this down for every base up to 64.


def _canon(x: int, y: int) -> Pair:
    return (x, y) if x >= y else (y, x)


def _sign_combos(d: int, dp: int, b: int) -> set[Pair]:
    # A-type candidates ((b +/- d)/2, (b +/- dp)/2), all four sign choices
    return {
        _canon((b + d) // 2, (b + dp) // 2),
        _canon((b + d) // 2, (b - dp) // 2),
        _canon((b - dp) // 2, (b - d) // 2),
        _canon((b + dp) // 2, (b - d) // 2),
    }


def predecessors_of(pair: Pair, b: int) -> set[Pair]:
    """Exact preimage of a canonical pair under :func:`step_pair`."""
    d, dp = pair
    if not 0 <= dp <= d <= b - 1:
        raise ValueError(f"({d}, {dp}) is not canonical for base {b}")
    out: set[Pair] = set()
    kind = classify_pair(pair, b)

    if kind is PairType.ZERO:
        out.add((0, 0))

    elif kind is PairType.C:
        if b % 2 == 0 and d % 2 == 0:
            out.add(_canon((b + d) // 2, b // 2))
            out.add(_canon(b // 2, (b - d) // 2))
        if b % 2 == 1 and d == 2:
            e1, e2 = (b + 1) // 2, (b - 1) // 2
            out.update({(e1, e1), (e1, e2), (e2, e2)})
        if d == b - 1:
            out.add((1, 0))

    elif kind is PairType.B:
        if d == dp:
            if d == 1 and b % 2 == 0:
                out.add((b // 2, b // 2))
            if b % 2 == 1 and d == (b - 1) // 2:
                out.add(((b + 1) // 2, 0))
        else:  # d + dp == b
            if d % 2 == 0 and dp % 2 == 0:
                out.update(_sign_combos(d, dp, b))
            if d == dp + 2 and b % 4 == 0:
                out.update({(3 * b // 4, 3 * b // 4), (3 * b // 4, b // 4), (b // 4, b // 4)})

    else:  # A
        if d % 2 == b % 2 and dp % 2 == b % 2:
            out.update(_sign_combos(d, dp, b))
        if d == dp + 2 and d % 2 != b % 2:
            e1, e2 = (b - 1 + d) // 2, (b + 1 - d) // 2
            out.update({(e1, e1), (e1, e2), (e2, e2)})
        if d + dp == b - 1:
            out.update({(d + 1, 0), (dp + 1, 0)})

    out = {p for p in out if 0 <= p[1] <= p[0] <= b - 1}
    # transcription guard: every candidate must actually step onto the target
    assert all(step_pair(p, b) == pair for p in out), (pair, b, out)
    return out


def predecessors(p: DifferencePair) -> set[DifferencePair]:
    return {
        DifferencePair(p.base, d, dp)
        for d, dp in predecessors_of(p.as_tuple(), p.base)
    }


def condensed_predecessors_of(pair: Pair, b: int) -> set[Pair]:
    """Preimage via the condensed rules available when 4 | b and b > 4.

    Kept separate from :func:`predecessors_of` so the condensed rule set is
    itself verified rather than derived from the general one.
    """
    if b % 4 != 0 or b <= 4:
        raise ValueError(f"condensed predecessor rules need 4 | b and b > 4, got {b}")
    d, dp = pair
    if not 0 <= dp <= d <= b - 1:
        raise ValueError(f"({d}, {dp}) is not canonical for base {b}")

    if pair == (0, 0):
        return {(0, 0)}
    if pair == (1, 1):
        return {(b // 2, b // 2)}
    if pair == (b - 1, 0):
        return {(1, 0)}

    h = b // 2
    out: set[Pair] = set()
    if d % 2 == 0 and dp % 2 == 0 and d != dp:
        i, j = d // 2, dp // 2
        out = {
            _canon(h + i, h + j),
            _canon(h + i, h - j),
            _canon(h - i, h + j),
            _canon(h - i, h - j),
        }
    elif d % 2 == 1 and dp == d - 2:
        k = (d - 1) // 2
        out = {(h + k, h + k), _canon(h + k, h - k), (h - k, h - k)}
    if d + dp == b - 1:
        out.update({(d + 1, 0), (dp + 1, 0)})

    out = {p for p in out if 0 <= p[1] <= p[0] <= b - 1}
    assert all(step_pair(p, b) == pair for p in out), (pair, b, out)
    return out


def predecessors_condensed(p: DifferencePair) -> set[DifferencePair]:
    return {
        DifferencePair(p.base, d, dp)
        for d, dp in condensed_predecessors_of(p.as_tuple(), p.base)
    }


# ---------------------------------------------------------------------------
# Counting numerals per pair
# ---------------------------------------------------------------------------


def _arrangements(o: tuple[int, int, int, int]) -> int:
    # 4! / (product of multiplicity factorials) for an ascending 4-tuple
    e1, e2, e3 = o[0] == o[1], o[1] == o[2], o[2] == o[3]
    if e1 and e2 and e3:
        return 1
    if (e1 and e2) or (e2 and e3):
        return 4
    if e1 and e3:
        return 6
    if e1 or e2 or e3:
        return 12
    return 24


def pair_count(pair: Pair, b: int) -> int:
    """Number of the b^4 numerals whose difference pair equals ``pair``.

    Sorted digits with pair (d, dp) are (s+d, s+t+dp, s+t, s) for a shift
    s in [0, b-d) and a slack t in [0, d-dp]; each (s, t) contributes the
    arrangements of the offset multiset {0, t, t+dp, d}.  The well-known
    24*(b-d)*(d-dp) closed form is the all-distinct specialisation and
    overcounts whenever dp = 0 or d = dp.
    """
    d, dp = pair
    if not 0 <= dp <= d <= b - 1:
        raise ValueError(f"({d}, {dp}) is not canonical for base {b}")
    total = 0
    for t in range(d - dp + 1):
        total += _arrangements((0, t, t + dp, d))
    return (b - d) * total


def count_representatives(p: DifferencePair) -> int:
    return pair_count(p.as_tuple(), p.base)
