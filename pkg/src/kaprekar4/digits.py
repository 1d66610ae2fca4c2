"""Four-digit base-b numerals and the digit-rearrangement subtraction step.

A numeral keeps its leading zeros: 0309 and 3090 are different inputs even
though they share a digit multiset.  The step sorts the digits, writes them
descending and ascending, and subtracts the ascending arrangement from the
descending one.
"""

from __future__ import annotations

from dataclasses import dataclass

MIN_BASE = 2
MAX_BASE = 1 << 16  # keeps b**4, and every intermediate, well inside 64 bits

Digits = tuple[int, int, int, int]


def check_base(b: int) -> None:
    if not isinstance(b, int) or isinstance(b, bool):
        raise ValueError(f"base must be an integer, got {b!r}")
    if not MIN_BASE <= b <= MAX_BASE:
        raise ValueError(f"base must be in [{MIN_BASE}, {MAX_BASE}], got {b}")


@dataclass(frozen=True)
class DigitQuad:
    """A four-digit numeral, most-significant digit first, leading zeros kept."""

    base: int
    digits: Digits

    def __post_init__(self) -> None:
        check_base(self.base)
        digits = tuple(self.digits)
        if len(digits) != 4:
            raise ValueError(f"expected exactly 4 digits, got {len(digits)}")
        if any(not 0 <= a < self.base for a in digits):
            raise ValueError(f"digits {digits} out of range for base {self.base}")
        object.__setattr__(self, "digits", digits)

    @property
    def value(self) -> int:
        return join_digits(self.digits, self.base)


def split_digits(x: int, b: int) -> Digits:
    """Positional expansion of x as exactly four base-b digits."""
    check_base(b)
    if not 0 <= x < b**4:
        raise ValueError(f"value {x} outside [0, {b**4}) for base {b}")
    x, a0 = divmod(x, b)
    x, a1 = divmod(x, b)
    a3, a2 = divmod(x, b)
    return (a3, a2, a1, a0)


def join_digits(digits: Digits, b: int) -> int:
    a3, a2, a1, a0 = digits
    return ((a3 * b + a2) * b + a1) * b + a0


def to_digits(x: int, b: int) -> DigitQuad:
    return DigitQuad(b, split_digits(x, b))


def from_digits(q: DigitQuad) -> int:
    return q.value


def step_digits(digits: Digits, b: int) -> Digits:
    """One subtraction step on a digit tuple, done column by column.

    The descending and ascending rearrangements are subtracted positionally
    with borrows, so no intermediate ever exceeds b**4.
    """
    s0, s1, s2, s3 = sorted(digits)
    desc = (s3, s2, s1, s0)
    asc = (s0, s1, s2, s3)
    out = [0, 0, 0, 0]
    borrow = 0
    for i in (3, 2, 1, 0):
        v = desc[i] - asc[i] - borrow
        if v < 0:
            v += b
            borrow = 1
        else:
            borrow = 0
        out[i] = v
    # descending >= ascending, so no borrow can survive the last column
    return (out[0], out[1], out[2], out[3])


def step_value(x: int, b: int) -> int:
    """Value-level convenience wrapper around :func:`step_digits`."""
    return join_digits(step_digits(split_digits(x, b), b), b)


def kaprekar_step(q: DigitQuad) -> DigitQuad:
    return DigitQuad(q.base, step_digits(q.digits, q.base))


def is_repdigit(q: DigitQuad) -> bool:
    """True when all four digits are equal; exactly these map to zero in one step."""
    a3, a2, a1, a0 = q.digits
    return a3 == a2 == a1 == a0
