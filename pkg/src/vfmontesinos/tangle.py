"""
Cyclic rational-tangle notation for classic Montesinos links.

A link is written ``(q1/p1, q2/p2, ..., qn/pn)``.  Fractions are kept exactly
as typed: ``2/4`` is not reduced to ``1/2`` and numerators may be negative or
larger than the denominator.  The list is cyclic but no canonical rotation is
applied; every downstream quantity only depends on the sum of the numerators
and on index differences mod p.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TangleParseError(ValueError):
    """Malformed tangle notation.  ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position})")
        self.position = position


@dataclass(frozen=True)
class TangleFraction:
    q: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"tangle denominator must be >= 2, got {self.p}")

    def __str__(self):
        return f"{self.q}/{self.p}"


@dataclass(frozen=True)
class MontesinosLink:
    tangles: tuple[TangleFraction, ...]

    @property
    def n(self) -> int:
        return len(self.tangles)

    @property
    def numerators(self) -> tuple[int, ...]:
        return tuple(t.q for t in self.tangles)

    @property
    def denominators(self) -> tuple[int, ...]:
        return tuple(t.p for t in self.tangles)

    @property
    def q_sum(self) -> int:
        return sum(self.numerators)

    def common_denominator(self) -> int | None:
        """The shared denominator p, or None when denominators differ."""
        ps = set(self.denominators)
        return ps.pop() if len(ps) == 1 else None

    def __str__(self):
        return format_montesinos(self)


class LinkClass(Enum):
    KNOT = "Knot"
    TWO_COMPONENT_LINK = "TwoComponentLink"


class Case(Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class ApplicabilityReport:
    equal_denominators: bool
    p_odd: bool
    p_at_least_3: bool
    case: Case
    reason: str | None = None

    @property
    def applicable(self) -> bool:
        return self.case is not Case.NOT_APPLICABLE

    def to_dict(self) -> dict:
        return {
            "equal_denominators": self.equal_denominators,
            "p_odd": self.p_odd,
            "p_at_least_3": self.p_at_least_3,
            "case": self.case.value,
            "reason": self.reason,
        }


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise TangleParseError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def integer(self, signed: bool) -> int:
        self.skip_ws()
        negative = False
        if signed and self.text.startswith("-", self.pos):
            negative = True
            self.pos += 1
            self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if self.pos == start:
            raise TangleParseError("expected digits", start)
        value = int(self.text[start:self.pos])
        return -value if negative else value


def parse_montesinos(text: str) -> MontesinosLink:
    """Parse ``(q1/p, ..., qn/p)`` notation.

    >>> parse_montesinos("(1/5, 1/5, -2/5)").numerators
    (1, 1, -2)
    """
    sc = _Scanner(text)
    sc.expect("(")
    if sc.peek() == ")":
        raise TangleParseError("empty tangle list", sc.pos)
    tangles = []
    while True:
        sc.skip_ws()
        frac_at = sc.pos
        q = sc.integer(signed=True)
        sc.expect("/")
        p = sc.integer(signed=False)
        if p < 2:
            raise TangleParseError(f"denominator must be >= 2, got {p}", frac_at)
        tangles.append(TangleFraction(q, p))
        if sc.peek() == ",":
            sc.pos += 1
            continue
        sc.expect(")")
        break
    if sc.peek():
        raise TangleParseError("trailing characters after ')'", sc.pos)
    return MontesinosLink(tuple(tangles))


def format_montesinos(link: MontesinosLink) -> str:
    return "(" + ", ".join(str(t) for t in link.tangles) + ")"


def component_count(link: MontesinosLink) -> LinkClass:
    """Knot iff the numerator sum is odd (equal odd denominators assumed)."""
    return LinkClass.KNOT if link.q_sum % 2 else LinkClass.TWO_COMPONENT_LINK


def validate_theorem_hypotheses(link: MontesinosLink) -> ApplicabilityReport:
    """Decide whether the virtual-fibration construction applies.

    Inapplicability is returned as data; the first failing condition in the
    order n, denominators, parity, numerator sum, (n=3 only) p >= 5 is named
    in ``reason``.
    """
    p = link.common_denominator()
    equal = p is not None
    p_odd = equal and p % 2 == 1
    p_ge3 = equal and p >= 3

    def no(reason: str) -> ApplicabilityReport:
        return ApplicabilityReport(equal, p_odd, p_ge3, Case.NOT_APPLICABLE, reason)

    if link.n < 3:
        return no("n < 3")
    if not equal:
        return no("unequal denominators")
    if not p_odd:
        return no("p even")
    if not p_ge3:
        return no("p < 3")
    if link.q_sum == 0:
        return no("sum of numerators is zero (e=0)")
    if link.n == 3:
        if p < 5:
            return no("n = 3 needs p >= 5 (orbifold Euler characteristic >= 0)")
        return ApplicabilityReport(equal, p_odd, p_ge3, Case.CASE1)
    return ApplicabilityReport(equal, p_odd, p_ge3, Case.CASE2)
