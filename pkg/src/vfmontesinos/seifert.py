"""Seifert invariants of the double branched cover W_K and of the p^2-fold cover Y."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .tangle import MontesinosLink, component_count, LinkClass


class Geometry(Enum):
    SL2_TILDE = "SL2Tilde"
    OTHER = "Other"


@dataclass(frozen=True)
class GeometryVerdict:
    geometry: Geometry
    reason: str | None = None

    def __str__(self):
        if self.reason:
            return f"{self.geometry.value}({self.reason})"
        return self.geometry.value


@dataclass(frozen=True)
class SeifertInvariants:
    euler_number_wk: Fraction
    chi_orb: Fraction
    geometry: GeometryVerdict


@dataclass(frozen=True)
class CoverEulerData:
    e: int
    e_tilde: int
    p: int

    @property
    def e_tilde_odd(self) -> bool:
        return self.e_tilde % 2 == 1


def _require_p(link: MontesinosLink) -> int:
    p = link.common_denominator()
    if p is None:
        raise ValueError("unequal denominators: " + str(link))
    return p


def euler_number(link: MontesinosLink) -> Fraction:
    """e(W_K) = -(q_1 + ... + q_n)/p."""
    p = _require_p(link)
    return Fraction(-link.q_sum, p)


def orbifold_euler_char(link: MontesinosLink) -> Fraction:
    """chi of the base S^2(p, ..., p) with n cone points."""
    p = _require_p(link)
    return 2 - link.n + Fraction(link.n, p)


def classify_geometry(e: Fraction, chi: Fraction) -> GeometryVerdict:
    if e == 0:
        return GeometryVerdict(Geometry.OTHER, "e=0")
    if chi >= 0:
        return GeometryVerdict(Geometry.OTHER, "chi>=0")
    return GeometryVerdict(Geometry.SL2_TILDE)


def seifert_invariants(link: MontesinosLink) -> SeifertInvariants:
    e = euler_number(link)
    chi = orbifold_euler_char(link)
    return SeifertInvariants(e, chi, classify_geometry(e, chi))


def cover_euler_data(link: MontesinosLink) -> CoverEulerData:
    """Euler number of the circle bundle Y -> F and its equal per-block share.

    e = p^2 e(W_K) = -p * sum(q), and the share e~ = e/p is the same on
    every block (an equal split, which is all the construction needs).
    """
    p = _require_p(link)
    if link.q_sum == 0:
        raise ValueError("sum of numerators is zero; e~ = 0 has no horizontal surface here")
    e = p * p * euler_number(link)
    assert e.denominator == 1
    e_tilde = -link.q_sum
    assert e == p * e_tilde
    # parity of e~ tracks the number of components
    assert (e_tilde % 2 == 1) == (component_count(link) is LinkClass.KNOT)
    return CoverEulerData(int(e), e_tilde, p)
