"""Combinatorial model of the curve system {L*_{i,j}} on F.

Indices i, j, k are residues 0..p-1.  Marked point (r, j) stands for the
lift c^_{r,j} of the cone point c_r (r = 1..n).  Angles are residues mod p
measured in units of 2*pi/p against the diagonal curve through the point;
directions are residues mod 2p in units of pi/p.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

Curve = tuple[int, int]


@dataclass(frozen=True, order=True)
class MarkedPoint:
    r: int
    j: int

    def __str__(self):
        return f"c{self.r},{self.j}"


@dataclass(frozen=True)
class MarkedCurveSystem:
    p: int
    n: int
    reoriented: bool = False

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    @property
    def curves(self) -> list[Curve]:
        return [(i, j) for i in range(self.p) for j in range(self.p)]

    @property
    def off_diagonal(self) -> list[Curve]:
        return [(i, k) for i, k in self.curves if i != k]

    @property
    def marked_points(self) -> list[MarkedPoint]:
        return [MarkedPoint(r, j) for r in range(1, self.n + 1) for j in range(self.p)]

    def route(self, curve: Curve) -> tuple[MarkedPoint, ...]:
        """Marked points in the original direction of travel (cyclic)."""
        i, k = curve
        pts = [MarkedPoint(r, i) for r in range(self.n, 2, -1)]
        return tuple(pts + [MarkedPoint(2, k), MarkedPoint(1, k)])

    def curves_at(self, pt: MarkedPoint) -> list[Curve]:
        if pt.r <= 2:
            return [(i, pt.j) for i in range(self.p)]
        return [(pt.j, k) for k in range(self.p)]

    @staticmethod
    def spine(pt: MarkedPoint) -> Curve:
        return (pt.j, pt.j)

    def angle_class(self, curve: Curve, pt: MarkedPoint) -> int:
        """Angle of ``curve`` against the diagonal curve at ``pt`` (original orientations)."""
        i, k = curve
        if curve not in self.curves_at(pt):
            raise KeyError(f"L*{curve} does not pass through {pt}")
        if pt.r == 1:
            return (i - k) % self.p
        return (k - i) % self.p

    def flipped(self, curve: Curve) -> bool:
        if not self.reoriented:
            return False
        return 1 <= (curve[0] - curve[1]) % self.p <= self.half

    def direction(self, curve: Curve, pt: MarkedPoint) -> int:
        """Current direction of travel at ``pt``, residue mod 2p in units of pi/p."""
        d = 2 * self.angle_class(curve, pt)
        if self.flipped(curve):
            d += self.p
        return d % (2 * self.p)

    def pairwise_angle(self, c1: Curve, c2: Curve, pt: MarkedPoint) -> int:
        return (self.angle_class(c2, pt) - self.angle_class(c1, pt)) % self.p

    def incidences(self) -> dict[MarkedPoint, tuple[Curve, ...]]:
        return {pt: tuple(self.curves_at(pt)) for pt in self.marked_points}

    def reorient(self) -> "MarkedCurveSystem":
        return replace(self, reoriented=True)

    def tau2(self, curve: Curve) -> Curve:
        """Deck transformation (i, j) -> (i, j + 1) on curve labels."""
        return (curve[0], (curve[1] + 1) % self.p)

    def tau2_point(self, pt: MarkedPoint) -> MarkedPoint:
        # tau_2 moves c_{1,j}, c_{2,j} with the second label; c_{r,i} (r>=3) stay
        if pt.r <= 2:
            return MarkedPoint(pt.r, (pt.j + 1) % self.p)
        return pt

    def diagonal_shift(self, curve: Curve, t: int = 1) -> Curve:
        return ((curve[0] + t) % self.p, (curve[1] + t) % self.p)

    def check_model(self) -> list[str]:
        """Re-derive the incidence/angle invariants; returns violations."""
        bad = []
        for pt in self.marked_points:
            here = self.curves_at(pt)
            if self.spine(pt) not in here:
                bad.append(f"{pt}: diagonal curve missing")
            classes = sorted(self.angle_class(c, pt) for c in here)
            if classes != list(range(self.p)):
                bad.append(f"{pt}: angle classes {classes}")
            for c in here:
                if pt not in self.route(c):
                    bad.append(f"{pt}: L*{c} listed but not routed")
        for c in self.curves:
            for pt in self.route(c):
                if c not in self.curves_at(pt):
                    bad.append(f"L*{c} routed through {pt} but not incident")
        # diagonal curves are pairwise disjoint
        seen = {}
        for j in range(self.p):
            for pt in self.route((j, j)):
                if pt in seen:
                    bad.append(f"diagonals {seen[pt]} and {j} meet at {pt}")
                seen[pt] = j
        return bad


def build_curve_system(tower) -> MarkedCurveSystem:
    system = MarkedCurveSystem(tower.p, tower.n)
    bad = system.check_model()
    if bad:
        raise AssertionError("; ".join(bad))
    return system
