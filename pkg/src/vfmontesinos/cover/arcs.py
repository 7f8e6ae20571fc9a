"""Arc decomposition of the curves L*_{i,k} (i != k) by the bands F_2^j.

Slot 2r carries the marked point of class r; odd slot 2r-1 lies in F_1
between the points of class r and r-1 (slot 1 between class 1 and class n).
In the original orientation a curve runs through its slots in decreasing
order 2n, 2n-1, ..., 1.  Boundary circles are (side, j): side 1 is beta_1^j,
the copy of L*_{j,j} on its left, side 2 is beta_2^j.  After lifting to M the
same pairs name the tori T_1^j, T_2^j.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .curves import Curve, MarkedCurveSystem, MarkedPoint


@dataclass(frozen=True, order=True)
class Endpoint:
    side: int
    j: int

    def label(self, lifted: bool = False) -> str:
        return f"{'T' if lifted else 'beta'}{self.side}^{self.j}"


@dataclass(frozen=True)
class Arc:
    curve: Curve
    slot: int
    band: int | None  # None for F_1
    tail: Endpoint
    head: Endpoint
    marked_point: MarkedPoint | None
    reoriented: bool = False

    @property
    def in_f1(self) -> bool:
        return self.band is None

    def reversed(self) -> "Arc":
        return replace(self, tail=self.head, head=self.tail)


@dataclass(frozen=True)
class ArcSystem:
    system: MarkedCurveSystem
    arcs: dict[tuple[Curve, int], Arc]

    def __getitem__(self, key: tuple[Curve, int]) -> Arc:
        return self.arcs[key]

    def __len__(self):
        return len(self.arcs)

    def odd(self) -> list[Arc]:
        return [a for a in self.arcs.values() if a.slot % 2]

    def even(self) -> list[Arc]:
        return [a for a in self.arcs.values() if a.slot % 2 == 0]


def _m(p: int, i: int, k: int) -> int:
    return (i - k) % p


def table1_endpoints(p: int, n: int, i: int, k: int, slot: int) -> tuple[Endpoint, Endpoint]:
    """Original (tail, head) of the odd-slot arc (L^slot_{i,k})*."""
    m, h = _m(p, i, k), (p - 1) // 2
    low = m <= h
    if slot == 1:
        return (Endpoint(1, k), Endpoint(1, i)) if low else (Endpoint(2, k), Endpoint(2, i))
    if slot == 3:
        return (Endpoint(2, k), Endpoint(2, k)) if low else (Endpoint(1, k), Endpoint(1, k))
    if slot == 5:
        return (Endpoint(2, i), Endpoint(1, k)) if low else (Endpoint(1, i), Endpoint(2, k))
    if slot % 2 == 1 and 7 <= slot <= 2 * n - 1:
        return (Endpoint(2, i), Endpoint(1, i)) if low else (Endpoint(1, i), Endpoint(2, i))
    raise ValueError(f"no odd slot {slot} for n={n}")


def table2_oracle(p: int, n: int, i: int, k: int, slot: int) -> tuple[Endpoint, Endpoint]:
    """Hard-coded lifted odd-slot endpoints after reorientation (independent oracle)."""
    m, h = _m(p, i, k), (p - 1) // 2
    low = m <= h
    T = Endpoint
    if slot == 1:
        return (T(1, i), T(1, k)) if low else (T(2, k), T(2, i))
    if slot == 3:
        return (T(2, k), T(2, k)) if low else (T(1, k), T(1, k))
    if slot == 5:
        return (T(1, k), T(2, i)) if low else (T(1, i), T(2, k))
    return (T(1, i), T(2, i))


def even_slot_oracle(p: int, n: int, i: int, k: int, slot: int) -> tuple[Endpoint, Endpoint]:
    """Lifted even-slot endpoints after reorientation, as a fixed table."""
    if slot == 2:
        return Endpoint(1, k), Endpoint(2, k)
    if slot == 4:
        return Endpoint(2, k), Endpoint(1, k)
    return Endpoint(2, i), Endpoint(1, i)


def marked_point_of_slot(system: MarkedCurveSystem, curve: Curve, slot: int) -> MarkedPoint:
    i, k = curve
    r = slot // 2
    return MarkedPoint(r, k if r <= 2 else i)


def original_ends(system: MarkedCurveSystem, curve: Curve, slot: int) -> tuple[MarkedPoint, MarkedPoint]:
    """Marked points at the original tail and head of an odd-slot arc."""
    r = (slot + 1) // 2
    prev_r = system.n if r == 1 else r - 1
    return marked_point_of_slot(system, curve, 2 * r), marked_point_of_slot(system, curve, 2 * prev_r)


def decompose_arcs(system: MarkedCurveSystem) -> ArcSystem:
    """Split each off-diagonal curve into its 2n arcs, original orientation."""
    if system.reoriented:
        raise ValueError("decompose the original orientation first")
    p, n = system.p, system.n
    arcs = {}
    for curve in system.off_diagonal:
        i, k = curve
        for slot in range(1, 2 * n, 2):
            tail, head = table1_endpoints(p, n, i, k, slot)
            arcs[(curve, slot)] = Arc(curve, slot, None, tail, head, None)
        for slot in range(2, 2 * n + 1, 2):
            # travelling downwards: enter from slot+1 (wrapping to 1), leave into slot-1
            before = arcs[(curve, 1 if slot == 2 * n else slot + 1)]
            after = arcs[(curve, slot - 1)]
            pt = marked_point_of_slot(system, curve, slot)
            assert before.head.j == after.tail.j == pt.j
            arcs[(curve, slot)] = Arc(curve, slot, pt.j, before.head, after.tail, pt)
    return ArcSystem(system, arcs)


def reorient_curves(arcs: ArcSystem) -> ArcSystem:
    """Reverse every L*_{i,k} with 1 <= i-k mod p <= (p-1)/2."""
    system = arcs.system.reorient()
    out = {}
    for key, arc in arcs.arcs.items():
        flipped = system.flipped(arc.curve)
        new = arc.reversed() if flipped else arc
        out[key] = replace(new, reoriented=True)
    return ArcSystem(system, out)


def endpoints_from_angles(system: MarkedCurveSystem, curve: Curve, slot: int) -> tuple[Endpoint, Endpoint]:
    """Recover the current (tail, head) of an odd-slot arc from directions alone.

    Leaving a point in direction d in (0, pi) exits the band through beta_1
    (left of the diagonal); arriving in such a direction enters through beta_2.
    """
    p = system.p
    a, b = original_ends(system, curve, slot)
    if system.flipped(curve):
        a, b = b, a
    da = system.direction(curve, a)
    db = system.direction(curve, b)
    tail_side = 1 if 0 < da < p else 2
    head_side = 2 if 0 < db < p else 1
    return Endpoint(tail_side, a.j), Endpoint(head_side, b.j)


def check_table_derivation(p: int, n: int) -> list[str]:
    """Compare computed endpoints with the fixed tables; returns mismatches."""
    system = MarkedCurveSystem(p, n)
    orig = decompose_arcs(system)
    new = reorient_curves(orig)
    bad = []
    for (curve, slot), arc in orig.arcs.items():
        if slot % 2 and endpoints_from_angles(system, curve, slot) != (arc.tail, arc.head):
            bad.append(f"original {curve} slot {slot}: angles disagree with table")
    for (curve, slot), arc in new.arcs.items():
        i, k = curve
        want = table2_oracle(p, n, i, k, slot) if slot % 2 else even_slot_oracle(p, n, i, k, slot)
        if (arc.tail, arc.head) != want:
            bad.append(f"reoriented {curve} slot {slot}: {arc.tail},{arc.head} != {want}")
        if slot % 2 and endpoints_from_angles(new.system, curve, slot) != (arc.tail, arc.head):
            bad.append(f"reoriented {curve} slot {slot}: angles disagree")
    return bad


def check_reoriented_angle_ranges(system: MarkedCurveSystem) -> list[str]:
    """After reorientation every off-diagonal curve crosses the diagonals the same way.

    Direction at class-1 points lies in (pi, 2pi); at all other points in (0, pi).
    """
    p = system.p
    bad = []
    for curve in system.off_diagonal:
        for pt in system.route(curve):
            d = system.direction(curve, pt)
            ok = p < d < 2 * p if pt.r == 1 else 0 < d < p
            if not ok:
                bad.append(f"L*{curve} at {pt}: direction {d}")
    return bad
