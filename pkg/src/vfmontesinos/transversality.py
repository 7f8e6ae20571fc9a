"""Vertical tori Gamma, arc/torus crossings and the sign conditions behind the Dehn twists.

Everything is read off the combinatorial model: a crossing of an oriented arc
with the quotient curve of a vertical torus happens next to a marked point,
and its sign is +1 when the arc passes from the right of the (oriented)
torus curve to its left.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cover.arcs import ArcSystem, Endpoint, original_ends, table1_endpoints
from .cover.curves import Curve, MarkedCurveSystem, MarkedPoint
from .tangle import Case, LinkClass

SHEETS = (1, 2)


# -- l-curves ----------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    kind: str  # "a", "b" or "connector"
    j: int
    side: int
    orientation: int  # +1 along L*_{j,j}, -1 against it; 0 for connectors
    points: tuple[MarkedPoint, ...] = ()
    parallel_to: tuple[Curve, int] | None = None


@dataclass(frozen=True)
class LCurve:
    index: int
    step: int
    segments: tuple[Segment, ...]
    visits: tuple[int, ...]

    @property
    def side(self) -> int:
        return self.index

    @property
    def name(self) -> str:
        return f"l{self.index}"


def _b_points(system: MarkedCurveSystem, j: int) -> tuple[MarkedPoint, ...]:
    # b runs beside the diagonal between the class-2 and class-n points
    return tuple(MarkedPoint(r, j) for r in range(3, system.n))


def _b_orientation(system: MarkedCurveSystem, entry: int, exit_: int) -> int:
    """+1 if going from class ``entry`` to class ``exit_`` without passing class 1 follows the diagonal."""
    order = [pt.r for pt in system.route((0, 0))]
    return 1 if order.index(exit_) > order.index(entry) else -1


def build_l_curves(arcs: ArcSystem) -> tuple[LCurve, LCurve]:
    system = arcs.system
    p, n, h = system.p, system.n, system.half
    out = []
    for index, step in ((1, h + 1), (2, h)):
        side = index
        segs, visits = [], []
        j = 0
        while True:
            visits.append(j)
            nxt = (j + step) % p
            c1 = ((nxt, j), 3)
            c2 = ((j, nxt), 1)
            # both connectors must hug side `side` of the bands they join
            t, hd = table1_endpoints(p, n, nxt, j, 3)
            if (t, hd) != (Endpoint(side, j), Endpoint(side, j)):
                raise AssertionError(f"{c1} does not join a_{side}^{j} to b_{side}^{j}")
            t, hd = table1_endpoints(p, n, j, nxt, 1)
            if (t, hd) != (Endpoint(side, nxt), Endpoint(side, j)):
                raise AssertionError(f"{c2} does not join b_{side}^{j} to a_{side}^{nxt}")
            # the first connector meets b at the far end of L^3 from class 1,
            # the second leaves b at the class-n end of L^1
            entry = original_ends(system, c1[0], 3)[0].r
            exit_ = original_ends(system, c2[0], 1)[1].r
            segs += [
                Segment("a", j, side, 1, (MarkedPoint(1, j),)),
                Segment("connector", j, side, 0, parallel_to=c1),
                Segment("b", j, side, _b_orientation(system, entry, exit_), _b_points(system, j)),
                Segment("connector", j, side, 0, parallel_to=c2),
            ]
            j = nxt
            if j == 0:
                break
            if len(visits) > p:
                raise AssertionError("l-curve does not close")
        if sorted(visits) != list(range(p)):
            raise AssertionError(f"l{index} visits {visits}")
        out.append(LCurve(index, step, tuple(segs), tuple(visits)))
    return out[0], out[1]


# -- Gamma ---------------------------------------------------------------------

@dataclass(frozen=True)
class VerticalTorusSpec:
    kind: str  # "boundary" or "lcurve"
    index: int  # j for boundary tori, 1/2 for l-curve tori
    sheet: int

    @property
    def id(self) -> str:
        if self.kind == "boundary":
            return f"V[j={self.index},s={self.sheet}]"
        return f"V[l{self.index},s={self.sheet}]"

    def to_dict(self) -> dict:
        return {"id": self.id, "kind": self.kind, "index": str(self.index), "sheet": str(self.sheet)}


def _strands(spec: VerticalTorusSpec, system: MarkedCurveSystem, lcurves) -> list[tuple]:
    """Pieces of the quotient curve, as keys two disjoint curves never share."""
    if spec.kind == "boundary":
        j = spec.index
        return [("collar", j, 1, pt) for pt in system.route((j, j))]
    out = []
    for seg in lcurves[spec.index - 1].segments:
        if seg.kind == "connector":
            out.append(("connector", seg.parallel_to))
        else:
            # a/b sit one layer further into F_1 than the collars
            span = seg.points or (MarkedPoint(2 if seg.kind == "b" else 1, seg.j),)
            out += [("push", seg.j, seg.side, pt) for pt in span]
    return out


def build_gamma(case: Case, system: MarkedCurveSystem, lcurves) -> list[VerticalTorusSpec]:
    gamma = []
    for s in SHEETS:
        if case is Case.CASE1:
            gamma += [VerticalTorusSpec("boundary", j, s) for j in range(system.p)]
        gamma += [VerticalTorusSpec("lcurve", r, s) for r in (1, 2)]
    # quotient curves within one sheet must be pairwise disjoint; l-curves
    # only use pieces inside F_1, so they miss every diagonal curve
    owner = {}
    for spec in gamma:
        if spec.sheet != 1:
            continue
        for key in _strands(spec, system, lcurves):
            if key in owner and owner[key] != spec.id:
                raise AssertionError(f"{spec.id} overlaps {owner[key]} at {key}")
            owner[key] = spec.id
    return gamma


# -- crossings -------------------------------------------------------------------

@dataclass(frozen=True)
class ArcId:
    i: int
    k: int
    slot: int
    copy: int
    sheet: int

    def __str__(self):
        return f"L{self.slot + self.copy}_{self.i},{self.k},s{self.sheet}"


@dataclass(frozen=True)
class IntersectionRecord:
    arc: ArcId
    torus: str
    signs: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.signs)

    def to_dict(self) -> dict:
        return {
            "arc": str(self.arc),
            "torus": self.torus,
            "count": str(self.count),
            "signs": [str(s) for s in self.signs],
        }


def _adjacent_slots(n: int, r: int) -> tuple[int, int]:
    """Odd slots whose original tail / original head is at the class-r point."""
    return 2 * r - 1, 1 if r == n else 2 * r + 1


def _crossing_at(arcs: ArcSystem, curve: Curve, pt: MarkedPoint, side: int):
    """Primary rule: the arc of ``curve`` leaving band pt.j on ``side`` near pt.

    Returns (slot, at_tail) using the reoriented endpoint tables only.
    """
    n = arcs.system.n
    found = []
    flipped = arcs.system.flipped(curve)
    for slot, orig_tail_here in zip(_adjacent_slots(n, pt.r), (True, False)):
        arc = arcs[(curve, slot)]
        at_tail = orig_tail_here != flipped
        end = arc.tail if at_tail else arc.head
        assert end.j == pt.j
        if end.side == side:
            found.append((slot, at_tail))
    if len(found) != 1:
        raise AssertionError(f"L*{curve} at {pt}: {len(found)} arcs on side {side}")
    return found[0]


def _l_crossings(arcs: ArcSystem, lcurve: LCurve) -> dict[tuple[Curve, int], list[tuple[int, int]]]:
    system = arcs.system
    hits: dict = {}
    for seg in lcurve.segments:
        for pt in seg.points:
            for curve in system.curves_at(pt):
                if curve[0] == curve[1]:
                    continue
                slot, at_tail = _crossing_at(arcs, curve, pt, seg.side)
                sign = (1 if at_tail else -1) * (1 if seg.side == 1 else -1) * seg.orientation
                hits.setdefault((curve, slot), []).append((0 if at_tail else 1, sign))
    return hits


def _boundary_crossings(arcs: ArcSystem, j: int) -> dict[tuple[Curve, int], list[tuple[int, int]]]:
    hits = {}
    target = Endpoint(1, j)
    for arc in arcs.odd():
        got = []
        if arc.tail == target:
            got.append((0, 1))
        if arc.head == target:
            got.append((1, -1))
        if got:
            hits[(arc.curve, arc.slot)] = got
    return hits


def compute_intersections(arcs: ArcSystem, gamma: list[VerticalTorusSpec], lcurves) -> list[IntersectionRecord]:
    """Records for every odd-slot lifted arc (both copies, both sheets) and every torus."""
    system = arcs.system
    if not system.reoriented:
        raise ValueError("crossings are taken after reorientation")
    by_torus = {}
    for spec in gamma:
        if spec.sheet != 1:
            continue
        if spec.kind == "boundary":
            by_torus[(spec.kind, spec.index)] = _boundary_crossings(arcs, spec.index)
        else:
            by_torus[(spec.kind, spec.index)] = _l_crossings(arcs, lcurves[spec.index - 1])
    records = []
    n = system.n
    for curve in system.off_diagonal:
        for slot in range(1, 2 * n, 2):
            for copy in (0, 2 * n):
                for s in SHEETS:
                    aid = ArcId(curve[0], curve[1], slot, copy, s)
                    for spec in gamma:
                        hits = []
                        if spec.sheet == s:
                            hits = sorted(by_torus[(spec.kind, spec.index)].get((curve, slot), []))
                        records.append(IntersectionRecord(aid, spec.id, tuple(sg for _, sg in hits)))
    return records


def angular_oracle(system: MarkedCurveSystem, gamma: list[VerticalTorusSpec], lcurves) -> dict:
    """Crossing signs from directions at the marked points alone.

    For each place where a torus curve runs beside a diagonal on side r, the
    arc of a crossing curve on that side is its outgoing arc iff the curve's
    direction points into side 1 and r = 1, or away from it and r = 2.  The
    sign is +1 iff the arc direction lies strictly counterclockwise within a
    half turn of the torus curve direction.
    """
    p, n = system.p, system.n
    sites = {}
    for spec in gamma:
        if spec.sheet != 1:
            continue
        key = (spec.kind, spec.index)
        if spec.kind == "boundary":
            j = spec.index
            sites[key] = [(pt, 1, 0) for pt in system.route((j, j))]
        else:
            sites[key] = [
                (pt, seg.side, 0 if seg.orientation == 1 else p)
                for seg in lcurves[spec.index - 1].segments
                for pt in seg.points
            ]
    out = {}
    for key, places in sites.items():
        for pt, side, psi in places:
            for curve in system.curves_at(pt):
                if curve[0] == curve[1]:
                    continue
                theta = system.direction(curve, pt)
                into_left = 0 < theta < p
                outgoing = into_left == (side == 1)
                down, up = _adjacent_slots(n, pt.r)
                forward = not system.flipped(curve)
                slot = (down if forward else up) if outgoing else (up if forward else down)
                sign = 1 if 0 < (theta - psi) % (2 * p) < p else -1
                out.setdefault((key, curve, slot), []).append(sign)
    return {k: sorted(v) for k, v in out.items()}


def oracle_agrees(records: list[IntersectionRecord], oracle: dict, gamma, system) -> list[str]:
    spec_by_id = {g.id: g for g in gamma}
    bad = []
    seen = set()
    for rec in records:
        spec = spec_by_id[rec.torus]
        if spec.sheet != rec.arc.sheet:
            if rec.count:
                bad.append(f"{rec.arc} meets {rec.torus} across sheets")
            continue
        key = ((spec.kind, spec.index), (rec.arc.i, rec.arc.k), rec.arc.slot)
        seen.add(key)
        if sorted(rec.signs) != oracle.get(key, []):
            bad.append(f"{rec.arc} x {rec.torus}: {rec.signs} vs oracle {oracle.get(key, [])}")
    for key in oracle:
        if key not in seen:
            bad.append(f"oracle crossing {key} missing from records")
    return bad


# -- remarks ---------------------------------------------------------------------

@dataclass(frozen=True)
class RemarkVerdict:
    name: str
    anchor: str
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "checked": str(self.checked),
            "ok": self.ok,
            "failures": list(self.failures[:20]),
        }


def _union_signs(records: Iterable[IntersectionRecord], kind_of: dict) -> dict:
    out: dict = {}
    for rec in records:
        out.setdefault((rec.arc, kind_of[rec.torus]), []).extend(rec.signs)
    return out


def verify_sign_remarks(records: list[IntersectionRecord], gamma, case: Case, p: int, n: int) -> list[RemarkVerdict]:
    kind_of = {g.id: g.kind for g in gamma}
    union = _union_signs(records, kind_of)
    arcs = sorted({rec.arc for rec in records}, key=lambda a: (a.i, a.k, a.slot, a.copy, a.sheet))
    h = (p - 1) // 2
    verdicts = []
    if case is Case.CASE1:
        twice, once, l_ok = [], [], []
        c1 = c2 = c3 = 0
        for a in arcs:
            low = (a.i - a.k) % p <= h
            bsig = sorted(union.get((a, "boundary"), []))
            lsig = union.get((a, "lcurve"), [])
            if (a.slot == 1 and low) or (a.slot == 3 and not low):
                c1 += 1
                if bsig != [-1, 1]:
                    twice.append(f"{a}: {bsig}")
            elif a.slot == 5:
                c2 += 1
                if bsig != [1]:
                    once.append(f"{a}: {bsig}")
            else:
                c2 += 1
                if bsig:
                    once.append(f"{a} should miss the boundary tori: {bsig}")
            c3 += 1
            want = [] if a.slot == 5 else [-1]
            if lsig != want:
                l_ok.append(f"{a}: {lsig}")
        verdicts += [
            RemarkVerdict("boundary tori: twice, opposite signs", "boundary-tori-double-crossing", c1, tuple(twice)),
            RemarkVerdict("boundary tori: slot 5 once positively, others miss", "boundary-tori-single-crossing", c2, tuple(once)),
            RemarkVerdict("l-tori: slots 1, 3 once negatively, slot 5 missed", "l-tori-crossing", c3, tuple(l_ok)),
        ]
    else:
        bad, cnt = [], 0
        for a in arcs:
            cnt += 1
            l = (a.slot + 1) // 2
            want = 1 if l in (1, 2, 3, n) else 2
            lsig = union.get((a, "lcurve"), [])
            if lsig != [-1] * want:
                bad.append(f"{a}: {lsig}, want {want} negative")
            if union.get((a, "boundary")):
                bad.append(f"{a}: boundary torus in Case2")
        verdicts.append(RemarkVerdict("l-tori: negative, once or twice by slot", "case2-l-tori-crossing", cnt, tuple(bad)))
    return verdicts


def copies_agree(records: list[IntersectionRecord], n: int) -> bool:
    table = {(r.arc.i, r.arc.k, r.arc.slot, r.arc.copy, r.arc.sheet, r.torus): r.signs for r in records}
    return all(
        table[(i, k, slot, 2 * n, s, t)] == sig
        for (i, k, slot, copy, s, t), sig in table.items()
        if copy == 0
    )


def shift_equivariant(records: list[IntersectionRecord], gamma, p: int) -> bool:
    """Relabelling j -> j+1 (diagonal shift on curves) permutes the records."""
    spec_by_id = {g.id: g for g in gamma}

    def shift_torus(tid: str) -> str:
        g = spec_by_id[tid]
        if g.kind == "boundary":
            return VerticalTorusSpec(g.kind, (g.index + 1) % p, g.sheet).id
        return tid

    table = {(r.arc, r.torus): r.signs for r in records}
    image = {}
    for (a, t), sig in table.items():
        b = ArcId((a.i + 1) % p, (a.k + 1) % p, a.slot, a.copy, a.sheet)
        image[(b, shift_torus(t))] = sig
    return image == table


# -- singular points -------------------------------------------------------------

@dataclass(frozen=True)
class ProfileReport:
    singular_points: int
    blocks: tuple[dict, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "singular_points_per_annulus": str(self.singular_points),
            "blocks": list(self.blocks),
            "ok": self.ok,
            "failures": list(self.failures[:20]),
        }


def singular_point_profile(link_class: LinkClass, arcs: ArcSystem) -> ProfileReport:
    """Even-slot arcs inside each block run between T_1^j and T_2^j.

    Slot 2 runs T_1 -> T_2, slot 4 and the higher slots run T_2 -> T_1, so the
    two families cross the block from opposite sides.  Each punctured annulus
    meets L_{j,j} once per sheet of L_{j,j} -> L*_{j,j}: two singular points
    for a knot, one for a two-component link.
    """
    system = arcs.system
    singular = 2 if link_class is LinkClass.KNOT else 1
    failures, blocks = [], []
    for j in range(system.p):
        dirs = {}
        for arc in arcs.even():
            if arc.band != j:
                continue
            if {arc.tail.side, arc.head.side} != {1, 2} or arc.tail.j != j or arc.head.j != j:
                failures.append(f"L{arc.slot}_{arc.curve} in block {j} does not cross it")
                continue
            fam = "slot2" if arc.slot == 2 else "slot4" if arc.slot == 4 else "higher"
            dirs.setdefault(fam, set()).add(f"T{arc.tail.side}->T{arc.head.side}")
        want = {"slot2": {"T1->T2"}, "slot4": {"T2->T1"}}
        if system.n >= 3:
            want["higher"] = {"T2->T1"}
        for fam, d in want.items():
            if dirs.get(fam) != d:
                failures.append(f"block {j} {fam}: {sorted(dirs.get(fam, []))}")
        blocks.append({"block": str(j), **{k: sorted(v)[0] for k, v in sorted(dirs.items()) if len(v) == 1}})
    return ProfileReport(singular, tuple(blocks), tuple(failures))


# -- certificate -----------------------------------------------------------------

@dataclass(frozen=True)
class FibrationCertificate:
    input: str
    applicability: dict
    invariants: dict
    connectivity: dict
    semibundle: dict
    singular_profile: dict
    gamma: list
    records: list
    remark_verdicts: list
    checks: dict  # name -> (ok, anchor)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failed_checks(self) -> list[str]:
        return [name for name, (ok, _) in sorted(self.checks.items()) if not ok]

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "applicability": self.applicability,
            "invariants": self.invariants,
            "connectivity": self.connectivity,
            "semibundle": self.semibundle,
            "singular_profile": self.singular_profile,
            "gamma": self.gamma,
            "records": self.records,
            "remark_verdicts": self.remark_verdicts,
            "verdict": self.verdict,
            "anchors": {name: {"anchor": anchor, "ok": ok} for name, (ok, anchor) in self.checks.items()},
        }


REQUIRED_FRAGMENTS = (
    "input",
    "applicability",
    "invariants",
    "connectivity",
    "semibundle",
    "singular_profile",
    "gamma",
    "records",
    "remark_verdicts",
    "checks",
)


def assemble_certificate(**fragments) -> FibrationCertificate:
    missing = [k for k in REQUIRED_FRAGMENTS if k not in fragments]
    if missing:
        raise ValueError(f"missing certificate fragments: {', '.join(missing)}")
    extra = set(fragments) - set(REQUIRED_FRAGMENTS)
    if extra:
        raise ValueError(f"unknown certificate fragments: {', '.join(sorted(extra))}")
    return FibrationCertificate(**fragments)
