"""End-to-end run: parse, gate, build every piece, check it, certify."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import graph_manifold as gm
from . import transversality as tv
from .cover import (
    build_cover_tower,
    build_curve_system,
    check_f1_connected,
    check_reoriented_angle_ranges,
    check_table_derivation,
    decompose_arcs,
    reorient_curves,
)
from .seifert import Geometry, cover_euler_data, seifert_invariants
from .tangle import (
    ApplicabilityReport,
    Case,
    LinkClass,
    MontesinosLink,
    component_count,
    format_montesinos,
    validate_theorem_hypotheses,
)

CONVENTIONS = (
    "beta_1^j lies to the left of the oriented diagonal curve L*_{j,j}",
    "e~ is split equally over the p blocks",
    "eps1, eps2 are uniform over blocks",
    "a-segments keep the crossing set of the nearby class-1 point",
)


def fr(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Outcome:
    link: MontesinosLink
    report: ApplicabilityReport
    invariants: dict | None
    certificate: tv.FibrationCertificate | None
    reason: str | None = None

    @property
    def status(self) -> str:
        if self.certificate is None:
            return "NotApplicable"
        return self.certificate.verdict

    def to_dict(self) -> dict:
        if self.certificate is not None:
            return self.certificate.to_dict()
        return {
            "input": format_montesinos(self.link),
            "applicability": self.report.to_dict(),
            "invariants": self.invariants,
            "verdict": "NotApplicable",
            "reason": self.reason,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _invariants(link: MontesinosLink) -> tuple[dict | None, object]:
    if link.common_denominator() is None:
        return None, None
    inv = seifert_invariants(link)
    return {
        "euler_number_wk": fr(inv.euler_number_wk),
        "chi_orb": fr(inv.chi_orb),
        "geometry": str(inv.geometry),
    }, inv


def run(link: MontesinosLink) -> Outcome:
    report = validate_theorem_hypotheses(link)
    inv_dict, inv = _invariants(link)
    if inv is not None and inv.geometry.geometry is not Geometry.SL2_TILDE and report.applicable:
        # the gate and the geometry must agree on gated input
        return Outcome(link, report, inv_dict, None, f"geometry {inv.geometry}")
    if not report.applicable:
        return Outcome(link, report, inv_dict, None, report.reason)

    checks: dict[str, tuple[bool, str]] = {}

    def check(name, ok, anchor):
        checks[name] = (bool(ok), anchor)

    p, n = link.common_denominator(), link.n
    link_class = component_count(link)
    check("applicability", True, "hypotheses-of-main-theorem")
    check("geometry SL2Tilde", inv.geometry.geometry is Geometry.SL2_TILDE, "sl2-geometry-criterion")

    ced = cover_euler_data(link)
    tower = build_cover_tower(link)
    check(
        "cover genus",
        2 - 2 * tower.f_genus == p * p * inv.chi_orb and tower.cells.euler_char == tower.f_euler_char,
        "cover-tower-euler-characteristic",
    )
    check("cone points of F'", tower.fprime_cone_points == (n - 2) * p, "cone-points-of-intermediate-cover")

    system = build_curve_system(tower)
    arcs = decompose_arcs(system)
    check("arc count", len(arcs) == 2 * n * p * (p - 1), "arc-decomposition")
    check("endpoint tables", not check_table_derivation(p, n), "arc-endpoint-tables")
    conn = check_f1_connected(arcs)
    check("F1 connected", conn.ok, "connectivity-of-F1")
    re_arcs = reorient_curves(arcs)
    check("reoriented angle ranges", not check_reoriented_angle_ranges(re_arcs.system), "reorientation-rule")

    basis = gm.BasisChange.for_class(link_class)
    mats = gm.gluing_matrices(basis, ced.e_tilde)
    jsj = gm.build_jsj_graph(p, basis, ced.e_tilde)
    jsj2 = gm.build_jsj_graph(p, basis, ced.e_tilde, doubled=True)
    check("JSJ graphs", not jsj.check() and not jsj2.check(), "graph-decomposition")
    wy = gm.solve_wang_yu(p, basis.c, ced.e)
    sol = gm.compute_boundary_slopes(link_class, p, basis, ced.e_tilde, wy.lam, wy.lam_bar)
    sb = gm.verify_semibundle(sol, basis)
    check("semibundle", sb.ok and sol.semibundle, "semi-bundle-proposition")

    profile = tv.singular_point_profile(link_class, re_arcs)
    check("singular profile", profile.ok, "singular-points-in-blocks")

    lcurves = tv.build_l_curves(re_arcs)
    check("l-curves close", all(len(lc.visits) == p for lc in lcurves), "l-curve-construction")
    gamma = tv.build_gamma(report.case, re_arcs.system, lcurves)
    want = 2 * p + 4 if report.case is Case.CASE1 else 4
    check("Gamma size", len(gamma) == want, "vertical-torus-family")

    records = tv.compute_intersections(re_arcs, gamma, lcurves)
    oracle = tv.angular_oracle(re_arcs.system, gamma, lcurves)
    check("sign oracle", not tv.oracle_agrees(records, oracle, gamma, re_arcs.system), "angular-order-oracle")
    check("copies agree", tv.copies_agree(records, n), "two-lifts-of-each-arc")
    check("deck equivariance", tv.shift_equivariant(records, gamma, p), "deck-transformation-symmetry")
    verdicts = tv.verify_sign_remarks(records, gamma, report.case, p, n)
    for v in verdicts:
        check(v.name, v.ok, v.anchor)

    extrapolated = link_class is LinkClass.TWO_COMPONENT_LINK and report.case is Case.CASE2
    applicability = report.to_dict()
    applicability.update(
        {
            "link_class": link_class.value,
            "extrapolated": extrapolated,
            "conventions": list(CONVENTIONS),
        }
    )
    invariants = dict(inv_dict)
    invariants.update(
        {
            "e": str(ced.e),
            "e_tilde": str(ced.e_tilde),
            "p": str(p),
            "n": str(n),
            "fprime_cone_points": str(tower.fprime_cone_points),
            "f_euler_char": str(tower.f_euler_char),
            "f_genus": str(tower.f_genus),
            "cells": [str(tower.cells.vertices), str(tower.cells.edges), str(tower.cells.faces)],
            "h1_images": [str(x) for x in tower.h1_images],
        }
    )
    semibundle = {
        "basis": [str(basis.a), str(basis.b), str(basis.c), str(basis.d)],
        "gluing": {
            name: [[str(x) for x in row] for row in m]
            for name, m in (("G1", mats.g1), ("G2", mats.g2), ("G1_inv", mats.g1_inv), ("G2_inv", mats.g2_inv))
        },
        "gluing_dets": [str(d) for d in mats.dets],
        "jsj": {
            "vertices": str(len(jsj.vertices)),
            "edges": str(len(jsj.edges)),
            "doubled_vertices": str(len(jsj2.vertices)),
            "doubled_edges": str(len(jsj2.edges)),
        },
        "solution": sol.to_dict(),
        "report": sb.to_dict(),
    }
    nonzero = [r.to_dict() for r in records if r.count]
    cert = tv.assemble_certificate(
        input=format_montesinos(link),
        applicability=applicability,
        invariants=invariants,
        connectivity=conn.to_dict(),
        semibundle=semibundle,
        singular_profile=profile.to_dict(),
        gamma=[g.to_dict() for g in gamma],
        records=nonzero,
        remark_verdicts=[v.to_dict() | {"pairs_examined": str(len(records))} for v in verdicts],
        checks=checks,
    )
    return Outcome(link, report, inv_dict, cert)
