import json

import pytest
from hypothesis import given, settings, strategies as st

from vfmontesinos import transversality as tv
from vfmontesinos.cover import MarkedCurveSystem, decompose_arcs, reorient_curves
from vfmontesinos.pipeline import run
from vfmontesinos.tangle import Case, LinkClass, parse_montesinos


def setup(p, n):
    arcs = reorient_curves(decompose_arcs(MarkedCurveSystem(p, n)))
    lcurves = tv.build_l_curves(arcs)
    case = Case.CASE1 if n == 3 else Case.CASE2
    gamma = tv.build_gamma(case, arcs.system, lcurves)
    records = tv.compute_intersections(arcs, gamma, lcurves)
    return arcs, lcurves, case, gamma, records


def signs_by_kind(records, gamma):
    kind = {g.id: g.kind for g in gamma}
    out = {}
    for r in records:
        out.setdefault((r.arc, kind[r.torus]), []).extend(r.signs)
    return out


# -- l-curves --------------------------------------------------------------------

def test_l_curve_visits_p5():
    arcs, (l1, l2), *_ = setup(5, 3)
    assert l1.step == 3 and l1.visits == (0, 3, 1, 4, 2)
    assert l2.step == 2 and l2.visits == (0, 2, 4, 1, 3)


def test_l_curve_p3():
    _, (l1, l2), *_ = setup(3, 4)
    assert l1.step == 2 and sorted(l1.visits) == [0, 1, 2]
    assert l2.step == 1


@pytest.mark.parametrize("p", [3, 5, 7, 9, 11, 13])
def test_l_curve_closure(p):
    n = 3 if p >= 5 else 4
    _, lcurves, *_ = setup(p, n)
    for lc in lcurves:
        assert len(lc.visits) == p and sorted(lc.visits) == list(range(p))
        j = lc.visits[-1]
        assert (j + lc.step) % p == lc.visits[0]


def test_l_curve_segment_pattern():
    _, (l1, _), *_ = setup(5, 3)
    kinds = [s.kind for s in l1.segments]
    assert kinds == ["a", "connector", "b", "connector"] * 5
    for s in l1.segments:
        if s.kind == "a":
            assert s.orientation == 1


# -- Gamma -----------------------------------------------------------------------

def test_gamma_case1_p5():
    *_, gamma, _ = setup(5, 3)
    assert len(gamma) == 14
    assert sum(g.kind == "boundary" for g in gamma) == 10


@pytest.mark.parametrize("p,n", [(3, 4), (5, 5), (7, 6)])
def test_gamma_case2(p, n):
    *_, gamma, _ = setup(p, n)
    assert len(gamma) == 4 and all(g.kind == "lcurve" for g in gamma)


def test_gamma_ids_unique():
    *_, gamma, _ = setup(7, 3)
    assert len({g.id for g in gamma}) == len(gamma)


# -- remarks ---------------------------------------------------------------------

def test_case1_remarks_p5():
    arcs, lcurves, case, gamma, records = setup(5, 3)
    verdicts = tv.verify_sign_remarks(records, gamma, case, 5, 3)
    assert [v.anchor for v in verdicts] == [
        "boundary-tori-double-crossing",
        "boundary-tori-single-crossing",
        "l-tori-crossing",
    ]
    assert all(v.ok for v in verdicts), [v.failures for v in verdicts]
    # every (i,k) pair x 3 odd slots x 2 copies x 2 sheets is looked at
    assert verdicts[2].checked == 20 * 3 * 2 * 2


def test_case1_slot5_example():
    *_, gamma, records = setup(5, 3)
    by = signs_by_kind(records, gamma)
    a = tv.ArcId(2, 1, 5, 0, 1)
    assert by[(a, "boundary")] == [1]
    assert by.get((a, "lcurve"), []) == []


def test_case1_slot1_twice_opposite():
    *_, gamma, records = setup(5, 3)
    by = signs_by_kind(records, gamma)
    a = tv.ArcId(2, 1, 1, 0, 2)  # i-k = 1 <= (p-1)/2
    assert sorted(by[(a, "boundary")]) == [-1, 1]
    assert by[(a, "lcurve")] == [-1]


def test_case2_slot7_twice_negative():
    *_, case, gamma, records = setup(3, 5)
    by = signs_by_kind(records, gamma)
    for (arc, kind), sig in by.items():
        if arc.slot == 7:
            assert kind == "lcurve" and sig == [-1, -1]
    verdicts = tv.verify_sign_remarks(records, gamma, case, 3, 5)
    assert len(verdicts) == 1 and verdicts[0].ok


def test_case2_n4_no_double():
    *_, gamma, records = setup(3, 4)
    by = signs_by_kind(records, gamma)
    assert all(len(sig) == 1 for (_, kind), sig in by.items() if kind == "lcurve")


def test_remark_failure_is_reported():
    *_, case, gamma, records = setup(5, 3)
    flipped = [tv.IntersectionRecord(r.arc, r.torus, tuple(-s for s in r.signs)) for r in records]
    verdicts = tv.verify_sign_remarks(flipped, gamma, case, 5, 3)
    assert not verdicts[1].ok and verdicts[1].failures
    assert not verdicts[2].ok


# -- oracle and symmetries ---------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 11, 13]), st.integers(3, 8))
def test_angular_oracle_agrees(p, n):
    if n == 3 and p == 3:
        return
    arcs, lcurves, case, gamma, records = setup(p, n)
    oracle = tv.angular_oracle(arcs.system, gamma, lcurves)
    assert tv.oracle_agrees(records, oracle, gamma, arcs.system) == []
    assert tv.copies_agree(records, n)
    assert tv.shift_equivariant(records, gamma, p)
    assert all(v.ok for v in tv.verify_sign_remarks(records, gamma, case, p, n))


def test_oracle_catches_a_flipped_sign():
    arcs, lcurves, case, gamma, records = setup(5, 3)
    oracle = tv.angular_oracle(arcs.system, gamma, lcurves)
    i = next(k for k, r in enumerate(records) if r.count)
    r = records[i]
    bad = list(records)
    bad[i] = tv.IntersectionRecord(r.arc, r.torus, (-r.signs[0],) + r.signs[1:])
    assert tv.oracle_agrees(bad, oracle, gamma, arcs.system)


def test_record_count_equals_signs():
    *_, records = setup(5, 3)
    for r in records:
        d = r.to_dict()
        assert d["count"] == str(len(d["signs"]))


# -- singular profile ------------------------------------------------------------

def test_singular_profile_knot_p5():
    arcs, *_ = setup(5, 3)
    rep = tv.singular_point_profile(LinkClass.KNOT, arcs)
    assert rep.ok and rep.singular_points == 2
    assert rep.blocks[1]["slot2"] == "T1->T2"
    assert rep.blocks[1]["slot4"] == "T2->T1"


def test_singular_profile_link():
    arcs, *_ = setup(5, 4)
    rep = tv.singular_point_profile(LinkClass.TWO_COMPONENT_LINK, arcs)
    assert rep.ok and rep.singular_points == 1


# -- certificate -----------------------------------------------------------------

def test_missing_fragment():
    with pytest.raises(ValueError, match="missing"):
        tv.assemble_certificate(input="x")


def test_unknown_fragment():
    frags = {k: {} for k in tv.REQUIRED_FRAGMENTS}
    frags["bogus"] = 1
    with pytest.raises(ValueError, match="unknown"):
        tv.assemble_certificate(**frags)


def test_certificate_fails_if_any_check_fails():
    frags = {k: {} for k in tv.REQUIRED_FRAGMENTS}
    frags["checks"] = {"a": (True, "x"), "b": (False, "y")}
    cert = tv.assemble_certificate(**frags)
    assert cert.verdict == "FAIL" and cert.failed_checks() == ["b"]


def test_certificate_json_keys():
    out = run(parse_montesinos("(1/5,1/5,1/5)"))
    d = json.loads(out.to_json())
    assert set(d) == {
        "input", "applicability", "invariants", "connectivity", "semibundle",
        "singular_profile", "gamma", "records", "remark_verdicts", "verdict", "anchors",
    }
    assert d["verdict"] == "PASS"
    assert all(v["anchor"] for v in d["anchors"].values())


@pytest.mark.parametrize(
    "text,reason",
    [("(1/4,1/4,1/4)", "p even"), ("(1/3,1/3,1/3)", "n = 3 needs p >= 5"), ("(2/5,-1/5,-1/5)", "sum of numerators")],
)
def test_no_certificate(text, reason):
    out = run(parse_montesinos(text))
    assert out.certificate is None and out.reason.startswith(reason)


def test_nonzero_sum_with_negative_numerator_passes():
    # 1 + 1 - 1 = 1, so e(W_K) = -1/5 and the construction applies
    assert run(parse_montesinos("(1/5,1/5,-1/5)")).status == "PASS"


def test_zero_sum_control():
    out = run(parse_montesinos("(1/5,1/5,-2/5)"))
    assert out.certificate is None
    assert out.invariants["geometry"] == "Other(e=0)"


def test_link_case2_extrapolated_flag():
    out = run(parse_montesinos("(1/3,1/3,1/3,1/3)"))
    assert out.status == "PASS"
    assert out.certificate.applicability["extrapolated"] is True
    out = run(parse_montesinos("(1/5,1/5,1/5)"))
    assert out.certificate.applicability["extrapolated"] is False
