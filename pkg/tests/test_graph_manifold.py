from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from vfmontesinos import graph_manifold as gm
from vfmontesinos.linalg import det2, mat_mul, identity
from vfmontesinos.tangle import LinkClass

KNOT = gm.BasisChange.for_class(LinkClass.KNOT)
LINK = gm.BasisChange.for_class(LinkClass.TWO_COMPONENT_LINK)

odd_e = st.integers(-99, 99).filter(lambda e: e % 2 == 1)
even_e = st.integers(-49, 49).filter(lambda e: e != 0).map(lambda k: 2 * k)


def solution(link_class, p, e_tilde):
    basis = gm.BasisChange.for_class(link_class)
    wy = gm.solve_wang_yu(p, basis.c, p * e_tilde)
    return basis, gm.compute_boundary_slopes(link_class, p, basis, e_tilde, wy.lam, wy.lam_bar)


def test_basis_rejects_bad_det():
    with pytest.raises(ValueError):
        gm.BasisChange(1, 1, 1, 1)


# -- JSJ graph -------------------------------------------------------------------

def test_jsj_single_p5():
    g = gm.build_jsj_graph(5, KNOT, -3)
    assert len(g.vertices) == 6 and len(g.edges) == 10


def test_jsj_doubled_p5():
    g = gm.build_jsj_graph(5, KNOT, -3, doubled=True)
    assert len(g.vertices) == 12 and len(g.edges) == 20
    assert g.check() == []


@pytest.mark.parametrize("p", [3, 5, 7, 9, 11, 13])
def test_doubled_projection_and_involution(p):
    g = gm.build_jsj_graph(p, LINK, -4, doubled=True)
    pv, pe = g.projection()
    single = gm.build_jsj_graph(p, LINK, -4)
    assert set(pv.values()) == set(single.vertices)
    assert set(pe.values()) == {e.key for e in single.edges}
    vmap, emap = g.involution()
    assert all(vmap[v] != v and vmap[vmap[v]] == v for v in g.vertices)
    assert vmap[("Y1", 1)] == ("Y1", 2)
    assert all(emap[k] != k for k in emap)


def test_crossed_pattern():
    g = gm.build_jsj_graph(3, KNOT, 1, doubled=True)
    for e in g.edges:
        if e.torus == 1:
            assert e.hub == ("Y1", e.sheet)
        else:
            assert e.hub == ("Y1", 3 - e.sheet)


def test_single_graph_has_no_involution():
    with pytest.raises(ValueError):
        gm.build_jsj_graph(5, KNOT, -3).involution()


def test_jsj_dot():
    dot = gm.build_jsj_graph(5, KNOT, -3, doubled=True).to_dot()
    assert dot.startswith("graph Mbreve {") and dot.count(" -- ") == 20


# -- gluing matrices ---------------------------------------------------------------

def test_g2_knot_example():
    assert gm.gluing_matrices(KNOT, -3).g2 == ((-1, -3), (2, 7))


def test_g2_link_example():
    assert gm.gluing_matrices(LINK, -4).g2 == ((-1, -4), (1, 5))


@given(st.integers(-60, 60), st.sampled_from([KNOT, LINK, gm.BasisChange(2, 1, 3, 2)]))
def test_inverses(e, basis):
    g = gm.gluing_matrices(basis, e)
    for m, mi in ((g.g1, g.g1_inv), (g.g2, g.g2_inv)):
        assert mat_mul(m, mi) == identity(2) == mat_mul(mi, m)
        # sympy as an independent inverse
        assert sympy.Matrix(m).inv() == sympy.Matrix(mi)
    # orientation-reversing gluings: both determinants are -1
    assert g.dets == (-1, -1)
    assert det2(g.g1_inv) == -1


# -- Wang-Yu -----------------------------------------------------------------------

def test_wang_yu_knot_example():
    s = gm.solve_wang_yu(5, 2, -15)
    assert (s.lam, s.lam_bar) == (1, -3)


def test_wang_yu_link_example():
    s = gm.solve_wang_yu(5, 1, -20)
    assert (s.lam, s.lam_bar) == (1, -2)


def test_wang_yu_rejects_zero():
    with pytest.raises(ValueError):
        gm.solve_wang_yu(5, 2, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("c,e_tilde", [(2, -3), (2, 1), (2, 7), (1, -4), (1, 2), (1, -6)])
def test_wang_yu_against_sympy(p, c, e_tilde):
    e = p * e_tilde
    s = gm.solve_wang_yu(p, c, e)
    (ker,) = sympy.Matrix([[-e, sympy.Rational(2 * p, c)]]).nullspace()
    ratio = ker[1] / ker[0]
    assert Fraction(s.lam_bar, s.lam) == Fraction(int(ratio.p), int(ratio.q))
    assert s.lam > 0 and sympy.igcd(s.lam, s.lam_bar) == 1
    assert Fraction(2 * s.lam, c).denominator == 1
    m = sympy.Matrix(s.matrix)
    vec = sympy.Matrix([s.lam] + [s.lam_bar] * p)
    assert (m * vec)[0] == 0
    assert s.rank == m.rank()


@given(odd_e, st.sampled_from([3, 5, 7]), st.integers(1, 20))
def test_wang_yu_scaling(e_tilde, p, k):
    # any integer solution is a multiple of the primitive one
    s = gm.solve_wang_yu(p, 2, p * e_tilde)
    lam, lam_bar = k * s.lam, k * s.lam_bar
    assert -p * e_tilde * lam + p * lam_bar == 0
    assert (s.lam, s.lam_bar) == (1, e_tilde)


@given(even_e, st.sampled_from([3, 5, 7]))
def test_wang_yu_link_closed_form(e_tilde, p):
    s = gm.solve_wang_yu(p, 1, p * e_tilde)
    assert (s.lam, s.lam_bar) == (1, e_tilde // 2)


# -- slopes ------------------------------------------------------------------------

def test_knot_slopes_example():
    _, sol = solution(LinkClass.KNOT, 5, -3)
    assert (sol.s1.t, sol.s1.u) == (-2, 1)
    assert (sol.s2.t, sol.s2.u) == (2, 1)
    assert (sol.sb1.t, sol.sb1.u) == (2, -3)
    assert (sol.sb2.t, sol.sb2.u) == (-1, -3)
    assert (sol.sb3.t, sol.sb3.u) == (-1, -3)
    assert (sol.eps1, sol.eps2) == (-1, 1)
    # cross-check t1/u1 with the general formula (c e~ - 2d)/(2c) at c=2, d=1
    assert sol.s1.value == Fraction(2 * -3 - 2, 4)


def test_link_slopes_examples():
    _, sol = solution(LinkClass.TWO_COMPONENT_LINK, 5, -4)
    assert (sol.sb3.t, sol.sb3.u) == (-1, -1)
    assert sol.sb3.value == Fraction(-4, -4)
    _, sol = solution(LinkClass.TWO_COMPONENT_LINK, 5, -2)
    assert (sol.sb3.t, sol.sb3.u) == (-2, -1)
    assert sol.sb3.value == 2


def test_parity_mismatch_rejected():
    with pytest.raises(ValueError):
        gm.coefficient_table(LinkClass.KNOT, -4)
    with pytest.raises(ValueError):
        gm.coefficient_table(LinkClass.TWO_COMPONENT_LINK, -3)


def test_theta_slopes_knot():
    assert gm.theta_slopes(LinkClass.KNOT, -3) == (Fraction(1, -6) - Fraction(1, 2), Fraction(1, 6) - Fraction(1, 2))


def sweep_cases():
    for e in range(-99, 100, 2):
        yield LinkClass.KNOT, e
    for e in range(-98, 99, 2):
        if e:
            yield LinkClass.TWO_COMPONENT_LINK, e


def test_slope_identity_sweep():
    for lc, e in sweep_cases():
        basis, sol = solution(lc, 5, e)
        c = basis.c
        assert 5 * (sol.s1.value + sol.s2.value) == 0
        assert sol.sb1.value + sol.sb2.value + sol.sb3.value == 0
        assert sol.sb3.value == Fraction(-4, e * c * c)
        # the general slopes with sympy symbols substituted
        E, C, D, A = sympy.symbols("E C D A")
        s1 = (C * E - 2 * D) / (2 * C)
        assert sympy.Rational(sol.s1.t, sol.s1.u) == s1.subs({E: e, C: c, D: basis.d})
        sb3 = -4 / (E * C**2)
        assert sympy.Rational(sol.sb3.t, sol.sb3.u) == sb3.subs({E: e, C: c})


@given(odd_e)
def test_knot_semibundle(e):
    basis, sol = solution(LinkClass.KNOT, 7, e)
    rep = gm.verify_semibundle(sol, basis)
    assert rep.ok, rep.to_dict()
    assert sol.semibundle


@given(even_e)
def test_link_semibundle(e):
    basis, sol = solution(LinkClass.TWO_COMPONENT_LINK, 7, e)
    assert gm.verify_semibundle(sol, basis).ok


def test_knot_counts_all_one():
    basis, sol = solution(LinkClass.KNOT, 5, -3)
    rep = gm.verify_semibundle(sol, basis)
    counts = [d for name, ok, d in rep.checks if name.startswith("H")]
    assert counts == ["1/1"] * 5


def test_semibundle_report_flags_bad_solution():
    basis, sol = solution(LinkClass.KNOT, 5, -3)
    from dataclasses import replace

    bad = replace(sol, eps1=1, eps2=1)
    rep = gm.verify_semibundle(bad, basis)
    assert not rep.ok
    assert any(not ok and name == "eps1 = -eps2" for name, ok, _ in rep.checks)


def test_to_dict_strings():
    _, sol = solution(LinkClass.KNOT, 5, -3)
    d = sol.to_dict()
    assert d["lambda"] == "1" and d["lambda_bar"] == "-3"
    assert d["t1_u1"] == ["-2", "1"] and d["semibundle"] is True
