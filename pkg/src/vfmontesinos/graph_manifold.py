"""Graph-manifold data of M = Y_1 u M_2^1 u ... u M_2^p and of its double cover.

Gluing matrices, the specialised Wang-Yu horizontal-surface system and the
boundary slopes of the semifibre H = H_1 u H_2^1 u ... u H_2^p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .linalg import det2, identity, mat_mul, nullspace, primitive_integer, rref
from .tangle import LinkClass

Mat2 = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class BasisChange:
    """New basis on T_{2,1}^j: alpha-bar = a alpha + b phi, phi-bar = c alpha + d phi."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"basis change must have determinant 1: {self}")

    @classmethod
    def for_class(cls, link_class: LinkClass) -> "BasisChange":
        # the diagonal curve is double covered by L_{j,j} for a knot, so c = 2
        if link_class is LinkClass.KNOT:
            return cls(1, 0, 2, 1)
        return cls(1, 0, 1, 1)


# -- JSJ graph ---------------------------------------------------------------

@dataclass(frozen=True)
class JsjEdge:
    torus: int  # 1 or 2: T_1^j or T_2^j
    j: int
    sheet: int | None
    block: tuple
    hub: tuple
    matrix: Mat2

    @property
    def key(self) -> tuple:
        return (self.torus, self.j, self.sheet)


@dataclass(frozen=True)
class JsjGraph:
    p: int
    doubled: bool
    vertices: tuple[tuple, ...]
    edges: tuple[JsjEdge, ...]
    e_tilde: int

    def projection(self):
        """Vertex and edge maps of the doubled graph onto the single one."""
        if not self.doubled:
            raise ValueError("projection is defined on the doubled graph")
        vmap = {v: v[:-1] for v in self.vertices}
        emap = {e.key: (e.torus, e.j, None) for e in self.edges}
        return vmap, emap

    def involution(self):
        """Swap the two sheets: hubs, block copies and edges."""
        if not self.doubled:
            raise ValueError("involution is defined on the doubled graph")
        vmap = {v: v[:-1] + (3 - v[-1],) for v in self.vertices}
        emap = {e.key: (e.torus, e.j, 3 - e.sheet) for e in self.edges}
        return vmap, emap

    def check(self) -> list[str]:
        bad = []
        nv, ne = (2 * self.p + 2, 4 * self.p) if self.doubled else (self.p + 1, 2 * self.p)
        if len(self.vertices) != nv or len(self.edges) != ne:
            bad.append(f"expected {nv} vertices/{ne} edges, got {len(self.vertices)}/{len(self.edges)}")
        vs = set(self.vertices)
        for e in self.edges:
            if e.block not in vs or e.hub not in vs:
                bad.append(f"dangling edge {e.key}")
        if self.doubled:
            for e in self.edges:
                want = e.sheet if e.torus == 1 else 3 - e.sheet
                if e.hub != ("Y1", want) or e.block != ("M2", e.j, e.sheet):
                    bad.append(f"edge {e.key} not in the crossed pattern")
            vmap, emap = self.involution()
            if any(vmap[v] == v for v in self.vertices):
                bad.append("involution fixes a vertex")
            if any(emap[k] == k for k in emap):
                bad.append("involution fixes an edge")
            by_key = {e.key: e for e in self.edges}
            for e in self.edges:
                img = by_key.get(emap[e.key])
                if img is None or img.hub != vmap[e.hub] or img.block != vmap[e.block]:
                    bad.append(f"involution does not preserve edge {e.key}")
            pv, pe = self.projection()
            for target in {pv[v] for v in self.vertices}:
                if sum(1 for v in self.vertices if pv[v] == target) != 2:
                    bad.append(f"projection not 2-to-1 over {target}")
            for target in set(pe.values()):
                if sum(1 for k in pe if pe[k] == target) != 2:
                    bad.append(f"projection not 2-to-1 over edge {target}")
        return bad

    def to_dot(self) -> str:
        def name(v):
            if v[0] == "Y1":
                return "Y1" + (f"_s{v[1]}" if self.doubled else "")
            return f"M2^{v[1]}" + (f"_s{v[2]}" if self.doubled else "")

        lines = [f"graph {'Mbreve' if self.doubled else 'M'} {{", "  node [fontsize=10];"]
        for v in self.vertices:
            shape = "doublecircle" if v[0] == "Y1" else "circle"
            lines.append(f'  "{name(v)}" [shape={shape}];')
        for e in self.edges:
            m = e.matrix
            lab = f"T{e.torus}^{e.j}" + (f"_s{e.sheet}" if self.doubled else "")
            lab += f" [[{m[0][0]},{m[0][1]}],[{m[1][0]},{m[1][1]}]]"
            lines.append(f'  "{name(e.block)}" -- "{name(e.hub)}" [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_jsj_graph(p: int, basis: BasisChange, e_tilde: int, doubled: bool = False) -> JsjGraph:
    gm = gluing_matrices(basis, e_tilde)
    mats = {1: gm.g1, 2: gm.g2}
    if not doubled:
        hub = ("Y1",)
        vertices = [hub] + [("M2", j) for j in range(p)]
        edges = [JsjEdge(t, j, None, ("M2", j), hub, mats[t]) for j in range(p) for t in (1, 2)]
    else:
        vertices = [("Y1", 1), ("Y1", 2)] + [("M2", j, s) for s in (1, 2) for j in range(p)]
        edges = []
        for s in (1, 2):
            for j in range(p):
                edges.append(JsjEdge(1, j, s, ("M2", j, s), ("Y1", s), mats[1]))
                edges.append(JsjEdge(2, j, s, ("M2", j, s), ("Y1", 3 - s), mats[2]))
    g = JsjGraph(p, doubled, tuple(vertices), tuple(edges), e_tilde)
    bad = g.check()
    if bad:
        raise AssertionError("; ".join(bad))
    return g


# -- gluing matrices ---------------------------------------------------------

@dataclass(frozen=True)
class GluingMatrices:
    g1: Mat2
    g2: Mat2
    g1_inv: Mat2
    g2_inv: Mat2

    @property
    def dets(self) -> tuple[int, int]:
        return det2(self.g1), det2(self.g2)


def gluing_matrices(basis: BasisChange, e_tilde: int) -> GluingMatrices:
    a, b, c, d, e = basis.a, basis.b, basis.c, basis.d, e_tilde
    g1 = ((-a, b), (-c, d))
    g2 = ((-a, a * e - b), (c, d - c * e))
    g1_inv = ((-d, b), (-c, a))
    g2_inv = ((c * e - d, a * e - b), (c, a))
    for m, mi in ((g1, g1_inv), (g2, g2_inv)):
        if mat_mul(m, mi) != identity(2) or mat_mul(mi, m) != identity(2):
            raise ArithmeticError(f"inverse check failed for {m}")
    return GluingMatrices(g1, g2, g1_inv, g2_inv)


# -- Wang-Yu system ----------------------------------------------------------

@dataclass(frozen=True)
class WangYuSolution:
    lam: int
    lam_bar: int
    matrix: tuple[tuple[Fraction, ...], ...]
    rank: int


def wang_yu_matrix(p: int, c: int, e: int) -> list[list[Fraction]]:
    """The (p+1)x(p+1) matrix Y - Z of the specialised system."""
    two_c = Fraction(2, c)
    rows = [[Fraction(-e)] + [two_c] * p]
    for _ in range(p):
        rows.append([two_c] + [Fraction(0)] * p)
    return rows


def solve_wang_yu(p: int, c: int, e: int) -> WangYuSolution:
    """Primitive (lam, lam_bar), lam > 0, with -e lam + (2p/c) lam_bar = 0.

    Only the first row of the system is a constraint; the other rows just ask
    (2/c) lam to be an integer.
    """
    if e == 0:
        raise ValueError("e = 0: no horizontal surface in scope")
    if c not in (1, 2):
        raise ValueError(f"c must be 1 or 2, got {c}")
    (kernel,) = nullspace([[Fraction(-e), Fraction(2 * p, c)]])
    lam, lam_bar = primitive_integer(kernel)
    if lam < 0:
        lam, lam_bar = -lam, -lam_bar
    scale = 1
    while Fraction(2 * lam * scale, c).denominator != 1:
        scale += 1
    lam, lam_bar = lam * scale, lam_bar * scale

    # cross-check on the full matrix: first row vanishes on the symmetric vector
    mat = wang_yu_matrix(p, c, e)
    vec = [Fraction(lam)] + [Fraction(lam_bar)] * p
    first = sum(x * y for x, y in zip(mat[0], vec))
    if first != 0:
        raise ArithmeticError("symmetric solution does not satisfy the first row")
    for row in mat[1:]:
        if sum(x * y for x, y in zip(row, vec)).denominator != 1:
            raise ArithmeticError("(2/c) lam is not an integer")
    first_row_kernel = len(nullspace([mat[0]]))
    assert first_row_kernel == p
    _, piv = rref(mat)
    return WangYuSolution(lam, lam_bar, tuple(tuple(r) for r in mat), len(piv))


# -- slopes ------------------------------------------------------------------

@dataclass(frozen=True)
class Slope:
    t: int
    u: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.t, self.u)

    def __str__(self):
        return f"{self.t}/{self.u}"


@dataclass(frozen=True)
class HorizontalSolution:
    link_class: LinkClass
    p: int
    e_tilde: int
    lam: int
    lam_bar: int
    eps1: int
    eps2: int
    s1: Slope
    s2: Slope
    sb1: Slope
    sb2: Slope
    sb3: Slope
    theta: tuple[Fraction, Fraction]
    general: dict = field(compare=False)

    @property
    def semibundle(self) -> bool:
        return self.eps1 == -self.eps2

    def to_dict(self) -> dict:
        return {
            "lambda": str(self.lam),
            "lambda_bar": str(self.lam_bar),
            "eps1": str(self.eps1),
            "eps2": str(self.eps2),
            "t1_u1": [str(self.s1.t), str(self.s1.u)],
            "t2_u2": [str(self.s2.t), str(self.s2.u)],
            "tbar1_ubar1": [str(self.sb1.t), str(self.sb1.u)],
            "tbar2_ubar2": [str(self.sb2.t), str(self.sb2.u)],
            "tbar3_ubar3": [str(self.sb3.t), str(self.sb3.u)],
            "theta_slopes": [_fr(x) for x in self.theta],
            "semibundle": self.semibundle,
        }


def _fr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def raw_slopes(basis: BasisChange, e_tilde: int, lam: int, lam_bar: int, eps1: int, eps2: int) -> dict:
    """Slopes straight from lam, lam_bar and the signs, before simplification."""
    a, c, d = basis.a, basis.c, basis.d
    L, Lb = Fraction(lam), Fraction(lam_bar)
    s1 = eps1 * Lb / (-L * c) - Fraction(d, c)
    sb1 = eps1 * L / (-Lb * c) + Fraction(a, -c)
    s2 = eps2 * Lb / (L * c) - Fraction(c * e_tilde - d, c)
    sb2 = eps2 * L / (Lb * c) + Fraction(a, c)
    return {"s1": s1, "s2": s2, "sb1": sb1, "sb2": sb2, "sb3": -(sb1 + sb2)}


def closed_form_slopes(basis: BasisChange, e_tilde: int, eps1: int, eps2: int) -> dict:
    """The same slopes in terms of a, c, d and e~ only."""
    a, c, d, e = basis.a, basis.c, basis.d, e_tilde
    sb1 = Fraction(-2 * eps1 - a * c * e, e * c * c)
    sb2 = Fraction(2 * eps2 + a * c * e, e * c * c)
    return {
        "s1": Fraction(-eps1 * c * e - 2 * d, 2 * c),
        "s2": Fraction(2 * d - (2 - eps2) * c * e, 2 * c),
        "sb1": sb1,
        "sb2": sb2,
        "sb3": -(sb1 + sb2),
    }


def choose_signs(p: int, basis: BasisChange, e_tilde: int, lam: int, lam_bar: int) -> tuple[int, int]:
    """The unique uniform (eps1, eps2) making sum_j (t1/u1 + t2/u2) vanish."""
    hits = []
    for eps1, eps2 in product((-1, 1), repeat=2):
        s = raw_slopes(basis, e_tilde, lam, lam_bar, eps1, eps2)
        if p * (s["s1"] + s["s2"]) == 0:
            hits.append((eps1, eps2))
    if len(hits) != 1:
        raise ArithmeticError(f"expected one sign choice, found {hits}")
    return hits[0]


def coefficient_table(link_class: LinkClass, e_tilde: int) -> dict[str, Slope]:
    """Integer (t, u) pairs chosen for the semifibre."""
    e = e_tilde
    if link_class is LinkClass.KNOT:
        if e % 2 == 0:
            raise ValueError(f"knot case needs odd e~, got {e}")
        return {
            "s1": Slope((e - 1) // 2, 1),
            "s2": Slope((1 - e) // 2, 1),
            "sb1": Slope((1 - e) // 2, e),
            "sb2": Slope((1 + e) // 2, e),
            "sb3": Slope(-1, e),
        }
    if e % 2 or e == 0:
        raise ValueError(f"link case needs even nonzero e~, got {e}")
    sb3 = Slope(-2, e // 2) if e % 4 == 2 else Slope(-1, e // 4)
    return {
        "s1": Slope(e // 2 - 1, 1),
        "s2": Slope(1 - e // 2, 1),
        "sb1": Slope(1 - e // 2, e // 2),
        "sb2": Slope(1 + e // 2, e // 2),
        "sb3": sb3,
    }


def theta_slopes(link_class: LinkClass, e_tilde: int) -> tuple[Fraction, Fraction]:
    """Slopes of gamma_1, gamma_2 bounding the interpolating surface in M_2^j."""
    e = e_tilde
    if link_class is LinkClass.KNOT:
        return Fraction(1, 2 * e) - Fraction(1, 2), -Fraction(1, 2 * e) - Fraction(1, 2)
    return Fraction(2 - e, e), Fraction(2 + e, -e)


def compute_boundary_slopes(
    link_class: LinkClass, p: int, basis: BasisChange, e_tilde: int, lam: int, lam_bar: int
) -> HorizontalSolution:
    table = coefficient_table(link_class, e_tilde)
    eps1, eps2 = choose_signs(p, basis, e_tilde, lam, lam_bar)
    raw = raw_slopes(basis, e_tilde, lam, lam_bar, eps1, eps2)
    closed = closed_form_slopes(basis, e_tilde, eps1, eps2)
    for key in raw:
        if raw[key] != closed[key] or raw[key] != table[key].value:
            raise ArithmeticError(f"slope {key}: raw {raw[key]}, closed {closed[key]}, table {table[key]}")
    return HorizontalSolution(
        link_class=link_class,
        p=p,
        e_tilde=e_tilde,
        lam=lam,
        lam_bar=lam_bar,
        eps1=eps1,
        eps2=eps2,
        s1=table["s1"],
        s2=table["s2"],
        sb1=table["sb1"],
        sb2=table["sb2"],
        sb3=table["sb3"],
        theta=theta_slopes(link_class, e_tilde),
        general={"raw": raw, "closed": closed},
    )


# -- semi-bundle verdict -----------------------------------------------------

@dataclass(frozen=True)
class SemibundleReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks]}


def verify_semibundle(sol: HorizontalSolution, basis: BasisChange) -> SemibundleReport:
    checks = []

    def add(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    lam, lb = Fraction(sol.lam), Fraction(sol.lam_bar)
    for name, s in (("T1", sol.s1), ("T2", sol.s2)):
        cnt = abs(lam / s.u)
        add(f"H1 components on {name}", cnt == 1, _fr(cnt))
    for name, s in (("T1", sol.sb1), ("T2", sol.sb2)):
        cnt = abs(lb / s.u)
        add(f"H2 components on {name}", cnt == 1, _fr(cnt))
    # T3 bounds the removed neighbourhood of L_{j,j}; it is not glued, so any
    # positive whole number of boundary curves will do
    cnt = abs(lb / sol.sb3.u)
    add("H2 components on T3", cnt.denominator == 1 and cnt > 0, _fr(cnt))
    add("eps1 = -eps2", sol.eps1 == -sol.eps2, f"{sol.eps1},{sol.eps2}")
    add("sum over blocks of t1/u1 + t2/u2 = 0", sol.p * (sol.s1.value + sol.s2.value) == 0)
    add("block slope sum = 0", sol.sb1.value + sol.sb2.value + sol.sb3.value == 0)
    add(
        "tbar3/ubar3 = -4/(e~ c^2)",
        sol.sb3.value == Fraction(-4, sol.e_tilde * basis.c ** 2),
        _fr(sol.sb3.value),
    )
    return SemibundleReport(tuple(checks))
