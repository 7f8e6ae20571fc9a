"""The p^2-fold orbifold cover tower F -> F' -> S^2(p, ..., p)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..seifert import orbifold_euler_char
from ..tangle import Case, MontesinosLink, validate_theorem_hypotheses

Sheet = tuple[int, int]


@dataclass(frozen=True)
class CellCount:
    vertices: int
    edges: int
    faces: int

    @property
    def euler_char(self) -> int:
        return self.vertices - self.edges + self.faces


@dataclass(frozen=True)
class CoverTower:
    p: int
    n: int
    case: Case
    h1_images: tuple[int, ...]
    h2_images: tuple[int, ...]
    fprime_cone_points: int
    fprime_orbifold_chi: Fraction
    f_euler_char: int
    f_genus: int
    cells: CellCount


def h1_images(p: int, n: int) -> tuple[int, ...]:
    return (1 % p, (-1) % p) + (0,) * (n - 2)


def h2_images(p: int, n: int) -> tuple[int, ...]:
    return (1 % p,) * ((n - 2) * p)


def monodromy(p: int, n: int) -> list[dict[Sheet, Sheet]]:
    """Sheet permutations of the generators x_1..x_n on (Z/p)^2.

    The first coordinate is the h_1 sheet of F'.  Over F' the loops around
    the lifted cone points all map to 1 under h_2; x_2 also drags the second
    coordinate back by n-2 so that x_1 x_2 ... x_n acts trivially.
    """
    sheets = [(a, b) for a in range(p) for b in range(p)]
    h1 = h1_images(p, n)
    perms = []
    for r in range(n):
        if r == 0:
            db = 0
        elif r == 1:
            db = -(n - 2)
        else:
            db = 1
        perms.append({(a, b): ((a + h1[r]) % p, (b + db) % p) for a, b in sheets})
    return perms


def _cycles(perm: dict) -> list[list]:
    seen, out = set(), []
    for s in perm:
        if s in seen:
            continue
        cyc, t = [], s
        while t not in seen:
            seen.add(t)
            cyc.append(t)
            t = perm[t]
        out.append(cyc)
    return out


def _compose(perms: list[dict]) -> dict:
    out = {}
    for s in perms[0]:
        t = s
        for g in perms:
            t = g[t]
        out[s] = t
    return out


def cell_count(p: int, n: int) -> CellCount:
    """Cells of F lifted from the base sphere cut along a loop through c_1..c_n.

    The base has n vertices, n edges and two disk faces.  A vertex lifts to one
    point per cycle of its monodromy, edges lift to one copy per sheet, and the
    two faces lift according to the monodromy of their boundary loops (trivial
    for one face, x_1 ... x_n for the other).
    """
    perms = monodromy(p, n)
    for g in perms:
        assert all(len(c) == p for c in _cycles(g)), "generator must have order p on every sheet"
    sheets = p * p
    verts = sum(len(_cycles(g)) for g in perms)
    faces = sheets + len(_cycles(_compose(perms)))
    return CellCount(verts, n * sheets, faces)


def fprime_cone_points(p: int, n: int) -> int:
    """Cone points of F': fixed points of h_1(x_r) on Z/p, over every r."""
    count = 0
    for img in h1_images(p, n):
        if img % p == 0:
            count += p
    return count


def build_cover_tower(link: MontesinosLink) -> CoverTower:
    report = validate_theorem_hypotheses(link)
    if not report.applicable:
        raise ValueError(f"cover tower needs Case1 or Case2: {report.reason}")
    p, n = link.common_denominator(), link.n
    chi_b = orbifold_euler_char(link)
    cone = fprime_cone_points(p, n)
    chi_fp = 2 - cone * (1 - Fraction(1, p))
    assert chi_fp == p * chi_b
    chi_f = p * chi_fp
    if chi_f.denominator != 1 or chi_f % 2:
        raise ArithmeticError(f"non-integral genus from chi(F) = {chi_f}")
    genus = int(1 - chi_f / 2)
    cells = cell_count(p, n)
    if cells.euler_char != chi_f or genus < 0:
        raise ArithmeticError(f"cell count {cells} disagrees with chi(F) = {chi_f}")
    return CoverTower(
        p=p,
        n=n,
        case=report.case,
        h1_images=h1_images(p, n),
        h2_images=h2_images(p, n),
        fprime_cone_points=cone,
        fprime_orbifold_chi=chi_fp,
        f_euler_char=int(chi_f),
        f_genus=genus,
        cells=cells,
    )
