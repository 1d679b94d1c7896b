"""Branched covers of surfaces given by permutation representations.

The punctured base is modelled as a 2-complex with one vertex, one loop per
generator, one 2-cell glued along the surface relator and one disk glued along
each meridian (the disk contains the branch point).  The cover is the graph
cover with vertex set ``{1..n}``: the lift of generator ``g`` starting on sheet
``s`` ends on sheet ``rho(g)^-1(s)``, which makes path lifting a right action
compatible with left-acting permutations.  Every lift of the relator cell is
closed because the relator maps to the identity, and over each meridian one
disk is glued per cycle of its monodromy.

Homology of each cover component is computed in spanning-tree coordinates;
the intersection form comes from the Alexander-Whitney cup product on the
barycentric subdivision of the complex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import lattice
from .algebra import Permutation, Representation, Word, evaluate, orbits
from .surface import STANDARD, CurveClass, SurfaceModel, relator_convention, surface_relator


@dataclass(frozen=True)
class BranchedCoverSpec:
    base: SurfaceModel
    degree: int
    rep: Representation
    relator_convention: str = STANDARD

    def relator(self) -> Word:
        return surface_relator(self.base, self.relator_convention)

    @classmethod
    def from_json(cls, data: dict) -> "BranchedCoverSpec":
        base = SurfaceModel.from_json(data["base"])
        n = int(data["degree"])
        images = {g: Permutation.parse(str(p), n) for g, p in data["rep"].items()}
        # generators left out of the JSON act trivially
        for g in base.generators:
            images.setdefault(g, Permutation.identity(n))
        return cls(base, n, Representation(n, images), relator_convention(data.get("relator_convention", STANDARD)))

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "degree": self.degree,
            "rep": {g: str(self.rep[g]) for g in self.base.generators if g in self.rep.images},
            "relator_convention": self.relator_convention,
        }


@dataclass
class SpecReport:
    passed: bool
    relator_image: Permutation
    orbit_count: int
    orbits: list[frozenset[int]]
    meridian_cycles: dict[str, list[int]]

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "relator_image": str(self.relator_image),
            "orbit_count": self.orbit_count,
            "orbits": [sorted(o) for o in self.orbits],
            "meridian_cycle_structures": self.meridian_cycles,
        }


class InvalidCoverSpec(ValueError):
    pass


def validate_spec(s: BranchedCoverSpec) -> SpecReport:
    gens = set(s.base.generators)
    have = set(s.rep.images)
    if gens != have:
        raise ValueError(
            f"generator mismatch between base and representation: "
            f"missing {sorted(gens - have)}, unexpected {sorted(have - gens)}"
        )
    if s.rep.degree != s.degree:
        raise ValueError(f"representation degree {s.rep.degree} differs from cover degree {s.degree}")
    image = evaluate(s.relator(), s.rep)
    orb = orbits([s.rep[g] for g in s.base.generators], s.degree)
    cycles = {}
    for x in s.base.meridian_names:
        cycles[x] = sorted((len(c) for c in s.rep[x].cycles(include_fixed=True)), reverse=True)
    return SpecReport(image.is_identity(), image, len(orb), orb, cycles)


def _require_valid(s: BranchedCoverSpec) -> SpecReport:
    report = validate_spec(s)
    if not report.passed:
        raise InvalidCoverSpec(f"surface relator maps to {report.relator_image}, not the identity")
    return report


def euler_char_cover(s: BranchedCoverSpec) -> int:
    """Riemann-Hurwitz: ``n*(2-2g) - sum_j (n - #cycles(rho(x_j)))``."""
    _require_valid(s)
    n = s.degree
    chi = n * (2 - 2 * s.base.genus)
    for x in s.base.meridian_names:
        chi -= n - len(s.rep[x].cycles(include_fixed=True))
    return chi


# -- explicit cell complex ---------------------------------------------------

Edge = tuple[str, int]  # (generator, tail sheet)
Side = tuple[Edge, int]  # edge traversed forward (+1) or backward (-1)


@dataclass(frozen=True)
class Face:
    kind: str  # "relator" or "disk"
    label: str
    boundary: tuple[Side, ...]
    orientation: int  # coefficient in the fundamental class
    sheet: int


@dataclass
class CoverComponent:
    index: int
    sheets: tuple[int, ...]
    euler_characteristic: int
    genus: int
    branch_points: dict[str, list[tuple[int, ...]]]
    tree_edges: list[Edge]
    cotree_edges: list[Edge]
    intersection_form: list[list[int]]
    cell_counts: tuple[int, int, int]
    # internal reduction data: pivot rows over cotree coordinates
    _pivots: dict[int, list[int]] = field(default_factory=dict, repr=False)
    _free: list[int] = field(default_factory=list, repr=False)
    _projection: list[list[int]] | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def reduce_chain(self, chain: dict[Edge, int]) -> tuple[int, ...]:
        """H_1 coordinates of a 1-cycle given as edge coefficients."""
        idx = {e: i for i, e in enumerate(self.cotree_edges)}
        x = [0] * len(self.cotree_edges)
        for e, c in chain.items():
            if e in idx:
                x[idx[e]] += c
        return self._reduce(x)

    def _reduce(self, x: list[int]) -> tuple[int, ...]:
        x = list(x)
        for col, row in self._pivots.items():
            c = x[col]
            if c:
                x = [u - c * v for u, v in zip(x, row)]
        free = [x[i] for i in self._free]
        if self._projection is not None:
            free = list(lattice.matvec(self._projection, free))
        return tuple(free)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "sheets": list(self.sheets),
            "euler_characteristic": self.euler_characteristic,
            "genus": self.genus,
            "branch_points": {x: [list(c) for c in cyc] for x, cyc in self.branch_points.items()},
            "cells": list(self.cell_counts),
            "spanning_tree": [f"{g}[{s}]" for g, s in self.tree_edges],
            "homology_generators": [f"{g}[{s}]" for g, s in self.cotree_edges],
        }


@dataclass
class CoverSurface:
    spec: BranchedCoverSpec
    edges: dict[Edge, tuple[int, int]]
    faces: list[Face]
    components: list[CoverComponent]
    euler_characteristic: int

    @property
    def total_genus(self) -> list[int]:
        return [c.genus for c in self.components]

    def component_of(self, sheet: int) -> CoverComponent:
        return next(c for c in self.components if sheet in c.sheets)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for c in self.components:
            out.append(acc)
            acc += c.rank
        return out

    def intersection_form(self) -> list[list[int]]:
        """Block diagonal intersection form over all components."""
        size = sum(c.rank for c in self.components)
        M = lattice.zeros(size, size)
        for off, c in zip(self.offsets(), self.components):
            for i, row in enumerate(c.intersection_form):
                for j, v in enumerate(row):
                    M[off + i][off + j] = v
        return M

    def to_json(self) -> dict:
        return {
            "euler_characteristic": self.euler_characteristic,
            "components": [c.to_json() for c in self.components],
        }


def _lift_step(rep: Representation, gen: str, exp: int, sheet: int) -> tuple[Side, int]:
    p = rep[gen]
    if exp == 1:
        return ((gen, sheet), 1), p.inverse()(sheet)
    start = p(sheet)
    return ((gen, start), -1), start


def lift_path(rep: Representation, w: Word, sheet: int) -> tuple[list[Side], int]:
    sides = []
    for g, e in w.letters:
        side, sheet = _lift_step(rep, g, e, sheet)
        sides.append(side)
    return sides, sheet


def _cells(s: BranchedCoverSpec):
    n, rep = s.degree, s.rep
    relator = s.relator()
    edges: dict[Edge, tuple[int, int]] = {}
    for g in s.base.generators:
        inv = rep[g].inverse()
        for i in range(1, n + 1):
            edges[(g, i)] = (i, inv(i))
    faces: list[Face] = []
    for i in range(1, n + 1):
        sides, end = lift_path(rep, relator, i)
        assert end == i
        faces.append(Face("relator", f"R[{i}]", tuple(sides), 1, i))
    exps = {}
    for g, e in relator.letters:
        exps[g] = exps.get(g, 0) + e
    for x in s.base.meridian_names:
        inv = rep[x].inverse()
        seen = set()
        for i in range(1, n + 1):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = inv(j)
            faces.append(Face("disk", f"D_{x}[{','.join(map(str, cyc))}]",
                              tuple(((x, j), 1) for j in cyc), -exps[x], i))
    return edges, faces


def _spanning_tree(sheets: Sequence[int], gens: Sequence[str], edges: dict[Edge, tuple[int, int]]):
    incoming: dict[int, list[Edge]] = {}
    for e, (t, h) in edges.items():
        incoming.setdefault(h, []).append(e)
    start = min(sheets)
    visited = {start}
    tree: list[Edge] = []
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for g in gens:
            out_e = (g, v)
            nbrs = [(out_e, edges[out_e][1])]
            nbrs += [(e, edges[e][0]) for e in sorted(incoming.get(v, [])) if e[0] == g]
            for e, w in nbrs:
                if w not in visited:
                    visited.add(w)
                    tree.append(e)
                    queue.append(w)
    return tree


def _boundary_vector(face: Face, index: dict[Edge, int], size: int) -> list[int]:
    vec = [0] * size
    for e, sgn in face.boundary:
        if e in index:
            vec[index[e]] += sgn
    return vec


def _eliminate(relations: list[list[int]], size: int):
    """Unit-pivot elimination, preferring the highest coordinate as pivot.

    Returns ``(pivots, free_columns, projection)``; ``projection`` is only set
    when a relation without a unit entry forces a Smith-form fallback.
    """
    pivots: dict[int, list[int]] = {}
    pending = [list(r) for r in relations]
    progress = True
    while pending and progress:
        progress = False
        later = []
        for r in pending:
            for col, row in pivots.items():
                c = r[col]
                if c:
                    r = [u - c * v for u, v in zip(r, row)]
            if not any(r):
                progress = True
                continue
            units = [i for i, v in enumerate(r) if abs(v) == 1]
            if not units:
                later.append(r)
                continue
            col = units[-1]
            if r[col] == -1:
                r = [-v for v in r]
            for pc, prow in list(pivots.items()):
                c = prow[col]
                if c:
                    pivots[pc] = [u - c * v for u, v in zip(prow, r)]
            pivots[col] = r
            progress = True
        pending = later
    free = [i for i in range(size) if i not in pivots]
    projection = None
    leftovers = []
    for r in pending:
        for col, row in pivots.items():
            c = r[col]
            if c:
                r = [u - c * v for u, v in zip(r, row)]
        if any(r):
            leftovers.append([r[i] for i in free])
    if leftovers:
        S, _, V = lattice.smith_normal_form(leftovers)
        diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
        r = sum(1 for d in diag if d)
        if any(d > 1 for d in diag):
            raise ArithmeticError("torsion in the first homology of a closed orientable surface")
        Vinv = lattice.inverse_unimodular(V)
        projection = Vinv[r:]
    return pivots, free, projection


def _cup_matrix(component_faces: list[Face], cochains: list[dict[Edge, int]]) -> list[list[int]]:
    """``C[i][j] = <phi_i cup phi_j, [surface]>`` on the barycentric subdivision.

    Subdivision vertices are ordered (vertex < edge midpoint < face centre).
    For a primal cocycle ``phi`` the subdivided cocycle puts ``phi(e)`` on the
    half edge leaving the tail of ``e`` and 0 on the other half; corner and
    spoke values are then forced by the cocycle condition in each triangle.
    """
    k = len(cochains)
    C = [[0] * k for _ in range(k)]
    for face in component_faces:
        vals, spokes = [], []
        for phi in cochains:
            v_s, sp_s, q = [], [], 0
            for e, sgn in face.boundary:
                value = sgn * phi.get(e, 0)
                first_half = phi.get(e, 0) if sgn == 1 else 0
                v_s.append(value)
                sp_s.append(q - first_half)
                q -= value
            assert q == 0, "cochain is not a cocycle"
            vals.append(v_s)
            spokes.append(sp_s)
        for i in range(k):
            if not any(vals[i]):
                continue
            for j in range(k):
                C[i][j] += face.orientation * sum(a * b for a, b in zip(vals[i], spokes[j]))
    return C


# orientation convention fixing a.b = +1 on the standard torus
_FORM_SIGN = -1


def build_cover(s: BranchedCoverSpec) -> CoverSurface:
    """Explicit covering complex with per-component homology and intersection form."""
    report = _require_valid(s)
    edges, faces = _cells(s)
    # the chosen face orientations must form a fundamental cycle
    total: dict[Edge, int] = {}
    for f in faces:
        for e, sgn in f.boundary:
            total[e] = total.get(e, 0) + f.orientation * sgn
    if any(total.values()):
        raise AssertionError("face orientations do not close up to a fundamental cycle")

    gens = s.base.generators
    components = []
    for idx, orb in enumerate(report.orbits):
        sheets = tuple(sorted(orb))
        comp_edges = {e: v for e, v in edges.items() if e[1] in orb}
        comp_faces = [f for f in faces if f.sheet in orb]
        tree = _spanning_tree(sheets, gens, comp_edges)
        tree_set = set(tree)
        cotree = [e for e in sorted(comp_edges, key=lambda e: (gens.index(e[0]), e[1])) if e not in tree_set]
        index = {e: i for i, e in enumerate(cotree)}
        relations = [_boundary_vector(f, index, len(cotree)) for f in comp_faces]
        pivots, free, projection = _eliminate(relations, len(cotree))
        V, E, F = len(sheets), len(comp_edges), len(comp_faces)
        chi = V - E + F
        branch = {}
        for x in s.base.meridian_names:
            branch[x] = [c for c in s.rep[x].cycles(include_fixed=True) if c[0] in orb]
        comp = CoverComponent(idx, sheets, chi, (2 - chi) // 2, branch, tree, cotree, [],
                              (V, E, F), pivots, free, projection)
        rank_h1 = len(free) if projection is None else len(projection)
        if rank_h1 != 2 - chi:
            raise AssertionError(f"component {idx}: H_1 rank {rank_h1} but Euler characteristic {chi}")
        # dual cocycles: phi_i(e) = i-th coordinate of the class of e
        cochains: list[dict[Edge, int]] = [{} for _ in range(rank_h1)]
        for pos, e in enumerate(cotree):
            unit = [0] * len(cotree)
            unit[pos] = 1
            for i, c in enumerate(comp._reduce(unit)):
                if c:
                    cochains[i][e] = c
        C = _cup_matrix(comp_faces, cochains)
        if rank_h1:
            inv = lattice.inverse_exact(C)
            form = [[_FORM_SIGN * x for x in row] for row in inv]
            if any(x.denominator != 1 for row in form for x in row):
                raise AssertionError("cup product pairing is not unimodular")
            comp.intersection_form = [[int(x) for x in row] for row in form]
        components.append(comp)
    chi_total = sum(c.euler_characteristic for c in components)
    return CoverSurface(s, edges, faces, components, chi_total)


# -- curve lifting -------------------------------------------------------------


@dataclass
class LiftedCurve:
    component: int
    degree: int
    sheets: tuple[int, ...]
    chain: dict[Edge, int]
    uses_meridians: bool

    def as_dict(self) -> dict:
        return {
            "component": self.component,
            "degree": self.degree,
            "sheets": list(self.sheets),
            "uses_meridian_letters": self.uses_meridians,
        }


def lift_curve(s: BranchedCoverSpec, c: Word) -> list[LiftedCurve]:
    """One entry per cycle of ``evaluate(c, rep)``, in order of smallest sheet.

    Words may contain meridian letters (based loops with whiskers); such lifts
    are flagged, since only their free homotopy class is meaningful.
    """
    report = _require_valid(s)
    unknown = c.generators() - set(s.base.generators)
    if unknown:
        raise ValueError(f"curve uses generators {sorted(unknown)} not in the base surface")
    uses_meridians = bool(c.generators() & set(s.base.meridian_names))
    lifts = []
    seen: set[int] = set()
    for start in range(1, s.degree + 1):
        if start in seen:
            continue
        chain: dict[Edge, int] = {}
        sheet, visited = start, []
        while True:
            visited.append(sheet)
            seen.add(sheet)
            sides, sheet = lift_path(s.rep, c, sheet)
            for e, sgn in sides:
                chain[e] = chain.get(e, 0) + sgn
            if sheet == start:
                break
        comp = next(i for i, o in enumerate(report.orbits) if start in o)
        chain = {e: v for e, v in chain.items() if v}
        lifts.append(LiftedCurve(comp, len(visited), tuple(visited), chain, uses_meridians))
    return lifts


@dataclass
class LiftedClasses:
    lifts: list[LiftedCurve]
    classes: list[CurveClass]
    intersection_form: list[list[int]]


def lift_curve_class(s: BranchedCoverSpec, c: Word, cover: CoverSurface | None = None) -> LiftedClasses:
    """Homology classes of the lifted curves in the cover's H_1 coordinates.

    Coordinates concatenate the per-component spanning-tree bases; the
    returned form is the matching block diagonal intersection form.
    """
    if cover is None:
        cover = build_cover(s)
    lifts = lift_curve(s, c)
    offsets = cover.offsets()
    size = sum(comp.rank for comp in cover.components)
    classes = []
    for lift in lifts:
        comp = cover.components[lift.component]
        local = comp.reduce_chain(lift.chain)
        vec = [0] * size
        vec[offsets[lift.component]:offsets[lift.component] + comp.rank] = local
        classes.append(CurveClass(tuple(vec)))
    return LiftedClasses(lifts, classes, cover.intersection_form())
