"""Trisection diagrams at the level of homology, bridge-trisected surfaces and
pullbacks along branched covers.

A diagram of genus ``g`` is three cut systems on the core surface, each given
by ``g`` classes in ``H_1 = Z^(2g)`` with the standard skew form.  Sector
``λ`` is bounded by systems ``λ`` and ``λ+1`` (indices mod 3), so

    k_λ = 2g - rank(L_λ + L_(λ+1)),    χ = 2 + g - k_1 - k_2 - k_3.

Second homology is ``L_γ ∩ (L_α + L_β)`` modulo the classes already dead in
one of the two handlebodies, ``L_γ∩L_α + L_γ∩L_β``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import Permutation, Representation, Word, orbits
from .braid import BraidWord, closure_component_count, identify_closure
from .cover import BranchedCoverSpec, build_cover, euler_char_cover, lift_curve_class, validate_spec
from .lattice import (
    Sublattice,
    inverse_unimodular,
    lattice_intersection,
    lattice_sum,
    matvec,
    quotient_invariants,
    rank,
    symplectic_basis,
)
from .surface import CORNER_WHISKER, STANDARD, CurveClass, SurfaceModel, abelianize, pairing

SYSTEMS = ("alpha", "beta", "gamma")
DIAGRAM_SCHEMA = "trisectlab.diagram/1"


def _system_index(lam: int) -> int:
    if lam not in (1, 2, 3):
        raise ValueError(f"λ must be 1, 2 or 3, got {lam}")
    return lam - 1


# -- diagrams -----------------------------------------------------------------


@dataclass(frozen=True)
class TrisectionDiagram:
    """Three cut systems of classes on a genus ``g`` core.

    Equality is homological: curve words and labels are carried along but do
    not take part in comparisons.
    """

    genus: int
    alpha: tuple[CurveClass, ...]
    beta: tuple[CurveClass, ...]
    gamma: tuple[CurveClass, ...]
    words: Mapping[str, tuple[Word, ...]] = field(default_factory=dict, compare=False)
    labels: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        for name in SYSTEMS:
            classes = tuple(c if isinstance(c, CurveClass) else CurveClass(tuple(c)) for c in getattr(self, name))
            for c in classes:
                if c.genus != self.genus:
                    raise ValueError(
                        f"inconsistent genus: {name} has a class with {len(c.coordinates)} "
                        f"coordinates in a genus {self.genus} diagram"
                    )
            object.__setattr__(self, name, classes)
        words = {k: tuple(w if isinstance(w, Word) else Word.parse(w) for w in v) for k, v in dict(self.words).items()}
        for k, ws in words.items():
            if k not in SYSTEMS:
                raise ValueError(f"unknown cut system {k!r} in words")
            if len(ws) != len(getattr(self, k)):
                raise ValueError(f"{k} has {len(getattr(self, k))} classes but {len(ws)} words")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "labels", dict(self.labels))

    def system(self, lam: int) -> tuple[CurveClass, ...]:
        return getattr(self, SYSTEMS[_system_index(lam)])

    def lattice(self, lam: int) -> Sublattice:
        return Sublattice.span([c.coordinates for c in self.system(lam)], 2 * self.genus)

    @classmethod
    def from_json(cls, data: dict) -> "TrisectionDiagram":
        if not isinstance(data, dict):
            raise ValueError("a diagram must be a JSON object")
        missing = [k for k in ("genus",) + SYSTEMS if k not in data]
        if missing:
            raise ValueError(f"diagram is missing fields {missing}")
        return cls(
            int(data["genus"]),
            *(tuple(CurveClass(tuple(int(x) for x in c)) for c in data[k]) for k in SYSTEMS),
            words={k: tuple(Word.parse(w) for w in v) for k, v in data.get("words", {}).items()},
            labels={str(k): str(v) for k, v in data.get("labels", {}).items()},
        )

    def to_json(self) -> dict:
        out = {"schema": DIAGRAM_SCHEMA, "genus": self.genus}
        for k in SYSTEMS:
            out[k] = [list(c.coordinates) for c in getattr(self, k)]
        if self.words:
            out["words"] = {k: [str(w) for w in self.words[k]] for k in SYSTEMS if k in self.words}
        if self.labels:
            out["labels"] = dict(sorted(self.labels.items()))
        return out


@dataclass(frozen=True)
class TrisectionParameters:
    g: int
    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        for k in (self.k1, self.k2, self.k3):
            if not 0 <= k <= self.g:
                raise ValueError(f"k must lie in 0..g, got {k} with g={self.g}")

    @property
    def ks(self) -> tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)

    def __str__(self) -> str:
        return f"({self.g}; {self.k1},{self.k2},{self.k3})"

    def to_json(self) -> dict:
        return {"g": self.g, "k": list(self.ks)}


@dataclass
class ValidationReport:
    passed: bool
    violations: dict[str, list[str]]

    def as_dict(self) -> dict:
        return {"passed": self.passed, "violations": {k: list(v) for k, v in self.violations.items()}}


def validate_diagram(d: TrisectionDiagram) -> ValidationReport:
    """Each system must have ``g`` classes spanning an isotropic, primitive, rank ``g`` sublattice."""
    violations: dict[str, list[str]] = {}
    for lam, name in enumerate(SYSTEMS, start=1):
        found = []
        classes = d.system(lam)
        if len(classes) != d.genus:
            found.append(f"expected {d.genus} curves, got {len(classes)}")
        L = d.lattice(lam)
        if L.rank != d.genus:
            found.append(f"rank {L.rank}, expected {d.genus}")
        for i, u in enumerate(classes):
            for j in range(i + 1, len(classes)):
                ip = pairing(u.coordinates, classes[j].coordinates)
                if ip:
                    found.append(f"not isotropic: curves {i + 1} and {j + 1} meet algebraically {ip} times")
        torsion = quotient_invariants(L)[1]
        if torsion:
            found.append(f"not primitive: quotient torsion {torsion}")
        if found:
            violations[name] = found
    return ValidationReport(not violations, violations)


class InvalidDiagram(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        lines = [f"{k}: {'; '.join(v)}" for k, v in report.violations.items()]
        super().__init__("invalid trisection diagram: " + " | ".join(lines))


def _require_valid(d: TrisectionDiagram):
    rep = validate_diagram(d)
    if not rep.passed:
        raise InvalidDiagram(rep)


def sector_k(d: TrisectionDiagram, lam: int) -> int:
    """Rank of the free group of the sector bounded by systems ``λ`` and ``λ+1``."""
    _require_valid(d)
    L = lattice_sum(d.lattice(lam), d.lattice(lam % 3 + 1))
    free, torsion = quotient_invariants(L)
    if torsion:
        raise ValueError(
            f"sector {lam}: quotient has torsion {torsion}; "
            "not a #^k(S1xS2) splitting homologically"
        )
    return free


def parameters(d: TrisectionDiagram) -> TrisectionParameters:
    return TrisectionParameters(d.genus, *(sector_k(d, lam) for lam in (1, 2, 3)))


@dataclass(frozen=True)
class HomologySummary:
    h1_free_rank: int
    h1_torsion: tuple[int, ...]
    h2_rank: int

    @property
    def h1_trivial(self) -> bool:
        return self.h1_free_rank == 0 and not self.h1_torsion

    def betti_chi(self) -> int:
        # b3 = b1 by duality, b0 = b4 = 1
        return 2 - 2 * self.h1_free_rank + self.h2_rank

    def to_json(self) -> dict:
        return {
            "h1_free_rank": self.h1_free_rank,
            "h1_torsion": list(self.h1_torsion),
            "h2_rank": self.h2_rank,
        }


def homology_summary(d: TrisectionDiagram) -> HomologySummary:
    _require_valid(d)
    La, Lb, Lc = d.lattice(1), d.lattice(2), d.lattice(3)
    free, torsion = quotient_invariants(lattice_sum(lattice_sum(La, Lb), Lc))
    cycles = lattice_intersection(Lc, lattice_sum(La, Lb))
    dead = lattice_sum(lattice_intersection(Lc, La), lattice_intersection(Lc, Lb))
    return HomologySummary(free, tuple(torsion), cycles.rank - dead.rank)


def parameters_chi(p: TrisectionParameters) -> int:
    return 2 + p.g - p.k1 - p.k2 - p.k3


def euler_characteristic(d: TrisectionDiagram) -> int:
    return parameters_chi(parameters(d))


def stabilize(d: TrisectionDiagram, lam: int) -> TrisectionDiagram:
    """Add a hyperbolic pair ``(e, f)`` that raises ``k_λ`` by one.

    Both systems bounding sector ``λ`` receive ``f``; the remaining system
    receives ``e``, which meets ``f`` once.
    """
    _require_valid(d)
    i = _system_index(lam)
    g = d.genus + 1
    e = CurveClass(tuple([0] * (2 * g - 2) + [1, 0]))
    f = CurveClass(tuple([0] * (2 * g - 2) + [0, 1]))
    new = {}
    for j, name in enumerate(SYSTEMS):
        extended = tuple(CurveClass(c.coordinates + (0, 0)) for c in getattr(d, name))
        new[name] = extended + ((f,) if j in (i, (i + 1) % 3) else (e,))
    return TrisectionDiagram(g, new["alpha"], new["beta"], new["gamma"], labels=d.labels)


# -- singular local models ------------------------------------------------------


@dataclass(frozen=True)
class SingularModelTag:
    """A local model of the branched cover near a point of the branch surface.

    ``meridians`` are the images of the meridians of the link in the model's
    own symmetric group; ``preimages`` counts points over the model's cone point.
    """

    kind: str
    braid: BraidWord
    meridians: tuple[Permutation, ...]
    preimages: int
    d: int | None = None

    @property
    def link(self) -> str:
        return identify_closure(self.braid).tag

    @property
    def sheets(self) -> int:
        return self.meridians[0].degree

    @property
    def is_point(self) -> bool:
        return self.kind in ("cusp", "node_positive", "node_negative")

    @classmethod
    def cusp(cls) -> "SingularModelTag":
        return cls("cusp", BraidWord.parse("s1^3"), (Permutation.parse("(1 2)", 3), Permutation.parse("(2 3)", 3)), 1)

    @classmethod
    def node(cls, positive: bool = True) -> "SingularModelTag":
        word = "s1^2" if positive else "s1^-2"
        ms = (Permutation.parse("(1 2)", 4), Permutation.parse("(3 4)", 4))
        return cls("node_positive" if positive else "node_negative", BraidWord.parse(word), ms, 2)

    @classmethod
    def cyclic(cls, d: int) -> "SingularModelTag":
        if d < 2:
            raise ValueError("cyclic models need d >= 2")
        return cls(f"cyclic_d({d})", BraidWord(1), (Permutation.from_cycles([range(1, d + 1)], d),), 1, d)

    @classmethod
    def parse(cls, name: str) -> "SingularModelTag":
        name = name.strip()
        if name == "cusp":
            return cls.cusp()
        if name in ("node_positive", "node"):
            return cls.node(True)
        if name == "node_negative":
            return cls.node(False)
        m = re.fullmatch(r"cyclic_d\((\d+)\)", name)
        if m:
            return cls.cyclic(int(m.group(1)))
        raise ValueError(f"unsupported local model {name!r}")

    def local_cover_components(self) -> int:
        return len(orbits(self.meridians, self.sheets))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "braid": str(self.braid),
            "link": self.link,
            "meridians": [str(p) for p in self.meridians],
            "sheets": self.sheets,
            "local_components": self.local_cover_components(),
            "preimages": self.preimages,
        }


_SEAM_EVENTS = {"crossing": "s1", "tangency": "s1"}


@dataclass
class SeamPiece:
    event: str
    braid: BraidWord
    tag: str
    components: int

    def as_dict(self) -> dict:
        return {"event": self.event, "braid": str(self.braid), "tag": self.tag, "components": self.components}


@dataclass
class SeamLinkReport:
    pieces: list[SeamPiece]

    @property
    def components(self) -> int:
        return sum(p.components for p in self.pieces)

    @property
    def tags(self) -> list[str]:
        return [p.tag for p in self.pieces]

    def as_dict(self) -> dict:
        return {"pieces": [p.as_dict() for p in self.pieces], "components": self.components}


def seam_link(events: Sequence[SingularModelTag | str]) -> SeamLinkReport:
    """Split union of the local links of ``events``, one piece per event."""
    pieces = []
    for ev in events:
        if isinstance(ev, str):
            if ev in _SEAM_EVENTS:
                braid, name = BraidWord.parse(_SEAM_EVENTS[ev], 2), ev
            else:
                ev = SingularModelTag.parse(ev)
        if isinstance(ev, SingularModelTag):
            if ev.kind.startswith("cyclic_d"):
                raise ValueError(f"unsupported seam event {ev.kind!r}: a smooth branch model has no seam crossing")
            braid, name = ev.braid, ev.kind
        ident = identify_closure(braid)
        pieces.append(SeamPiece(name, braid, ident.tag, ident.components))
    return SeamLinkReport(pieces)


# -- bridge data ------------------------------------------------------------------


@dataclass(frozen=True)
class BridgePoint:
    sign: int
    region: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("bridge point sign must be +1 or -1")


@dataclass(frozen=True)
class Patch:
    """``trivial_disk`` or ``cone`` on the closure of ``braid``."""

    kind: str
    braid: BraidWord | None = None

    def __post_init__(self):
        if self.kind not in ("trivial_disk", "cone"):
            raise ValueError(f"unknown patch kind {self.kind!r}")
        if (self.kind == "cone") != (self.braid is not None):
            raise ValueError("a cone patch needs a braid and a trivial disk has none")

    @property
    def boundary_components(self) -> int:
        return 1 if self.braid is None else closure_component_count(self.braid)

    def as_dict(self) -> dict:
        return {"kind": self.kind} if self.braid is None else {"kind": "cone", "braid": str(self.braid)}


def _pairing_cycles(p1: Sequence[tuple[int, int]], p2: Sequence[tuple[int, int]], n: int) -> int:
    adj = [Permutation.from_cycles([c for c in p], n) for p in (p1, p2)]
    return len(orbits(adj, n))


@dataclass(frozen=True)
class BridgeData:
    """Bridge points, three seam matchings and three lists of patches.

    Patches of sector ``λ`` fill the seam link built from seams ``λ`` and
    ``λ+1``, so their boundary component counts must add up to the number of
    cycles in the union of the two matchings.
    """

    points: tuple[BridgePoint, ...]
    seams: tuple[tuple[tuple[int, int], ...], ...]
    patches: tuple[tuple[Patch, ...], ...]
    regions: tuple[str, ...] = ()

    def __post_init__(self):
        points = tuple(self.points)
        seams = tuple(tuple((int(a), int(b)) for a, b in s) for s in self.seams)
        patches = tuple(tuple(p) for p in self.patches)
        n = len(points)
        if n % 2:
            raise ValueError("a bridge surface has an even number of bridge points")
        if len(seams) != 3 or len(patches) != 3:
            raise ValueError("bridge data needs exactly three seam matchings and three patch lists")
        for lam, s in enumerate(seams, start=1):
            flat = sorted(x for pair in s for x in pair)
            if flat != list(range(1, n + 1)):
                raise ValueError(f"seam {lam} is not a perfect matching of the {n} bridge points")
        for lam in range(3):
            cycles = _pairing_cycles(seams[lam], seams[(lam + 1) % 3], n)
            have = sum(p.boundary_components for p in patches[lam])
            if have != cycles:
                raise ValueError(
                    f"sector {lam + 1}: seam link has {cycles} components but patches bound {have}"
                )
        regions = tuple(dict.fromkeys(tuple(self.regions) + tuple(p.region for p in points)))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "seams", seams)
        object.__setattr__(self, "patches", patches)
        object.__setattr__(self, "regions", regions)

    @property
    def bridge_number(self) -> int:
        return len(self.points) // 2

    def surface_euler_characteristic(self) -> int:
        """Patches are disks (cones included); seams are arcs glued at bridge points."""
        return sum(len(p) for p in self.patches) - self.bridge_number

    @classmethod
    def from_json(cls, data: dict) -> "BridgeData":
        points = tuple(BridgePoint(int(p["sign"]), str(p["region"])) for p in data["points"])
        patches = tuple(
            tuple(
                Patch("cone", BraidWord.parse(p["braid"])) if p["kind"] == "cone" else Patch(p["kind"])
                for p in sector
            )
            for sector in data["patches"]
        )
        seams = tuple(tuple((a, b) for a, b in s) for s in data["seams"])
        return cls(points, seams, patches, tuple(data.get("regions", ())))

    def as_dict(self) -> dict:
        return {
            "points": [{"sign": p.sign, "region": p.region} for p in self.points],
            "seams": [[list(pair) for pair in s] for s in self.seams],
            "patches": [[p.as_dict() for p in ps] for ps in self.patches],
            "regions": list(self.regions),
        }


def algebraic_degree(b: BridgeData, region: str) -> int:
    """Signed count of bridge points in ``region``."""
    if region not in b.regions:
        raise ValueError(f"unknown region tag {region!r}; known: {list(b.regions)}")
    return sum(p.sign for p in b.points if p.region == region)


def chi_branched_cover_4d(n: int, chi_base: int, strata: Sequence[tuple[int, int]]) -> int:
    """``n*chi_base - Σ (n - sheets_over) * chi_part`` over the strata of the branch set."""
    return n * chi_base - sum((n - sheets) * chi for chi, sheets in strata)


def branch_strata(
    s: BranchedCoverSpec, bridge: BridgeData, models: Sequence[SingularModelTag]
) -> list[tuple[int, int]]:
    """Strata of the branch surface: its smooth part, then one point per singular model."""
    merid = [s.rep[x] for x in s.base.meridian_names]
    counts = {len(p.cycles(include_fixed=True)) for p in merid}
    if len(counts) != 1:
        raise ValueError(f"meridians have different sheet counts {sorted(counts)}; smooth part is not uniform")
    points = [m for m in models if m.is_point]
    chi_smooth = bridge.surface_euler_characteristic() - len(points)
    return [(chi_smooth, counts.pop())] + [(1, m.preimages) for m in points]


# -- pullback ----------------------------------------------------------------------


class LiftError(ValueError):
    pass


@dataclass
class PullbackReport:
    base_genus: int
    degree: int
    genus: int
    components: int
    connected: bool
    surface_chi_riemann_hurwitz: int
    surface_chi_cells: int
    lifts: dict[str, list[list[int]]]
    kept: dict[str, list[int]]
    deleted: dict[str, list[dict]]
    model_checks: list[dict]
    parameters: TrisectionParameters
    homology: HomologySummary
    chi_trisection: int
    chi_betti: int
    chi_branched: int | None
    warnings: list[str]

    def as_dict(self) -> dict:
        return {
            "base_genus": self.base_genus,
            "degree": self.degree,
            "genus": self.genus,
            "components": self.components,
            "connected": self.connected,
            "surface_chi": {"riemann_hurwitz": self.surface_chi_riemann_hurwitz, "cells": self.surface_chi_cells},
            "lifts": self.lifts,
            "kept": self.kept,
            "deleted": self.deleted,
            "model_checks": self.model_checks,
            "parameters": self.parameters.to_json(),
            "homology": self.homology.to_json(),
            "chi": {
                "trisection": self.chi_trisection,
                "betti": self.chi_betti,
                "branched_cover": self.chi_branched,
            },
            "warnings": list(self.warnings),
        }


def _check_models(s: BranchedCoverSpec, models: Sequence[SingularModelTag]) -> list[dict]:
    merid = {x: s.rep[x] for x in s.base.meridian_names}
    checks = []
    for m in models:
        problems = []
        if m.sheets > s.degree:
            problems.append(f"model needs {m.sheets} sheets, cover has {s.degree}")
        if m.kind.startswith("cyclic_d"):
            for x, p in merid.items():
                if sorted(len(c) for c in p.cycles()) != [m.d]:
                    problems.append(f"meridian {x} maps to {p}, not a {m.d}-cycle")
        else:
            for x, p in merid.items():
                if [len(c) for c in p.cycles()] != [2]:
                    problems.append(f"meridian {x} maps to {p}, not a transposition")
        if problems:
            raise ValueError(f"local model {m.kind} is incompatible with the cover: " + "; ".join(problems))
        checks.append(m.as_dict())
    return checks


def _reduce_system(classes: list[tuple[int, ...]], target: int, name: str):
    kept: list[int] = []
    deleted = []
    for i, c in enumerate(classes):
        reason = None
        if not any(c):
            reason = "null-homologous"
        else:
            for j in kept:
                if classes[j] == c or classes[j] == tuple(-x for x in c):
                    reason = f"parallel to lift {j + 1}"
                    break
            else:
                if rank([classes[j] for j in kept] + [c]) == len(kept):
                    reason = "dependent on kept lifts"
        if reason is None:
            kept.append(i)
        else:
            deleted.append({"lift": i + 1, "reason": reason})
    if len(kept) != target:
        raise LiftError(
            f"lift is not a homological cut system: {name} keeps {len(kept)} independent classes, "
            f"expected {target}"
        )
    return kept, deleted


def pullback_trisection(
    d: TrisectionDiagram,
    s: BranchedCoverSpec,
    singular_points: Sequence[SingularModelTag] = (),
    bridge: BridgeData | None = None,
) -> tuple[TrisectionDiagram, TrisectionParameters, PullbackReport]:
    """Lift ``d`` along the branched cover ``s``.

    Every curve of ``d`` needs a word in the punctured surface's generators.
    Lifts are listed sheet by sheet; the first occurrence of each class is
    kept and the rest are reported as deleted.
    """
    _require_valid(d)
    if d.genus != s.base.genus:
        raise ValueError(f"diagram genus {d.genus} differs from the cover base genus {s.base.genus}")
    missing = [k for k in SYSTEMS if k not in d.words]
    if missing:
        raise ValueError(f"pullback needs curve words for {missing}")
    if bridge is not None and len(bridge.points) != s.base.punctures:
        raise ValueError(
            f"bridge data has {len(bridge.points)} bridge points but the cover branches over "
            f"{s.base.punctures} punctures"
        )
    warnings = []
    for k in SYSTEMS:
        for i, (w, c) in enumerate(zip(d.words[k], getattr(d, k)), start=1):
            if abelianize(s.base, w) != c:
                raise ValueError(f"{k} curve {i}: word {w} has class {abelianize(s.base, w).coordinates}, not {c.coordinates}")
    spec_report = validate_spec(s)
    if not spec_report.passed:
        raise ValueError(f"invalid cover: relator {s.relator()} does not map to the identity")
    checks = _check_models(s, singular_points)
    cover = build_cover(s)
    if len(cover.components) > 1:
        parts = ", ".join(
            f"component {c.index + 1}: sheets {list(c.sheets)}, genus {c.genus}" for c in cover.components
        )
        raise LiftError(f"cover is disconnected ({parts}); each component must be lifted on its own")
    comp = cover.components[0]
    g = comp.genus
    P = symplectic_basis(cover.intersection_form())
    Pinv = inverse_unimodular(P)
    lifted, kept, deleted, lifts_out = {}, {}, {}, {}
    for k in SYSTEMS:
        classes = []
        for w in d.words[k]:
            classes += [tuple(matvec(Pinv, c.coordinates)) for c in lift_curve_class(s, w, cover).classes]
        lifts_out[k] = [list(c) for c in classes]
        kept[k], deleted[k] = _reduce_system(classes, g, k)
        lifted[k] = tuple(CurveClass(classes[i]) for i in kept[k])
    labels = dict(d.labels)
    labels["lifted_degree"] = str(s.degree)
    out = TrisectionDiagram(g, lifted["alpha"], lifted["beta"], lifted["gamma"], labels=labels)
    check = validate_diagram(out)
    if not check.passed:
        raise LiftError(f"lift is not a homological cut system: {InvalidDiagram(check)}")
    params = parameters(out)
    homology = homology_summary(out)
    chi_branched = None
    if bridge is not None:
        chi_branched = chi_branched_cover_4d(
            s.degree, euler_characteristic(d), branch_strata(s, bridge, singular_points)
        )
    chi_tri = parameters_chi(params)
    if chi_tri != homology.betti_chi():
        warnings.append(f"χ from parameters {chi_tri} differs from χ from Betti numbers {homology.betti_chi()}")
    if chi_branched is not None and chi_branched != chi_tri:
        warnings.append(f"χ from parameters {chi_tri} differs from the branched cover count {chi_branched}")
    report = PullbackReport(
        base_genus=d.genus,
        degree=s.degree,
        genus=g,
        components=len(cover.components),
        connected=True,
        surface_chi_riemann_hurwitz=euler_char_cover(s),
        surface_chi_cells=cover.euler_characteristic,
        lifts=lifts_out,
        kept={k: [i + 1 for i in v] for k, v in kept.items()},
        deleted=deleted,
        model_checks=checks,
        parameters=params,
        homology=homology,
        chi_trisection=chi_tri,
        chi_betti=homology.betti_chi(),
        chi_branched=chi_branched,
        warnings=warnings,
    )
    return out, params, report


# -- fixtures -------------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineFixture:
    name: str
    diagram: TrisectionDiagram
    cover: BranchedCoverSpec | None = None
    models: tuple[SingularModelTag, ...] = ()
    bridge: BridgeData | None = None
    perturbed_bridge: BridgeData | None = None


def cp2_diagram(with_words: bool = True) -> TrisectionDiagram:
    """Genus one diagram of CP^2 with whiskered words on the twice punctured torus."""
    words = {}
    if with_words:
        words = {
            "alpha": ("a",),
            "beta": ("y^-1 a^-1 b^-1 x^-1 b a y b",),
            "gamma": ("y^-1 b^-1 y^-1 a^-1 b^-1 x^-1 b",),
        }
    return TrisectionDiagram(
        1,
        (CurveClass((1, 0)),),
        (CurveClass((0, 1)),),
        (CurveClass((-1, -1)),),
        words=words,
        labels={"name": "cp2_standard"},
    )


def quartic_cover_spec() -> BranchedCoverSpec:
    """Irregular 3-fold cover of the twice punctured torus: y, x -> (1 2), b -> (2 3), a -> 1."""
    base = SurfaceModel(1, 2, ("a", "b"), ("x", "y"))
    rep = Representation.from_strings(3, {"a": "()", "b": "(2 3)", "x": "(1 2)", "y": "(1 2)"})
    return BranchedCoverSpec(base, 3, rep, CORNER_WHISKER)


def quartic_complement_presentation():
    """Raw relators of the quartic complement and its two-generator simplification."""
    from .algebra import Presentation

    raw = Presentation(
        ("a", "b", "x", "y"),
        tuple(
            Word.parse(w)
            for w in (
                "a",
                "y^-1 a^-1 b^-1 x^-1 b a y b",
                "y^-1 b^-1 y^-1 a^-1 b^-1 x^-1 b",
                "a y b a^-1 b^-1 x^-1",
            )
        ),
    )
    simplified = Presentation(("b", "y"), (Word.parse("y b y b^-1 y^-1 b^-1"), Word.parse("y^2 b^2")))
    return raw, simplified


def _cone_trefoil() -> Patch:
    return Patch("cone", BraidWord.parse("s1^3"))


def quartic_bridge_data() -> BridgeData:
    """One bridge tri-cuspidal quartic: each patch a cone on the right trefoil."""
    pts = (BridgePoint(1, "phi"), BridgePoint(-1, "outside"))
    seams = (((1, 2),),) * 3
    return BridgeData(pts, seams, ((_cone_trefoil(),),) * 3, ("phi", "outside"))


def quartic_perturbed_bridge_data() -> BridgeData:
    """Four bridge perturbation with all positive points in the triangular region ``phi``."""
    pts = tuple(BridgePoint(1, "phi") if i % 2 else BridgePoint(-1, "outside") for i in range(1, 9))
    seams = (
        ((1, 2), (3, 4), (5, 6), (7, 8)),
        ((2, 3), (1, 4), (6, 7), (5, 8)),
        ((1, 6), (2, 5), (3, 8), (4, 7)),
    )
    patches = ((_cone_trefoil(), Patch("trivial_disk")),) * 3
    return BridgeData(pts, seams, patches, ("phi", "outside"))


def cyclic_diagram() -> TrisectionDiagram:
    return TrisectionDiagram(
        1,
        (CurveClass((1, 0)),),
        (CurveClass((0, 1)),),
        (CurveClass((-1, -1)),),
        words={"alpha": ("a",), "beta": ("b",), "gamma": ("a^-1 b^-1",)},
        labels={"name": "cp2_standard"},
    )


def cyclic_fixture(d: int) -> PipelineFixture:
    """Degree ``d`` cyclic cover of CP^2 branched along a one bridge unknotted curve."""
    if d != 2:
        raise ValueError(f"cyclic_Sd({d}) is not available: only the degree 2 curve data is stored")
    base = SurfaceModel(1, 2, ("a", "b"), ("x", "y"))
    cyc = str(Permutation.from_cycles([range(1, d + 1)], d))
    inv = str(Permutation.from_cycles([range(1, d + 1)], d).inverse())
    rep = Representation.from_strings(d, {"a": "()", "b": "()", "x": cyc, "y": inv})
    spec = BranchedCoverSpec(base, d, rep, STANDARD)
    pts = (BridgePoint(1, "phi"), BridgePoint(-1, "outside"))
    bridge = BridgeData(pts, (((1, 2),),) * 3, ((Patch("trivial_disk"),),) * 3, ("phi", "outside"))
    return PipelineFixture(f"cyclic_Sd({d})", cyclic_diagram(), spec, (SingularModelTag.cyclic(d),), bridge)


def get_fixture(name: str) -> PipelineFixture:
    if name == "cp2_standard":
        return PipelineFixture(name, cp2_diagram())
    if name == "cp2_tricuspidal_quartic":
        return PipelineFixture(
            name,
            cp2_diagram(),
            quartic_cover_spec(),
            (SingularModelTag.cusp(),) * 3,
            quartic_bridge_data(),
            quartic_perturbed_bridge_data(),
        )
    m = re.fullmatch(r"cyclic_Sd\((\d+)\)", name)
    if m:
        return cyclic_fixture(int(m.group(1)))
    raise KeyError(f"unknown fixture {name!r}; known: {list(FIXTURE_NAMES)}")


FIXTURE_NAMES = ("cp2_standard", "cp2_tricuspidal_quartic", "cyclic_Sd(2)")
