"""Combinatorial genus-g surfaces with p punctures.

The fundamental group of the punctured surface is generated by handle loops
``a1, b1, ..., ag, bg`` and puncture meridians ``x1, ..., xp``, subject to a
single surface relator.  First homology of the *closed* surface uses the
ordered basis ``(a1, b1, a2, b2, ...)`` with the standard skew form, whose
blocks are ``[[0, 1], [-1, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Word

STANDARD = "standard"
CORNER_WHISKER = "corner_whisker"
RELATOR_CONVENTIONS = (STANDARD, CORNER_WHISKER)
# older name still accepted on input
_CONVENTION_ALIASES = {"paper_7_2": CORNER_WHISKER}


def relator_convention(name: str) -> str:
    name = _CONVENTION_ALIASES.get(name, name)
    if name not in RELATOR_CONVENTIONS:
        raise ValueError(f"unknown relator convention {name!r}")
    return name


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    punctures: int = 0
    handle_names: tuple[str, ...] | None = None
    meridian_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be nonnegative")
        handles = self.handle_names
        if handles is None:
            if self.genus == 1 and self.punctures <= 2 and self.meridian_names is None:
                handles = ("a", "b")
            else:
                handles = tuple(f"{c}{i}" for i in range(1, self.genus + 1) for c in "ab")
        merids = self.meridian_names
        if merids is None:
            if self.genus == 1 and self.punctures == 2 and handles == ("a", "b"):
                merids = ("x", "y")
            else:
                merids = tuple(f"x{j}" for j in range(1, self.punctures + 1))
        handles, merids = tuple(handles), tuple(merids)
        if len(handles) != 2 * self.genus or len(merids) != self.punctures:
            raise ValueError("generator name counts do not match genus and punctures")
        if len(set(handles + merids)) != len(handles) + len(merids):
            raise ValueError("generator names must be distinct")
        object.__setattr__(self, "handle_names", handles)
        object.__setattr__(self, "meridian_names", merids)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.handle_names + self.meridian_names

    def handle_pairs(self) -> list[tuple[str, str]]:
        h = self.handle_names
        return [(h[2 * i], h[2 * i + 1]) for i in range(self.genus)]

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceModel":
        return cls(
            int(data["genus"]),
            int(data.get("punctures", 0)),
            tuple(data["handles"]) if "handles" in data else None,
            tuple(data["meridians"]) if "meridians" in data else None,
        )

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "punctures": self.punctures,
            "handles": list(self.handle_names),
            "meridians": list(self.meridian_names),
        }


@dataclass(frozen=True)
class CurveClass:
    """Integer homology class in the ordered basis (a1, b1, ..., ag, bg)."""

    coordinates: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coordinates)
        if len(coords) % 2:
            raise ValueError("a curve class needs an even number of coordinates")
        object.__setattr__(self, "coordinates", coords)

    @property
    def genus(self) -> int:
        return len(self.coordinates) // 2

    def __neg__(self):
        return CurveClass(tuple(-c for c in self.coordinates))

    def __add__(self, other):
        return CurveClass(tuple(a + b for a, b in zip(self.coordinates, other.coordinates)))

    def is_zero(self) -> bool:
        return not any(self.coordinates)


def euler_characteristic(m: SurfaceModel) -> int:
    return 2 - 2 * m.genus - m.punctures


def surface_relator(m: SurfaceModel, convention: str = STANDARD) -> Word:
    """Relator of the punctured surface group.

    ``standard`` gives ``[a1,b1]...[ag,bg] x1...xp``.  ``corner_whisker`` is the
    whisker ordering for a twice punctured torus with the base point at a
    corner of the square: ``a y b a^-1 b^-1 x^-1``.
    """
    convention = relator_convention(convention)
    if convention == STANDARD:
        letters = []
        for a, b in m.handle_pairs():
            letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
        letters += [(x, 1) for x in m.meridian_names]
        return Word(tuple(letters))
    if convention == CORNER_WHISKER:
        if m.genus != 1 or m.punctures != 2:
            raise ValueError("the corner_whisker relator ordering is only defined for genus 1 with 2 punctures")
        (a, b), (x, y) = m.handle_pairs()[0], m.meridian_names
        return Word(((a, 1), (y, 1), (b, 1), (a, -1), (b, -1), (x, -1)))


def abelianize(m: SurfaceModel, w: Word) -> CurveClass:
    """Exponent sums over the handle generators; meridians die in the closed surface."""
    index = {g: i for i, g in enumerate(m.handle_names)}
    coords = [0] * (2 * m.genus)
    for g, e in w.letters:
        if g in index:
            coords[index[g]] += e
        elif g not in m.meridian_names:
            raise ValueError(f"generator {g!r} is not a generator of this surface")
    return CurveClass(tuple(coords))


def symplectic_form(genus: int) -> list[list[int]]:
    J = [[0] * (2 * genus) for _ in range(2 * genus)]
    for i in range(genus):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return J


def pairing(u: Sequence[int], v: Sequence[int], form: Sequence[Sequence[int]] | None = None) -> int:
    """``u^T * form * v``; the standard skew form when ``form`` is omitted."""
    if len(u) != len(v):
        raise ValueError(f"genus mismatch: {len(u)} vs {len(v)} coordinates")
    if form is None:
        return sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(len(u) // 2))
    return sum(u[i] * form[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if form[i][j])


def intersection_number(c1: CurveClass, c2: CurveClass) -> int:
    if c1.genus != c2.genus:
        raise ValueError(f"genus mismatch: {c1.genus} vs {c2.genus}")
    return pairing(c1.coordinates, c2.coordinates)
