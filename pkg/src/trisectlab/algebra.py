"""Permutations, free-group words, presentations and permutation representations.

Conventions used throughout the package:

* points are 1-indexed, matching sheet numbers such as ``(1 2)(3 4)``;
* permutations act on the left, ``compose(p, q)(i) == p(q(i))``;
* words evaluate left to right as written, so
  ``evaluate(u + v, rep) == compose(evaluate(u, rep), evaluate(v, rep))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}`` stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for a in cyc:
                if not 1 <= a <= n:
                    raise ValueError(f"point {a} outside 1..{n}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycle notation")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` or ``""`` is the identity.

        Without an explicit degree the largest point mentioned is used.
        """
        cycles = []
        for chunk in re.findall(r"\(([^()]*)\)", text):
            pts = [int(tok) for tok in re.split(r"[\s,]+", chunk.strip()) if tok]
            if pts:
                cycles.append(pts)
        leftover = re.sub(r"\(([^()]*)\)", "", text).strip()
        if leftover:
            raise ValueError(f"cannot parse permutation {text!r}")
        largest = max((max(c) for c in cycles), default=0)
        if n is None:
            n = max(largest, 1)
        return cls.from_cycles(cycles, n)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycles in canonical order: each starts at its smallest point, sorted by that point."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.degree else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``, i.e. apply ``q`` first."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(p(q(i)) for i in range(1, q.degree + 1)))


def cycle_structure(p: Permutation) -> list[int]:
    """Cycle lengths, fixed points included, in non-increasing order."""
    return sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True)


def orbits(gens: Iterable[Permutation], n: int) -> list[frozenset[int]]:
    """Orbit partition of ``{1..n}`` under the group generated by ``gens``.

    Orbits are listed by their smallest element.
    """
    gens = list(gens)
    for g in gens:
        if g.degree != n:
            raise ValueError(f"degree mismatch: generator of degree {g.degree}, expected {n}")
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for i in range(1, n + 1):
            ra, rb = find(i), find(g(i))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, set[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), set()).add(i)
    return [frozenset(groups[k]) for k in sorted(groups)]


def generated_group_order(gens: Iterable[Permutation], n: int) -> int:
    """Order of the subgroup of ``S_n`` generated by ``gens`` (closure by BFS; small n only)."""
    gens = [g for g in gens]
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = compose(g, h)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return len(seen)


_LETTER = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*?)(?:\^\(?([+-]?\d+)\)?)?$")


@dataclass(frozen=True)
class Word:
    """A word in a free group: a tuple of ``(generator, ±1)`` letters."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((str(g), int(e)) for g, e in self.letters)
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be ±1, got {e} on {g}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse whitespace separated letters, e.g. ``"y^-1 b^-1 a b^2"``; ``"1"`` or ``""`` is empty."""
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _LETTER.match(tok)
            if not m:
                raise ValueError(f"cannot parse word token {tok!r}")
            gen, exp = m.group(1), int(m.group(2) or 1)
            sign = 1 if exp > 0 else -1
            letters.extend([(gen, sign)] * abs(exp))
        return cls(tuple(letters))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def substitute(self, mapping: Mapping[str, "Word"]) -> "Word":
        """Replace generators by words; unmapped generators are kept."""
        out = []
        for g, e in self.letters:
            if g in mapping:
                w = mapping[g] if e == 1 else mapping[g].inverse()
                out.extend(w.letters)
            else:
                out.append((g, e))
        return Word(tuple(out))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        # group runs of the same letter into powers
        parts = []
        run_g, run_n = None, 0
        for g, e in self.letters:
            if g == run_g and (run_n > 0) == (e > 0):
                run_n += e
            else:
                if run_g is not None:
                    parts.append(_fmt_power(run_g, run_n))
                run_g, run_n = g, e
        parts.append(_fmt_power(run_g, run_n))
        return " ".join(parts)


def _fmt_power(g: str, n: int) -> str:
    return g if n == 1 else f"{g}^{n}"


def free_reduce(w: Word) -> Word:
    """Cancel adjacent ``g g^-1`` pairs until none remain."""
    stack: list[tuple[str, int]] = []
    for g, e in w.letters:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        known = set(self.generators)
        for r in self.relators:
            missing = r.generators() - known
            if missing:
                raise ValueError(f"relator {r} uses unknown generators {sorted(missing)}")


@dataclass(frozen=True)
class Representation:
    """Assignment of a permutation of one common degree to each generator."""

    degree: int
    images: Mapping[str, Permutation] = field(default_factory=dict)

    def __post_init__(self):
        images = dict(self.images)
        for g, p in images.items():
            if p.degree != self.degree:
                raise ValueError(f"image of {g} has degree {p.degree}, expected {self.degree}")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_strings(cls, degree: int, images: Mapping[str, str]) -> "Representation":
        return cls(degree, {g: Permutation.parse(s, degree) for g, s in images.items()})

    def __getitem__(self, gen: str) -> Permutation:
        try:
            return self.images[gen]
        except KeyError:
            raise KeyError(f"representation has no image for generator {gen!r}") from None

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.images.items()))))

    def to_strings(self) -> dict[str, str]:
        return {g: str(p) for g, p in self.images.items()}


def evaluate(w: Word, rep: Representation) -> Permutation:
    """Image of ``w`` under the homomorphism extending ``rep``."""
    result = Permutation.identity(rep.degree)
    for g, e in w.letters:
        p = rep[g]
        result = compose(result, p if e == 1 else p.inverse())
    return result


@dataclass
class RepresentationReport:
    passed: bool
    failing_relators: list[Word]
    transitive: bool
    orbits: list[frozenset[int]]
    image_order: int

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failing_relators": [str(w) for w in self.failing_relators],
            "transitive": self.transitive,
            "orbits": [sorted(o) for o in self.orbits],
            "image_order": self.image_order,
        }


def verify_representation(pres: Presentation, rep: Representation) -> RepresentationReport:
    """Check every relator maps to the identity; also report transitivity of the image."""
    missing = [g for g in pres.generators if g not in rep.images]
    if missing:
        raise KeyError(f"representation has no image for generators {missing}")
    failing = [r for r in pres.relators if not evaluate(r, rep).is_identity()]
    gens = [rep[g] for g in pres.generators]
    orb = orbits(gens, rep.degree)
    return RepresentationReport(
        passed=not failing,
        failing_relators=failing,
        transitive=len(orb) == 1,
        orbits=orb,
        image_order=generated_group_order(gens, rep.degree),
    )
