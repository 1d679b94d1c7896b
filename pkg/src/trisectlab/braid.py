"""Braid words, braid monodromy of singular braided surfaces, and closure invariants.

``s_i`` is the positive half twist.  Local models compile as

    tangency        s_i
    positive node   s_i^2
    negative node   s_i^-2
    cusp            s_i^3

Closures are identified at desk scale (at most 6 strands and 24 letters) from
exact invariants: component count, exponent sum, linking number, the
Alexander polynomial from the reduced Burau matrix, and the Jones polynomial
from the Temperley-Lieb (Kauffman bracket) state model.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _perms
from typing import Iterable

from .algebra import Permutation, compose

MAX_STRANDS = 6
MAX_LETTERS = 24


class LaurentPoly:
    """Exact Laurent polynomial in one variable with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        return cls({low + i: c for i, c in enumerate(coeffs)})

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({e * k: c if k % 2 else 1})
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def low(self) -> int:
        return min(self.terms) if self.terms else 0

    def high(self) -> int:
        return max(self.terms) if self.terms else 0

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def substitute_inverse(self) -> "LaurentPoly":
        """``t -> t^-1``."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def exact_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Quotient of an exact division; raises if there is a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = LaurentPoly(self.terms)
        dh, dc = divisor.high(), divisor.terms[divisor.high()]
        span = divisor.high() - divisor.low()
        quot: dict[int, int] = {}
        while not rem.is_zero() and rem.high() - rem.low() >= span:
            e = rem.high() - dh
            c, r = divmod(rem.terms[rem.high()], dc)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quot[e] = c
            rem = rem - LaurentPoly.monomial(e, c) * divisor
        if not rem.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return LaurentPoly(quot)

    def normalized(self) -> "LaurentPoly":
        """Representative up to units ``±t^k``: lowest exponent 0, lowest coefficient positive."""
        if self.is_zero():
            return self
        p = self.shift(-self.low())
        return -p if p.terms[0] < 0 else p

    def coefficients(self) -> list[int]:
        if self.is_zero():
            return []
        return [self.terms.get(e, 0) for e in range(self.low(), self.high() + 1)]

    def to_json(self) -> dict:
        return {"low": self.low(), "coefficients": self.coefficients()}

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


def _as_poly(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(int(x))


T = LaurentPoly.monomial(1)

# -- braid words ----------------------------------------------------------------

_GEN = re.compile(r"^s(\d+)(?:\^\(?([+-]?\d+)\)?)?$")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i < self.strands:
                raise ValueError(f"generator s{i} out of range for {self.strands} strands")
            if e not in (1, -1):
                raise ValueError("braid letters carry exponent ±1")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        """Parse ``"s1 s2^-1 s1^3"``; the strand count defaults to one more than the largest index."""
        letters = []
        for tok in text.split():
            if tok in ("1", "e"):
                continue
            m = _GEN.match(tok)
            if not m:
                raise ValueError(f"cannot parse braid token {tok!r}")
            i, k = int(m.group(1)), int(m.group(2) or 1)
            letters += [(i, 1 if k > 0 else -1)] * abs(k)
        if strands is None:
            strands = max((i for i, _ in letters), default=0) + 1
        return cls(strands, tuple(letters))

    @classmethod
    def power(cls, i: int, k: int, strands: int) -> "BraidWord":
        return cls(strands, tuple([(i, 1 if k > 0 else -1)] * abs(k)))

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -e) for i, e in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts, cur, k = [], None, 0
        for i, e in self.letters:
            if i == cur and (k > 0) == (e > 0):
                k += e
            else:
                if cur is not None:
                    parts.append(f"s{cur}" if k == 1 else f"s{cur}^{k}")
                cur, k = i, e
        parts.append(f"s{cur}" if k == 1 else f"s{cur}^{k}")
        return " ".join(parts)


EVENT_KINDS = ("tangency", "positive_node", "negative_node", "cusp")
_EVENT_POWER = {"tangency": 1, "positive_node": 2, "negative_node": -2, "cusp": 3}


@dataclass(frozen=True)
class SingularEvent:
    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in _EVENT_POWER:
            raise ValueError(f"unknown singular event {self.kind!r}; expected one of {EVENT_KINDS}")
        if self.position < 1:
            raise ValueError("event position is a generator index >= 1")


@dataclass(frozen=True)
class BraidedSurfaceDescriptor:
    """Strand count and the movie of a braided surface: braid segments and events in order.

    Each entry of ``sequence`` occupies its own slot, so events automatically
    sit over distinct fibres.
    """

    strands: int
    sequence: tuple[BraidWord | SingularEvent, ...]

    def __post_init__(self):
        seq = tuple(self.sequence)
        for item in seq:
            if isinstance(item, BraidWord):
                if item.strands != self.strands:
                    raise ValueError("braid segment strand count differs from the descriptor")
            elif isinstance(item, SingularEvent):
                if item.position >= self.strands:
                    raise ValueError(f"event at s{item.position} is outside {self.strands} strands")
            else:
                raise TypeError(f"unexpected descriptor entry {item!r}")
        object.__setattr__(self, "sequence", seq)

    @classmethod
    def from_json(cls, data: dict) -> "BraidedSurfaceDescriptor":
        n = int(data["strands"])
        seq = []
        for item in data["sequence"]:
            if "braid" in item:
                seq.append(BraidWord.parse(item["braid"], n))
            elif "event" in item:
                seq.append(SingularEvent(item["event"], int(item["at"])))
            else:
                raise ValueError(f"descriptor entry needs 'braid' or 'event': {item!r}")
        return cls(n, tuple(seq))


def event_to_braid(e: SingularEvent, strands: int | None = None) -> BraidWord:
    n = strands if strands is not None else e.position + 1
    return BraidWord.power(e.position, _EVENT_POWER[e.kind], n)


def total_monodromy(d: BraidedSurfaceDescriptor) -> BraidWord:
    out = BraidWord(d.strands)
    for item in d.sequence:
        out = out + (item if isinstance(item, BraidWord) else event_to_braid(item, d.strands))
    return out


def underlying_permutation(b: BraidWord) -> Permutation:
    """Image under ``B_n -> S_n``, ``s_i -> (i i+1)``, composed like words evaluate."""
    p = Permutation.identity(b.strands)
    for i, _ in b.letters:
        p = compose(p, Permutation.from_cycles([(i, i + 1)], b.strands))
    return p


def closure_component_count(b: BraidWord) -> int:
    return len(underlying_permutation(b).cycles(include_fixed=True))


def exponent_sum(b: BraidWord) -> int:
    return sum(e for _, e in b.letters)


def closure_components(b: BraidWord) -> list[tuple[int, ...]]:
    return underlying_permutation(b).cycles(include_fixed=True)


def linking_matrix(b: BraidWord) -> list[list[int]]:
    """Pairwise linking numbers of the closure's components (diagonal is zero)."""
    comps = closure_components(b)
    label = {}
    for k, cyc in enumerate(comps):
        for p in cyc:
            label[p] = k
    # strand occupying each position, followed through the word
    at = list(range(1, b.strands + 1))
    twice = [[0] * len(comps) for _ in comps]
    for i, e in b.letters:
        u, v = label[at[i - 1]], label[at[i]]
        if u != v:
            twice[u][v] += e
            twice[v][u] += e
        at[i - 1], at[i] = at[i], at[i - 1]
    return [[x // 2 for x in row] for row in twice]


# -- Alexander polynomial via reduced Burau -------------------------------------


def _burau_letter(i: int, e: int, n: int) -> list[list[LaurentPoly]]:
    size = n - 1
    M = [[LaurentPoly.const(int(r == c)) for c in range(size)] for r in range(size)]
    t, ti = T, T ** -1
    r = i - 1
    if size == 1:
        M[0][0] = -t if e == 1 else -ti
        return M
    if e == 1:
        M[r][r] = -t
        if r > 0:
            M[r][r - 1] = t
        if r < size - 1:
            M[r][r + 1] = LaurentPoly.const(1)
    else:
        M[r][r] = -ti
        if r > 0:
            M[r][r - 1] = LaurentPoly.const(1)
        if r < size - 1:
            M[r][r + 1] = ti
    return M


def _poly_matmul(A, B):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][l] * B[l][j] for l in range(m)), LaurentPoly()) for j in range(k)] for i in range(n)]


def burau_reduced(b: BraidWord) -> list[list[LaurentPoly]]:
    size = b.strands - 1
    M = [[LaurentPoly.const(int(r == c)) for c in range(size)] for r in range(size)]
    for i, e in b.letters:
        M = _poly_matmul(M, _burau_letter(i, e, b.strands))
    return M


def _poly_det(M) -> LaurentPoly:
    n = len(M)
    if n == 0:
        return LaurentPoly.const(1)
    total = LaurentPoly()
    for perm in _perms(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        term = LaurentPoly.const(sign)
        for i in range(n):
            term = term * M[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def alexander_polynomial(b: BraidWord) -> LaurentPoly:
    """Normalised Alexander polynomial of the closure.

    ``(1 + t + ... + t^(n-1)) * Delta(t) == det(I - reduced Burau(b))`` up to units.
    """
    M = burau_reduced(b)
    size = len(M)
    I_minus = [[LaurentPoly.const(int(r == c)) - M[r][c] for c in range(size)] for r in range(size)]
    d = _poly_det(I_minus)
    divisor = LaurentPoly.from_coeffs([1] * b.strands)
    if d.is_zero():
        return d
    return d.shift(-d.low()).exact_divide(divisor).normalized()


# -- Jones polynomial via the Temperley-Lieb state model ------------------------

A = LaurentPoly.monomial(1)
LOOP = -(A ** 2) - A ** -2


def _identity_tl(n: int) -> tuple[int, ...]:
    # points 0..n-1 bottom, n..2n-1 top
    return tuple([n + i for i in range(n)] + list(range(n)))


def _cup_cap(n: int, i: int) -> tuple[int, ...]:
    partner = list(_identity_tl(n))
    a, b = i - 1, i
    partner[a], partner[b] = b, a
    partner[n + a], partner[n + b] = n + b, n + a
    return tuple(partner)


def _stack(lower: tuple[int, ...], upper: tuple[int, ...], n: int) -> tuple[tuple[int, ...], int]:
    """Glue ``upper`` on top of ``lower``; return the new diagram and the closed loop count."""
    # nodes: ("L", k) and ("U", k); L top n+i is glued to U bottom i
    def glued(side, k):
        if side == "L" and k >= n:
            return ("U", k - n)
        if side == "U" and k < n:
            return ("L", k + n)
        return None

    result = [0] * (2 * n)
    used = set()
    for start_side, start_k, out_index in [("L", k, k) for k in range(n)] + [("U", n + k, n + k) for k in range(n)]:
        if (start_side, start_k) in used:
            continue
        side, k = start_side, start_k
        while True:
            used.add((side, k))
            k = (lower if side == "L" else upper)[k]
            used.add((side, k))
            nxt = glued(side, k)
            if nxt is None:
                end_index = k if side == "L" else k
                result[out_index] = end_index
                result[end_index] = out_index
                used.add((side, k))
                break
            side, k = nxt
    loops = 0
    for k in range(n, 2 * n):
        if ("L", k) not in used:
            # walk a closed loop through the middle
            side, kk = "L", k
            while ("L" if side == "L" else "U", kk) not in used:
                used.add((side, kk))
                kk = (lower if side == "L" else upper)[kk]
                used.add((side, kk))
                side, kk = glued(side, kk)
            loops += 1
    return tuple(result), loops


def _trace_loops(diagram: tuple[int, ...], n: int) -> int:
    """Loops in the closure obtained by joining top ``i`` to bottom ``i``."""
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        loops += 1
        k = s
        while not seen[k]:
            seen[k] = True
            k = diagram[k]
            seen[k] = True
            k = k + n if k < n else k - n
    return loops


def kauffman_bracket(b: BraidWord) -> LaurentPoly:
    """Bracket of the closure, normalised so the unknot diagram has bracket 1."""
    n = b.strands
    state = {_identity_tl(n): LaurentPoly.const(1)}
    loop_pows = {}
    for i, e in b.letters:
        # s_i = A*1 + A^-1*e_i ; s_i^-1 = A^-1*1 + A*e_i
        keep, smooth = (A, A ** -1) if e == 1 else (A ** -1, A)
        cap = _cup_cap(n, i)
        nxt: dict[tuple[int, ...], LaurentPoly] = {}
        for diag, coef in state.items():
            nxt[diag] = nxt.get(diag, LaurentPoly()) + coef * keep
            new, loops = _stack(diag, cap, n)
            if loops not in loop_pows:
                loop_pows[loops] = LOOP ** loops
            nxt[new] = nxt.get(new, LaurentPoly()) + coef * smooth * loop_pows[loops]
        state = {d: c for d, c in nxt.items() if not c.is_zero()}
    total = LaurentPoly()
    for diag, coef in state.items():
        total = total + coef * LOOP ** (_trace_loops(diag, n) - 1)
    return total


def jones_polynomial(b: BraidWord) -> LaurentPoly:
    """Jones polynomial in the variable ``A`` (``t = A^-4``), writhe-normalised."""
    w = exponent_sum(b)
    factor = LaurentPoly({-3 * w: -1 if w % 2 else 1})  # (-A^3)^-w
    return factor * kauffman_bracket(b)


# reference invariants, in the conventions above
TREFOIL_ALEXANDER = LaurentPoly.from_coeffs([1, -1, 1])
HOPF_ALEXANDER = LaurentPoly.from_coeffs([1, -1])
# right trefoil V = t + t^3 - t^4 ; positive Hopf V = -t^(1/2) - t^(5/2), with t = A^-4
JONES_TREFOIL_RIGHT = LaurentPoly({-4: 1, -12: 1, -16: -1})
JONES_TREFOIL_LEFT = JONES_TREFOIL_RIGHT.substitute_inverse()
JONES_HOPF_POSITIVE = LaurentPoly({-2: -1, -10: -1})
JONES_HOPF_NEGATIVE = JONES_HOPF_POSITIVE.substitute_inverse()

CLOSURE_TAGS = ("unknot", "hopf_link_positive", "trefoil_right", "trefoil_left", "hopf_link_negative", "other")


@dataclass(frozen=True)
class ClosureIdentification:
    tag: str
    components: int
    exponent_sum: int
    alexander: LaurentPoly
    jones: LaurentPoly
    linking: tuple[tuple[int, ...], ...]

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "components": self.components,
            "exponent_sum": self.exponent_sum,
            "alexander": self.alexander.format("t"),
            "jones_A": self.jones.format("A"),
            "linking_matrix": [list(r) for r in self.linking],
        }


def check_desk_scale(b: BraidWord):
    if b.strands > MAX_STRANDS or len(b) > MAX_LETTERS:
        raise ValueError(
            f"braid of {b.strands} strands and {len(b)} letters exceeds the "
            f"identification limit ({MAX_STRANDS} strands, {MAX_LETTERS} letters)"
        )


def identify_closure(b: BraidWord) -> ClosureIdentification:
    check_desk_scale(b)
    comps = closure_component_count(b)
    alex = alexander_polynomial(b)
    jones = jones_polynomial(b)
    link = tuple(tuple(r) for r in linking_matrix(b))
    tag = "other"
    if comps == 1:
        if alex == 1 and jones == 1:
            tag = "unknot"
        elif alex == TREFOIL_ALEXANDER and jones == JONES_TREFOIL_RIGHT:
            tag = "trefoil_right"
        elif alex == TREFOIL_ALEXANDER and jones == JONES_TREFOIL_LEFT:
            tag = "trefoil_left"
    elif comps == 2 and alex == HOPF_ALEXANDER:
        if link[0][1] == 1 and jones == JONES_HOPF_POSITIVE:
            tag = "hopf_link_positive"
        elif link[0][1] == -1 and jones == JONES_HOPF_NEGATIVE:
            tag = "hopf_link_negative"
    return ClosureIdentification(tag, comps, exponent_sum(b), alex, jones, link)
