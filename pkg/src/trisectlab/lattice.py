"""Exact integer linear algebra: Hermite and Smith normal forms, sublattices of Z^k.

Everything works on plain Python ``int`` so intermediate growth can never overflow.
Matrices are lists of rows; vectors are tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(A[0])
    if inner != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{inner} times {len(B)}x?")
    cols = len(B[0]) if B else 0
    Bt = transpose(B) if B else [[] for _ in range(cols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_exact(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Inverse over Q by Gauss-Jordan elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse_exact(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rank(vectors: Iterable[Sequence[int]]) -> int:
    return len(hermite_rows(vectors))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def hermite_with_transform(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: ``H == U*A`` with ``U`` unimodular.

    Nonzero rows of ``H`` come first, pivots strictly move right, pivots are
    positive and entries above a pivot lie in ``[0, pivot)``.
    """
    H = [list(map(int, row)) for row in A]
    m = len(H)
    ncols = len(H[0]) if H else 0
    U = identity(m)
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        # gcd-combine column c of rows r.. into row r
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant x*p + y*q == 1
            H[r], H[i] = (
                [x * u + y * v for u, v in zip(H[r], H[i])],
                [-q * u + p * v for u, v in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [x * u + y * v for u, v in zip(U[r], U[i])],
                [-q * u + p * v for u, v in zip(U[r], U[i])],
            )
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[r])]
                U[i] = [u - f * v for u, v in zip(U[i], U[r])]
        r += 1
    return H, U


def hermite_rows(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    """Nonzero rows of the Hermite normal form of the given row vectors."""
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return []
    H, _ = hermite_with_transform(rows)
    return [tuple(row) for row in H if any(row)]


def kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """A Z-basis of ``{x in Z^ncols : A x = 0}``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [tuple(row) for row in identity(ncols)]
    H, U = hermite_with_transform(transpose(A))
    return [tuple(U[i]) for i in range(ncols) if not any(H[i])]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(S, U, V)`` with ``S == U*A*V``, ``U`` and ``V`` unimodular and
    ``S`` diagonal with nonnegative entries, each dividing the next."""
    S = [list(map(int, row)) for row in A]
    m = len(S)
    n = len(S[0]) if S else 0
    U = identity(m)
    V = identity(n)

    def row_combine(i, j, x, y, p, q):
        # rows (i, j) <- (x*i + y*j, -q*i + p*j)
        for M in (S, U):
            M[i], M[j] = (
                [x * u + y * v for u, v in zip(M[i], M[j])],
                [-q * u + p * v for u, v in zip(M[i], M[j])],
            )

    def col_combine(i, j, x, y, p, q):
        for M in (S, V):
            for row in M:
                a, b = row[i], row[j]
                row[i], row[j] = x * a + y * b, -q * a + p * b

    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry in the trailing block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        S[t], S[i] = S[i], S[t]
        U[t], U[i] = U[i], U[t]
        for M in (S, V):
            for row in M:
                row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    a, b = S[t][t], S[i][t]
                    if b % a == 0:
                        row_combine(t, i, 1, 0, 1, b // a)
                    else:
                        g, x, y = xgcd(a, b)
                        row_combine(t, i, x, y, a // g, b // g)
            for j in range(t + 1, n):
                if S[t][j]:
                    a, b = S[t][t], S[t][j]
                    if b % a == 0:
                        col_combine(t, j, 1, 0, 1, b // a)
                    else:
                        g, x, y = xgcd(a, b)
                        col_combine(t, j, x, y, a // g, b // g)
                    done = False
            if any(S[i][t] for i in range(t + 1, m)):
                done = False
                continue
            # divisibility: fold an offending row into the pivot row
            piv = S[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv),
                None,
            )
            if bad is not None:
                i = bad[0]
                S[t] = [u + v for u, v in zip(S[t], S[i])]
                U[t] = [u + v for u, v in zip(U[t], U[i])]
                done = False
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return S, U, V


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    if not A or not A[0]:
        return []
    S, _, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]]


@dataclass(frozen=True)
class Sublattice:
    """Sublattice of ``Z^ambient_rank``; the basis is kept in Hermite normal form,
    so equal lattices compare equal."""

    ambient_rank: int
    basis: tuple[Vector, ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_rank:
                raise ValueError(f"vector {v} does not live in Z^{self.ambient_rank}")
        object.__setattr__(self, "basis", tuple(hermite_rows(self.basis)))

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_rank: int) -> "Sublattice":
        return cls(ambient_rank, tuple(tuple(map(int, v)) for v in vectors))

    @classmethod
    def full(cls, k: int) -> "Sublattice":
        return cls(k, tuple(tuple(r) for r in identity(k)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_rank x rank`` matrix."""
        if not self.basis:
            return [[] for _ in range(self.ambient_rank)]
        return transpose(self.basis)

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Integer coordinates of ``v`` in the stored basis, or ``None`` if ``v`` is not in the lattice."""
        v = list(map(int, v))
        coords = []
        for b in self.basis:
            piv = next(i for i, x in enumerate(b) if x)
            if v[piv] % b[piv]:
                return None
            c = v[piv] // b[piv]
            coords.append(c)
            v = [x - c * y for x, y in zip(v, b)]
        if any(v):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "Sublattice") -> bool:
        return all(b in self for b in other.basis)

    def is_primitive(self) -> bool:
        """True iff the quotient ``Z^k / L`` is torsion free."""
        return not quotient_invariants(self)[1]


def _check_ambient(L1: Sublattice, L2: Sublattice):
    if L1.ambient_rank != L2.ambient_rank:
        raise ValueError(f"ambient rank mismatch: {L1.ambient_rank} vs {L2.ambient_rank}")


def lattice_sum(L1: Sublattice, L2: Sublattice) -> Sublattice:
    _check_ambient(L1, L2)
    return Sublattice(L1.ambient_rank, L1.basis + L2.basis)


def lattice_intersection(L1: Sublattice, L2: Sublattice) -> Sublattice:
    """Exact intersection, from the kernel of ``[B1 | -B2]``."""
    _check_ambient(L1, L2)
    k = L1.ambient_rank
    if not L1.basis or not L2.basis:
        return Sublattice(k, ())
    r1 = L1.rank
    cols = list(L1.basis) + [tuple(-x for x in b) for b in L2.basis]
    M = transpose(cols)
    vecs = []
    for z in kernel(M, len(cols)):
        u = z[:r1]
        vecs.append(tuple(sum(c * b[i] for c, b in zip(u, L1.basis)) for i in range(k)))
    return Sublattice(k, tuple(vecs))


def quotient_invariants(L: Sublattice) -> tuple[int, list[int]]:
    """``(free_rank, torsion)`` of ``Z^ambient / L``."""
    factors = invariant_factors(list(L.basis)) if L.basis else []
    return L.ambient_rank - len(factors), [d for d in factors if d > 1]


def matrix_to_json(A: Sequence[Sequence[int]]) -> list[list[str]]:
    return [[str(int(x)) for x in row] for row in A]


def matrix_from_json(data: Sequence[Sequence[str | int]]) -> Matrix:
    return [[int(x) for x in row] for row in data]


def skew_pairing(form: Sequence[Sequence[int]], u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * form[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if form[i][j])


def symplectic_basis(form: Sequence[Sequence[int]]) -> Matrix:
    """Unimodular ``P`` with ``P^T * form * P`` the standard block form ``[[0,1],[-1,0]]``.

    ``form`` must be skew-symmetric and unimodular.  Columns of ``P`` are the
    new basis vectors in old coordinates.  A form that is already standard
    yields the identity.
    """
    k = len(form)
    if k % 2:
        raise ValueError("a unimodular skew form has even rank")
    vectors = [tuple(r) for r in identity(k)]
    chosen: list[Vector] = []
    while vectors:
        e, rest = vectors[0], vectors[1:]
        vals = [skew_pairing(form, e, v) for v in rest]
        f = None
        for sign in (1, -1):
            if sign in vals:
                idx = vals.index(sign)
                f = tuple(sign * x for x in rest[idx])
                remaining = rest[:idx] + rest[idx + 1:]
                break
        if f is None:
            # combine the pairings down to their gcd
            g, coeffs = 0, [0] * len(rest)
            for i, val in enumerate(vals):
                g2, x, y = xgcd(g, val)
                coeffs = [x * c for c in coeffs]
                coeffs[i] = y
                g = g2
            if g != 1:
                raise ValueError("form is not unimodular")
            f = tuple(sum(c * v[i] for c, v in zip(coeffs, rest)) for i in range(k))
            remaining = rest

        def project(v):
            a, b = skew_pairing(form, v, f), skew_pairing(form, v, e)
            return tuple(x - a * y + b * z for x, y, z in zip(v, e, f))

        projected = [project(v) for v in remaining]
        if len(projected) != len(rest) - 1:
            projected = hermite_rows(projected)
        if len(projected) != len(rest) - 1:
            raise ValueError("form is degenerate")
        chosen += [e, f]
        vectors = projected
    return transpose(chosen)
