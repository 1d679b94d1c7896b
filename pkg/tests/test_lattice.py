from itertools import combinations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import matrices, random_symplectic_columns
from trisectlab.lattice import (
    Sublattice,
    det,
    hermite_with_transform,
    identity,
    invariant_factors,
    kernel,
    lattice_intersection,
    lattice_sum,
    matmul,
    matrix_from_json,
    matrix_to_json,
    quotient_invariants,
    rank,
    skew_pairing,
    smith_normal_form,
    symplectic_basis,
    transpose,
)
from trisectlab.surface import symplectic_form


def determinantal_divisors(A):
    """gcd of all k x k minors, k = 1..rank; an oracle independent of any elimination."""
    r, c = len(A), len(A[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def test_snf_small_example():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    S, U, V = smith_normal_form(A)
    assert [S[i][i] for i in range(3)] == [2, 6, 12]
    assert matmul(matmul(U, A), V) == S


def test_invariant_factors_match_divisors_example():
    A = [[6, 0], [0, 4]]
    assert invariant_factors(A) == [2, 12]


def test_quotient_invariants_examples():
    assert quotient_invariants(Sublattice.span([(2, 0)], 2)) == (1, [2])
    assert quotient_invariants(Sublattice.span([(1, 0), (0, 1)], 2)) == (0, [])
    assert quotient_invariants(Sublattice.span([], 3)) == (3, [])


def test_sum_and_intersection_examples():
    L1 = Sublattice.span([(2, 0)], 2)
    L2 = Sublattice.span([(1, 1)], 2)
    assert lattice_sum(L1, L2) == Sublattice.span([(1, 1), (0, 2)], 2)
    assert lattice_intersection(L1, L2).rank == 0
    L3 = Sublattice.span([(4, 0)], 2)
    assert lattice_intersection(L1, L3) == L3


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        lattice_sum(Sublattice.span([(1, 0)], 2), Sublattice.span([(1, 0, 0)], 3))


def test_membership_and_primitivity():
    L = Sublattice.span([(2, 0, 0), (0, 1, 1)], 3)
    assert (4, 3, 3) in L
    assert (1, 0, 0) not in L
    assert not L.is_primitive()
    assert Sublattice.span([(1, 0, 0), (0, 1, 1)], 3).is_primitive()


def test_json_round_trip_keeps_big_integers():
    A = [[10**30, -1], [0, 7]]
    assert matrix_from_json(matrix_to_json(A)) == A


def test_symplectic_basis_of_standard_form_is_identity():
    assert symplectic_basis(symplectic_form(3)) == identity(6)


def test_symplectic_basis_rejects_degenerate():
    with pytest.raises(ValueError):
        symplectic_basis([[0, 2], [-2, 0]])


@given(matrices())
def test_snf_divisibility_unimodularity_and_factorisation(A):
    S, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert diag[: len(nz)] == nz  # zeros trail


@given(matrices(max_rows=4, max_cols=4, bound=6))
def test_snf_matches_determinantal_divisors(A):
    factors = invariant_factors(A)
    divisors = determinantal_divisors(A)
    assert len(factors) == len(divisors)
    prod = 1
    for f, dk in zip(factors, divisors):
        prod *= f
        assert prod == dk


@given(matrices())
def test_hermite_and_kernel(A):
    H, U = hermite_with_transform(A)
    assert matmul(U, A) == H
    assert abs(det(U)) == 1
    K = kernel(A)
    for k in K:
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
    assert len(K) + rank(A) == len(A[0])


vectors4 = st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), max_size=4)


@given(vectors4, vectors4)
def test_modularity_rank_identity(b1, b2):
    L1, L2 = Sublattice.span(b1, 4), Sublattice.span(b2, 4)
    S, I = lattice_sum(L1, L2), lattice_intersection(L1, L2)
    assert S.rank + I.rank == L1.rank + L2.rank
    assert S.contains_lattice(L1) and S.contains_lattice(L2)
    assert L1.contains_lattice(I) and L2.contains_lattice(I)


@given(vectors4)
def test_quotient_rank(b):
    L = Sublattice.span(b, 4)
    free, torsion = quotient_invariants(L)
    assert free == 4 - L.rank
    assert all(t > 1 for t in torsion)


@given(st.integers(1, 3), st.integers(0, 2**32))
def test_symplectic_basis_normalises_random_forms(g, seed):
    import random

    Q = transpose(random_symplectic_columns(random.Random(seed), g))  # rows are images
    # a form congruent to the standard one, written in a scrambled basis
    J = symplectic_form(g)
    M = matmul(matmul(Q, J), transpose(Q))
    P = symplectic_basis(M)
    assert matmul(matmul(transpose(P), M), P) == J
    assert abs(det(P)) == 1
    for i in range(2 * g):
        for j in range(2 * g):
            e_i = [row[i] for row in P]
            e_j = [row[j] for row in P]
            assert skew_pairing(M, e_i, e_j) == J[i][j]
