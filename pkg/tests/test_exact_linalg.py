import random
from fractions import Fraction

import pytest

from adorep.exact_linalg import (
    ExactMatrix,
    NonIntegralMatrixError,
    Submodule,
    extend_basis,
    hnf,
    invert,
    kernel_basis,
    lcm_denominators,
    rank,
    rref,
    snf,
    solve_left,
    vec_mat,
    vector,
)

from oracles import brute_force_hnf


def M(rows):
    return ExactMatrix.from_rows(rows)


def test_hnf_derived_example():
    # independent oracle: exhaustive search over bounded unimodular transforms
    H_expected = brute_force_hnf(((2, 4), (1, 3)))
    H, U = hnf(M([[2, 4], [1, 3]]))
    assert tuple(tuple(int(x) for x in row) for row in H.entries) == H_expected
    assert U * M([[2, 4], [1, 3]]) == H
    assert H == M([[1, 1], [0, 2]])


def test_hnf_identity_and_zero():
    H, U = hnf(ExactMatrix.identity(3))
    assert H == ExactMatrix.identity(3)
    assert U == ExactMatrix.identity(3)
    Z = ExactMatrix.zero(2, 2)
    H, U = hnf(Z)
    assert H == Z


def test_hnf_rejects_fractions():
    with pytest.raises(NonIntegralMatrixError):
        hnf(M([["1/2", 1]]))


def test_snf_examples():
    S, U, V = snf(M([[2, 0], [0, 3]]))
    assert S == M([[1, 0], [0, 6]])
    S, U, V = snf(ExactMatrix.identity(2))
    assert S == ExactMatrix.identity(2)
    S, U, V = snf(M([[0]]))
    assert S == M([[0]])


def test_hnf_snf_round_trip_random():
    rng = random.Random(20240331)
    for _ in range(60):
        m = rng.randint(1, 8)
        n = rng.randint(1, 8)
        A = M([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
        H, U = hnf(A)
        assert U * A == H
        assert abs(_int_det(U)) == 1
        S, P, Q = snf(A)
        assert P * A * Q == S
        assert abs(_int_det(P)) == 1
        assert abs(_int_det(Q)) == 1
        diag = [S.entries[i][i] for i in range(min(m, n))]
        for i in range(len(diag) - 1):
            if diag[i + 1] != 0:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
            assert diag[i] >= 0
        # off-diagonal must vanish
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert S.entries[i][j] == 0


def _int_det(A):
    n = A.rows
    if n == 0:
        return 1
    rows = [list(r) for r in A.entries]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for i in range(col + 1, n):
            f = rows[i][col] * inv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(2), "Q").rank == 0
    k = kernel_basis(M([[1, 1], [1, 1]]), "Q")
    assert k.basis == M([[1, -1]])
    assert kernel_basis(ExactMatrix.zero(3, 3), "Z").rank == 3


def test_kernel_rows_annihilate_exactly():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = M([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        for domain in ("Q", "Z"):
            ker = kernel_basis(A, domain)
            for row in ker.basis.entries:
                assert all(x == 0 for x in vec_mat(row, A))
            assert ker.rank == m - rank(A)


def test_saturate_examples():
    s = Submodule.span([vector([2, 0])], 2, "Z")
    assert s.saturate().basis == M([[1, 0]])
    t = Submodule.span([vector([1, 1])], 2, "Z")
    assert t.saturate() == t
    u = Submodule.span([vector([2, 4]), vector([0, 6])], 2, "Z")
    assert u.saturate() == Submodule.full(2, "Z")


def test_saturate_idempotent_rank_preserving_random():
    rng = random.Random(99)
    for _ in range(40):
        n = rng.randint(1, 6)
        k = rng.randint(1, n)
        gens = [vector([rng.randint(-8, 8) for _ in range(n)]) for _ in range(k)]
        s = Submodule.span(gens, n, "Z")
        sat = s.saturate()
        assert sat.rank == s.rank
        assert sat.saturate() == sat
        assert sat.contains_submodule(s)
        if sat.rank:
            S, _, _ = snf(sat.basis)
            for i in range(sat.rank):
                assert S.entries[i][i] == 1


def test_lcm_denominators():
    assert lcm_denominators(M([["1/2", "1/3"]])) == 6
    assert lcm_denominators(M([[4, 7], [0, 1]])) == 1
    assert lcm_denominators(M([["5/6"], ["1/4"]])) == 12


def test_rref_and_solve():
    A = M([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    R, pivots = rref(A)
    assert pivots == (0, 1)
    x = solve_left(M([[1, 0], [0, 2]]), vector([3, 4]))
    assert x == vector([3, 2])
    assert solve_left(M([[1, 0]]), vector([0, 1])) is None


def test_invert_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        A = M([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        if rank(A) < n:
            continue
        assert A * invert(A) == ExactMatrix.identity(n)


def test_extend_basis_z():
    inner = Submodule.span([vector([2, 3])], 2, "Z")
    outer = Submodule.full(2, "Z")
    extra = extend_basis(inner, outer)
    full = ExactMatrix.from_rows(list(inner.basis.entries) + list(extra.entries))
    assert abs(_int_det(full)) == 1


def test_extend_basis_requires_isolated():
    inner = Submodule.span([vector([2, 0])], 2, "Z")
    with pytest.raises(ValueError):
        extend_basis(inner, Submodule.full(2, "Z"))


def test_hnf_is_canonical_under_unimodular_action():
    rng = random.Random(41)
    for _ in range(25):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = M([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        U = ExactMatrix.identity(m)
        for _ in range(3 * m):
            i, j = rng.randrange(m), rng.randrange(m)
            if i == j:
                continue
            E = [[1 if a == b else 0 for b in range(m)] for a in range(m)]
            E[i][j] = rng.randint(-3, 3)
            U = U * M(E)
        assert hnf(A)[0] == hnf(U * A)[0]


def test_span_is_canonical_under_generator_shuffles():
    rng = random.Random(43)
    for _ in range(25):
        n = rng.randint(1, 5)
        k = rng.randint(1, 4)
        gens = [vector([rng.randint(-6, 6) for _ in range(n)]) for _ in range(k)]
        s = Submodule.span(gens, n, "Z")
        shuffled = gens[:]
        rng.shuffle(shuffled)
        # adding a lattice combination of existing generators changes nothing
        coeffs = [rng.randint(-2, 2) for _ in gens]
        extra = vector(
            [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n)]
        )
        shuffled.append(extra)
        assert Submodule.span(shuffled, n, "Z") == s


def test_submodule_membership_and_ops():
    a = Submodule.span([vector([2, 0]), vector([0, 3])], 2, "Z")
    assert a.contains(vector([2, 3]))
    assert not a.contains(vector([1, 0]))
    b = Submodule.span([vector([1, 1])], 2, "Z")
    assert a.sum(b).rank == 2
    inter = a.intersect(b)
    assert inter.rank == 1
    assert inter.contains(vector([6, 6]))
    assert not inter.contains(vector([1, 1]))
