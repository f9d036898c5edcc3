"""Lie lattices over Z and Lie algebras over Q given by structure constants.

Brackets, ideals, central and derived series, radicals, the Killing form
and the adjoint representation.  Matrices act on column vectors; submodule
bases are rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .exact_linalg import (
    ExactMatrix,
    Submodule,
    Vec,
    frac,
    is_zero_vector,
    kernel_basis,
    mat_vec,
    rank,
    solve_left,
    stack_rows,
    vec_add,
    vec_mat,
    vec_scale,
    vector,
    zero_vector,
)
from .rep import LinearRep

ZERO = Fraction(0)


class LatticeValidationError(ValueError):
    """Raised when a structure-constant tensor fails antisymmetry or Jacobi."""


class LeibnizError(ValueError):
    """Raised when a claimed derivation violates the Leibniz identity."""


class NotNilpotentError(ValueError):
    """Raised when an operation requires a nilpotent lattice."""


@dataclass(frozen=True)
class LieLattice:
    """Lie ring on a free module, encoded by [x_i, x_j] = sum_k c[i][j][k] x_k."""

    names: tuple[str, ...]
    c: tuple[tuple[Vec, ...], ...]
    domain: str = "Z"

    @property
    def rank(self) -> int:
        return len(self.names)

    def bracket(self, u: Vec, v: Vec) -> Vec:
        r = self.rank
        if len(u) != r or len(v) != r:
            raise ValueError("dimension mismatch")
        out = [ZERO] * r
        for i in range(r):
            if u[i] == 0:
                continue
            for j in range(r):
                if v[j] == 0:
                    continue
                f = u[i] * v[j]
                cij = self.c[i][j]
                for k in range(r):
                    if cij[k]:
                        out[k] += f * cij[k]
        return tuple(out)

    def ad(self, v: Vec) -> ExactMatrix:
        """Matrix of ad_v = [v, .] acting on column vectors."""
        r = self.rank
        cols = [self.bracket(v, unit(r, j)) for j in range(r)]
        return ExactMatrix.from_columns(cols, rows=r)

    def basis_vector(self, i: int) -> Vec:
        return unit(self.rank, i)

    def to_field(self) -> "LieLattice":
        """The same structure constants viewed over Q."""
        if self.domain == "Q":
            return self
        return LieLattice(self.names, self.c, "Q")


def unit(n: int, i: int) -> Vec:
    return tuple(Fraction(1) if j == i else ZERO for j in range(n))


def lie_lattice(
    names: Sequence[str],
    brackets: Mapping[tuple[int, int], Sequence],
    domain: str = "Z",
) -> LieLattice:
    """Build a lattice from the brackets of pairs i < j; antisymmetry is filled in."""
    r = len(names)
    c = [[zero_vector(r) for _ in range(r)] for _ in range(r)]
    for (i, j), coeffs in brackets.items():
        if not (0 <= i < j < r):
            raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < rank")
        v = vector(coeffs)
        if len(v) != r:
            raise ValueError("bracket coefficient vector has wrong length")
        c[i][j] = v
        c[j][i] = vec_scale(Fraction(-1), v)
    return LieLattice(tuple(names), tuple(tuple(row) for row in c), domain)


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry_violations: tuple[tuple[int, int, int], ...]
    jacobi_violations: tuple[tuple[int, int, int], ...]
    integrality_violations: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not (
            self.antisymmetry_violations
            or self.jacobi_violations
            or self.integrality_violations
        )


def validate(L: LieLattice) -> ValidationReport:
    """Report every violated (i, j, k) triple of the lattice axioms."""
    r = L.rank
    anti = []
    integ = []
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if L.c[i][j][k] != -L.c[j][i][k]:
                    anti.append((i, j, k))
                if L.domain == "Z" and L.c[i][j][k].denominator != 1:
                    integ.append((i, j, k))
    jac = []
    for i in range(r):
        ei = unit(r, i)
        for j in range(i + 1, r):
            ej = unit(r, j)
            bij = L.bracket(ei, ej)
            for k in range(j + 1, r):
                ek = unit(r, k)
                s = vec_add(
                    vec_add(
                        L.bracket(bij, ek),
                        L.bracket(L.bracket(ej, ek), ei),
                    ),
                    L.bracket(L.bracket(ek, ei), ej),
                )
                if not is_zero_vector(s):
                    jac.append((i, j, k))
    return ValidationReport(tuple(anti), tuple(jac), tuple(integ))


def require_valid(L: LieLattice) -> None:
    report = validate(L)
    if not report.ok:
        raise LatticeValidationError(
            f"invalid lattice: antisymmetry {report.antisymmetry_violations}, "
            f"jacobi {report.jacobi_violations}, "
            f"integrality {report.integrality_violations}"
        )


@dataclass(frozen=True)
class LieSubmodule:
    parent: LieLattice
    module: Submodule
    is_subalgebra: bool
    is_ideal: bool
    is_isolated: bool

    @property
    def rank(self) -> int:
        return self.module.rank

    def is_zero(self) -> bool:
        return self.module.is_zero()


def lie_submodule(L: LieLattice, module: Submodule) -> LieSubmodule:
    """Wrap a submodule of L, computing the subalgebra/ideal/isolated flags."""
    rows = module.basis.entries
    sub = all(module.contains(L.bracket(u, v)) for u in rows for v in rows)
    ideal = sub and all(
        module.contains(L.bracket(unit(L.rank, i), v))
        for i in range(L.rank)
        for v in rows
    )
    return LieSubmodule(L, module, sub, ideal, module.is_saturated())


def span_bracket(L: LieLattice, A: Submodule, B: Submodule) -> Submodule:
    """Module spanned by [a, b] over basis vectors of A and B."""
    vecs = [L.bracket(a, b) for a in A.basis.entries for b in B.basis.entries]
    return Submodule.span(vecs, L.rank, L.domain)


def lower_central_series(L: LieLattice) -> list[LieSubmodule]:
    """Isolated lower central series; stops at the first stationary term."""
    full = Submodule.full(L.rank, L.domain)
    chain = [full]
    while True:
        nxt = span_bracket(L, chain[-1], full).saturate()
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return [lie_submodule(L, m) for m in chain]


def derived_series(L: LieLattice) -> list[LieSubmodule]:
    """Isolated derived series; stops at the first stationary term."""
    chain = [Submodule.full(L.rank, L.domain)]
    while True:
        nxt = span_bracket(L, chain[-1], chain[-1]).saturate()
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return [lie_submodule(L, m) for m in chain]


def is_nilpotent(L: LieLattice) -> bool:
    return lower_central_series(L)[-1].is_zero()


def nilpotency_class(L: LieLattice) -> int:
    chain = lower_central_series(L)
    if not chain[-1].is_zero():
        raise NotNilpotentError("lattice is not nilpotent")
    return len(chain) - 1


def is_solvable(L: LieLattice) -> bool:
    return derived_series(L)[-1].is_zero()


def is_abelian(L: LieLattice) -> bool:
    return all(is_zero_vector(v) for row in L.c for v in row)


def center(L: LieLattice) -> LieSubmodule:
    """Kernel of x -> ad_x, computed from the stacked ad matrix."""
    r = L.rank
    if r == 0:
        return lie_submodule(L, Submodule.zero(0, L.domain))
    rows = []
    for i in range(r):
        A = L.ad(unit(r, i))
        rows.append(tuple(x for arow in A.entries for x in arow))
    stacked = ExactMatrix.from_rows(rows, cols=r * r)
    return lie_submodule(L, kernel_basis(stacked, L.domain))


def killing_form(L: LieLattice) -> ExactMatrix:
    """Symmetric matrix k(x_i, x_j) = trace(ad_i ad_j)."""
    r = L.rank
    ads = [L.ad(unit(r, i)) for i in range(r)]
    return ExactMatrix.from_rows(
        [[(ads[i] * ads[j]).trace() for j in range(r)] for i in range(r)],
        cols=r,
    )


def adjoint_rep(L: LieLattice) -> LinearRep:
    return LinearRep(
        lattice=L,
        matrices=tuple(L.ad(unit(L.rank, i)) for i in range(L.rank)),
        provenance="adjoint",
    )


def solvable_radical(L: LieLattice) -> LieSubmodule:
    """Cartan-criterion radical {x : k(x, [L, L]) = 0}, saturated.

    Valid in characteristic zero; the result is checked to be a solvable
    ideal and an internal error is raised otherwise.
    """
    r = L.rank
    if r == 0:
        return lie_submodule(L, Submodule.zero(0, L.domain))
    derived = span_bracket(L, Submodule.full(r, L.domain), Submodule.full(r, L.domain))
    if derived.is_zero():
        return lie_submodule(L, Submodule.full(r, L.domain))
    K = killing_form(L)
    conditions = K * derived.basis.transpose()
    candidate = kernel_basis(conditions, L.domain)
    result = lie_submodule(L, candidate)
    if not _is_solvable_submodule(L, candidate) or not result.is_ideal:
        raise LatticeValidationError("solvable radical candidate failed verification")
    return result


def _is_solvable_submodule(L: LieLattice, S: Submodule) -> bool:
    current = S
    while True:
        nxt = span_bracket(L, current, current).saturate()
        if nxt == current:
            return current.is_zero()
        current = nxt


def _is_nilpotent_submodule(L: LieLattice, S: Submodule) -> bool:
    current = S
    while True:
        nxt = span_bracket(L, current, S).saturate()
        if nxt == current:
            return current.is_zero()
        current = nxt


def is_nilpotent_submodule(L: LieLattice, S: Submodule) -> bool:
    """Whether the bracket-closed submodule S is nilpotent as a subalgebra."""
    return _is_nilpotent_submodule(L, S)


def nilradical(L: LieLattice) -> LieSubmodule:
    """Largest nilpotent ideal, via the trace-form radical of the associative
    envelope of ad(R_s) (characteristic zero only).

    The candidate is verified nilpotent and an ideal before returning.
    """
    rs = solvable_radical(L)
    if rs.is_zero():
        return rs
    r = L.rank
    gens = [L.ad(v) for v in rs.module.basis.entries]
    envelope = _matrix_algebra_closure(gens)
    if not envelope:
        # ad vanishes on R_s: the radical is abelian, hence nilpotent
        return rs
    env_mat = ExactMatrix.from_rows(
        [_vec_of_matrix(A) for A in envelope], cols=r * r
    )
    trace_rows = []
    for A in envelope:
        trace_rows.append(tuple((A * B).trace() for B in envelope))
    # x in R_s lies in the candidate iff trace(ad_x * B) = 0 for all B
    cond_cols = []
    for v in rs.module.basis.entries:
        advx = L.ad(v)
        cond_cols.append(tuple((advx * B).trace() for B in envelope))
    conditions = ExactMatrix.from_rows(cond_cols, cols=len(envelope))
    coeffs = kernel_basis(conditions, "Q")
    vecs = []
    for x in coeffs.basis.entries:
        v = vec_mat(x, rs.module.basis)
        if L.domain == "Z":
            # clear denominators: saturation only sees the Q-span, and the
            # isolated closure must live inside Z^n
            den = lcm(*(entry.denominator for entry in v)) if v else 1
            v = vec_scale(frac(den), v)
        vecs.append(v)
    candidate = Submodule.span(vecs, r, L.domain).saturate()
    result = lie_submodule(L, candidate)
    if not result.is_ideal or not _is_nilpotent_submodule(L, candidate):
        raise LatticeValidationError("nilradical candidate failed verification")
    return result


def _vec_of_matrix(A: ExactMatrix) -> Vec:
    return tuple(x for row in A.entries for x in row)


def _matrix_algebra_closure(gens: Sequence[ExactMatrix]) -> list[ExactMatrix]:
    """Basis of the associative algebra (no identity) generated by gens."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    n = gens[0].rows
    basis: list[ExactMatrix] = []
    rows: list[Vec] = []

    def try_add(A: ExactMatrix) -> bool:
        candidate = rows + [_vec_of_matrix(A)]
        M = ExactMatrix.from_rows(candidate, cols=n * n)
        if rank(M) == len(candidate):
            basis.append(A)
            rows.append(_vec_of_matrix(A))
            return True
        return False

    for g in gens:
        try_add(g)
    frontier = list(basis)
    while frontier:
        new: list[ExactMatrix] = []
        for A in frontier:
            for g in gens:
                for P in (A * g, g * A):
                    if try_add(P):
                        new.append(P)
        frontier = new
    return basis


def is_semisimple(L: LieLattice) -> bool:
    """Nondegenerate Killing form over Q together with trivial center."""
    if L.rank == 0:
        return False
    return center(L).is_zero() and rank(killing_form(L)) == L.rank


def check_derivation(L: LieLattice, D: ExactMatrix) -> bool:
    """Leibniz identity D[x,y] = [Dx,y] + [x,Dy] on all basis pairs."""
    r = L.rank
    if D.rows != r or D.cols != r:
        return False
    for i in range(r):
        for j in range(i + 1, r):
            lhs = mat_vec(D, L.bracket(unit(r, i), unit(r, j)))
            rhs = vec_add(
                L.bracket(mat_vec(D, unit(r, i)), unit(r, j)),
                L.bracket(unit(r, i), mat_vec(D, unit(r, j))),
            )
            if lhs != rhs:
                return False
    return True


def derivation_basis(L: LieLattice) -> list[ExactMatrix]:
    """Basis of the derivation algebra, by solving the Leibniz equations."""
    r = L.rank
    if r == 0:
        return []
    # unknowns D[a][b], row-major; one equation block per pair i < j
    eq_rows: list[list[Fraction]] = []
    for i in range(r):
        for j in range(i + 1, r):
            cij = L.c[i][j]
            for k in range(r):
                row = [ZERO] * (r * r)
                # D applied to [x_i,x_j]: sum_t c_ij^t D[k][t]
                for t in range(r):
                    if cij[t]:
                        row[k * r + t] += cij[t]
                # minus [D x_i, x_j]: D x_i = sum_a D[a][i] x_a
                for a in range(r):
                    if L.c[a][j][k]:
                        row[a * r + i] -= L.c[a][j][k]
                # minus [x_i, D x_j]
                for a in range(r):
                    if L.c[i][a][k]:
                        row[a * r + j] -= L.c[i][a][k]
                eq_rows.append(row)
    if not eq_rows:
        sys = ExactMatrix.zero(1, r * r)
    else:
        sys = ExactMatrix.from_rows(eq_rows, cols=r * r)
    sols = kernel_basis(sys.transpose(), "Q")
    out = []
    for s in sols.basis.entries:
        out.append(
            ExactMatrix.from_rows(
                [[s[a * r + b] for b in range(r)] for a in range(r)], cols=r
            )
        )
    return out


def subalgebra_lattice(
    L: LieLattice, S: Submodule, prefix: str = "v"
) -> tuple[LieLattice, ExactMatrix]:
    """Structure constants of a bracket-closed submodule in its own basis.

    Returns the abstract lattice and the basis matrix (rows = basis vectors
    in the coordinates of L).
    """
    rows = S.basis.entries
    k = len(rows)
    c: list[list[Vec]] = [[zero_vector(k) for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            w = L.bracket(rows[i], rows[j])
            coords = S.coordinates(w)
            if coords is None:
                raise ValueError("submodule is not closed under the bracket")
            c[i][j] = coords
    names = tuple(f"{prefix}{i}" for i in range(k))
    return LieLattice(names, tuple(tuple(r) for r in c), L.domain), S.basis


def semidirect_assemble(
    N: LieLattice,
    S: LieLattice,
    action: Sequence[ExactMatrix],
    names: Sequence[str] | None = None,
) -> LieLattice:
    """Semidirect sum N x| S where [s_a, n] = action[a] applied to n.

    Each action matrix must be a derivation of N; the assembled tensor is
    validated (Jacobi failure indicates an inconsistent action).
    """
    if len(action) != S.rank:
        raise ValueError("one action matrix per S basis vector is required")
    for a, D in enumerate(action):
        if not check_derivation(N, D):
            raise LeibnizError(f"action of S basis vector {a} is not a derivation of N")
    nN, nS = N.rank, S.rank
    r = nN + nS
    if names is None:
        names = tuple(N.names) + tuple(S.names)
    c = [[zero_vector(r) for _ in range(r)] for _ in range(r)]

    def emb_n(v: Vec) -> Vec:
        return tuple(v) + zero_vector(nS)

    def emb_s(v: Vec) -> Vec:
        return zero_vector(nN) + tuple(v)

    for i in range(nN):
        for j in range(nN):
            c[i][j] = emb_n(N.c[i][j])
    for a in range(nS):
        for b in range(nS):
            c[nN + a][nN + b] = emb_s(S.c[a][b])
    for a in range(nS):
        for i in range(nN):
            w = emb_n(mat_vec(action[a], unit(nN, i)))
            c[nN + a][i] = w
            c[i][nN + a] = vec_scale(Fraction(-1), w)
    domain = "Z" if N.domain == "Z" and S.domain == "Z" else "Q"
    L = LieLattice(tuple(names), tuple(tuple(row) for row in c), domain)
    require_valid(L)
    return L


def direct_sum(L1: LieLattice, L2: LieLattice) -> LieLattice:
    zero_action = [ExactMatrix.zero(L1.rank, L1.rank) for _ in range(L2.rank)]
    return semidirect_assemble(L1, L2, zero_action)


def split_semidirect(
    L: LieLattice, n_rank: int
) -> tuple[LieLattice, LieLattice, list[ExactMatrix]]:
    """Recover (N, S, action) from a lattice whose first n_rank basis vectors
    span an ideal and whose remaining vectors span a subalgebra."""
    r = L.rank
    k = r - n_rank

    def n_part(v: Vec) -> Vec:
        if any(x != 0 for x in v[n_rank:]):
            raise ValueError("bracket leaves the claimed ideal block")
        return v[:n_rank]

    def s_part(v: Vec) -> Vec:
        if any(x != 0 for x in v[:n_rank]):
            raise ValueError("bracket leaves the claimed subalgebra block")
        return v[n_rank:]

    cN = tuple(
        tuple(n_part(L.c[i][j]) for j in range(n_rank)) for i in range(n_rank)
    )
    N = LieLattice(L.names[:n_rank], cN, L.domain)
    cS = tuple(
        tuple(s_part(L.c[n_rank + a][n_rank + b]) for b in range(k))
        for a in range(k)
    )
    S = LieLattice(L.names[n_rank:], cS, L.domain)
    action = [
        ExactMatrix.from_columns(
            [n_part(L.c[n_rank + a][j]) for j in range(n_rank)], rows=n_rank
        )
        for a in range(k)
    ]
    return N, S, action


def scale_lattice(L: LieLattice, k: int, suffix: str = "'") -> LieLattice:
    """Structure constants of the sublattice spanned by k*x_i in its own basis."""
    c = tuple(
        tuple(vec_scale(frac(k), L.c[i][j]) for j in range(L.rank))
        for i in range(L.rank)
    )
    return LieLattice(tuple(n + suffix for n in L.names), c, L.domain)


def change_basis(L: LieLattice, P: ExactMatrix, prefix: str = "b") -> LieLattice:
    """Structure constants in the basis whose vectors are the rows of P.

    Over Z the matrix must be unimodular for the result to be the same
    lattice; over Q any invertible matrix works.
    """
    from .exact_linalg import invert

    n = L.rank
    if P.rows != n or P.cols != n:
        raise ValueError("change of basis must be square of the lattice rank")
    Pinv = invert(P)
    c = tuple(
        tuple(
            vec_mat(L.bracket(P.entries[i], P.entries[j]), Pinv)
            for j in range(n)
        )
        for i in range(n)
    )
    if L.domain == "Z":
        from .exact_linalg import hnf

        if not P.is_integral or hnf(P)[0] != ExactMatrix.identity(n):
            raise ValueError("change of basis is not unimodular over Z")
    return LieLattice(tuple(f"{prefix}{i}" for i in range(n)), c, L.domain)


def quotient_lattice(
    L: LieLattice, ideal: Submodule, prefix: str = "q"
) -> tuple[LieLattice, ExactMatrix]:
    """Quotient L / ideal with a linear section.

    Returns the quotient lattice and the section matrix (rows = coset
    representatives in L-coordinates).  The ideal must actually be an ideal;
    over Z it must also be isolated for the quotient to be free.
    """
    from .exact_linalg import extend_basis

    comp = extend_basis(ideal, Submodule.full(L.rank, L.domain))
    k = comp.rows
    split = stack_rows([ideal.basis, comp]) if ideal.rank else comp
    c: list[list[Vec]] = [[zero_vector(k) for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            w = L.bracket(comp.entries[i], comp.entries[j])
            coords = solve_left(split, w)
            if coords is None:
                raise ValueError("quotient section failed")
            c[i][j] = tuple(coords[ideal.rank :])
    names = tuple(f"{prefix}{i}" for i in range(k))
    return LieLattice(names, tuple(tuple(r) for r in c), L.domain), comp
