"""Exact linear algebra over the integers and rationals.

Matrices carry Fraction entries and are immutable; integer normal-form
algorithms (Hermite, Smith) run on plain Python ints internally and wrap
their results back into matrices.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, str, Fraction]
Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class NonIntegralMatrixError(ValueError):
    """Raised when an integer-only algorithm receives fractional entries."""


def frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(xs: Iterable[Scalar]) -> Vec:
    return tuple(frac(x) for x in xs)


def zero_vector(n: int) -> Vec:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def is_zero_vector(v: Vec) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable matrix of Fractions; `cols` is kept so 0-row shapes survive."""

    entries: tuple[tuple[Fraction, ...], ...]
    cols: int

    @property
    def rows(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_rows(data: Sequence[Sequence[Scalar]], cols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(frac(x) for x in row) for row in data)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return ExactMatrix(rows, cols)

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(tuple(unit_vector(n, i) for i in range(n)), n)

    @staticmethod
    def zero(m: int, n: int) -> "ExactMatrix":
        return ExactMatrix(tuple(zero_vector(n) for _ in range(m)), n)

    @staticmethod
    def from_columns(cols: Sequence[Vec], rows: int | None = None) -> "ExactMatrix":
        if not cols:
            if rows is None:
                raise ValueError("empty matrix needs an explicit row count")
            return ExactMatrix.zero(rows, 0)
        m = len(cols[0])
        return ExactMatrix(tuple(tuple(c[i] for c in cols) for i in range(m)), len(cols))

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(self.column(j) for j in range(self.cols)), self.rows)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)), self.cols
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_shape(other)
        return ExactMatrix(
            tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)), self.cols
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(tuple(vec_scale(-ONE, r) for r in self.entries), self.cols)

    def scale(self, c: Scalar) -> "ExactMatrix":
        cf = frac(c)
        return ExactMatrix(tuple(vec_scale(cf, r) for r in self.entries), self.cols)

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        # plain ints multiply an order of magnitude faster than Fractions
        if self.is_integral and other.is_integral:
            a = [[x.numerator for x in row] for row in self.entries]
            bt = [
                [other.entries[i][j].numerator for i in range(other.rows)]
                for j in range(other.cols)
            ]
            return ExactMatrix(
                tuple(
                    tuple(Fraction(sum(x * y for x, y in zip(r, c))) for c in bt)
                    for r in a
                ),
                other.cols,
            )
        ot = other.transpose()
        return ExactMatrix(
            tuple(
                tuple(sum((a * b for a, b in zip(r, c)), ZERO) for c in ot.entries)
                for r in self.entries
            ),
            other.cols,
        )

    def power(self, k: int) -> "ExactMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def _check_shape(self, other: "ExactMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.entries) + "]"


def mat_vec(M: ExactMatrix, v: Vec) -> Vec:
    """M applied to a column vector (returned as a tuple)."""
    if len(v) != M.cols:
        raise ValueError("dimension mismatch")
    return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in M.entries)


def vec_mat(v: Vec, M: ExactMatrix) -> Vec:
    """Row vector times matrix."""
    if len(v) != M.rows:
        raise ValueError("dimension mismatch")
    return tuple(
        sum((v[i] * M.entries[i][j] for i in range(M.rows)), ZERO) for j in range(M.cols)
    )


def commutator(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    return A * B - B * A


def stack_rows(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    cols = blocks[0].cols
    rows: list[Vec] = []
    for b in blocks:
        if b.cols != cols:
            raise ValueError("column mismatch in stack")
        rows.extend(b.entries)
    return ExactMatrix(tuple(rows), cols)


def block_diag(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    rows: list[Vec] = []
    for r in A.entries:
        rows.append(r + zero_vector(B.cols))
    for r in B.entries:
        rows.append(zero_vector(A.cols) + r)
    return ExactMatrix(tuple(rows), A.cols + B.cols)


def lcm_denominators(M: ExactMatrix) -> int:
    """Least positive integer d with d*M integral."""
    d = 1
    for row in M.entries:
        for x in row:
            d = lcm(d, x.denominator)
    return d


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _to_int_lists(M: ExactMatrix) -> list[list[int]]:
    if not M.is_integral:
        raise NonIntegralMatrixError("integer algorithm applied to a non-integral matrix")
    return [[int(x) for x in row] for row in M.entries]


def _wrap_int(A: list[list[int]], cols: int) -> ExactMatrix:
    return ExactMatrix(tuple(tuple(Fraction(x) for x in row) for row in A), cols)


def hnf(M: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with H = U*M, U unimodular, pivots positive and entries
    above each pivot reduced into [0, pivot).  Zero rows sink to the bottom.
    """
    m, n = M.rows, M.cols
    A = _to_int_lists(M)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_combine(r: int, s: int, a: int, b: int, c: int, d: int) -> None:
        # (row r, row s) <- (a*r + b*s, c*r + d*s), with a*d - b*c = +-1
        for T in (A, U):
            Tr, Ts = T[r], T[s]
            for k in range(len(Tr)):
                Tr[k], Ts[k] = a * Tr[k] + b * Ts[k], c * Tr[k] + d * Ts[k]

    piv = 0
    for col in range(n):
        pivot_row = next((r for r in range(piv, m) if A[r][col]), None)
        if pivot_row is None:
            continue
        if pivot_row != piv:
            A[piv], A[pivot_row] = A[pivot_row], A[piv]
            U[piv], U[pivot_row] = U[pivot_row], U[piv]
        for r in range(piv + 1, m):
            if A[r][col] == 0:
                continue
            a, b = A[piv][col], A[r][col]
            if b % a == 0:
                q = b // a
                row_combine(piv, r, 1, 0, -q, 1)
            else:
                x, y, g = _xgcd(a, b)
                row_combine(piv, r, x, y, -(b // g), a // g)
        if A[piv][col] < 0:
            A[piv] = [-v for v in A[piv]]
            U[piv] = [-v for v in U[piv]]
        p = A[piv][col]
        for r in range(piv):
            q = A[r][col] // p
            if q:
                A[r] = [v - q * w for v, w in zip(A[r], A[piv])]
                U[r] = [v - q * w for v, w in zip(U[r], U[piv])]
        piv += 1
        if piv == m:
            break
    return _wrap_int(A, n), _wrap_int(U, m)


def snf(M: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Smith normal form: S = U*M*V diagonal, d_1 | d_2 | ..., U, V unimodular."""
    m, n = M.rows, M.cols
    A = _to_int_lists(M)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_combine(r, s, a, b, c, d):
        for T in (A, U):
            Tr, Ts = T[r], T[s]
            for k in range(len(Tr)):
                Tr[k], Ts[k] = a * Tr[k] + b * Ts[k], c * Tr[k] + d * Ts[k]

    def col_combine(r, s, a, b, c, d):
        for T in (A, V):
            for row in T:
                row[r], row[s] = a * row[r] + b * row[s], c * row[r] + d * row[s]

    def clear_position(t: int) -> None:
        while True:
            for r in range(t + 1, m):
                if A[r][t]:
                    a, b = A[t][t], A[r][t]
                    if b % a == 0:
                        row_combine(t, r, 1, 0, -(b // a), 1)
                    else:
                        x, y, g = _xgcd(a, b)
                        row_combine(t, r, x, y, -(b // g), a // g)
            if all(A[t][c] == 0 for c in range(t + 1, n)):
                if all(A[r][t] == 0 for r in range(t + 1, m)):
                    return
                continue
            for c in range(t + 1, n):
                if A[t][c]:
                    a, b = A[t][t], A[t][c]
                    if b % a == 0:
                        col_combine(t, c, 1, 0, -(b // a), 1)
                    else:
                        x, y, g = _xgcd(a, b)
                        col_combine(t, c, x, y, -(b // g), a // g)
            if all(A[r][t] == 0 for r in range(t + 1, m)):
                if all(A[t][c] == 0 for c in range(t + 1, n)):
                    return

    t = 0
    while t < min(m, n):
        pos = next(
            ((r, c) for r in range(t, m) for c in range(t, n) if A[r][c]),
            None,
        )
        if pos is None:
            break
        r0, c0 = pos
        if r0 != t:
            A[t], A[r0] = A[r0], A[t]
            U[t], U[r0] = U[r0], U[t]
        if c0 != t:
            for T in (A, V):
                for row in T:
                    row[t], row[c0] = row[c0], row[t]
        clear_position(t)
        # enforce divisibility of the trailing block by A[t][t]
        bad = next(
            ((r, c) for r in range(t + 1, m) for c in range(t + 1, n) if A[r][c] % A[t][t]),
            None,
        )
        if bad is not None:
            r, _ = bad
            for k in range(n):
                A[t][k] += A[r][k]
            for k in range(m):
                U[t][k] += U[r][k]
            continue
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return _wrap_int(A, n), _wrap_int(U, m), _wrap_int(V, n)


def rref(M: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form over the rationals; returns (R, pivot columns)."""
    A = [list(row) for row in M.entries]
    m, n = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, m) if A[i][col] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return ExactMatrix(tuple(tuple(row) for row in A), n), tuple(pivots)


def rank(M: ExactMatrix) -> int:
    return len(rref(M)[1])


def invert(M: ExactMatrix) -> ExactMatrix:
    """Exact inverse of a square matrix; raises on singular input."""
    if not M.is_square:
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    aug = ExactMatrix(
        tuple(M.entries[i] + unit_vector(n, i) for i in range(n)), 2 * n
    )
    R, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return ExactMatrix(tuple(row[n:] for row in R.entries), n)


def solve_right(A: ExactMatrix, b: Vec) -> Vec | None:
    """One solution x of A x = b, or None if inconsistent."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    aug = ExactMatrix(
        tuple(A.entries[i] + (b[i],) for i in range(A.rows)), A.cols + 1
    )
    R, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [ZERO] * A.cols
    for r, col in enumerate(pivots):
        x[col] = R.entries[r][A.cols]
    return tuple(x)


def solve_left(B: ExactMatrix, v: Vec) -> Vec | None:
    """Coordinates x with x*B = v, or None if v is outside the row span."""
    return solve_right(B.transpose(), v)


def right_kernel(A: ExactMatrix) -> list[Vec]:
    """Basis (rows) of {x : A x = 0} over the rationals."""
    R, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * A.cols
        x[f] = ONE
        for r, col in enumerate(pivots):
            x[col] = -R.entries[r][f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Submodule:
    """Subgroup of Z^n or subspace of Q^n with a canonical row basis.

    Over Z the basis is H/d where H is the Hermite form of d times the
    generators and d is their common denominator; over Q it is the RREF.
    Equality of Submodules is equality of the canonical data.
    """

    ambient_rank: int
    basis: ExactMatrix
    domain: str  # "Z" or "Q"

    @property
    def rank(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.rank == 0

    @staticmethod
    def span(vectors: Sequence[Vec], ambient_rank: int, domain: str = "Z") -> "Submodule":
        if domain not in ("Z", "Q"):
            raise ValueError("domain must be 'Z' or 'Q'")
        M = ExactMatrix.from_rows(list(vectors), cols=ambient_rank)
        if domain == "Q":
            R, pivots = rref(M)
            rows = R.entries[: len(pivots)]
            return Submodule(ambient_rank, ExactMatrix(rows, ambient_rank), "Q")
        d = lcm_denominators(M)
        H, _ = hnf(M.scale(d))
        rows = tuple(r for r in H.entries if not is_zero_vector(r))
        basis = ExactMatrix(rows, ambient_rank).scale(Fraction(1, d))
        return Submodule(ambient_rank, basis, "Z")

    @staticmethod
    def zero(ambient_rank: int, domain: str = "Z") -> "Submodule":
        return Submodule(ambient_rank, ExactMatrix.zero(0, ambient_rank), domain)

    @staticmethod
    def full(ambient_rank: int, domain: str = "Z") -> "Submodule":
        return Submodule(ambient_rank, ExactMatrix.identity(ambient_rank), domain)

    def coordinates(self, v: Vec) -> Vec | None:
        """Coordinates of v in the basis, respecting the domain (Z: integral)."""
        x = solve_left(self.basis, v)
        if x is None:
            return None
        if self.domain == "Z" and any(c.denominator != 1 for c in x):
            return None
        return x

    def contains(self, v: Vec) -> bool:
        return self.coordinates(v) is not None

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(r) for r in other.basis.entries)

    def sum(self, other: "Submodule") -> "Submodule":
        self._check_compatible(other)
        return Submodule.span(
            list(self.basis.entries) + list(other.basis.entries),
            self.ambient_rank,
            self.domain,
        )

    def intersect(self, other: "Submodule") -> "Submodule":
        self._check_compatible(other)
        if self.rank == 0 or other.rank == 0:
            return Submodule.zero(self.ambient_rank, self.domain)
        stacked = stack_rows([self.basis, -other.basis])
        if self.domain == "Q":
            ker = [k for k in kernel_basis(stacked, "Q").basis.entries]
        else:
            d = lcm_denominators(stacked)
            ker = [k for k in kernel_basis(stacked.scale(d), "Z").basis.entries]
        vecs = [vec_mat(k[: self.rank], self.basis) for k in ker]
        return Submodule.span(vecs, self.ambient_rank, self.domain)

    def saturate(self) -> "Submodule":
        """Isolated closure: same Q-span, torsion-free quotient.  No-op over Q."""
        if self.domain == "Q" or self.rank == 0:
            return self
        d = lcm_denominators(self.basis)
        B = self.basis.scale(d)
        S, U, V = snf(B)
        k = self.rank
        Vinv = invert(V)
        rows = [tuple(Vinv.entries[i]) for i in range(k)]
        sat = Submodule.span(rows, self.ambient_rank, "Z")
        return Submodule(self.ambient_rank, sat.basis.scale(Fraction(1, d)), "Z")

    def is_saturated(self) -> bool:
        return self == self.saturate()

    def _check_compatible(self, other: "Submodule") -> None:
        if self.ambient_rank != other.ambient_rank or self.domain != other.domain:
            raise ValueError("incompatible submodules")


def kernel_basis(M: ExactMatrix, domain: str = "Q") -> Submodule:
    """Left kernel {v : v*M = 0}; over Z the saturated integral kernel."""
    if domain == "Q":
        return Submodule.span(right_kernel(M.transpose()), M.rows, "Q")
    S, U, V = snf(M)
    nonzero = sum(
        1 for i in range(min(M.rows, M.cols)) if S.entries[i][i] != 0
    )
    rows = [U.entries[i] for i in range(nonzero, M.rows)]
    return Submodule.span(rows, M.rows, "Z")


def saturate(S: Submodule) -> Submodule:
    return S.saturate()


def extend_basis(inner: Submodule, outer: Submodule) -> ExactMatrix:
    """Rows extending inner's basis to a basis of outer.

    Over Z this requires inner to be isolated in outer (the coordinate
    matrix must be completable to a unimodular one).
    """
    inner_coords = []
    for r in inner.basis.entries:
        x = outer.coordinates(r)
        if x is None:
            raise ValueError("inner is not contained in outer")
        inner_coords.append(x)
    k, m = inner.rank, outer.rank
    if k == m:
        return ExactMatrix.zero(0, outer.ambient_rank)
    if outer.domain == "Q":
        C = ExactMatrix.from_rows(inner_coords, cols=m)
        _, pivots = rref(C)
        extra = [outer.basis.entries[c] for c in range(m) if c not in pivots]
        return ExactMatrix.from_rows(extra[: m - k], cols=outer.ambient_rank)
    C = ExactMatrix.from_rows(inner_coords, cols=m)
    if not C.is_integral:
        raise ValueError("inner has non-integral coordinates in outer")
    Ht, Ut = hnf(C.transpose())
    # C * Ut^T = [T | 0] with T (k x k) triangular; saturation forces |det T| = 1
    det = ONE
    for i in range(k):
        det *= Ht.entries[i][i]
    if abs(det) != 1:
        raise ValueError("inner is not isolated in outer; cannot extend over Z")
    Vinv = invert(Ut.transpose())
    extra_coords = [Vinv.entries[i] for i in range(k, m)]
    rows = [vec_mat(c, outer.basis) for c in extra_coords]
    # Unimodular transformations among the completion rows preserve the
    # property that inner + completion is a basis; canonicalize via HNF.
    canon = Submodule.span(rows, outer.ambient_rank, "Z")
    return canon.basis
