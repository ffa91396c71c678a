"""Smith normal form over Z and integer linear systems ``A x = b``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DimensionMismatch

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return []
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A: Matrix, x: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _check_matrix(A: Matrix) -> tuple[int, int]:
    m = len(A)
    if m == 0 or not A[0]:
        raise DimensionMismatch("matrix dimensions must be positive")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise DimensionMismatch("ragged matrix rows")
    return m, n


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and ``d_1 | d_2 | ... | d_r``."""

    U: Matrix
    V: Matrix
    D: Matrix
    rank: int
    divisors: tuple[int, ...]


def smith_normal_form(A: Matrix) -> SNFDecomposition:
    """Elementary row/column operations over Z.

    The pivot is the nonzero entry of least absolute value in the remaining
    submatrix, ties going to the lowest (row, col).
    """
    m, n = _check_matrix(A)
    D = [list(map(int, row)) for row in A]
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    rank = 0
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad_row = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad_row is None:
                break
            add_row(t, bad_row, 1)
        if best is None:
            break
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        rank += 1
    divisors = tuple(D[i][i] for i in range(rank))
    return SNFDecomposition(U, V, D, rank, divisors)


@dataclass(frozen=True)
class SystemSolution:
    """Outcome of ``A x = b`` over Z.

    When solvable, solutions are exactly ``particular + span_Z(lattice_basis)``.
    Otherwise ``failing_index`` is the row i of ``D y = U b`` that breaks:
    ``d_i`` does not divide ``c_i`` (i < rank) or ``c_i != 0`` (i >= rank).
    """

    solvable: bool
    particular: list[int] | None = None
    lattice_basis: list[list[int]] = field(default_factory=list)
    failing_index: int | None = None
    transformed_rhs: list[int] = field(default_factory=list)
    divisors: tuple[int, ...] = ()

    @property
    def witness_modulus(self) -> int | None:
        """A modulus N with ``A x = b (mod N)`` unsolvable, when not solvable."""
        if self.solvable:
            return None
        i = self.failing_index
        c = self.transformed_rhs[i]
        if i < len(self.divisors):
            return self.divisors[i]
        return abs(c) + 1


def solve_integer_system(A: Matrix, b: list[int], snf: SNFDecomposition | None = None) -> SystemSolution:
    m, n = _check_matrix(A)
    if len(b) != m:
        raise DimensionMismatch(f"b has length {len(b)}, expected {m}")
    snf = snf or smith_normal_form(A)
    c = matvec(snf.U, b)
    y = [0] * n
    for i in range(m):
        if i < snf.rank:
            d = snf.divisors[i]
            if c[i] % d:
                return SystemSolution(False, failing_index=i, transformed_rhs=c, divisors=snf.divisors)
            y[i] = c[i] // d
        elif c[i]:
            return SystemSolution(False, failing_index=i, transformed_rhs=c, divisors=snf.divisors)
    particular = matvec(snf.V, y)
    basis = [[snf.V[row][j] for row in range(n)] for j in range(snf.rank, n)]
    return SystemSolution(True, particular, basis, transformed_rhs=c, divisors=snf.divisors)


def solvable_mod(A: Matrix, b: list[int], N: int) -> bool:
    """``A x = b (mod N)`` solvable, decided over Z via the system ``[A | N I]``."""
    m, _ = _check_matrix(A)
    augmented = [list(row) + [N * int(i == k) for k in range(m)] for i, row in enumerate(A)]
    return solve_integer_system(augmented, b).solvable


@dataclass(frozen=True)
class ModuliReport:
    integer_solvable: bool
    per_modulus: dict[int, bool]
    witness_modulus: int | None

    @property
    def all_moduli_solvable(self) -> bool:
        return all(self.per_modulus.values())

    @property
    def consistent(self) -> bool:
        """Solvable over Z iff solvable modulo every tested N."""
        return self.integer_solvable == self.all_moduli_solvable


def solvable_all_moduli(A: Matrix, b: list[int], test_moduli=range(2, 31)) -> ModuliReport:
    """Per-modulus solvability.  When the system fails over Z, the modulus
    read off the Smith form is tested as well so the failure is exhibited."""
    sol = solve_integer_system(A, b)
    moduli = sorted(set(int(N) for N in test_moduli if N >= 2))
    if sol.witness_modulus is not None and sol.witness_modulus >= 2:
        moduli = sorted(set(moduli) | {sol.witness_modulus})
    return ModuliReport(sol.solvable, {N: solvable_mod(A, b, N) for N in moduli}, sol.witness_modulus)


def minor_gcds(A: Matrix) -> list[int]:
    """``g_i`` = gcd of all i x i minors for i = 1..min(m, n) (brute force)."""
    from itertools import combinations

    m, n = _check_matrix(A)
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = math.gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


# --- text I/O ----------------------------------------------------------------

def parse_matrix(text: str) -> tuple[Matrix, list[int] | None]:
    """Whitespace-separated integers: ``m n``, then m rows of n entries, then
    optionally m more integers giving the right-hand side b."""
    nums = [int(tok) for tok in text.split()]
    if len(nums) < 2:
        raise ValueError("expected a header line 'm n'")
    m, n = nums[0], nums[1]
    if m <= 0 or n <= 0:
        raise ValueError("matrix dimensions must be positive")
    body = nums[2:]
    if len(body) not in (m * n, m * n + m):
        raise ValueError(f"expected {m * n} entries (or {m * n + m} with b), got {len(body)}")
    A = [body[i * n:(i + 1) * n] for i in range(m)]
    b = body[m * n:] if len(body) > m * n else None
    return A, b


def format_matrix(A: Matrix) -> str:
    if not A:
        return "0 0"
    lines = [f"{len(A)} {len(A[0])}"]
    lines += [" ".join(str(a) for a in row) for row in A]
    return "\n".join(lines)
