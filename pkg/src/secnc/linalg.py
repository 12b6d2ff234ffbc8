"""Matrix algebra over GF(q) and GF(q^m).

Matrices over the base field are numpy integer arrays (entries reduced
mod q); matrices over the extension field are lists of lists of packed
field elements.  Elimination is written once against the field protocol
(add/sub/mul/inv/zero/one) and works for both.

The expand/contract pair identifies a length-n column vector over
GF(q^m) with an n x m matrix over GF(q), row i being the coefficient
vector of entry i.  Left multiplication by base-field matrices commutes
with this identification, which is what lets one outer code survive any
linear network code.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import (
    InconsistentSystemError,
    ParameterError,
    SingularMatrixError,
    UnderdeterminedSystemError,
)


def to_lists(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in M]


def zeros(rows: int, cols: int) -> list[list[int]]:
    return [[0] * cols for _ in range(rows)]


def identity(n: int, one: int = 1) -> list[list[int]]:
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M) -> list[list[int]]:
    M = to_lists(M)
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def dims(M) -> tuple[int, int]:
    M = list(M)
    return (len(M), len(M[0]) if M else 0)


# ----------------------------------------------------------------------
# Elimination, generic over the field protocol
# ----------------------------------------------------------------------

def _rref_in_place(field, M: list[list[int]]) -> list[int]:
    """Reduce M to RREF; returns the pivot column list."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if M[i][c] != field.zero), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        s = field.inv(M[r][c])
        if s != field.one:
            M[r] = [field.mul(s, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != field.zero:
                f = M[i][c]
                M[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rref(field, M) -> tuple[list[list[int]], list[int]]:
    M = to_lists(M)
    pivots = _rref_in_place(field, M)
    return M, pivots


def rank(field, M) -> int:
    M = to_lists(M)
    if M and field.order == 2:
        return rank_gf2([pack_row_gf2(row) for row in M])
    return len(_rref_in_place(field, M))


def row_reduce_transform(field, M) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Returns (E, R, pivots) with E square invertible and E @ M = R in RREF."""
    M = to_lists(M)
    rows = len(M)
    aug = [M[i] + [field.one if j == i else field.zero for j in range(rows)]
           for i in range(rows)]
    cols = len(M[0]) if rows else 0
    # eliminate on the left block only; the right block records the transform
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if aug[i][c] != field.zero), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        s = field.inv(aug[r][c])
        if s != field.one:
            aug[r] = [field.mul(s, x) for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != field.zero:
                f = aug[i][c]
                aug[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    E = [row[cols:] for row in aug]
    R = [row[:cols] for row in aug]
    return E, R, pivots


def rref_solve(field, A, Y):
    """Solve A X = Y for the unique X, Y a vector or a matrix.

    Raises InconsistentSystemError when no solution exists and
    UnderdeterminedSystemError when there are many.
    """
    A = to_lists(A)
    if isinstance(Y, np.ndarray):
        vector_rhs = Y.ndim == 1
    else:
        Y = list(Y)
        vector_rhs = bool(Y) and not isinstance(Y[0], (list, tuple, np.ndarray))
    Yl = [[int(y)] for y in Y] if vector_rhs else to_lists(Y)
    rows, cols = dims(A)
    if len(Yl) != rows:
        raise ParameterError(f"rhs has {len(Yl)} rows, expected {rows}")
    ycols = len(Yl[0]) if Yl and Yl[0] else 0
    aug = [A[i] + Yl[i] for i in range(rows)]
    _, R, pivots = row_reduce_transform(field, aug)
    if any(p >= cols for p in pivots):
        raise InconsistentSystemError("A X = Y has no solution")
    if len(pivots) < cols:
        raise UnderdeterminedSystemError(
            f"solution space has dimension {cols - len(pivots)}"
        )
    X = zeros(cols, ycols)
    for r, c in enumerate(pivots):
        X[c] = R[r][cols:]
    return [row[0] for row in X] if vector_rhs else X


def inverse(field, A) -> list[list[int]]:
    A = to_lists(A)
    n, c = dims(A)
    if n != c:
        raise ParameterError("inverse requires a square matrix")
    E, _, pivots = row_reduce_transform(field, A)
    if len(pivots) != n:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {n}")
    return E


def left_inverse(field, A) -> list[list[int]]:
    """For A of shape N x n with full column rank, a B with B @ A = I_n."""
    A = to_lists(A)
    rows, cols = dims(A)
    if rows < cols:
        raise ParameterError("left inverse requires rows >= cols")
    E, _, pivots = row_reduce_transform(field, A)
    if len(pivots) != cols:
        raise SingularMatrixError(
            f"matrix has column rank {len(pivots)} < {cols}"
        )
    return E[:cols]


def null_space(field, A) -> list[list[int]]:
    """Basis of the right kernel of A, one vector per free column."""
    A = to_lists(A)
    rows, cols = dims(A)
    R, pivots = rref(field, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * cols
        v[f] = field.one
        for r, p in enumerate(pivots):
            v[p] = field.neg(R[r][f])
        basis.append(v)
    return basis


def kernel_vector(field, A):
    """One nonzero kernel vector, or None when the kernel is trivial."""
    basis = null_space(field, A)
    return basis[0] if basis else None


# ----------------------------------------------------------------------
# Products
# ----------------------------------------------------------------------

def matmul(field, A, B) -> list[list[int]]:
    A = to_lists(A)
    B = to_lists(B)
    ra, ca = dims(A)
    rb, cb = dims(B)
    if ca != rb:
        raise ParameterError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = list(zip(*B)) if B else []
    out = zeros(ra, cb)
    for i in range(ra):
        Ai = A[i]
        for j in range(cb):
            acc = field.zero
            col = Bt[j]
            for k in range(ca):
                a = Ai[k]
                if a != field.zero:
                    acc = field.add(acc, field.mul(a, col[k]))
            out[i][j] = acc
    return out


def matvec(field, A, v) -> list[int]:
    return [row[0] for row in matmul(field, A, [[int(x)] for x in v])]


def mat_add(field, A, B) -> list[list[int]]:
    A, B = to_lists(A), to_lists(B)
    if dims(A) != dims(B):
        raise ParameterError("dimension mismatch")
    return [[field.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(field, A, B) -> list[list[int]]:
    A, B = to_lists(A), to_lists(B)
    if dims(A) != dims(B):
        raise ParameterError("dimension mismatch")
    return [[field.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


# ----------------------------------------------------------------------
# The vector <-> matrix identification and rank distance
# ----------------------------------------------------------------------

def expand(F, v) -> np.ndarray:
    """Column vector over GF(q^m) -> n x m matrix over GF(q)."""
    return np.array([F.as_row(int(x)) for x in v], dtype=np.int64).reshape(
        len(v), F.m
    )


def contract(F, M) -> list[int]:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[1] != F.m:
        raise ParameterError(f"expected an n x {F.m} matrix, got shape {M.shape}")
    return [F.from_row([int(d) for d in row]) for row in M]


def fq_matvec_fqm(F, A, v) -> list[int]:
    """Apply a base-field matrix A to a vector over GF(q^m).

    Base-field scalars embed into GF(q^m) as the constant polynomials,
    which are exactly the packed values < q.
    """
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            a = int(a) % F.q
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def rank_distance(field, X, Y) -> int:
    X, Y = to_lists(X), to_lists(Y)
    if dims(X) != dims(Y):
        raise ParameterError(f"shapes differ: {dims(X)} vs {dims(Y)}")
    return rank(field, mat_sub(field, Y, X))


# ----------------------------------------------------------------------
# GF(2) fast path: a row is a bitmask, a matrix a tuple of bitmasks
# ----------------------------------------------------------------------

def pack_row_gf2(row) -> int:
    out = 0
    for i, x in enumerate(row):
        if int(x) & 1:
            out |= 1 << i
    return out


def rank_fq(M, q: int) -> int:
    """Rank over GF(q) for prime q; packed fast path when q = 2."""
    M = to_lists(M)
    if not M:
        return 0
    if q == 2:
        return rank_gf2([pack_row_gf2(row) for row in M])
    from .gf import PrimeField

    return len(_rref_in_place(PrimeField(q), M))


def rank_gf2(rows) -> int:
    """Rank over GF(2) of a matrix given as an iterable of row bitmasks."""
    pivots = {}
    r = 0
    for row in rows:
        row = int(row)
        while row:
            hb = row.bit_length() - 1
            piv = pivots.get(hb)
            if piv is None:
                pivots[hb] = row
                r += 1
                break
            row ^= piv
    return r


def rank_gf2_at_most(rows, t: int) -> bool:
    """True iff the GF(2) bitmask matrix has rank <= t; stops early."""
    pivots = {}
    r = 0
    for row in rows:
        row = int(row)
        while row:
            hb = row.bit_length() - 1
            piv = pivots.get(hb)
            if piv is None:
                r += 1
                if r > t:
                    return False
                pivots[hb] = row
                break
            row ^= piv
    return True


# ----------------------------------------------------------------------
# Sampling and enumeration of base-field matrices
# ----------------------------------------------------------------------

def random_matrix(field, rows: int, cols: int, rng) -> np.ndarray:
    return np.asarray(
        rng.integers(0, field.order, size=(rows, cols)), dtype=np.int64
    )


def random_full_rank(field, rows: int, cols: int, rng) -> np.ndarray:
    """Rejection-sample a matrix of rank min(rows, cols)."""
    if rows < 1 or cols < 1:
        raise ParameterError("dimensions must be >= 1")
    target = min(rows, cols)
    while True:
        M = random_matrix(field, rows, cols, rng)
        if rank(field, M) == target:
            return M


def all_vectors(q: int, n: int):
    return itertools.product(range(q), repeat=n)


def iter_rref_full_row_rank(q: int, r: int, c: int):
    """All r x c RREF matrices of rank r (one per r-dim subspace of Fq^c)."""
    if r == 0:
        yield []
        return
    if r > c:
        return
    for pivots in itertools.combinations(range(c), r):
        free = [
            (i, j)
            for i in range(r)
            for j in range(pivots[i] + 1, c)
            if j not in pivots
        ]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = [[0] * c for _ in range(r)]
            for i, p in enumerate(pivots):
                M[i][p] = 1
            for (i, j), v in zip(free, vals):
                M[i][j] = v
            yield M


def iter_full_col_rank(q: int, rows: int, r: int):
    """All rows x r matrices over GF(q) with linearly independent columns."""
    if r == 0:
        yield [[] for _ in range(rows)]
        return

    def reduce_vec(v, basis):
        v = list(v)
        for lead, b in basis:
            x = v[lead]
            if x:
                inv = pow(b[lead], q - 2, q)
                f = (x * inv) % q
                v = [(vi - f * bi) % q for vi, bi in zip(v, b)]
        return v

    def walk(cols, basis):
        if len(cols) == r:
            yield [[col[i] for col in cols] for i in range(rows)]
            return
        for cand in itertools.product(range(q), repeat=rows):
            red = reduce_vec(cand, basis)
            lead = next((i for i, x in enumerate(red) if x), None)
            if lead is None:
                continue
            yield from walk(cols + [list(cand)], basis + [(lead, red)])

    yield from walk([], [])


def iter_rank_exactly(q: int, rows: int, cols: int, r: int):
    """All rows x cols matrices of rank exactly r, each exactly once.

    Every rank-r matrix factors uniquely as C @ R with C full column
    rank and R in RREF with full row rank.
    """
    if r == 0:
        yield [[0] * cols for _ in range(rows)]
        return
    rrefs = list(iter_rref_full_row_rank(q, r, cols))
    for C in iter_full_col_rank(q, rows, r):
        for R in rrefs:
            yield [
                [sum(C[i][k] * R[k][j] for k in range(r)) % q for j in range(cols)]
                for i in range(rows)
            ]


def iter_rank_at_most(q: int, rows: int, cols: int, t: int):
    for r in range(min(t, rows, cols) + 1):
        yield from iter_rank_exactly(q, rows, cols, r)


def iter_full_rank(q: int, rows: int, cols: int):
    yield from iter_rank_exactly(q, rows, cols, min(rows, cols))


def iter_invertible(q: int, n: int):
    yield from iter_rank_exactly(q, n, n, n)


def gaussian_binomial(c: int, r: int, q: int) -> int:
    """Number of r-dimensional subspaces of Fq^c."""
    if r < 0 or r > c:
        return 0
    num = den = 1
    for i in range(r):
        num *= q ** (c - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_full_col_rank(q: int, rows: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= q ** rows - q ** i
    return out


def count_rank_exactly(q: int, rows: int, cols: int, r: int) -> int:
    return gaussian_binomial(cols, r, q) * count_full_col_rank(q, rows, r)


def count_rank_at_most(q: int, rows: int, cols: int, t: int) -> int:
    return sum(
        count_rank_exactly(q, rows, cols, r)
        for r in range(min(t, rows, cols) + 1)
    )
