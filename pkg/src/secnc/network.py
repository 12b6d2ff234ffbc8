"""The adversarial linear network channel and the noncoherent lifting.

A destination observes Y = A expand(X) + D Z: A is the network's
transfer matrix (full column rank n for a feasible code), D routes up
to t injected packets Z, and an eavesdropper with mu taps sees
W = B expand(X).  Nothing is stochastic beyond the caller's sampling
choices; transmission itself is exact matrix arithmetic over GF(q).

For noncoherent operation the source sends the lifted matrix [I | X].
The received header block then *is* an effective transfer matrix:
Y_p = Y_h Xbar + D Z' with rank(D Z') <= rank(D) <= t, so the decoder
never needs to learn A itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fileio
from . import linalg as la
from .errors import (
    BudgetExceededError,
    InconsistentSystemError,
    ParameterError,
    UnderdeterminedSystemError,
)
from .gf import ExtField
from .rankmetric import DecodeOutcome
from .scheme import SchemeInstance

# Cap on exhaustive realization enumeration (error matrices x taps).
DEFAULT_REALIZATION_BUDGET = 1 << 22


@dataclass(frozen=True)
class ChannelRealization:
    """One concrete (A, D, Z, B) draw from the adversary's quantifiers.

    Shapes: A is N x n with rank n, D is N x t', Z is t' x c (c = m, or
    n + m for lifted transmissions), B is mu' x n.  t' and mu' are the
    number of links the adversary actually uses, at most t and mu.
    """

    q: int
    A: np.ndarray
    D: np.ndarray
    Z: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        for name in ("A", "D", "Z", "B"):
            M = np.asarray(getattr(self, name), dtype=np.int64) % self.q
            object.__setattr__(self, name, M)
            if M.ndim != 2:
                raise ParameterError(f"{name} must be a matrix")
        N, n = self.A.shape
        if n < 1 or N < n:
            raise ParameterError(f"transfer matrix {N} x {n} cannot have rank {n}")
        if la.rank_fq(self.A, self.q) != n:
            raise ParameterError("transfer matrix A must have full column rank")
        if self.D.shape[0] != N:
            raise ParameterError(
                f"D has {self.D.shape[0]} rows, expected N = {N}"
            )
        if self.Z.shape[0] != self.D.shape[1]:
            raise ParameterError(
                f"Z has {self.Z.shape[0]} rows but D has {self.D.shape[1]} columns"
            )
        if self.B.size and self.B.shape[1] != n:
            raise ParameterError(f"B must have n = {n} columns")

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def N(self) -> int:
        return self.A.shape[0]

    def effective_error(self) -> np.ndarray:
        if self.D.shape[1] == 0:
            return np.zeros((self.N, self.Z.shape[1]), dtype=np.int64)
        return (self.D @ self.Z) % self.q

    @staticmethod
    def from_effective_error(q: int, A, E, B) -> "ChannelRealization":
        """Factor an effective error E = D Z through its rank."""
        E = np.asarray(E, dtype=np.int64) % q
        from .gf import PrimeField

        field = PrimeField(q)
        R, pivots = la.rref(field, E)
        r = len(pivots)
        D = E[:, pivots] if r else np.zeros((E.shape[0], 0), dtype=np.int64)
        Z = (
            np.array(R[:r], dtype=np.int64)
            if r
            else np.zeros((0, E.shape[1]), dtype=np.int64)
        )
        return ChannelRealization(q, np.asarray(A), D, Z, np.asarray(B))


@dataclass(frozen=True)
class TransmissionResult:
    Y: np.ndarray
    W: np.ndarray


def transmit(F: ExtField, X, real: ChannelRealization) -> TransmissionResult:
    """Destination and eavesdropper views of one payload transmission."""
    Xbar = la.expand(F, X)
    if real.n != Xbar.shape[0]:
        raise ParameterError(
            f"payload has {Xbar.shape[0]} packets, channel carries {real.n}"
        )
    if real.Z.shape[1] != F.m:
        raise ParameterError(
            f"injected packets are {real.Z.shape[1]} symbols wide, expected {F.m}"
        )
    Y = (real.A @ Xbar + real.effective_error()) % real.q
    W = (real.B @ Xbar) % real.q
    return TransmissionResult(Y, W)


def lift(F: ExtField, X) -> np.ndarray:
    """The lifted transmission matrix [I | expand(X)]."""
    Xbar = la.expand(F, X)
    return np.hstack([np.eye(Xbar.shape[0], dtype=np.int64), Xbar])


def transmit_lifted(F: ExtField, X, real: ChannelRealization) -> TransmissionResult:
    M = lift(F, X)
    if real.n != M.shape[0]:
        raise ParameterError(
            f"payload has {M.shape[0]} packets, channel carries {real.n}"
        )
    if real.Z.shape[1] != M.shape[1]:
        raise ParameterError(
            f"injected packets are {real.Z.shape[1]} symbols wide, expected "
            f"{M.shape[1]} for lifted transmission"
        )
    Y = (real.A @ M + real.effective_error()) % real.q
    W = (real.B @ M) % real.q
    return TransmissionResult(Y, W)


def sample_realization(params, N: int, rng, mode: str = "random", *,
                       lifted: bool = False, num_errors: int | None = None,
                       path=None, budget: int = DEFAULT_REALIZATION_BUDGET):
    """Draw (or enumerate, or load) a channel realization.

    mode "random" samples A full-rank and uniform D, Z, B; mode
    "exhaustive-iterate" returns a generator over every effective error
    of rank <= t paired with every full-rank B (A = I); mode "fixed"
    loads the four matrices from `path`.
    """
    q, n, m = params.q, params.n, params.m
    cols = n + m if lifted else m
    if N < n:
        raise ParameterError(f"N = {N} must be at least n = {n}")
    if mode == "random":
        from .gf import PrimeField

        field = PrimeField(q)
        tp = params.t if num_errors is None else num_errors
        if tp > params.t:
            raise ParameterError(f"num_errors = {tp} exceeds t = {params.t}")
        A = la.random_full_rank(field, N, n, rng)
        D = la.random_matrix(field, N, tp, rng)
        Z = la.random_matrix(field, tp, cols, rng)
        B = (
            la.random_full_rank(field, params.mu, n, rng)
            if params.mu
            else np.zeros((0, n), dtype=np.int64)
        )
        return ChannelRealization(q, A, D, Z, B)
    if mode == "exhaustive-iterate":
        return iter_exhaustive_realizations(params, N=N, lifted=lifted,
                                            budget=budget)
    if mode == "fixed":
        if path is None:
            raise ParameterError("fixed mode needs a realization file path")
        return load_realization(path, q)
    raise ParameterError(f"unknown adversary mode {mode!r}")


def iter_exhaustive_realizations(params, N: int | None = None, *,
                                 lifted: bool = False,
                                 budget: int = DEFAULT_REALIZATION_BUDGET):
    """Every (effective error of rank <= t) x (full-rank B), with A = I.

    Only the product D Z matters to the decoding guarantee, so errors
    are enumerated as effective matrices and refactored; the identity
    transfer loses no generality for exhaustive audits because the
    decoder premultiplies by a left inverse anyway.
    """
    q, n, m, t, mu = params.q, params.n, params.m, params.t, params.mu
    if N is not None and N != n:
        raise ParameterError("exhaustive enumeration uses a square channel (N = n)")
    cols = n + m if lifted else m
    n_errors = la.count_rank_at_most(q, n, cols, t)
    n_taps = la.count_rank_exactly(q, mu, n, mu) if mu else 1
    needed = n_errors * n_taps
    if needed > budget:
        raise BudgetExceededError(needed, budget, "realization enumeration")
    A = np.eye(n, dtype=np.int64)
    taps = (
        [np.array(Bm, dtype=np.int64) for Bm in la.iter_full_rank(q, mu, n)]
        if mu
        else [np.zeros((0, n), dtype=np.int64)]
    )
    for E in la.iter_rank_at_most(q, n, cols, t):
        for B in taps:
            yield ChannelRealization.from_effective_error(q, A, E, B)


def save_realization(path, real: ChannelRealization) -> None:
    with open(path, "w") as fh:
        fh.write("# channel realization: A, D, Z, B\n")
        for M in (real.A, real.D, real.Z, real.B):
            fh.write(fileio.format_matrix(M, real.q))


def load_realization(path, q: int) -> ChannelRealization:
    with open(path) as fh:
        lines = fileio.strip_lines(fh.read())
    mats = []
    for _ in range(4):
        mats.append(fileio.parse_matrix_block(lines, q))
    if lines:
        raise ParameterError(f"{len(lines)} trailing lines after the B block")
    return ChannelRealization(q, *mats)


# ----------------------------------------------------------------------
# Noncoherent decoding
# ----------------------------------------------------------------------

def noncoherent_decode(inst: SchemeInstance, Y) -> DecodeOutcome:
    """Recover S from a lifted transmission without knowing A.

    Writing Y = [Y_h | Y_p], any codeword x consistent with the channel
    promise satisfies rank(Y_p - Y_h expand(x)) <= t, and under the
    promise exactly one codeword does (two would force a codeword
    difference of rank < d through the full-rank A).  The search runs
    over candidate column spaces U of the error, dimension up to t:
    projecting Y onto the complement of U removes the error, leaving a
    clean (possibly rank-deficient) coherent system solved directly or
    by erasure decoding.
    """
    p = inst.params
    F = inst.F
    q, n, m, t = p.q, p.n, p.m, p.t
    Y = np.asarray(Y, dtype=np.int64) % q
    if Y.ndim != 2 or Y.shape[1] != n + m:
        raise ParameterError(f"lifted observation must have {n + m} columns")
    N = Y.shape[0]
    if N < n:
        raise ParameterError(f"observation has {N} < n = {n} rows")
    Yh, Yp = Y[:, :n], Y[:, n:]
    base = F.base
    found = {}
    for r in range(t + 1):
        for U in la.iter_rref_full_row_rank(q, r, N):
            if r == 0:
                P = np.eye(N, dtype=np.int64)
            else:
                comp = la.null_space(base, U)
                P = np.array(comp, dtype=np.int64)
            A2 = (P @ Yh) % q
            rhs = (P @ Yp) % q
            rk = la.rank_fq(A2, q)
            if rk == n:
                try:
                    Xbar = la.rref_solve(base, A2, rhs)
                except (InconsistentSystemError, UnderdeterminedSystemError):
                    continue
                u = inst.message_of_codeword(la.contract(F, Xbar))
                if u is not None:
                    found.setdefault(tuple(u[: p.k]), tuple(u))
            else:
                rho = n - rk
                if rho > n - (p.k + p.mu):
                    continue
                E2, R2, _ = la.row_reduce_transform(base, A2)
                reduced = (np.array(E2, dtype=np.int64) @ rhs) % q
                if reduced[rk:].any():
                    continue  # y outside the image of this projection
                out = inst.code.erasure_decode(R2[:rk], la.contract(F, reduced[:rk]),
                                               rho)
                if out.ok:
                    found.setdefault(tuple(out.message[: p.k]), out.message)
    if not found:
        return DecodeOutcome.failure("no message consistent with <= t injections")
    if len(found) > 1:
        return DecodeOutcome.failure(
            f"{len(found)} distinct messages consistent; promise violated"
        )
    (S, u), = found.items()
    Xbar = la.expand(F, la.matvec(F, la.transpose(inst.G0), list(u)))
    err = la.rank_fq((Yp - (Yh @ Xbar)) % q, q)
    return DecodeOutcome.success(S, err)
