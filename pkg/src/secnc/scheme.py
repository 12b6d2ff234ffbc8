"""Coset coding for secrecy and the combined secure error-correcting scheme.

The transmitter holds a message S of k packets, draws mu packets V of
fresh uniform randomness, and sends X = G0^T [S; V], where G0 generates
an [n, k+mu] Gabidulin code.  The last mu rows of G0 generate an
[n, mu] MRD code, which is what makes every mu-link eavesdropper's view
statistically independent of S; the outer code's distance
n-(k+mu)+1 >= 2t+1 is what lets the receiver correct t injected
packets.  Parameters are accepted exactly when 0 < k <= n - 2t - mu
and m >= n.

Secrecy holds only if V is drawn uniformly and never reused: two
transmissions sharing V (or a biased V) leak, and no audit here will
catch misuse across runs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import BudgetExceededError, ParameterError, ValidationError
from .gf import ExtField
from .rankmetric import DEFAULT_ENUM_BUDGET, DecodeOutcome, GabidulinCode


@dataclass(frozen=True)
class SchemeParams:
    """Parameter set (q, m, n, t, mu, k) with optional field/code overrides."""

    q: int
    m: int
    n: int
    t: int
    mu: int
    k: int
    modulus: tuple | None = None
    g: tuple | None = None

    def validate(self) -> None:
        """Reject invalid parameters with a named reason.

        Raises ValidationError with reason "shape" (nonsense sizes),
        "packet_length" (m < n), or "rate_bound" (k outside
        1..n-2t-mu).
        """
        if self.n < 1 or self.t < 0 or self.mu < 0:
            raise ValidationError(
                "shape", f"need n >= 1, t >= 0, mu >= 0, got "
                f"n={self.n}, t={self.t}, mu={self.mu}"
            )
        if self.m < self.n:
            raise ValidationError(
                "packet_length",
                f"packet length m = {self.m} is shorter than the batch "
                f"size n = {self.n}; the construction needs m >= n",
            )
        kmax = self.n - 2 * self.t - self.mu
        if not 1 <= self.k <= kmax:
            raise ValidationError(
                "rate_bound",
                f"message size k = {self.k} outside 1 <= k <= n - 2t - mu "
                f"= {kmax}",
            )

    @property
    def min_distance(self) -> int:
        """Designed rank distance of the outer code, n - (k+mu) + 1."""
        return self.n - self.k - self.mu + 1

    @property
    def rate_bits(self) -> float:
        return self.k * self.m * math.log2(self.q)


def _complete_transform(F: ExtField, G0, n: int):
    """Invertible n x n T whose last len(G0) columns are G0^T.

    The remaining columns are standard-basis vectors chosen greedily in
    index order, so encoder and decoder derive the same T from the
    parameters alone.
    """
    basis = []  # echelonized rows (lead position, row)

    def try_add(row):
        row = list(row)
        for lead, b in basis:
            x = row[lead]
            if x:
                f = F.div(x, b[lead])
                row = [F.sub(r, F.mul(f, v)) for r, v in zip(row, b)]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is None:
            return False
        basis.append((lead, row))
        return True

    for row in G0:
        if not try_add(row):
            raise ParameterError("generator rows are linearly dependent")
    completion = []
    for i in range(n):
        if len(basis) == n:
            break
        e = [0] * n
        e[i] = 1
        if try_add(e):
            completion.append(e)
    Tt = completion + [list(r) for r in G0]
    return la.transpose(Tt)


class SchemeInstance:
    """A built scheme: outer code, its generator split, and the transform T.

    Immutable after construction.  `broken` marks the deliberately
    non-MRD negative-control variant, on which only encoding (and hence
    the secrecy audit) is meaningful.
    """

    def __init__(self, params: SchemeParams, F: ExtField, code, G0, T,
                 broken: bool = False):
        self.params = params
        self.F = F
        self.code = code
        self.G0 = [list(r) for r in G0]
        self.G = [list(r) for r in self.G0[params.k:]]  # last mu rows
        self.T = [list(r) for r in T]
        self.broken = broken
        self._G0t = la.transpose(self.G0)
        self._msg_inv = None
        self._Tinv = None

    # -- encoding ---------------------------------------------------------

    def encode(self, S, rng=None, force_v=None) -> list[int]:
        """Payload X = G0^T [S; V], V uniform unless forced for tests."""
        p = self.params
        S = [self.F.check(int(s)) for s in S]
        if len(S) != p.k:
            raise ParameterError(f"message length {len(S)} != k = {p.k}")
        if force_v is not None:
            V = [self.F.check(int(v)) for v in force_v]
            if len(V) != p.mu:
                raise ParameterError(f"forced V length {len(V)} != mu = {p.mu}")
        else:
            if rng is None:
                raise ParameterError("encode needs an rng when V is not forced")
            V = [int(x) for x in rng.integers(0, self.F.order, size=p.mu)]
        return la.matvec(self.F, self._G0t, S + V)

    def encode_via_transform(self, S, V) -> list[int]:
        """The same payload as T [0; S; V]; the two views must agree."""
        p = self.params
        stacked = [0] * (p.n - p.k - p.mu) + [int(s) for s in S] + [
            int(v) for v in V
        ]
        return la.matvec(self.F, self.T, stacked)

    # -- decoding ---------------------------------------------------------

    def _require_decodable(self):
        if self.code is None:
            raise ParameterError("this instance has no decodable outer code")

    def coherent_decode(self, Y, A) -> DecodeOutcome:
        """Recover S from Y = A expand(X) + D Z when A (rank n) is known.

        Premultiplying by a left inverse of A turns the channel into
        expand(X) plus an error whose rank cannot exceed rank(D Z) <= t,
        which one Gabidulin decode then removes.
        """
        self._require_decodable()
        p = self.params
        A = np.asarray(A) % p.q
        Y = np.asarray(Y) % p.q
        if A.ndim != 2 or A.shape[1] != p.n:
            raise ParameterError(f"transfer matrix must have {p.n} columns")
        if Y.shape != (A.shape[0], p.m):
            raise ParameterError(
                f"observation must be {A.shape[0]} x {p.m}, got {Y.shape}"
            )
        Aplus = la.left_inverse(self.F.base, A)
        Yr = (np.asarray(Aplus, dtype=np.int64) @ Y) % p.q
        out = self.code.decode(la.contract(self.F, Yr), p.t)
        if not out.ok:
            return out
        return DecodeOutcome.success(out.message[: p.k], out.error_rank)

    def erasure_decode_scheme(self, Y_prime, A_prime) -> DecodeOutcome:
        """Recover S from Y' = A' expand(X), A' full-rank (n-2t) x n.

        The error-free but rank-deficient channel: 2t missing
        dimensions are within what the outer code's distance covers.
        """
        self._require_decodable()
        p = self.params
        Y_prime = np.asarray(Y_prime) % p.q
        rho = 2 * p.t
        if Y_prime.shape != (p.n - rho, p.m):
            raise ParameterError(
                f"observation must be {p.n - rho} x {p.m}, got {Y_prime.shape}"
            )
        y = la.contract(self.F, Y_prime)
        out = self.code.erasure_decode(A_prime, y, rho)
        if not out.ok:
            return out
        return DecodeOutcome.success(out.message[: p.k])

    def message_of_codeword(self, x):
        """The unique [S; V] with G0^T [S; V] = x, or None if x is no codeword."""
        if self._msg_inv is None:
            self._msg_inv = la.left_inverse(self.F, self._G0t)
        u = la.matvec(self.F, self._msg_inv, [int(v) for v in x])
        if la.matvec(self.F, self._G0t, u) != [int(v) for v in x]:
            return None
        return u

    def transform_inverse(self):
        if self._Tinv is None:
            self._Tinv = la.inverse(self.F, self.T)
        return self._Tinv

    def __repr__(self):
        p = self.params
        tag = ", broken" if self.broken else ""
        return (
            f"SchemeInstance(q={p.q}, m={p.m}, n={p.n}, t={p.t}, "
            f"mu={p.mu}, k={p.k}{tag})"
        )


def build_instance(params: SchemeParams) -> SchemeInstance:
    """Validate parameters and construct the scheme of the stated bounds."""
    params.validate()
    F = ExtField(params.q, params.m, params.modulus)
    code = GabidulinCode(F, params.n, params.k + params.mu, g=params.g)
    G0 = code.generator_matrix()
    T = _complete_transform(F, G0, params.n)
    return SchemeInstance(params, F, code, G0, T)


def build_broken_instance(params: SchemeParams) -> SchemeInstance:
    """Negative control: replace the secrecy rows with a non-MRD generator.

    The last row of G0 becomes the all-ones vector, whose expansion has
    rank 1, so the randomness code contains a low-rank codeword and
    some eavesdropper matrix B sees through it.  Only encoding (and the
    secrecy audit) are meaningful on the result.
    """
    params.validate()
    if params.mu < 1:
        raise ParameterError("the broken variant needs mu >= 1")
    F = ExtField(params.q, params.m, params.modulus)
    code = GabidulinCode(F, params.n, params.k + params.mu, g=params.g)
    G0 = code.generator_matrix()
    G0[-1] = [1] * params.n
    if la.rank(F, G0) != params.k + params.mu:
        raise ParameterError(
            "all-ones replacement collapsed the generator; choose other "
            "evaluation points"
        )
    T = _complete_transform(F, G0, params.n)
    return SchemeInstance(params, F, None, G0, T, broken=True)


# ----------------------------------------------------------------------
# Plain coset coding (secrecy only, no error correction)
# ----------------------------------------------------------------------

def coset_syndrome_matrix(F: ExtField, T, k: int):
    """H = first k rows of T^-1; the syndrome map of the coset code."""
    return [row[:] for row in la.inverse(F, T)[:k]]


def coset_encode(F: ExtField, T, S, rng=None, force_v=None) -> list[int]:
    """X = T [S; V], uniform over the coset {x : H x = S}."""
    n = len(T)
    S = [F.check(int(s)) for s in S]
    k = len(S)
    if k > n:
        raise ParameterError(f"message length {k} exceeds n = {n}")
    if force_v is not None:
        V = [F.check(int(v)) for v in force_v]
        if len(V) != n - k:
            raise ParameterError(f"forced V length {len(V)} != n - k = {n - k}")
    else:
        if rng is None:
            raise ParameterError("coset_encode needs an rng when V is not forced")
        V = [int(x) for x in rng.integers(0, F.order, size=n - k)]
    return la.matvec(F, T, S + V)


def coset_decode(F: ExtField, H, X) -> list[int]:
    """Recover the syndrome S = H X."""
    return la.matvec(F, H, [int(x) for x in X])


def proposition1_check(F: ExtField, T, k: int,
                       budget: int = DEFAULT_ENUM_BUDGET):
    """Does the last n-k rows of T^T generate an [n, n-k] MRD code?

    Returns (ok, certificate) where the certificate is the exhaustively
    computed minimum rank distance; MRD means it equals k + 1.  The
    k = 0 case is vacuous: the rows span everything, so the minimum
    distance is 1 by the rank-1 vector (1, 0, ..., 0).
    """
    n = len(T)
    if not 0 <= k <= n:
        raise ParameterError(f"need 0 <= k <= n = {n}, got k = {k}")
    if k == n:
        raise ParameterError("no rows left to check when k = n")
    if k == 0:
        return True, 1
    rows = la.transpose(T)[k:]
    total = F.order ** len(rows)
    if total > budget:
        raise BudgetExceededError(total, budget, "coset codeword enumeration")
    best = None
    rowsT = la.transpose(rows)
    for u in itertools.product(range(F.order), repeat=len(rows)):
        if not any(u):
            continue
        c = la.matvec(F, rowsT, list(u))
        r = la.rank(F.base, la.expand(F, c))
        if best is None or r < best:
            best = r
            if best == 1:
                break
    return best == k + 1, best
