"""Arithmetic in GF(q) and GF(q^m).

Elements of GF(q^m) are represented as integers whose base-q digits are
the coefficients of a polynomial over GF(q), lowest degree first:

    value = c_0 + c_1*q + c_2*q^2 + ... + c_{m-1}*q^{m-1}

Arithmetic is done modulo a monic irreducible polynomial of degree m.
For q = 2 the integer is exactly the coefficient bitmask, so the packed
value doubles as the row vector of the element under the polynomial
basis {1, x, ..., x^{m-1}}.

For table-friendly fields (q^m <= 2^16) multiplication, inversion and
the Frobenius map go through precomputed exp/log tables keyed by a
primitive element; larger fields fall back to polynomial arithmetic.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ParameterError

# Largest field order for which exp/log tables are built.
TABLE_LIMIT = 1 << 16

# Monic irreducible polynomials over GF(2), degree 1..16, as coefficient
# tuples lowest degree first.  These are the usual primitive polynomials
# (x^4+x+1 -> (1,1,0,0,1), etc.); all are re-validated at field build.
DEFAULT_MODULI_GF2 = {
    1: (1, 1),
    2: (1, 1, 1),
    3: (1, 1, 0, 1),
    4: (1, 1, 0, 0, 1),
    5: (1, 0, 1, 0, 0, 1),
    6: (1, 1, 0, 0, 0, 0, 1),
    7: (1, 0, 0, 1, 0, 0, 0, 1),
    8: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    9: (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    10: (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    11: (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    12: (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    13: (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    14: (1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1),
    15: (1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    16: (1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------
# Polynomials over GF(q): coefficient lists, lowest degree first.
# ----------------------------------------------------------------------

def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return _poly_trim(out)


def _poly_mod(a, mod, q):
    """Remainder of a by monic mod, both lowest-degree-first."""
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % q
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % q
    return _poly_trim(a[:dm] if len(a) > dm else a)


def is_irreducible(modulus, q: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    mod = _poly_trim(list(modulus))
    deg = len(mod) - 1
    if deg < 1 or mod[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(q), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(mod, divisor, q):
                return False
    return True


def find_irreducible(q: int, m: int) -> tuple[int, ...]:
    """Deterministic search for a monic irreducible of degree m over GF(q)."""
    if q == 2 and m in DEFAULT_MODULI_GF2:
        return DEFAULT_MODULI_GF2[m]
    for tail in itertools.product(range(q), repeat=m):
        cand = list(tail) + [1]
        if is_irreducible(cand, q):
            return tuple(cand)
    raise ParameterError(f"no irreducible polynomial of degree {m} over GF({q})")


# ----------------------------------------------------------------------
# Fields
# ----------------------------------------------------------------------

class PrimeField:
    """GF(q) for prime q.  Elements are ints in [0, q)."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ParameterError(f"base field order {q} is not prime")
        self.q = q
        self.order = q
        self.zero = 0
        self.one = 1

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ParameterError(f"{a} is not an element of GF({self.q})")
        return a

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.q)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        return pow(a, e, self.q) if e >= 0 else pow(self.inv(a), -e, self.q)

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def __repr__(self):
        return f"PrimeField({self.q})"


class ExtField:
    """GF(q^m) with a fixed monic irreducible modulus over prime GF(q).

    Immutable after construction; safe to share across workers.
    """

    def __init__(self, q: int, m: int, modulus=None):
        if not is_prime(q):
            raise ParameterError(f"base field order {q} is not prime")
        if m < 1:
            raise ParameterError(f"extension degree must be >= 1, got {m}")
        if modulus is None:
            modulus = find_irreducible(q, m)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != m + 1:
            raise ParameterError(
                f"modulus must have {m + 1} coefficients, got {len(modulus)}"
            )
        if modulus[-1] != 1:
            raise ParameterError("modulus must be monic")
        if not is_irreducible(modulus, q):
            raise ParameterError(f"modulus {modulus} is reducible over GF({q})")

        self.q = q
        self.m = m
        self.modulus = modulus
        self.order = q ** m
        self.base = PrimeField(q)
        self.zero = 0
        self.one = 1

        # x as an element (degree-1 monomial); for m == 1 it reduces to a
        # constant, so fall back to the reduction of the monomial.
        self.x = q % self.order if m > 1 else (-modulus[0]) % q

        self._mod_int = None  # q=2 only: modulus as bitmask
        if q == 2:
            self._mod_int = sum(c << i for i, c in enumerate(modulus))

        self._exp = None
        self._log = None
        self.primitive = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()
        self._np_mul = None
        self._np_add = None

    # -- raw polynomial arithmetic (no tables) --------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        if self.q == 2:
            p = 0
            top = 1 << self.m
            while b:
                if b & 1:
                    p ^= a
                a <<= 1
                if a & top:
                    a ^= self._mod_int
                b >>= 1
            return p
        prod = _poly_mul(list(self.as_row(a)), list(self.as_row(b)), self.q)
        red = _poly_mod(prod, self.modulus, self.q)
        return self.from_row((red + [0] * self.m)[: self.m])

    def _pow_raw(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._mul_raw(out, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return out

    def _build_tables(self):
        n1 = self.order - 1
        factors = _prime_factors(n1) if n1 > 1 else []
        prim = None
        for cand in range(1, self.order):
            if all(self._pow_raw(cand, n1 // p) != 1 for p in factors):
                prim = cand
                break
        if prim is None:  # unreachable: the unit group is cyclic
            raise RuntimeError("no primitive element found")
        exp = [0] * (2 * n1 if n1 > 0 else 1)
        log = [0] * self.order
        v = 1
        for i in range(n1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, prim)
        for i in range(n1, 2 * n1):
            exp[i] = exp[i - n1]
        self._exp = exp
        self._log = log
        self.primitive = prim

    # -- public arithmetic ----------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ParameterError(f"{a} is not an element of GF({self.q}^{self.m})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q = self.q
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % q) * mult
            a //= q
            b //= q
            mult *= q
        return out

    def neg(self, a: int) -> int:
        if self.q == 2:
            return a
        q = self.q
        out = 0
        mult = 1
        while a:
            out += ((q - a % q) % q) * mult
            a //= q
            mult *= q
        return out

    def sub(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._exp is not None:
            n1 = self.order - 1
            return self._exp[(n1 - self._log[a]) % n1]
        return self._pow_raw(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            n1 = self.order - 1
            return self._exp[(self._log[a] * e) % n1]
        return self._pow_raw(a, e)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(q^i); the identity for i = 0 and for i = m."""
        if a == 0:
            return 0
        n1 = self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * pow(self.q, i, n1)) % n1]
        return self._pow_raw(a, pow(self.q, i, n1))

    # -- row-vector view -------------------------------------------------

    def as_row(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of length m under the polynomial basis."""
        q = self.q
        out = []
        for _ in range(self.m):
            out.append(a % q)
            a //= q
        return tuple(out)

    def from_row(self, digits) -> int:
        if len(digits) != self.m:
            raise ParameterError(f"expected {self.m} digits, got {len(digits)}")
        out = 0
        for d in reversed(list(digits)):
            d = int(d)
            if not 0 <= d < self.q:
                raise ParameterError(f"digit {d} out of range for GF({self.q})")
            out = out * self.q + d
        return out

    # -- element text form: m base-q digits, lowest degree first ---------

    def format_element(self, a: int) -> str:
        row = self.as_row(self.check(a))
        if self.q <= 10:
            return "".join(str(d) for d in row)
        return " ".join(str(d) for d in row)

    def parse_element(self, text: str) -> int:
        text = text.strip()
        if self.q <= 10 and " " not in text:
            digits = [int(c) for c in text]
        else:
            digits = [int(tok) for tok in text.split()]
        return self.from_row(digits)

    # -- enumeration and dense tables ------------------------------------

    def elements(self):
        return range(self.order)

    def nonzero_elements(self):
        return range(1, self.order)

    def mul_table(self) -> np.ndarray:
        """Dense order x order multiplication table (small fields only)."""
        if self._np_mul is None:
            if self.order > 4096:
                raise ParameterError("dense tables limited to order <= 4096")
            n1 = self.order - 1
            logs = np.array([0] + [self._log[a] for a in range(1, self.order)])
            exps = np.array(self._exp[:n1] or [1])
            t = exps[(logs[:, None] + logs[None, :]) % n1].copy()
            t[0, :] = 0
            t[:, 0] = 0
            self._np_mul = t
        return self._np_mul

    def add_table(self) -> np.ndarray:
        if self._np_add is None:
            if self.order > 4096:
                raise ParameterError("dense tables limited to order <= 4096")
            t = np.empty((self.order, self.order), dtype=np.int64)
            for a in range(self.order):
                for b in range(a, self.order):
                    v = self.add(a, b)
                    t[a, b] = v
                    t[b, a] = v
            self._np_add = t
        return self._np_add

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.q == self.q
            and other.m == self.m
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.q, self.m, self.modulus))

    def __repr__(self):
        return f"ExtField(q={self.q}, m={self.m}, modulus={self.modulus})"


def field_from_config(q: int, m: int, modulus=None) -> ExtField:
    """Build the extension field described by a scheme parameter file."""
    return ExtField(q, m, modulus)
