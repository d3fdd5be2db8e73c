"""Exact integer arithmetic shared by every other module.

Primality is decided by trial division and sieving (desk-scale bounds make
this exact and fast enough); all square/cube roots are computed on integers,
never through floating point.  Small explicit fields F_{p^m} are provided as
brute-force oracles only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

ORACLE_FIELD_BOUND = 30000


def isqrt(n: int) -> int:
    """Largest s with s*s <= n."""
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(n)


def isqrt_ceil(n: int) -> int:
    """Smallest s with s*s >= n."""
    if n < 0:
        raise ValueError("isqrt_ceil of negative integer")
    if n == 0:
        return 0
    return math.isqrt(n - 1) + 1


def iroot(n: int, k: int) -> int:
    """Largest r with r**k <= n, by integer Newton iteration."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    if n.bit_length() <= k:  # n < 2**k means root is 1
        return 1
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def is_prime(n: int) -> bool:
    """Deterministic trial division up to isqrt(n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def sieve(limit: int) -> list[int]:
    """All primes <= limit."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| as (p, exponent) pairs, ascending."""
    n = abs(n)
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; p must be an odd prime."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


class DomainPoint(NamedTuple):
    q: int
    p: Optional[int]
    m: Optional[int]


@dataclass(frozen=True)
class PrimePowerDomain:
    """Finite index set for count sequences.

    kind 'prime_powers' enumerates {p^m <= limit : p prime not in excluded},
    'primes_only' the primes themselves, and 'naturals_from_2' all integers
    2..limit (excluded must then be empty).  Enumeration is strictly
    increasing in q with no duplicates.
    """

    excluded: frozenset[int] = frozenset()
    kind: str = "prime_powers"
    limit: int = 10000

    def __post_init__(self):
        if self.kind not in ("prime_powers", "primes_only", "naturals_from_2"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.limit < 2:
            raise ValueError("domain limit must be >= 2")
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if self.kind == "naturals_from_2":
            if self.excluded:
                raise ValueError("naturals_from_2 takes no excluded set")
            return
        for s in self.excluded:
            if not is_prime(s):
                raise ValueError(f"excluded entry {s} is not prime")


def enumerate_domain(domain: PrimePowerDomain) -> list[DomainPoint]:
    """All points of the domain, ascending in q."""
    if domain.kind == "naturals_from_2":
        return [DomainPoint(n, None, None) for n in range(2, domain.limit + 1)]
    points = []
    for p in sieve(domain.limit):
        if p in domain.excluded:
            continue
        if domain.kind == "primes_only":
            points.append(DomainPoint(p, p, 1))
            continue
        q, m = p, 1
        while q <= domain.limit:
            points.append(DomainPoint(q, p, m))
            q *= p
            m += 1
    points.sort()
    return points


# --- small explicit fields, used only as counting oracles ---------------


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num by monic-led den, coefficients mod p (little-endian)."""
    num = [c % p for c in num]
    dn = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    while len(num) - 1 >= dn and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dn:
            break
        shift = len(num) - 1 - dn
        factor = num[-1] * inv_lead % p
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - factor * c) % p
    while num and num[-1] == 0:
        num.pop()
    return num


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility of the monic polynomial x^m + sum coeffs[i] x^i over F_p."""
    m = len(coeffs)
    poly = list(coeffs) + [1]
    if coeffs[0] == 0:  # divisible by x
        return False
    for a in range(p):  # root check kills every reducible of degree <= 3
        acc = 0
        for c in reversed(poly):
            acc = (acc * a + c) % p
        if acc == 0:
            return False
    if m <= 3:
        return True
    for d in range(2, m // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            div = list(lower) + [1]
            if not _poly_mod(poly, div, p):
                return False
    return True


class SmallField:
    """Explicit F_{p^m}; elements are little-endian coefficient tuples.

    The modulus is the first irreducible monic polynomial in lexicographic
    order of its lower coefficients, so field construction is deterministic.
    Meant for exhaustive point counting, not performance.
    """

    def __init__(self, p: int, m: int, bound: int = ORACLE_FIELD_BOUND):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if p**m > bound:
            raise ValueError(f"field size {p**m} exceeds oracle bound {bound}")
        self.p = p
        self.m = m
        self.order = p**m
        self.modulus = self._find_modulus()
        # x^(m+i) reduced mod modulus, for folding products back below degree m
        self._red: list[tuple[int, ...]] = []
        for i in range(m - 1):
            e = [0] * (m + i) + [1]
            r = _poly_mod(e, list(self.modulus) + [1], p)
            self._red.append(tuple(r + [0] * (m - len(r))))

    def _find_modulus(self) -> tuple[int, ...]:
        if self.m == 1:
            return (0,)
        for coeffs in itertools.product(range(self.p), repeat=self.m):
            if _is_irreducible(coeffs, self.p):
                return coeffs
        raise RuntimeError(f"no irreducible modulus for p={self.p}, m={self.m}")

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.m

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.m - 1)

    def from_int(self, n: int) -> tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.m - 1)

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.p), repeat=self.m)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, m = self.p, self.m
        if m == 1:
            return (a[0] * b[0] % p,)
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:m]]
        for i in range(m - 1):
            c = conv[m + i] % p
            if c:
                row = self._red[i]
                for k in range(m):
                    out[k] = (out[k] + c * row[k]) % p
        return tuple(out)

    def pow(self, a, e: int):
        if e < 0:
            a = self.pow(a, self.order - 2)  # inverse via the group order
            e = -e
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, bound: int) -> SmallField:
    return SmallField(p, m, bound)


def build_field(p: int, m: int, bound: int = ORACLE_FIELD_BOUND) -> SmallField:
    """F_{p^m} for oracle use; degree capped at 3 (larger fields are only
    reachable through the enumeration helpers that need them)."""
    if not 1 <= m <= 3:
        raise ValueError("build_field supports extension degrees 1..3")
    return _cached_field(p, m, bound)


def enumeration_field(p: int, m: int, bound: int = ORACLE_FIELD_BOUND) -> SmallField:
    """Size-capped field of any degree, for exhaustive-enumeration oracles
    whose q sweep needs degrees above 3 (still tiny fields)."""
    return _cached_field(p, m, bound)
