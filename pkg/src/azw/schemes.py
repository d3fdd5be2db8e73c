"""Closed-form point counts and envelopes for the explicit affine families:
punctured lines A^1 minus {0..n-1}, punctured tori G_m minus mu_{n-1}, and
Pell conics of discriminant D, each backed by a brute-force field oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import fit
from .arith import (
    ORACLE_FIELD_BOUND,
    PrimePowerDomain,
    enumeration_field,
    factorize,
    is_prime,
    isqrt,
    legendre,
)
from .puiseux import PuiseuxPoly


def _check_prime_power(p: int, m: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")


def _smallest_prime_not_in(excluded: frozenset[int]) -> int:
    p = 2
    while p in excluded:
        p += 1
        while not is_prime(p):
            p += 1
    return p


# --- punctured affine line A^1 minus {0,...,n-1} -----------------------------


def count_an(n: int, p: int, m: int) -> int:
    """#(A^1 minus first n integer sections)(F_{p^m}) = p^m - min(p, n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_prime_power(p, m)
    return p**m - min(p, n)


def count_an_oracle(n: int, p: int, m: int) -> int:
    """Enumerate F_{p^m} and drop the images of 0..n-1 (which collide mod p)."""
    fld = enumeration_field(p, m)
    removed = {fld.from_int(i) for i in range(n)}
    return sum(1 for z in fld.elements() if z not in removed)


def envelopes_an(n: int, excluded=frozenset()) -> tuple[PuiseuxPoly, PuiseuxPoly]:
    """(t - n1, t - n) with n1 = min(n, smallest non-excluded prime)."""
    s = frozenset(excluded)
    n1 = min(n, _smallest_prime_not_in(s))
    return PuiseuxPoly.linear(-n1), PuiseuxPoly.linear(-n)


# --- punctured torus G_m minus mu_{n-1} --------------------------------------


def count_gn(n: int, p: int, m: int) -> int:
    """#(G_m minus (n-1)-th roots of unity)(F_q) = (q-1) - gcd(q-1, n-1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_prime_power(p, m)
    q = p**m
    return (q - 1) - math.gcd(q - 1, n - 1)


def count_gn_oracle(n: int, p: int, m: int) -> int:
    """Enumerate units of F_{p^m} and count those with z^(n-1) != 1."""
    fld = enumeration_field(p, m)
    count = 0
    for z in fld.elements():
        if z == fld.zero:
            continue
        if fld.pow(z, n - 1) != fld.one:
            count += 1
    return count


def unit_power_census(p: int, m: int, k_max: int) -> list[int]:
    """hits[k] = #{units z of F_{p^m} : z^k = 1} for k = 1..k_max, from one
    enumeration pass with incremental powers (batched form of the oracle)."""
    fld = enumeration_field(p, m)
    hits = [0] * (k_max + 1)
    one = fld.one
    for z in fld.elements():
        if z == fld.zero:
            continue
        w = one
        for k in range(1, k_max + 1):
            w = fld.mul(w, z)
            if w == one:
                hits[k] += 1
    return hits


def envelopes_gn(n: int, excluded=frozenset()) -> tuple[PuiseuxPoly, PuiseuxPoly]:
    """(t - n2, t - n); n2 = 3 when n is odd and 2 is excluded, else 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    s = frozenset(excluded)
    n2 = 3 if (n % 2 == 1 and 2 in s) else 2
    return PuiseuxPoly.linear(-n2), PuiseuxPoly.linear(-n)


# --- Pell conics --------------------------------------------------------------


@dataclass(frozen=True)
class PellConic:
    """x^2 - (D/4)y^2 = 1 for D = 0 mod 4, x^2 + xy + ((1-D)/4)y^2 = 1 for
    D = 1 mod 4; other discriminants do not define an integral conic."""

    disc: int
    bad_primes: frozenset[int] = field(init=False)

    def __post_init__(self):
        if self.disc == 0:
            raise ValueError("discriminant must be nonzero")
        if self.disc % 4 not in (0, 1):
            raise ValueError(f"discriminant {self.disc} not 0 or 1 mod 4")
        object.__setattr__(
            self, "bad_primes", frozenset(p for p, _ in factorize(self.disc))
        )

    @property
    def is_square(self) -> bool:
        return self.disc > 0 and isqrt(self.disc) ** 2 == self.disc


def count_pell(conic: PellConic, p: int, m: int) -> int:
    """Exact point count over F_{p^m}, by the quadratic-character case split."""
    _check_prime_power(p, m)
    d = conic.disc
    q = p**m
    if p == 2:
        if d % 2 == 0:
            return q
        return q - (-1) ** ((d * d - 1) // 8 * m % 2)
    if d % p == 0:
        return 2 * q
    chi = legendre(d, p)
    return q - chi**m


@lru_cache(maxsize=None)
def _square_occurrences(p: int, m: int) -> dict:
    """element -> #{u in F_{p^m} : u^2 = element}, by enumerating u once."""
    fld = enumeration_field(p, m)
    squares: dict = {}
    for u in fld.elements():
        sq = fld.mul(u, u)
        squares[sq] = squares.get(sq, 0) + 1
    return squares


def count_pell_oracle(conic: PellConic, p: int, m: int) -> int:
    """Exhaustive solution count of the defining equation over F_{p^m}.

    For odd p the x-side is folded through a square-occurrence table built by
    enumerating the field once (completing the square for odd discriminants),
    which visits every solution without using quadratic characters.
    """
    if m > 3:
        raise ValueError("oracle supports m <= 3")
    if p**m > ORACLE_FIELD_BOUND:
        raise ValueError(f"oracle bound {ORACLE_FIELD_BOUND} exceeded")
    d = conic.disc
    fld = enumeration_field(p, m)
    if p == 2:
        if d % 4 == 0:
            c = fld.from_int(-(d // 4))

            def lhs(x, y):
                return fld.add(fld.mul(x, x), fld.mul(c, fld.mul(y, y)))

        else:
            c = fld.from_int((1 - d) // 4)

            def lhs(x, y):
                xx = fld.mul(x, x)
                xy = fld.mul(x, y)
                yy = fld.mul(c, fld.mul(y, y))
                return fld.add(fld.add(xx, xy), yy)

        return sum(1 for x in fld.elements() for y in fld.elements() if lhs(x, y) == fld.one)
    # odd p: count x solutions of u^2 = target(y) through the square table
    squares = _square_occurrences(p, m)
    if d % 4 == 0:
        offset, coeff = fld.one, fld.from_int(d // 4)  # x^2 = 1 + (D/4) y^2
    else:
        # 4*(x^2+xy+cy^2) = (2x+y)^2 - D y^2 and u = 2x+y is bijective in x
        offset, coeff = fld.from_int(4), fld.from_int(d)
    total = 0
    for y in fld.elements():
        target = fld.add(offset, fld.mul(coeff, fld.mul(y, y)))
        total += squares.get(target, 0)
    return total


def envelopes_pell(conic: PellConic, excluded=frozenset()) -> tuple[PuiseuxPoly, PuiseuxPoly]:
    """Ceiling by the four-case rule (2t / t+1 / t-1 / t), floor always t-1."""
    s = frozenset(excluded)
    odd_bad = conic.bad_primes - {2}
    if not odd_bad <= s:
        ceiling = PuiseuxPoly.t_power(1, 2)  # 2t: a ramified odd prime stays in play
    elif not conic.is_square:
        ceiling = PuiseuxPoly.linear(1)
    elif conic.bad_primes <= s:
        ceiling = PuiseuxPoly.linear(-1)
    else:  # even square discriminant with 2 still in play
        ceiling = PuiseuxPoly.t_power(1)
    return ceiling, PuiseuxPoly.linear(-1)


def qfiber_envelopes_pell(conic: PellConic) -> tuple[PuiseuxPoly, PuiseuxPoly]:
    """Generic-fiber envelopes: (t-1, t-1) for square D, else (t+1, t-1)."""
    if conic.is_square:
        return PuiseuxPoly.linear(-1), PuiseuxPoly.linear(-1)
    return PuiseuxPoly.linear(1), PuiseuxPoly.linear(-1)


# --- count sources -------------------------------------------------------------


def an_source(n: int, domain: PrimePowerDomain) -> fit.SequenceSource:
    return fit.SequenceSource(
        label=f"#A{n}(F_q)", domain=domain, fn=lambda pt: count_an(n, pt.p, pt.m)
    )


def gn_source(n: int, domain: PrimePowerDomain) -> fit.SequenceSource:
    return fit.SequenceSource(
        label=f"#G{n}(F_q)", domain=domain, fn=lambda pt: count_gn(n, pt.p, pt.m)
    )


def pell_source(conic: PellConic, domain: PrimePowerDomain) -> fit.SequenceSource:
    return fit.SequenceSource(
        label=f"#Pell(D={conic.disc})(F_q)",
        domain=domain,
        fn=lambda pt: count_pell(conic, pt.p, pt.m),
    )
