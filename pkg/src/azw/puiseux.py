"""Puiseux polynomials: finite sums a*t^e with rational a and rational e >= 0.

Values at positive integers are pinned down exactly.  f(q) is a polynomial
expression in q^(1/d) (d the common exponent denominator, positive real
branch), so it is either exactly rational -- decided by a radical
decomposition, never by precision -- or irrational, in which case
scaled-integer interval arithmetic separates it from every integer after
finitely many doublings.  floor_eval/ceil_eval therefore never return a
wrong answer and never rely on floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

from .arith import factorize, iroot

_MAX_BITS = 1 << 16  # unreachable: past 512 bits we already know f(q) is irrational


class PuiseuxPoly:
    """Immutable canonical form: terms (coeff, exponent) by decreasing exponent,
    no zero coefficients, exponents distinct and >= 0."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict[Fraction, Fraction] = {}
        for coeff, exp in terms:
            c = Fraction(coeff)
            e = Fraction(exp)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            merged[e] = merged.get(e, Fraction(0)) + c
        canon = tuple(
            (c, e) for e, c in sorted(merged.items(), reverse=True) if c != 0
        )
        object.__setattr__(self, "terms", canon)

    def __setattr__(self, *_):
        raise AttributeError("PuiseuxPoly is immutable")

    # --- construction helpers -------------------------------------------

    @classmethod
    def zero(cls) -> "PuiseuxPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "PuiseuxPoly":
        return cls([(Fraction(c), Fraction(0))])

    @classmethod
    def t_power(cls, e, coeff=1) -> "PuiseuxPoly":
        return cls([(Fraction(coeff), Fraction(e))])

    @classmethod
    def linear(cls, c) -> "PuiseuxPoly":
        """t + c."""
        return cls([(Fraction(1), Fraction(1)), (Fraction(c), Fraction(0))])

    # --- ring-fragment operations ---------------------------------------

    def __add__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return PuiseuxPoly(self.terms + other.terms)

    def __neg__(self) -> "PuiseuxPoly":
        return PuiseuxPoly([(-c, e) for c, e in self.terms])

    def __sub__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return self + (-other)

    def scale(self, c) -> "PuiseuxPoly":
        c = Fraction(c)
        if c == 0:
            return PuiseuxPoly()
        return PuiseuxPoly([(a * c, e) for a, e in self.terms])

    def __eq__(self, other) -> bool:
        return isinstance(other, PuiseuxPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"PuiseuxPoly({format_puiseux(self)!r})"

    # --- structure --------------------------------------------------------

    @property
    def exponent_denominator(self) -> int:
        """Least common denominator d of all exponents (1 for the zero poly)."""
        return reduce(math.lcm, (e.denominator for _, e in self.terms), 1)

    @property
    def is_ordinary(self) -> bool:
        return self.exponent_denominator == 1

    def leading(self) -> tuple[Fraction, Fraction]:
        if not self.terms:
            return Fraction(0), Fraction(0)
        return self.terms[0]

    def value_at_one(self) -> tuple[Fraction, bool]:
        """Sum of coefficients, and whether it is an integer."""
        s = sum((c for c, _ in self.terms), Fraction(0))
        return s, s.denominator == 1

    # --- exact evaluation --------------------------------------------------

    def eval_exact(self, q: int) -> Fraction:
        """Exact rational value at q; q must be a perfect d-th power."""
        if q < 1:
            raise ValueError("evaluation domain is q >= 1")
        d = self.exponent_denominator
        root = iroot(q, d)
        if root**d != q:
            raise ValueError(f"{q} is not a perfect {d}-th power")
        total = Fraction(0)
        for c, e in self.terms:
            n = e.numerator * (d // e.denominator)
            total += c * root**n
        return total

    def _rational_value(self, q: int) -> Fraction | None:
        """f(q) as a Fraction when it is rational, else None.

        Write q = w^g with w not a perfect power; each t^e contributes a
        rational multiple of w^(r/D) with 0 <= r/D < 1.  Those fractional
        powers of w are linearly independent over Q, so f(q) is rational
        exactly when every fractional residue class cancels.
        """
        if q == 1:
            return self.value_at_one()[0]
        fact = factorize(q)
        g = reduce(math.gcd, (e for _, e in fact))
        w = 1
        for p, e in fact:
            w *= p ** (e // g)
        buckets: dict[Fraction, Fraction] = {}
        for c, e in self.terms:
            beta = e * g  # exponent of w
            i, r = divmod(beta.numerator, beta.denominator)
            key = Fraction(r, beta.denominator)
            buckets[key] = buckets.get(key, Fraction(0)) + c * w**i
        for key, coeff in buckets.items():
            if key != 0 and coeff != 0:
                return None
        return buckets.get(Fraction(0), Fraction(0))

    def _interval(self, q: int, bits: int) -> tuple[Fraction, Fraction]:
        """Rational lo <= f(q) <= hi from per-term scaled-integer root bounds."""
        lo = hi = Fraction(0)
        scale = 1 << bits
        for c, e in self.terms:
            if e.denominator == 1:
                v = c * q**e.numerator
                lo += v
                hi += v
                continue
            num, den = e.numerator, e.denominator
            radicand = q**num << (den * bits)
            r = iroot(radicand, den)  # floor(q^(num/den) * 2^bits)
            t_lo = Fraction(r, scale)
            t_hi = t_lo if r**den == radicand else Fraction(r + 1, scale)
            if c > 0:
                lo += c * t_lo
                hi += c * t_hi
            else:
                lo += c * t_hi
                hi += c * t_lo
        return lo, hi

    def floor_eval(self, q: int) -> int:
        """Exact floor of f(q) for integer q >= 1."""
        return self._rounded(q, math.floor)

    def ceil_eval(self, q: int) -> int:
        """Exact ceiling of f(q) for integer q >= 1."""
        return self._rounded(q, math.ceil)

    def _int_value(self, q: int) -> int | None:
        """Exact value for ordinary integer-coefficient polynomials."""
        acc = 0
        for c, e in self.terms:
            if c.denominator != 1 or e.denominator != 1:
                return None
            acc += c.numerator * q**e.numerator
        return acc

    def _rounded(self, q: int, rnd) -> int:
        if q < 1:
            raise ValueError("evaluation domain is q >= 1")
        if self.is_ordinary:
            v = self._int_value(q)
            if v is not None:
                return v
            return rnd(self.eval_exact(q))
        bits = 64
        checked_exact = False
        while bits <= _MAX_BITS:
            lo, hi = self._interval(q, bits)
            if rnd(lo) == rnd(hi):
                return rnd(lo)
            if bits >= 512 and not checked_exact:
                exact = self._rational_value(q)
                if exact is not None:
                    return rnd(exact)
                checked_exact = True  # irrational: intervals must resolve
            bits *= 2
        raise RuntimeError(f"interval refinement did not resolve at q={q}")


def add(f: PuiseuxPoly, g: PuiseuxPoly) -> PuiseuxPoly:
    return f + g


def scale(f: PuiseuxPoly, c) -> PuiseuxPoly:
    return f.scale(c)


def expand_binomial(t_factor: int, r: int) -> PuiseuxPoly:
    """T*(t-1)^r expanded into canonical form."""
    if r < 0:
        raise ValueError("power must be non-negative")
    terms = [
        (Fraction(t_factor * (-1) ** (r - k) * math.comb(r, k)), Fraction(k))
        for k in range(r + 1)
    ]
    return PuiseuxPoly(terms)


def eval_exact(f: PuiseuxPoly, q: int) -> Fraction:
    return f.eval_exact(q)


def floor_eval(f: PuiseuxPoly, q: int) -> int:
    return f.floor_eval(q)


def ceil_eval(f: PuiseuxPoly, q: int) -> int:
    return f.ceil_eval(q)


def value_at_one(f: PuiseuxPoly) -> tuple[Fraction, bool]:
    return f.value_at_one()


# --- text form -------------------------------------------------------------

_TERM_RE = re.compile(
    r"""^
    (?:\(\s*(?P<pc>\d+)\s*/\s*(?P<pd>\d+)\s*\)   # (a/b) coefficient
      |(?P<c>\d+(?:/\d+)?)                       # bare integer or a/b
    )?
    \s*\*?\s*
    (?P<t>t
      (?:\^(?:
          (?P<ie>\d+)
         |\{\s*(?P<be>\d+(?:\s*/\s*\d+)?)\s*\}
         |\(\s*(?P<pe>\d+(?:\s*/\s*\d+)?)\s*\)
      ))?
    )?
    $""",
    re.VERBOSE,
)


def _split_top_level(text: str) -> list[tuple[int, str]]:
    """Split on +/- outside braces/parens; returns (sign, chunk) pairs."""
    chunks = []
    depth = 0
    sign = 1
    cur = []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and any(c.strip() for c in cur):
            chunks.append((sign, "".join(cur).strip()))
            sign = 1 if ch == "+" else -1
            cur = []
        elif depth == 0 and ch in "+-" and not any(c.strip() for c in cur):
            sign = sign if ch == "+" else -sign
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        chunks.append((sign, tail))
    return chunks


def parse_puiseux(text: str) -> PuiseuxPoly:
    """Parse sums of terms like '3t^2', '2t^{1/2}', 't^(3/2)', '-1'."""
    text = text.strip()
    if text.endswith(("+", "-")):
        raise ValueError(f"dangling operator in {text!r}")
    if not text or text == "0":
        return PuiseuxPoly()
    terms = []
    for sign, chunk in _split_top_level(text):
        m = _TERM_RE.match(chunk.replace(" ", ""))
        if not m or (m.group("c") is None and m.group("pc") is None and m.group("t") is None):
            raise ValueError(f"cannot parse term {chunk!r}")
        if m.group("pc") is not None:
            coeff = Fraction(int(m.group("pc")), int(m.group("pd")))
        elif m.group("c") is not None:
            coeff = Fraction(m.group("c"))
        else:
            coeff = Fraction(1)
        if m.group("t") is None:
            exp = Fraction(0)
        elif m.group("ie") is not None:
            exp = Fraction(int(m.group("ie")))
        elif m.group("be") is not None:
            exp = Fraction(m.group("be").replace(" ", ""))
        elif m.group("pe") is not None:
            exp = Fraction(m.group("pe").replace(" ", ""))
        else:
            exp = Fraction(1)
        terms.append((sign * coeff, exp))
    return PuiseuxPoly(terms)


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


def format_puiseux(f: PuiseuxPoly) -> str:
    """Canonical text form; fractional exponents printed in braces."""
    if not f.terms:
        return "0"
    parts = []
    for i, (c, e) in enumerate(f.terms):
        mag = abs(c)
        if e == 0:
            body = _coeff_str(mag)
        else:
            if e == 1:
                var = "t"
            elif e.denominator == 1:
                var = f"t^{e.numerator}"
            else:
                var = f"t^{{{e.numerator}/{e.denominator}}}"
            body = var if mag == 1 else f"{_coeff_str(mag)}{var}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
