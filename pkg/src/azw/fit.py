"""Empirical ceiling/floor verification over finite count domains.

"Bounds the sequence and attains it infinitely often" is operationalized as:
the bound holds at every point up to the domain limit, and equality holds at
at least witness_threshold points.  Every verdict records the scanned limit,
the threshold and the excluded primes, so a 'verified' is always a statement
about a declared finite scan, never a proof.

All comparisons between an integer count and a possibly irrational candidate
value go through the certified floor/ceil of the puiseux module: for an
integer A, A <= f(n) iff A <= floor(f(n)), and f(n) <= A iff ceil(f(n)) <= A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Callable, Optional

from .arith import DomainPoint, PrimePowerDomain, enumerate_domain
from .puiseux import PuiseuxPoly

VERIFIED = "verified"
BOUND_VIOLATED = "bound_violated"
INSUFFICIENT_WITNESSES = "insufficient_witnesses"
NON_INTEGRAL_AT_ONE = "non_integral_at_one"


@dataclass
class SequenceSource:
    """Deterministic integer sequence over a count domain.

    fn maps a DomainPoint to the count A_q; values are computed once and
    cached so that many candidates can be checked against one sweep.
    """

    label: str
    domain: PrimePowerDomain
    fn: Callable[[DomainPoint], int]
    _values: Optional[list[tuple[DomainPoint, int]]] = field(
        default=None, repr=False, compare=False
    )

    def values(self) -> list[tuple[DomainPoint, int]]:
        if self._values is None:
            self._values = [(pt, self.fn(pt)) for pt in enumerate_domain(self.domain)]
        return self._values


@dataclass(frozen=True)
class Violation:
    n: int
    count: int
    candidate_value: str


@dataclass(frozen=True)
class Verdict:
    status: str
    mode: str  # 'ceiling' or 'floor'
    witnesses: tuple[int, ...]
    violation: Optional[Violation]
    scanned_limit: int
    witness_threshold: int
    puiseux_mode: bool
    source_label: str
    excluded: frozenset[int]

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def summary(self) -> str:
        head = f"{self.mode} candidate on {self.source_label}: {self.status}"
        tail = (
            f" (witnesses {len(self.witnesses)}/{self.witness_threshold},"
            f" limit {self.scanned_limit},"
            f" excluded {sorted(self.excluded) or '{}'})"
        )
        if self.violation:
            v = self.violation
            tail += f"; violated at n={v.n}: count {v.count} vs f(n)={v.candidate_value}"
        return head + tail


def _value_descriptor(f: PuiseuxPoly, n: int) -> str:
    if f.is_ordinary:
        v = f.eval_exact(n)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    lo, hi = f._interval(n, 64)
    return f"[{float(lo):.6f}, {float(hi):.6f}]"


def _scan(
    f: PuiseuxPoly,
    src: SequenceSource,
    mode: str,
    witness_threshold: int,
    puiseux_mode: bool,
) -> Verdict:
    def verdict(status, witnesses=(), violation=None):
        return Verdict(
            status=status,
            mode=mode,
            witnesses=tuple(witnesses),
            violation=violation,
            scanned_limit=src.domain.limit,
            witness_threshold=witness_threshold,
            puiseux_mode=puiseux_mode,
            source_label=src.label,
            excluded=src.domain.excluded,
        )

    if puiseux_mode:
        _, integral = f.value_at_one()
        if not integral:
            return verdict(NON_INTEGRAL_AT_ONE)

    witnesses: list[int] = []
    for pt, count in src.values():
        n = pt.q
        if mode == "ceiling":
            fl = f.floor_eval(n)
            if count > fl:  # count <= f(n) fails
                return verdict(
                    BOUND_VIOLATED, witnesses, Violation(n, count, _value_descriptor(f, n))
                )
            hit = fl == count and (puiseux_mode or f.ceil_eval(n) == count)
        else:
            cl = f.ceil_eval(n)
            if count < cl:  # f(n) <= count fails
                return verdict(
                    BOUND_VIOLATED, witnesses, Violation(n, count, _value_descriptor(f, n))
                )
            hit = cl == count and (puiseux_mode or f.floor_eval(n) == count)
        if hit:
            witnesses.append(n)
    if len(witnesses) >= witness_threshold:
        return verdict(VERIFIED, witnesses)
    return verdict(INSUFFICIENT_WITNESSES, witnesses)


def verify_ceiling(
    f: PuiseuxPoly,
    src: SequenceSource,
    witness_threshold: int = 3,
    puiseux_mode: bool = False,
) -> Verdict:
    """Check f(n) >= A_n everywhere and collect equality witnesses.

    In puiseux mode a witness is floor(f(n)) = A_n and f(1) must be an
    integer; otherwise a witness is exact equality f(n) = A_n.
    """
    return _scan(f, src, "ceiling", witness_threshold, puiseux_mode)


def verify_floor(
    f: PuiseuxPoly,
    src: SequenceSource,
    witness_threshold: int = 3,
    puiseux_mode: bool = False,
) -> Verdict:
    """Dual of verify_ceiling: f(n) <= A_n, witnesses ceil(f(n)) = A_n."""
    return _scan(f, src, "floor", witness_threshold, puiseux_mode)


@dataclass(frozen=True)
class LinearCandidateReport:
    c: int
    ceiling: Verdict
    floor: Verdict


def reject_linear_family(
    src: SequenceSource,
    c_lo: int,
    c_hi: int,
    witness_threshold: int = 3,
) -> list[LinearCandidateReport]:
    """Run both envelope checks for every candidate t + c, c in [c_lo, c_hi].

    Reports the concrete failure per candidate (a violating point, or a
    witness shortfall); a candidate may also come back verified, which is the
    caller's signal that an envelope exists at this scale.  No claim beyond
    the scanned limit is made.
    """
    if src.domain.kind == "naturals_from_2":
        raise ValueError("linear-family rejection runs on prime-based domains")
    out = []
    for c in range(c_lo, c_hi + 1):
        cand = PuiseuxPoly.linear(c)
        out.append(
            LinearCandidateReport(
                c=c,
                ceiling=verify_ceiling(cand, src, witness_threshold),
                floor=verify_floor(cand, src, witness_threshold),
            )
        )
    return out


@dataclass(frozen=True)
class SearchReport:
    ceiling: tuple[PuiseuxPoly, ...]
    floor: tuple[PuiseuxPoly, ...]
    ceiling_ambiguous: bool  # >1 survivor: scanned limit too small to separate
    floor_ambiguous: bool
    candidates_tested: int
    scanned_limit: int
    witness_threshold: int


def search_polynomial(
    src: SequenceSource,
    degree: int,
    coeff_lo: int,
    coeff_hi: int,
    witness_threshold: int = 3,
) -> SearchReport:
    """Exhaustively verify every integer-coefficient polynomial of degree at
    most `degree` with coefficients in [coeff_lo, coeff_hi].

    At a sufficient limit at most one candidate per mode can survive (two
    verified envelopes of the same kind would have to cross infinitely
    often); several survivors are reported with the ambiguity flag set.
    """
    if degree < 0 or degree > 3:
        raise ValueError("search supports degrees 0..3")
    width = coeff_hi - coeff_lo + 1
    if width < 1 or width ** (degree + 1) > 10**6:
        raise ValueError("coefficient box too large (limit 10^6 combinations)")
    ceilings: list[PuiseuxPoly] = []
    floors: list[PuiseuxPoly] = []
    tested = 0
    for coeffs in iter_product(range(coeff_lo, coeff_hi + 1), repeat=degree + 1):
        cand = PuiseuxPoly([(c, k) for k, c in enumerate(coeffs)])
        tested += 1
        if verify_ceiling(cand, src, witness_threshold).verified:
            ceilings.append(cand)
        if verify_floor(cand, src, witness_threshold).verified:
            floors.append(cand)
    return SearchReport(
        ceiling=tuple(ceilings),
        floor=tuple(floors),
        ceiling_ambiguous=len(ceilings) > 1,
        floor_ambiguous=len(floors) > 1,
        candidates_tested=tested,
        scanned_limit=src.domain.limit,
        witness_threshold=witness_threshold,
    )
