"""Exact base-p digit arithmetic for rationals in the unit interval.

Everything here follows the *non-terminating* digit convention: an expansion
that would terminate is rewritten with an infinite tail of (p-1) digits, so
every rational in (0, 1] has a unique digit sequence and 1 = 0.(p-1)(p-1)...
in every base.  With that convention the e-th truncation t of alpha satisfies
t < alpha <= t + p**-e, which is the inequality all downstream threshold
bounds lean on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SearchExhaustedError

ZERO = Fraction(0)
ONE = Fraction(1)

PRIME_SEARCH_CEILING = 10**6


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (fine for desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"base must be prime, got {p!r}")


def _check_unit_interval(alpha: Fraction, where: str) -> Fraction:
    alpha = Fraction(alpha)
    if alpha < 0 or alpha > 1:
        raise ValueError(f"{where}: argument {alpha} outside [0, 1]")
    return alpha


def digit(alpha: Fraction, p: int, e: int) -> int:
    """e-th digit of alpha in base p, non-terminating convention.

    digit(alpha, p, 0) = 0 and digit(0, p, e) = 0 by convention.
    """
    _check_prime(p)
    alpha = _check_unit_interval(alpha, "digit")
    if e < 0:
        raise ValueError(f"digit index must be >= 0, got {e}")
    if e == 0 or alpha == 0:
        return 0
    # p**e * truncate(alpha, p, e) = ceil(p**e * alpha) - 1, so the digit is
    # the difference of consecutive scaled truncations.
    hi = math.ceil(alpha * p**e) - 1
    lo = math.ceil(alpha * p ** (e - 1)) - 1
    return hi - p * lo


def truncate(alpha: Fraction, p: int, e: int) -> Fraction:
    """Sum of the first e digit terms of alpha in base p.

    Satisfies truncate(alpha, p, e) < alpha <= truncate(alpha, p, e) + p**-e
    for alpha in (0, 1].  truncate(0, p, e) = 0 and truncate(alpha, p, 0) = 0.
    """
    _check_prime(p)
    alpha = _check_unit_interval(alpha, "truncate")
    if e < 0:
        raise ValueError(f"truncation index must be >= 0, got {e}")
    if e == 0 or alpha == 0:
        return ZERO
    q = p**e
    return Fraction(math.ceil(alpha * q) - 1, q)


def truncate_vector(alphas: Sequence[Fraction], p: int, e: int) -> tuple[Fraction, ...]:
    return tuple(truncate(a, p, e) for a in alphas)


@dataclass(frozen=True)
class DigitStream:
    """Eventually periodic digit sequence of a rational in [0, 1].

    The sequence is preperiod followed by period repeated forever; period is
    never empty.  Reconstructing the value from the digits is exact.
    """

    base: int
    value: Fraction
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit(self, e: int) -> int:
        """e-th digit, 1-indexed; e = 0 gives 0 by convention."""
        if e <= 0:
            return 0
        if e <= len(self.preperiod):
            return self.preperiod[e - 1]
        return self.period[(e - len(self.preperiod) - 1) % len(self.period)]

    def evaluate(self) -> Fraction:
        """Exact value of the (infinite) digit sequence."""
        p = self.base
        pre = ZERO
        for i, a in enumerate(self.preperiod, start=1):
            pre += Fraction(a, p**i)
        n = 0
        for a in self.period:
            n = n * p + a
        tail = Fraction(n, p ** len(self.period) - 1)
        return pre + tail / p ** len(self.preperiod)


def digit_stream(alpha: Fraction, p: int) -> DigitStream:
    """Finite presentation of the non-terminating base-p expansion of alpha.

    Digits are produced from the remainder orbit r -> p*r - digit, where the
    remainders live in (0, 1] for alpha > 0 (this is what encodes the
    non-terminating convention); the orbit revisits a state after at most
    denominator(alpha) + 1 steps.
    """
    _check_prime(p)
    alpha = _check_unit_interval(alpha, "digit_stream")
    digits: list[int] = []
    seen: dict[Fraction, int] = {}
    state = alpha
    while state not in seen:
        seen[state] = len(digits)
        if state == 0:
            a = 0
        else:
            a = math.ceil(p * state) - 1
        digits.append(a)
        state = p * state - a
    start = seen[state]
    return DigitStream(
        base=p,
        value=alpha,
        preperiod=tuple(digits[:start]),
        period=tuple(digits[start:]),
    )


@dataclass(frozen=True)
class CarryProfile:
    """Result of the carry-free prefix scan for a tuple of rationals.

    L is the largest index e such that the digit sums at every position
    d <= e stay below the base (None means the digits add without carrying
    forever).  L >= 0 always, by the digit(., 0) = 0 convention.
    """

    base: int
    inputs: tuple[Fraction, ...]
    L: int | None

    @property
    def carry_free(self) -> bool:
        return self.L is None


def carry_free_prefix(alphas: Sequence[Fraction], p: int) -> CarryProfile:
    """Longest prefix on which the digits of the alphas add without carrying.

    Scans one aligned preperiod-plus-period window of the joint digit
    streams; the digit sums repeat afterwards, so the scan decides whether
    the prefix is finite or infinite.
    """
    _check_prime(p)
    values = tuple(Fraction(a) for a in alphas)
    streams = [digit_stream(a, p) for a in values]
    pre = max((len(s.preperiod) for s in streams), default=0)
    per = math.lcm(*(len(s.period) for s in streams)) if streams else 1
    for e in range(1, pre + per + 1):
        if sum(s.digit(e) for s in streams) > p - 1:
            return CarryProfile(base=p, inputs=values, L=e - 1)
    return CarryProfile(base=p, inputs=values, L=None)


def multinomial_mod_p(parts: Sequence[int], p: int) -> int:
    """(sum parts)! / prod(parts!) mod p, computed digit-wise (Lucas).

    The residue is zero exactly when some base-p digit position carries.
    """
    _check_prime(p)
    ks = list(parts)
    if not ks:
        raise ValueError("parts must be nonempty")
    if any(not isinstance(k, int) or k < 0 for k in ks):
        raise ValueError(f"parts must be nonnegative integers, got {parts!r}")
    result = 1
    while any(ks):
        ds = [k % p for k in ks]
        s = sum(ds)
        if s > p - 1:
            return 0
        level = math.factorial(s)
        for d in ds:
            level //= math.factorial(d)
        result = result * (level % p) % p
        ks = [k // p for k in ks]
    return result


def multinomial_exact(parts: Sequence[int]) -> int:
    """Exact multinomial coefficient (sum parts)! / prod(parts!)."""
    total = sum(parts)
    out = 1
    rest = total
    for k in parts:
        out *= math.comb(rest, k)
        rest -= k
    return out


def primes_in_progression(
    d: int, count: int, ceiling: int = PRIME_SEARCH_CEILING
) -> list[int]:
    """The `count` smallest primes congruent to 1 mod d.

    Dirichlet guarantees termination; the search still enforces `ceiling`
    and reports exhaustion explicitly rather than looping forever.
    """
    if d < 1:
        raise ValueError(f"modulus must be >= 1, got {d}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    found: list[int] = []
    if d == 1:
        candidates = range(2, ceiling + 1)
    else:
        candidates = range(1 + d, ceiling + 1, d)
    for n in candidates:
        if is_prime(n):
            found.append(n)
            if len(found) == count:
                return found
    raise SearchExhaustedError(
        f"found only {len(found)} of {count} primes = 1 mod {d} below {ceiling}"
    )


def format_rational(q: Fraction) -> str:
    """Canonical reduced a/b text form (plain integer when b = 1)."""
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    """Inverse of format_rational; accepts 'a/b' and plain integers."""
    return Fraction(text.strip())
