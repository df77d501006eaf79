"""Sparse multivariate polynomial arithmetic over F_p and threshold data.

The reduction everything leans on: a monomial lies in the e-th Frobenius
power of the maximal ideal iff some exponent reaches p**e, so reducing a
polynomial modulo that ideal just drops such terms.  Because the ideal is
closed under multiplication, powers can be reduced after every single
multiply, which keeps intermediate supports inside [0, p**e)^m.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import ratlp
from .errors import BudgetExceededError, IntegralityError, ReductionError
from .polygeo import MonomialSet, splitting_polytope

DEFAULT_TERM_BUDGET = 5_000_000


class TermBudget:
    """Monotone term counter shared by the expansion routines.

    charge() is thread-safe; exhaustion raises instead of truncating, so a
    runaway expansion can never silently produce a wrong answer.
    """

    def __init__(self, limit: int = DEFAULT_TERM_BUDGET):
        if limit < 1:
            raise ValueError(f"budget must be positive, got {limit}")
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def charge(self, amount: int) -> None:
        with self._lock:
            self.used += amount
            if self.used > self.limit:
                raise BudgetExceededError(
                    f"term budget exhausted ({self.used} > {self.limit})"
                )


class FpPoly:
    """Polynomial over F_p as a finite map exponent-vector -> nonzero residue."""

    __slots__ = ("p", "num_vars", "terms")

    def __init__(self, p: int, num_vars: int, terms: Mapping[tuple[int, ...], int]):
        self.p = p
        self.num_vars = num_vars
        clean: dict[tuple[int, ...], int] = {}
        for k, c in terms.items():
            c %= p
            if c == 0:
                continue
            k = tuple(int(a) for a in k)
            if len(k) != num_vars or any(a < 0 for a in k):
                raise ValueError(f"bad exponent vector {k} for {num_vars} variables")
            clean[k] = c
        self.terms = clean

    @classmethod
    def one(cls, p: int, num_vars: int) -> "FpPoly":
        return cls(p, num_vars, {(0,) * num_vars: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[tuple[int, ...]]:
        return set(self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.num_vars, 0)

    def multiply(self, other: "FpPoly", budget: TermBudget | None = None) -> "FpPoly":
        if self.p != other.p or self.num_vars != other.num_vars:
            raise ValueError("cannot multiply polynomials over different rings")
        p = self.p
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = (get(k, 0) + c1 * c2) % p
        if budget is not None:
            budget.charge(len(out))
        result = FpPoly.__new__(FpPoly)
        result.p = p
        result.num_vars = self.num_vars
        result.terms = {k: c for k, c in out.items() if c}
        return result

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        return self.multiply(other)

    def frobenius(self) -> "FpPoly":
        # (sum c x^k)^p = sum c^p x^(pk) = sum c x^(pk) over F_p
        result = FpPoly.__new__(FpPoly)
        result.p = self.p
        result.num_vars = self.num_vars
        result.terms = {
            tuple(a * self.p for a in k): c for k, c in self.terms.items()
        }
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.num_vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"FpPoly(p={self.p}, num_vars={self.num_vars}, terms={self.terms!r})"


class QPoly:
    """Polynomial with rational coefficients, same sparse shape as FpPoly."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping[tuple[int, ...], Fraction]):
        self.num_vars = num_vars
        clean: dict[tuple[int, ...], Fraction] = {}
        for k, c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            k = tuple(int(a) for a in k)
            if len(k) != num_vars or any(a < 0 for a in k):
                raise ValueError(f"bad exponent vector {k} for {num_vars} variables")
            clean[k] = c
        self.terms = clean

    def support(self) -> set[tuple[int, ...]]:
        return set(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QPoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"QPoly(num_vars={self.num_vars}, terms={self.terms!r})"


def reduce_mod_p(f: QPoly, p: int, preserve_support: bool = True) -> FpPoly:
    """Coefficient-wise reduction num * den^-1 mod p.

    With preserve_support (the default) a coefficient that vanishes mod p is
    an error: the mod-p models downstream are only meaningful when they keep
    the full set of supporting monomials.
    """
    terms: dict[tuple[int, ...], int] = {}
    for k, c in f.terms.items():
        if c.denominator % p == 0:
            raise ReductionError(
                f"coefficient {c} has denominator divisible by {p}"
            )
        r = c.numerator * pow(c.denominator, -1, p) % p
        if r == 0:
            if preserve_support:
                raise ReductionError(
                    f"support collapse: coefficient {c} of {k} vanishes mod {p}"
                )
            continue
        terms[k] = r
    return FpPoly(p, f.num_vars, terms)


def frobenius_reduce(g: FpPoly, e: int) -> FpPoly:
    """Canonical representative of g modulo (x_1^{p^e}, ..., x_m^{p^e})."""
    if e < 1:
        raise ValueError(f"Frobenius level must be >= 1, got {e}")
    q = g.p**e
    result = FpPoly.__new__(FpPoly)
    result.p = g.p
    result.num_vars = g.num_vars
    result.terms = {k: c for k, c in g.terms.items() if all(a < q for a in k)}
    return result


def _check_nu_input(f: FpPoly) -> None:
    if f.is_zero():
        raise ValueError("nu is undefined for the zero polynomial")
    if f.constant_term() != 0:
        raise ValueError("nu requires f(0) = 0 (no constant term)")


def nu(f: FpPoly, e: int, budget: TermBudget | None = None) -> int:
    """Largest a with f^a outside the e-th Frobenius power of (x_1,...,x_m).

    Maintains f^a reduced after each multiplication; since the Frobenius
    power is an ideal, reduction commutes with further multiplication, and
    once the reduced power hits zero it stays zero.
    """
    _check_nu_input(f)
    if e < 1:
        raise ValueError(f"level must be >= 1, got {e}")
    if budget is None:
        budget = TermBudget()
    q = f.p**e
    r = frobenius_reduce(f, e)
    if r.is_zero():
        return 0
    value = 1
    for a in range(2, q):
        r = frobenius_reduce(r.multiply(f, budget), e)
        if r.is_zero():
            break
        value = a
    return value


@dataclass(frozen=True)
class NuTable:
    p: int
    e_max: int
    values: tuple[int, ...]

    def check_monotone(self) -> bool:
        return all(
            self.p * self.values[i] <= self.values[i + 1]
            for i in range(len(self.values) - 1)
        )


def _nu_levels(f: FpPoly, e_max: int, budget: TermBudget):
    """Yield (e, nu(e)) for e = 1..e_max, sharing work across levels.

    Between levels the running power jumps by a Frobenius twist: if r is
    f^a reduced at level e, then r^p is f^(p*a) reduced at level e+1 (p-th
    powers distribute over sums in characteristic p and send the level-e
    Frobenius ideal into the level-(e+1) one).  Since p*nu(e) <= nu(e+1),
    the jump never skips the answer; it only skips exponents already known
    to stay outside the ideal.
    """
    p = f.p
    power = FpPoly.one(p, f.num_vars)  # f^prev reduced at the previous level
    prev = 0
    for e in range(1, e_max + 1):
        q = p**e
        # nonzero: power has exponents < p^(e-1), so the twist stays < p^e
        r = frobenius_reduce(power.frobenius(), e)
        a = p * prev
        best = a
        last_good = r
        while a < q - 1:
            r = frobenius_reduce(r.multiply(f, budget), e)
            a += 1
            if r.is_zero():
                break
            best = a
            last_good = r
        yield e, best
        power = last_good
        prev = best


def nu_table(f: FpPoly, e_max: int, budget: TermBudget | None = None) -> NuTable:
    """nu at every level 1..e_max in one sweep (see _nu_levels)."""
    _check_nu_input(f)
    if e_max < 1:
        raise ValueError(f"e_max must be >= 1, got {e_max}")
    if budget is None:
        budget = TermBudget()
    values = tuple(v for _, v in _nu_levels(f, e_max, budget))
    return NuTable(p=f.p, e_max=e_max, values=values)


def certify_lower(
    f: FpPoly, lam: Fraction, e: int, budget: TermBudget | None = None
) -> bool:
    """Decide whether f^((p^e - 1) * lam) survives the level-e reduction.

    For rational lam in [0, 1] with (p^e - 1) * lam integral, a surviving
    power proves the threshold of f is >= lam, and a vanishing one proves
    it is < lam.
    """
    _check_nu_input(f)
    lam = Fraction(lam)
    if lam < 0 or lam > 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    if e < 1:
        raise ValueError(f"level must be >= 1, got {e}")
    t = (f.p**e - 1) * lam
    if t.denominator != 1:
        raise IntegralityError(
            f"(p^e - 1) * lambda = {t} is not an integer (p={f.p}, e={e}, lambda={lam})"
        )
    t = t.numerator
    if t == 0:
        return True
    if budget is None:
        budget = TermBudget()
    r = frobenius_reduce(f, e)
    for _ in range(t - 1):
        if r.is_zero():
            return False
        r = frobenius_reduce(r.multiply(f, budget), e)
    return not r.is_zero()


def fpt_is_one(f: FpPoly, budget: TermBudget | None = None) -> bool:
    """Threshold equals 1 iff f^(p-1) survives level-1 reduction."""
    return certify_lower(f, Fraction(1), 1, budget)


def nu_ideal(ms: MonomialSet, p: int, e: int) -> int:
    """Largest r with the ms-generated ideal's r-th power outside level e.

    Equals max |k| over lattice points k >= 0 with E k <= (p^e - 1) * 1.
    Solved by depth-first search over the columns with residual capacities;
    the LP relaxation value caps the search (stop as soon as its floor is
    attained) and a per-node column bound prunes the rest.
    """
    if e < 1:
        raise ValueError(f"level must be >= 1, got {e}")
    cap = p**e - 1
    n = ms.num_monomials
    cols = ms.monomials
    m = ms.num_vars
    lp_out = ratlp.maximize(splitting_polytope(ms))
    lp_floor = math.floor(lp_out.value * cap)

    # Per-column ceiling given a residual capacity vector.
    def col_bound(j: int, residual: Sequence[int]) -> int:
        return min(residual[i] // cols[j][i] for i in range(m) if cols[j][i] > 0)

    best = 0

    def rec(j: int, residual: list[int], total: int) -> None:
        nonlocal best
        if best >= lp_floor:
            return
        if j == n:
            if total > best:
                best = total
            return
        remaining_bound = total + sum(
            col_bound(jj, residual) for jj in range(j, n)
        )
        if remaining_bound <= best:
            return
        ub = col_bound(j, residual)
        for k in range(ub, -1, -1):
            new_res = [residual[i] - k * cols[j][i] for i in range(m)]
            rec(j + 1, new_res, total + k)
            if best >= lp_floor:
                return

    rec(0, [cap] * m, 0)
    return best


@dataclass(frozen=True)
class Certificate:
    """A replayable splitting certificate: f^((p^e - 1) * lam) survives level e."""

    e: int
    lam: Fraction
    verified: bool


@dataclass
class ThresholdReport:
    """Certified threshold output.

    kind EXACT carries the exact value; LOWER_BOUND carries a proved lower
    bound; BRACKET carries only the interval pinned by the nu table.  The
    bracket, when present, always contains the true threshold: it lies in
    (low, high] with low = max nu(e)/p^e and high = min (nu(e)+1)/p^e.
    """

    kind: str  # EXACT | LOWER_BOUND | BRACKET
    value: Fraction | None = None
    bracket: tuple[Fraction, Fraction] | None = None
    nu_values: NuTable | None = None
    certificates: list[Certificate] = field(default_factory=list)
    budget_exhausted: bool = False
    notes: list[str] = field(default_factory=list)


EXACT = "EXACT"
LOWER_BOUND = "LOWER_BOUND"
BRACKET = "BRACKET"


def bracket(f: FpPoly, e_max: int, budget: TermBudget | None = None) -> ThresholdReport:
    """Two-sided threshold bracket from the nu table up to e_max.

    On budget exhaustion the report carries the levels that did complete and
    budget_exhausted is set; nothing is silently truncated.
    """
    if e_max < 1:
        raise ValueError(f"e_max must be >= 1, got {e_max}")
    if budget is None:
        budget = TermBudget()
    _check_nu_input(f)
    p = f.p
    values: list[int] = []
    exhausted = False
    try:
        for _, v in _nu_levels(f, e_max, budget):
            values.append(v)
    except BudgetExceededError:
        exhausted = True
    if not values:
        return ThresholdReport(
            kind=BRACKET,
            budget_exhausted=True,
            notes=["term budget exhausted before any nu level completed"],
        )
    low = max(Fraction(v, p**e) for e, v in enumerate(values, start=1))
    high = min(Fraction(v + 1, p**e) for e, v in enumerate(values, start=1))
    report = ThresholdReport(
        kind=BRACKET,
        bracket=(low, high),
        nu_values=NuTable(p=p, e_max=len(values), values=tuple(values)),
        budget_exhausted=exhausted,
    )
    if exhausted:
        report.notes.append(
            f"term budget exhausted; bracket uses levels 1..{len(values)} only"
        )
    return report
