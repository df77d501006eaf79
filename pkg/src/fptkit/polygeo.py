"""Convex geometry of monomial collections.

A collection of n nonzero monomials in m variables is held as its m x n
exponent matrix.  Two polyhedra drive everything downstream:

* the splitting polytope  P = {s >= 0 : E s <= 1}  inside [0,1]^n, whose
  maximal coordinate sum equals the threshold of the monomial ideal, and
* the Newton polyhedron  N = conv(columns) + R^m_{>=0},  whose boundary
  point (1/alpha)*(1,...,1) singles out a minimal face.

The threshold is computed twice on purpose: once by simplex over P and once
by vertex enumeration reading N, so the two routes check each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import ratlp
from .errors import InvalidMonomialSetError
from .ratlp import LinearProgram, OPTIMAL

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class MonomialSet:
    """n distinct nonzero exponent vectors in m variables."""

    num_vars: int
    monomials: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise InvalidMonomialSetError(f"need at least one variable, got {self.num_vars}")
        mons = tuple(tuple(int(a) for a in v) for v in self.monomials)
        if not mons:
            raise InvalidMonomialSetError("monomial set is empty")
        for v in mons:
            if len(v) != self.num_vars:
                raise InvalidMonomialSetError(
                    f"exponent vector {v} does not have {self.num_vars} entries"
                )
            if any(a < 0 for a in v):
                raise InvalidMonomialSetError(f"negative exponent in {v}")
            if all(a == 0 for a in v):
                raise InvalidMonomialSetError("constant monomial (zero exponent vector)")
        if len(set(mons)) != len(mons):
            raise InvalidMonomialSetError("duplicate monomials are rejected, not merged")
        object.__setattr__(self, "monomials", mons)

    @property
    def num_monomials(self) -> int:
        return len(self.monomials)

    @property
    def exponent_matrix(self) -> tuple[tuple[int, ...], ...]:
        """m x n matrix whose columns are the exponent vectors."""
        return tuple(
            tuple(v[i] for v in self.monomials) for i in range(self.num_vars)
        )


@dataclass(frozen=True)
class MaximalPointResult:
    threshold: Fraction
    unique: bool
    point: tuple[Fraction, ...] | None


@dataclass(frozen=True)
class NewtonAnalysis:
    threshold: Fraction
    lambda_members: tuple[int, ...]  # indices into ms.monomials
    r: int
    diagonal_position: bool


def splitting_polytope(ms: MonomialSet) -> LinearProgram:
    """H-representation of P = {s >= 0 : E s <= 1} with the coordinate-sum
    objective attached (the objective every caller here maximizes)."""
    e = ms.exponent_matrix
    return LinearProgram(
        objective=(ONE,) * ms.num_monomials,
        constraint_matrix=tuple(tuple(Fraction(a) for a in row) for row in e),
        rhs=(ONE,) * ms.num_vars,
    )


def splitting_threshold(ms: MonomialSet) -> Fraction:
    """Maximal coordinate sum over the splitting polytope (simplex route)."""
    out = ratlp.maximize(splitting_polytope(ms))
    assert out.status == OPTIMAL  # P is nonempty and sits inside [0,1]^n
    return out.value


def maximal_points(ms: MonomialSet) -> MaximalPointResult:
    """Threshold plus uniqueness of the coordinate-sum maximizer over P."""
    lp = splitting_polytope(ms)
    out = ratlp.maximize(lp)
    assert out.status == OPTIMAL
    unique, point = ratlp.optimum_is_unique(lp)
    return MaximalPointResult(threshold=out.value, unique=unique, point=point)


def newton_contains(ms: MonomialSet, v: Sequence[Fraction]) -> bool:
    """Membership of v in N = conv(monomials) + R^m_{>=0}.

    Feasibility of  s >= 0, |s| = 1, E s <= v  is exactly membership,
    because the orthant part can only raise coordinates.
    """
    v = [Fraction(a) for a in v]
    if len(v) != ms.num_vars:
        raise ValueError(f"point has {len(v)} coordinates, expected {ms.num_vars}")
    n = ms.num_monomials
    lp = LinearProgram(
        objective=(ZERO,) * n,
        constraint_matrix=tuple(
            tuple(Fraction(a) for a in row) for row in ms.exponent_matrix
        ),
        rhs=tuple(v),
    )
    out = ratlp.feasible(lp, extra_equalities=[((ONE,) * n, ONE)])
    return out.status == OPTIMAL


def _solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination over Fraction; None when the system is singular."""
    n = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def newton_threshold(ms: MonomialSet) -> Fraction:
    """Threshold read off the Newton polyhedron: the largest lam > 0 with
    (1/lam)*(1,...,1) in N.

    Substituting t = lam*s turns that into maximizing |t| over P, which is
    solved here by exact enumeration of basic feasible points -- a code path
    deliberately disjoint from the simplex in splitting_threshold.
    """
    e = ms.exponent_matrix
    n = ms.num_monomials
    m = ms.num_vars
    # constraint pool: s_j = 0 (j < n) and row_i . s = 1 (i >= n)
    best = ZERO  # s = 0 is always a vertex of P
    for active in itertools.combinations(range(n + m), n):
        matrix = []
        rhs = []
        for c in active:
            if c < n:
                matrix.append([ONE if j == c else ZERO for j in range(n)])
                rhs.append(ZERO)
            else:
                matrix.append([Fraction(a) for a in e[c - n]])
                rhs.append(ONE)
        point = _solve_square(matrix, rhs)
        if point is None:
            continue
        if any(x < 0 for x in point):
            continue
        if any(sum(row[j] * point[j] for j in range(n)) > 1 for row in e):
            continue
        total = sum(point)
        if total > best:
            best = total
    return best


def _extension_amount_at(
    ms: MonomialSet, alpha: Fraction, direction: Sequence[Fraction]
) -> Fraction:
    """max eps in [0, 1] with v + eps*direction in N, for v = (1/alpha)*1.

    Variables are (s, eps); E s - eps*direction <= v keeps E s below the
    moved target while the orthant part of N absorbs slack.  Feasible at
    eps = 0 since v lies on the boundary of N.  Only the sign of the
    optimum matters, hence the cap at 1.
    """
    n = ms.num_monomials
    m = ms.num_vars
    v = [ONE / alpha] * m
    rows = []
    rhs = []
    e = ms.exponent_matrix
    for i in range(m):
        rows.append(tuple(Fraction(a) for a in e[i]) + (-Fraction(direction[i]),))
        rhs.append(v[i])
    rows.append((ZERO,) * n + (ONE,))  # eps <= 1 cap: only the sign matters
    rhs.append(ONE)
    lp = LinearProgram(
        objective=(ZERO,) * n + (ONE,),
        constraint_matrix=tuple(rows),
        rhs=tuple(rhs),
    )
    # |s| = 1 pinned by an equality pair
    sum_row = (ONE,) * n + (ZERO,)
    out = ratlp.maximize(
        LinearProgram(
            objective=lp.objective,
            constraint_matrix=lp.constraint_matrix + (sum_row, tuple(-c for c in sum_row)),
            rhs=lp.rhs + (ONE, -ONE),
        )
    )
    assert out.status == OPTIMAL
    return out.value


def newton_analysis(ms: MonomialSet) -> NewtonAnalysis:
    """Minimal-face membership and boundedness at v = (1/alpha)*(1,...,1).

    v lies in the relative interior of its minimal face, so a generator a_i
    belongs to the face iff the segment from a_i through v extends past v
    inside N (positive eps in the ray test).  The face is unbounded iff some
    coordinate ray direction extends from v *backwards* into N, i.e.
    v - eps*e_i stays in N for positive eps; boundedness of the face is
    exactly "no coordinate direction survives", which is the diagonal
    position test.
    """
    alpha = splitting_threshold(ms)
    v = [ONE / alpha] * ms.num_vars
    members = []
    for i, a in enumerate(ms.monomials):
        direction = [v[k] - a[k] for k in range(ms.num_vars)]
        if _extension_amount_at(ms, alpha, direction) > 0:
            members.append(i)
    diagonal = True
    for k in range(ms.num_vars):
        direction = [ZERO] * ms.num_vars
        direction[k] = -ONE
        if _extension_amount_at(ms, alpha, direction) > 0:
            diagonal = False
            break
    if not members and diagonal:
        raise AssertionError(
            "internal inconsistency: empty minimal face cannot be bounded"
        )
    return NewtonAnalysis(
        threshold=alpha,
        lambda_members=tuple(members),
        r=len(members),
        diagonal_position=diagonal,
    )
