"""Independent oracles for the test suite.

Everything here is deliberately written from scratch against the raw
definitions (long division, factorials, full polynomial expansion, basic
enumeration) so that agreement with the library is evidence, not tautology.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


# ---------------------------------------------------------------------------
# base-p digits by long division, rewritten to the non-terminating form


def digits_long_division(alpha: Fraction, p: int, count: int) -> list[int]:
    """First `count` digits of alpha in base p, non-terminating convention."""
    alpha = Fraction(alpha)
    if alpha == 0:
        return [0] * count
    if alpha == 1:
        return [p - 1] * count
    a, b = alpha.numerator, alpha.denominator
    digits = []
    r = a
    for _ in range(count):
        r *= p
        digits.append(r // b)
        r %= b
        if r == 0:
            # terminating expansion: borrow one from the last digit and pad
            digits[-1] -= 1
            while len(digits) < count:
                digits.append(p - 1)
            break
    return digits


# ---------------------------------------------------------------------------
# multinomials by factorials


def multinomial_factorial(parts) -> int:
    total = math.factorial(sum(parts))
    for k in parts:
        total //= math.factorial(k)
    return total


# ---------------------------------------------------------------------------
# a fresh Gaussian solver and brute-force LP vertex enumeration


def gauss_solve(matrix, rhs):
    """Solve a square rational system; None when singular."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if aug[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        d = aug[c][c]
        aug[c] = [x / d for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] for i in range(n)]


def lp_vertex_oracle(c, a_matrix, b):
    """Brute-force max c.x over {x >= 0, Ax <= b} for matrices with
    nonnegative entries (the random test family).

    Returns ("UNBOUNDED", None, None) or ("OPTIMAL", value, vertices).
    With A >= 0 the recession cone is spanned by coordinate directions whose
    column is entirely zero, so unboundedness is a zero-column check.
    """
    n = len(c)
    m = len(b)
    assert all(entry >= 0 for row in a_matrix for entry in row)
    for j in range(n):
        if c[j] > 0 and all(a_matrix[i][j] == 0 for i in range(m)):
            return "UNBOUNDED", None, None
    pool = []
    for j in range(n):
        row = [Fraction(0)] * n
        row[j] = Fraction(1)
        pool.append((row, Fraction(0)))
    for i in range(m):
        pool.append(([Fraction(x) for x in a_matrix[i]], Fraction(b[i])))
    vertices = set()
    for combo in itertools.combinations(range(len(pool)), n):
        matrix = [pool[k][0] for k in combo]
        rhs = [pool[k][1] for k in combo]
        x = gauss_solve(matrix, rhs)
        if x is None:
            continue
        if any(v < 0 for v in x):
            continue
        if any(
            sum(a_matrix[i][j] * x[j] for j in range(n)) > b[i] for i in range(m)
        ):
            continue
        vertices.add(tuple(x))
    assert vertices, "x = 0 is always feasible for b >= 0"
    value = max(sum(Fraction(cj) * xj for cj, xj in zip(c, v)) for v in vertices)
    return "OPTIMAL", value, vertices


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility (for Newton polyhedron membership)


def fm_feasible(constraints, n: int) -> bool:
    """Feasibility of {s in R^n : coeffs . s <= rhs for all constraints}."""
    system = [([Fraction(x) for x in row], Fraction(r)) for row, r in constraints]
    for var in range(n - 1, -1, -1):
        uppers, lowers, rest = [], [], []
        for row, r in system:
            a = row[var]
            if a > 0:
                uppers.append(([x / a for x in row], r / a))
            elif a < 0:
                lowers.append(([x / -a for x in row], r / -a))
            else:
                rest.append((row, r))
        new = rest
        for urow, ur in uppers:
            for lrow, lr in lowers:
                row = [u + l for u, l in zip(urow, lrow)]
                row[var] = Fraction(0)
                new.append((row, ur + lr))
        system = new
    return all(r >= 0 for _, r in system)


def newton_member_oracle(monomials, v) -> bool:
    """v in conv(monomials) + R^m_{>=0}, by eliminating the weights."""
    n = len(monomials)
    m = len(v)
    cons = []
    for j in range(n):
        row = [Fraction(0)] * n
        row[j] = Fraction(-1)
        cons.append((row, Fraction(0)))  # s_j >= 0
    ones = [Fraction(1)] * n
    cons.append((ones, Fraction(1)))
    cons.append(([-x for x in ones], Fraction(-1)))  # sum = 1
    for i in range(m):
        cons.append(([Fraction(mon[i]) for mon in monomials], Fraction(v[i])))
    return fm_feasible(cons, n)


# ---------------------------------------------------------------------------
# full polynomial expansion over F_p (never reduced, never pruned)


def poly_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            key = tuple(x + y for x, y in zip(k1, k2))
            out[key] = (out.get(key, 0) + c1 * c2) % p
    return {k: c for k, c in out.items() if c}


def poly_pow(f: dict, a: int, p: int, num_vars: int) -> dict:
    out = {(0,) * num_vars: 1}
    for _ in range(a):
        out = poly_mul(out, f, p)
    return out


def nu_expansion_oracle(f: dict, p: int, e_levels, num_vars: int) -> dict:
    """nu at each requested level via full (unpruned) expansion of f^a.

    Walks f, f^2, f^3, ... keeping every term, and records for each level
    the last exponent with a surviving monomial (all coordinates < p^e).
    Survival at a fixed level is monotone in the exponent, so a level is
    dropped the first time it dies and the walk stops when none are left.
    """
    levels = sorted(e_levels)
    qs = {e: p**e for e in levels}
    best = {e: 0 for e in levels}
    alive = set(levels)
    cur = {(0,) * num_vars: 1}
    for a in range(1, qs[levels[-1]]):
        if not alive:
            break
        cur = poly_mul(cur, f, p)
        for e in sorted(alive):
            q = qs[e]
            if a > q - 1:
                alive.discard(e)
                continue
            if any(all(x < q for x in key) for key in cur):
                best[e] = a
            else:
                alive.discard(e)
    return best
