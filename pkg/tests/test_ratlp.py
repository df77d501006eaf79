"""Exact simplex behaviour, checked against brute-force vertex enumeration."""

import random
from fractions import Fraction

import pytest

from fptkit import ratlp
from fptkit.ratlp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram

import oracles

F = Fraction


def lp(c, rows, b):
    return LinearProgram(tuple(c), tuple(tuple(r) for r in rows), tuple(b))


class TestMaximize:
    def test_two_box_constraints(self):
        out = ratlp.maximize(lp([1, 1], [[2, 0], [0, 3]], [1, 1]))
        assert out.status == OPTIMAL
        assert out.value == F(5, 6)
        assert out.witness == (F(1, 2), F(1, 3))

    def test_zero_objective(self):
        out = ratlp.maximize(lp([0], [[1]], [1]))
        assert out.status == OPTIMAL and out.value == 0
        assert out.witness[0] >= 0 and out.witness[0] <= 1

    def test_unbounded(self):
        assert ratlp.maximize(lp([1], [[-1]], [1])).status == UNBOUNDED

    def test_infeasible_via_negative_rhs(self):
        # 0*x <= -1 can never hold
        assert ratlp.maximize(lp([1], [[0]], [-1])).status == INFEASIBLE

    def test_negative_rhs_feasible(self):
        # x >= 2 encoded as -x <= -2, maximize -x
        out = ratlp.maximize(lp([-1], [[-1]], [-2]))
        assert out.status == OPTIMAL
        assert out.value == -2 and out.witness == (F(2),)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lp([1, 1], [[1]], [1])
        with pytest.raises(ValueError):
            lp([1], [[1]], [1, 2])

    def test_no_variables(self):
        out = ratlp.maximize(lp([], [], []))
        assert out.status == OPTIMAL and out.value == 0 and out.witness == ()


class TestFeasible:
    def test_simplex_slice_off_center(self):
        base = lp([0, 0], [[2, 0], [0, 3]], [F(6, 5), F(6, 5)])
        out = ratlp.feasible(base, [((1, 1), 1)])
        assert out.status == OPTIMAL
        s = out.witness
        assert s[0] >= 0 and s[1] >= 0
        assert s[0] + s[1] == 1
        assert 2 * s[0] <= F(6, 5) and 3 * s[1] <= F(6, 5)

    def test_infeasible_unit_sum_under_zero_caps(self):
        base = lp([0, 0], [[1, 0], [0, 1]], [0, 0])
        assert ratlp.feasible(base, [((1, 1), 1)]).status == INFEASIBLE

    def test_unit_sum_alone_yields_unit_vector(self):
        base = lp([0, 0, 0], [], [])
        out = ratlp.feasible(base, [((1, 1, 1), 1)])
        assert out.status == OPTIMAL
        assert sorted(out.witness) == [0, 0, 1]


class TestUniqueness:
    def test_unique_vertex(self):
        unique, point = ratlp.optimum_is_unique(lp([1, 1], [[2, 0], [0, 3]], [1, 1]))
        assert unique and point == (F(1, 2), F(1, 3))

    def test_edge_of_optima(self):
        unique, point = ratlp.optimum_is_unique(lp([1, 1], [[1, 1]], [1]))
        assert not unique and point is None

    def test_unique_with_slack_coordinate(self):
        unique, point = ratlp.optimum_is_unique(lp([1, 0], [[1, 0], [0, 1]], [1, 0]))
        assert unique and point == (F(1), F(0))

    def test_requires_optimal(self):
        with pytest.raises(ValueError):
            ratlp.optimum_is_unique(lp([1], [[-1]], [1]))


def _random_lp(rng):
    n = rng.randint(1, 4)
    m = rng.randint(1, 4)
    c = [rng.randint(0, 6) for _ in range(n)]
    rows = [[rng.randint(0, 6) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(1, 6) for _ in range(m)]
    return c, rows, b


class TestAgainstVertexOracle:
    def test_two_hundred_random_lps(self):
        rng = random.Random(20260810)
        for _ in range(200):
            c, rows, b = _random_lp(rng)
            status, value, vertices = oracles.lp_vertex_oracle(c, rows, b)
            out = ratlp.maximize(lp(c, rows, b))
            assert out.status == status
            if status == OPTIMAL:
                assert out.value == value
                # witness attains the value, is feasible, and is a vertex
                assert sum(F(cj) * xj for cj, xj in zip(c, out.witness)) == value
                assert all(x >= 0 for x in out.witness)
                for row, bi in zip(rows, b):
                    assert sum(F(a) * x for a, x in zip(row, out.witness)) <= bi
                assert tuple(out.witness) in vertices

    def test_unique_optimum_coordinates_coincide(self):
        rng = random.Random(7)
        checked = 0
        while checked < 40:
            c, rows, b = _random_lp(rng)
            program = lp(c, rows, b)
            if ratlp.maximize(program).status != OPTIMAL:
                continue
            unique, point = ratlp.optimum_is_unique(program)
            if not unique:
                continue
            checked += 1
            out = ratlp.maximize(program)
            assert sum(F(cj) * xj for cj, xj in zip(c, point)) == out.value
