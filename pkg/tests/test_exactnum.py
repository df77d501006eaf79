"""Digit, truncation, carry, and Lucas-residue behaviour."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fptkit import exactnum
from fptkit.errors import SearchExhaustedError

import oracles

F = Fraction

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

unit_fractions = st.builds(
    lambda a, b: F(min(a, b), max(a, b)) if max(a, b) else F(0),
    st.integers(min_value=0, max_value=400),
    st.integers(min_value=1, max_value=400),
)


class TestDigit:
    def test_one_has_constant_digits(self):
        for e in range(1, 12):
            assert exactnum.digit(F(1), 7, e) == 6

    def test_constant_expansion_when_scaled_is_integral(self):
        # (p-1) * alpha integral forces the constant digit (p-1)*alpha
        for e in range(1, 12):
            assert exactnum.digit(F(1, 2), 5, e) == 2

    def test_third_base_five(self):
        assert exactnum.digit(F(1, 3), 5, 1) == 1
        assert exactnum.digit(F(1, 3), 5, 2) == 3

    def test_conventions(self):
        assert exactnum.digit(F(0), 5, 3) == 0
        assert exactnum.digit(F(2, 3), 5, 0) == 0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            exactnum.digit(F(3, 2), 5, 1)
        with pytest.raises(ValueError):
            exactnum.digit(F(1, 2), 6, 1)

    @given(alpha=unit_fractions, p=st.sampled_from(PRIMES), e=st.integers(1, 24))
    @settings(max_examples=250, deadline=None)
    def test_matches_long_division_oracle(self, alpha, p, e):
        expected = oracles.digits_long_division(alpha, p, e)[e - 1]
        assert exactnum.digit(alpha, p, e) == expected


class TestTruncate:
    def test_truncation_of_one(self):
        for p in (2, 5, 11):
            for e in range(1, 6):
                assert exactnum.truncate(F(1), p, e) == 1 - F(1, p**e)

    def test_examples(self):
        assert exactnum.truncate(F(1, 2), 5, 1) == F(2, 5)
        assert exactnum.truncate(F(5, 6), 7, 2) == F(40, 49)
        assert exactnum.truncate(F(1, 2), 5, 0) == 0

    @given(
        alpha=unit_fractions.filter(lambda a: a > 0),
        p=st.sampled_from([p for p in PRIMES if p <= 50]),
        e=st.integers(1, 20),
    )
    @settings(max_examples=300, deadline=None)
    def test_sandwich(self, alpha, p, e):
        tr = exactnum.truncate(alpha, p, e)
        assert tr < alpha <= tr + F(1, p**e)
        assert (tr * p**e).denominator == 1

    @given(p=st.sampled_from(PRIMES), e=st.integers(1, 6), k=st.integers(1, 50))
    @settings(max_examples=200, deadline=None)
    def test_simplified_truncation(self, p, e, k):
        # (p^e - 1) * alpha integral => (p^e - 1) * alpha = p^e * truncation
        q = p**e
        alpha = F(min(k, q - 1), q - 1)
        assert (q - 1) * alpha == q * exactnum.truncate(alpha, p, e)


class TestDigitStream:
    @pytest.mark.parametrize(
        "alpha,p,pre,per",
        [
            (F(1, 3), 5, (), (1, 3)),
            (F(1, 2), 3, (), (1,)),
            (F(1, 3), 2, (), (0, 1)),
            (F(1), 7, (), (6,)),
            (F(0), 7, (), (0,)),
        ],
    )
    def test_known_streams(self, alpha, p, pre, per):
        s = exactnum.digit_stream(alpha, p)
        assert (s.preperiod, s.period) == (pre, per)

    def test_window_is_bounded_by_denominator(self):
        s = exactnum.digit_stream(F(97, 360), 7)
        assert len(s.preperiod) + len(s.period) <= 361

    @given(alpha=unit_fractions, p=st.sampled_from(PRIMES))
    @settings(max_examples=250, deadline=None)
    def test_round_trip_and_digit_agreement(self, alpha, p):
        s = exactnum.digit_stream(alpha, p)
        assert s.evaluate() == alpha
        for e in range(0, 12):
            assert s.digit(e) == exactnum.digit(alpha, p, e)

    @given(alpha=unit_fractions.filter(lambda a: a > 0), p=st.sampled_from(PRIMES))
    @settings(max_examples=150, deadline=None)
    def test_never_eventually_zero(self, alpha, p):
        s = exactnum.digit_stream(alpha, p)
        assert any(d != 0 for d in s.period)


class TestCarryFreePrefix:
    def test_constant_digit_pairs(self):
        assert exactnum.carry_free_prefix([F(1, 2), F(1, 3)], 7).carry_free
        assert exactnum.carry_free_prefix([F(1, 2), F(1, 3)], 5).L == 1

    def test_half_plus_half_base_two(self):
        # digits of 1/2 in base 2 are 0,1,1,...; the first carry is at e = 2
        profile = exactnum.carry_free_prefix([F(1, 2), F(1, 2)], 2)
        assert profile.L == 1

    def test_empty_and_single(self):
        assert exactnum.carry_free_prefix([], 5).carry_free
        # a single rational never carries against itself
        assert exactnum.carry_free_prefix([F(3, 7)], 5).carry_free

    @given(
        alphas=st.lists(unit_fractions, min_size=1, max_size=4),
        p=st.sampled_from(PRIMES[:8]),
    )
    @settings(max_examples=150, deadline=None)
    def test_against_window_scan(self, alphas, p):
        window = 400
        digit_rows = [oracles.digits_long_division(a, p, window) for a in alphas]
        first_bad = next(
            (
                e
                for e in range(1, window + 1)
                if sum(row[e - 1] for row in digit_rows) > p - 1
            ),
            None,
        )
        profile = exactnum.carry_free_prefix(alphas, p)
        if first_bad is None:
            assert profile.carry_free
        else:
            assert profile.L == first_bad - 1

    @given(
        scaled=st.lists(st.integers(0, 12), min_size=1, max_size=4),
        p=st.sampled_from(PRIMES),
    )
    @settings(max_examples=150, deadline=None)
    def test_constant_expansion_characterization(self, scaled, p):
        # with every (p-1)*alpha integral, carry-free iff the scaled sum
        # stays below the base
        alphas = [F(min(k, p - 1), p - 1) for k in scaled]
        profile = exactnum.carry_free_prefix(alphas, p)
        expected = sum((p - 1) * a for a in alphas) <= p - 1
        assert profile.carry_free == expected


class TestMultinomialModP:
    def test_examples(self):
        assert exactnum.multinomial_mod_p([5, 5], 7) == 0  # 252 = 7 * 36
        assert exactnum.multinomial_mod_p([3, 2], 7) == 3  # C(5,3) = 10
        assert exactnum.multinomial_mod_p([9, 0, 0, 0], 13) == 1

    def test_zero_iff_carry(self):
        # digits of 5 and 5 in base 7 add to 10 > 6
        assert exactnum.multinomial_mod_p([5, 5], 7) == 0
        assert exactnum.multinomial_mod_p([3, 3], 7) == oracles.multinomial_factorial([3, 3]) % 7

    @given(
        parts=st.lists(st.integers(0, 30), min_size=1, max_size=4),
        p=st.sampled_from([2, 3, 5, 7, 11]),
    )
    @settings(max_examples=300, deadline=None)
    def test_against_factorials(self, parts, p):
        assert exactnum.multinomial_mod_p(parts, p) == (
            oracles.multinomial_factorial(parts) % p
        )

    @given(
        parts=st.lists(st.integers(0, 200), min_size=1, max_size=5),
        p=st.sampled_from([2, 3, 5, 7, 11, 13]),
    )
    @settings(max_examples=300, deadline=None)
    def test_zero_exactly_at_digit_carries(self, parts, p):
        # the residue vanishes iff some base-p digit position carries
        carries = False
        ks = list(parts)
        while any(ks):
            if sum(k % p for k in ks) > p - 1:
                carries = True
                break
            ks = [k // p for k in ks]
        assert (exactnum.multinomial_mod_p(parts, p) == 0) == carries

    def test_rejects_bad_parts(self):
        with pytest.raises(ValueError):
            exactnum.multinomial_mod_p([], 7)
        with pytest.raises(ValueError):
            exactnum.multinomial_mod_p([-1, 2], 7)


class TestPrimes:
    def test_progressions(self):
        assert exactnum.primes_in_progression(6, 3) == [7, 13, 19]
        assert exactnum.primes_in_progression(1, 3) == [2, 3, 5]
        assert exactnum.primes_in_progression(4, 3) == [5, 13, 17]

    def test_search_ceiling_is_enforced(self):
        with pytest.raises(SearchExhaustedError):
            exactnum.primes_in_progression(6, 3, ceiling=10)

    def test_against_sympy(self):
        import sympy

        for d in (1, 2, 3, 4, 5, 6, 10, 12):
            for p in exactnum.primes_in_progression(d, 5):
                assert sympy.isprime(p)
                assert p % d == 1 % d


class TestRationalText:
    def test_round_trip(self):
        for q in (F(5, 6), F(-3, 7), F(4), F(0)):
            assert exactnum.parse_rational(exactnum.format_rational(q)) == q
        assert exactnum.format_rational(F(10, 12)) == "5/6"
        assert exactnum.format_rational(F(8, 4)) == "2"

    def test_lcm_window_consistency(self):
        # spot-check that digits really repeat with the stream's period
        s = exactnum.digit_stream(F(5, 14), 3)
        pre, per = len(s.preperiod), len(s.period)
        for e in range(pre + 1, pre + 2 * per + 1):
            assert s.digit(e) == s.digit(e + per)

    def test_one_has_all_max_digits(self):
        s = exactnum.digit_stream(F(1), 5)
        assert set(s.period) == {4} and not s.preperiod
