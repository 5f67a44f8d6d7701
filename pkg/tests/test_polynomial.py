import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.errors import HypothesisError, InadmissiblePolynomialError, PolynomialParseError
from src.models.polynomial import (
    IntegerValuedPoly,
    admissibility_problems,
    check_k_hypothesis,
    count_values_upto,
    evaluate,
    f_hat_inverse,
    fixed_divisor,
    parse_poly,
    parts_up_to,
    pi_f,
    prime_power_factors,
    require_admissible,
    root_bound,
    valid_deltas,
)

PART_POLYS = ["rat:0,1", "rat:0,0,1", "binom:1,2", "rat:0,1/2,1/2", "binom:5,6", "cfact:1"]

binom_coeffs = st.lists(st.integers(-20, 20), min_size=1, max_size=3).flatmap(
    lambda head: st.integers(1, 6).map(lambda lead: tuple(head) + (lead,))
)


def test_parse_square():
    assert parse_poly("rat:0,0,1").binom_coeffs == (0, 1, 2)


def test_parse_odd():
    f = parse_poly("binom:1,2")
    assert f.degree == 1
    assert f.f0 == 1


def test_parse_triangular():
    assert parse_poly("rat:0,1/2,1/2").binom_coeffs == (0, 1, 1)


def test_parse_cfact():
    f = parse_poly("cfact:1")
    assert [f(ell) for ell in range(4)] == [1, 7, 25, 61]
    assert pi_f(f) == 6


def test_parse_rejects_non_integer_valued():
    with pytest.raises(PolynomialParseError, match="not integer-valued"):
        parse_poly("rat:0,1/2")


@pytest.mark.parametrize("text", ["x^2", "binom:", "poly:1,2", "binom:1,a", "rat:1/0,1", "binom:5"])
def test_parse_errors(text):
    with pytest.raises(PolynomialParseError):
        parse_poly(text)


def test_trailing_zeros_trimmed():
    assert parse_poly("binom:0,1,0,0").canonical == "binom:0,1"


def test_display():
    assert parse_poly("rat:0,0,1").display == "binom:0,1,2 = x^2"
    assert parse_poly("binom:1,2").display == "binom:1,2 = 2*x + 1"


@pytest.mark.parametrize(
    "text, ell, expected",
    [("rat:0,0,1", 3, 9), ("rat:0,1/2,1/2", 4, 10), ("binom:1,2", 0, 1)],
)
def test_evaluate(text, ell, expected):
    assert evaluate(parse_poly(text), ell) == expected


@given(coeffs=binom_coeffs, ell=st.integers(-50, 50))
def test_binomial_and_monomial_evaluation_agree(coeffs, ell):
    f = IntegerValuedPoly(binom_coeffs=coeffs)
    direct = sum(c * Fraction(ell) ** i for i, c in enumerate(f.monomial_coeffs))
    assert direct == f(ell)


@given(coeffs=binom_coeffs, start=st.integers(-30, 30))
def test_values_generator_matches_evaluation(coeffs, start):
    f = IntegerValuedPoly(binom_coeffs=coeffs)
    assert list(f.values(start, start + 15)) == [f(ell) for ell in range(start, start + 15)]


@given(coeffs=binom_coeffs, shift=st.integers(0, 500))
def test_root_bound_is_an_upper_bound(coeffs, shift):
    f = IntegerValuedPoly(binom_coeffs=coeffs)
    bound = root_bound(f, shift)
    assert all(value > shift for value in f.values(bound, bound + 20))


def test_round_trip_dict(square):
    assert IntegerValuedPoly.from_dict(square.to_dict()) == square


def test_fixed_divisor():
    assert fixed_divisor(parse_poly("rat:0,0,1")) == 1
    assert fixed_divisor(parse_poly("rat:2,1,1")) == 2
    assert fixed_divisor(parse_poly("binom:1,2")) == 1


def test_pi_f(odd, six_x_five):
    assert pi_f(odd) == 2
    assert pi_f(six_x_five) == 6
    for r in range(1, 5):
        assert pi_f(parse_poly("rat:" + ",".join(["0"] * r + ["1"]))) == 1


def test_admissibility_problems_fixed_divisor():
    problems = admissibility_problems(parse_poly("rat:2,1,1"))
    assert problems == ["fixed divisor 2 ≠ 1"]
    with pytest.raises(InadmissiblePolynomialError, match="fixed divisor 2 ≠ 1"):
        require_admissible(parse_poly("rat:2,1,1"))


def test_admissibility_problems_sign():
    assert "not positive" in admissibility_problems(parse_poly("rat:0,-1"))[0]


def test_admissibility_problems_positivity():
    # x² - 3x + 1: f(1) = -1
    assert admissibility_problems(parse_poly("rat:1,-3,1")) == ["f(1) = -1 is not positive"]


def test_admissible_examples(linear, square, odd, triangular, six_x_five):
    for f in (linear, square, odd, triangular, six_x_five):
        assert admissibility_problems(f) == []


def test_f_hat_inverse(odd, six_x_five, square):
    assert f_hat_inverse(odd, 2) == 1
    assert f_hat_inverse(six_x_five, 3) == 2
    assert f_hat_inverse(square, 1) == 1
    for delta in valid_deltas(six_x_five):
        assert (f_hat_inverse(six_x_five, delta) * six_x_five.f0) % delta == 1 % delta


def test_f_hat_inverse_rejects_non_divisor(odd):
    with pytest.raises(HypothesisError, match="does not divide"):
        f_hat_inverse(odd, 3)
    with pytest.raises(HypothesisError):
        f_hat_inverse(odd, 0)


def test_parts_up_to(square, odd, linear):
    assert parts_up_to(square, 10) == [(1, 1), (2, 4), (3, 9)]
    assert parts_up_to(odd, 6) == [(1, 3), (2, 5)]
    assert parts_up_to(linear, 3) == [(1, 1), (2, 2), (3, 3)]
    assert parts_up_to(linear, 0) == []


def test_parts_up_to_keeps_repeated_values():
    # (x - 2)² + 1 takes the value 2 at ℓ = 1 and ℓ = 3
    f = parse_poly("rat:5,-4,1")
    assert [value for _, value in parts_up_to(f, 5)] == [2, 1, 2, 5]


def test_count_values_upto(square, triangular, odd):
    assert count_values_upto(square, 100) == (10, pytest.approx(10.0))
    count, estimate = count_values_upto(triangular, 10)
    assert count == 4
    assert estimate == pytest.approx(20**0.5)
    count, estimate = count_values_upto(odd, 9)
    assert count == 4
    assert estimate == pytest.approx(4.5)


def test_prime_power_factors():
    assert prime_power_factors(72) == {2: 3, 3: 2}
    assert prime_power_factors(1) == {}
    assert prime_power_factors(97) == {97: 1}


def test_valid_deltas(six_x_five, linear):
    assert valid_deltas(six_x_five) == [1, 2, 3, 6]
    assert valid_deltas(linear) == [1]


def test_check_k_hypothesis(odd, six_x_five):
    assert check_k_hypothesis(odd, 1, 2) == [2]
    assert check_k_hypothesis(odd, 2, 3) == []
    assert check_k_hypothesis(six_x_five, 2, 3) == [3]
    assert check_k_hypothesis(six_x_five, 6, 5) == []


@given(coeffs=binom_coeffs)
def test_fixed_divisor_and_pi_f_divide_values(coeffs):
    f = IntegerValuedPoly(binom_coeffs=coeffs)
    divisor, pi = fixed_divisor(f), pi_f(f)
    for ell in range(-20, 21):
        assert f(ell) % divisor == 0
        assert (f(ell) - f.f0) % pi == 0


@given(coeffs=binom_coeffs)
def test_pi_f_matches_gcd_of_differences(coeffs):
    f = IntegerValuedPoly(binom_coeffs=coeffs)
    assert pi_f(f) == math.gcd(*(f(ell) - f.f0 for ell in range(1, 10 * f.degree + 1)))


@given(coeffs=binom_coeffs)
def test_f_hat_inverse_inverts_every_value(coeffs):
    f = IntegerValuedPoly(binom_coeffs=coeffs)
    assume(fixed_divisor(f) == 1)
    for delta in valid_deltas(f):
        h_hat = f_hat_inverse(f, delta)
        assert 1 <= h_hat <= delta
        assert all((h_hat * f(ell)) % delta == 1 % delta for ell in range(21))


@pytest.mark.parametrize("text", PART_POLYS + ["rat:5,-4,1"])
@pytest.mark.parametrize("N", [1, 7, 100, 1000])
def test_parts_up_to_matches_naive_scan(text, N):
    f = parse_poly(text)
    limit = int(10 * (N / float(f.leading_coeff)) ** (1 / f.degree)) + 10
    naive = [(ell, evaluate(f, ell)) for ell in range(1, limit + 1) if evaluate(f, ell) <= N]
    assert parts_up_to(f, N) == naive


@pytest.mark.parametrize("text", PART_POLYS)
def test_count_values_error_term_scales(text):
    f = parse_poly(text)
    exponent = 1 / (2 * f.degree)

    def error(t: float) -> float:
        count, estimate = count_values_upto(f, t)
        return abs(count - estimate)

    C = error(1e3) / 1e3**exponent
    assert error(1e6) <= C * 1e6**exponent + 1e-9
