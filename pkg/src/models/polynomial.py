"""Integer-valued polynomials in the binomial-coefficient basis."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from src.errors import HypothesisError, InadmissiblePolynomialError, PolynomialParseError

logger = logging.getLogger(__name__)


def _binom(x: int, k: int) -> int:
    """C(x, k) for any integer x, including negative x."""
    if x >= 0:
        return math.comb(x, k)
    return (-1) ** k * math.comb(k - x - 1, k)


def _falling_factorial(k: int) -> list[int]:
    """Integer monomial coefficients of x(x-1)...(x-k+1), low degree first."""
    coeffs = [1]
    for root in range(k):
        shifted = [0] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= root * c
        coeffs = shifted
    return coeffs


def _forward_differences(values: list[int]) -> list[int]:
    """Return Δ^k v(0) for k = 0..len(values)-1."""
    row = list(values)
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


class ValueCount(NamedTuple):
    """Exact count of ℓ ≥ 1 with f(ℓ) ≤ t, plus the main-term estimate (t/a_r)^(1/r)."""

    count: int
    estimate: float


@dataclass(frozen=True)
class IntegerValuedPoly:
    """f(x) = Σ c_k·C(x, k) with integer c_k; degree ≥ 1."""

    binom_coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.binom_coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise PolynomialParseError("degree 0 polynomials are not allowed")
        object.__setattr__(self, "binom_coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.binom_coeffs) - 1

    @property
    def leading_coeff(self) -> Fraction:
        """Coefficient a_r of x^r."""
        return Fraction(self.binom_coeffs[-1], math.factorial(self.degree))

    @property
    def f0(self) -> int:
        return self.binom_coeffs[0]

    @property
    def canonical(self) -> str:
        return "binom:" + ",".join(str(c) for c in self.binom_coeffs)

    @cached_property
    def monomial_coeffs(self) -> tuple[Fraction, ...]:
        """Rational coefficients of 1, x, ..., x^r."""
        out = [Fraction(0)] * (self.degree + 1)
        for k, c in enumerate(self.binom_coeffs):
            if c == 0:
                continue
            scale = Fraction(c, math.factorial(k))
            for i, m in enumerate(_falling_factorial(k)):
                out[i] += scale * m
        return tuple(out)

    @property
    def display(self) -> str:
        """Both bases, e.g. 'binom:0,1,2 = x^2'."""
        terms = []
        for power in range(self.degree, -1, -1):
            coeff = self.monomial_coeffs[power]
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else "+"
            size = abs(coeff)
            body = "" if size == 1 and power > 0 else str(size)
            if power == 1:
                body += "x" if not body else "*x"
            elif power > 1:
                body += f"x^{power}" if not body else f"*x^{power}"
            terms.append((sign, body))
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return f"{self.canonical} = {text}"

    def __call__(self, ell: int) -> int:
        return sum(c * _binom(ell, k) for k, c in enumerate(self.binom_coeffs))

    def values(self, start: int, stop: int) -> Iterator[int]:
        """Yield f(start), ..., f(stop - 1) by stepping a forward-difference table."""
        if stop <= start:
            return
        table = _forward_differences([self(start + i) for i in range(self.degree + 1)])
        for _ in range(stop - start):
            yield table[0]
            for i in range(self.degree):
                table[i] += table[i + 1]

    def real_values(self, u: np.ndarray) -> np.ndarray:
        """Float evaluation at real points (Horner on the monomial form)."""
        return np.polyval([float(c) for c in reversed(self.monomial_coeffs)], u)

    def to_dict(self) -> dict:
        return {"binom_coeffs": list(self.binom_coeffs), "display": self.display}

    @classmethod
    def from_dict(cls, data: dict) -> "IntegerValuedPoly":
        return cls(binom_coeffs=tuple(data["binom_coeffs"]))


def evaluate(f: IntegerValuedPoly, ell: int) -> int:
    """Exact f(ℓ)."""
    return f(ell)


def _from_monomial(coeffs: list[Fraction]) -> IntegerValuedPoly:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    degree = len(coeffs) - 1
    if degree < 1:
        raise PolynomialParseError("degree 0 polynomials are not allowed")
    values = []
    for point in range(degree + 1):
        value = Fraction(0)
        for c in reversed(coeffs):
            value = value * point + c
        if value.denominator != 1:
            raise PolynomialParseError(
                f"polynomial is not integer-valued: f({point}) = {value}"
            )
        values.append(value.numerator)
    return IntegerValuedPoly(binom_coeffs=tuple(_forward_differences(values)))


def parse_poly(text: str) -> IntegerValuedPoly:
    """Parse 'binom:c0,...,cd', 'rat:p0/q0,...' or 'cfact:c' (c·x(x+1)(x+2)+1)."""
    kind, sep, body = text.strip().partition(":")
    if not sep or not body.strip():
        raise PolynomialParseError(f"expected '<kind>:<coefficients>', got {text!r}")
    items = [item.strip() for item in body.split(",")]
    kind = kind.strip().lower()
    try:
        if kind == "binom":
            return IntegerValuedPoly(binom_coeffs=tuple(int(item) for item in items))
        if kind == "rat":
            return _from_monomial([Fraction(item) for item in items])
        if kind == "cfact":
            if len(items) != 1:
                raise PolynomialParseError("cfact takes a single integer c")
            c = int(items[0])
            return _from_monomial([Fraction(1), Fraction(2 * c), Fraction(3 * c), Fraction(c)])
    except (ValueError, ZeroDivisionError) as e:
        raise PolynomialParseError(f"cannot parse {text!r}: {e}") from e
    raise PolynomialParseError(f"unknown polynomial kind {kind!r} (use binom, rat or cfact)")


def fixed_divisor(f: IntegerValuedPoly) -> int:
    """gcd of f over all integers, i.e. gcd of the binomial coefficients."""
    return math.gcd(*f.binom_coeffs)


def pi_f(f: IntegerValuedPoly) -> int:
    """Π_f = gcd over ℓ of f(ℓ) - f(0) = gcd(c_1, ..., c_d)."""
    return math.gcd(*f.binom_coeffs[1:])


def root_bound(f: IntegerValuedPoly, shift: int = 0) -> int:
    """Integer strictly above every real root of f(u) - shift.

    Takes the smaller of the Cauchy and Fujiwara bounds.
    """
    coeffs = list(f.monomial_coeffs)
    coeffs[0] -= shift
    lead = abs(coeffs[-1])
    r = f.degree
    ratios = [abs(c) / lead for c in coeffs[:-1]]
    cauchy = 1 + max(ratios)
    fujiwara = 2 * max(
        float(ratio / (2 if i == 0 else 1)) ** (1.0 / (r - i)) for i, ratio in enumerate(ratios)
    )
    return math.ceil(min(float(cauchy), fujiwara)) + 1


def admissibility_problems(f: IntegerValuedPoly) -> list[str]:
    """Return the hypotheses f fails; empty when f is admissible."""
    problems = []
    if f.leading_coeff <= 0:
        problems.append(f"leading coefficient {f.leading_coeff} is not positive")
        return problems
    divisor = fixed_divisor(f)
    if divisor != 1:
        problems.append(f"fixed divisor {divisor} ≠ 1")
    for ell, value in enumerate(f.values(1, root_bound(f) + 2), start=1):
        if value <= 0:
            problems.append(f"f({ell}) = {value} is not positive")
            break
    return problems


def require_admissible(f: IntegerValuedPoly) -> None:
    problems = admissibility_problems(f)
    if problems:
        raise InadmissiblePolynomialError(f"{f.canonical}: " + "; ".join(problems))


def f_hat_inverse(f: IntegerValuedPoly, delta: int) -> int:
    """ĥ_δ in [1, δ] with ĥ_δ·f(0) ≡ 1 (mod δ); it inverts every f(ℓ) mod δ."""
    if delta < 1:
        raise HypothesisError(f"δ must be positive, got {delta}")
    pi = pi_f(f)
    if pi % delta:
        raise HypothesisError(f"δ = {delta} does not divide Π_f = {pi}")
    if math.gcd(f.f0, delta) != 1:
        raise InadmissiblePolynomialError(
            f"gcd(f(0), δ) = {math.gcd(f.f0, delta)} ≠ 1 for {f.canonical}"
        )
    if delta == 1:
        return 1
    return pow(f.f0, -1, delta)


def parts_up_to(f: IntegerValuedPoly, N: int) -> list[tuple[int, int]]:
    """All (ℓ, f(ℓ)) with ℓ ≥ 1 and f(ℓ) ≤ N, in order of ℓ, repeats kept."""
    if N < 1:
        return []
    stop = max(root_bound(f, N), 1) + 1
    return [(ell, value) for ell, value in enumerate(f.values(1, stop), start=1) if value <= N]


def count_values_upto(f: IntegerValuedPoly, t: float) -> ValueCount:
    """#{ℓ ≥ 1 : f(ℓ) ≤ t} and the estimate (t/a_r)^(1/r)."""
    count = len(parts_up_to(f, math.floor(t)))
    estimate = (t / float(f.leading_coeff)) ** (1.0 / f.degree)
    return ValueCount(count=count, estimate=estimate)


def prime_power_factors(n: int) -> dict[int, int]:
    """Trial-division factorization {p: s} of a positive integer."""
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def valid_deltas(f: IntegerValuedPoly) -> list[int]:
    """Positive divisors of Π_f."""
    pi = pi_f(f)
    return [d for d in range(1, pi + 1) if pi % d == 0]


def check_k_hypothesis(f: IntegerValuedPoly, delta: int, k: int) -> list[int]:
    """Primes p | k with pδ | Π_f; these violate the equidistribution hypothesis."""
    pi = pi_f(f)
    return [p for p in prime_power_factors(k) if pi % (p * delta) == 0]
