"""Roots of unity and exact phase reduction."""

import math
from fractions import Fraction
from typing import Iterable

import numpy as np

TWO_PI = 2.0 * math.pi


def root_of_unity(fraction: Fraction) -> complex:
    """e(fraction) = exp(2πi·fraction), reduced mod 1 before exponentiating."""
    return complex(np.exp(1j * TWO_PI * float(fraction % 1)))


def reduced_phases(values: Iterable[int], y: float | Fraction) -> np.ndarray:
    """frac(v·y) for exact integers v.

    y is converted to the exact rational it represents, so v·y mod 1 is
    computed in integers and only the reduced residue is rounded.
    """
    ratio = Fraction(y)
    num, den = ratio.numerator, ratio.denominator
    return np.array([(v * num) % den / den for v in values], dtype=float)


def unit_circle(phases: np.ndarray) -> np.ndarray:
    """e(phase) for an array of phases."""
    return np.exp(1j * TWO_PI * phases)
