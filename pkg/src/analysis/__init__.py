"""Numerical analysis: roots-of-unity filter, saddle points and exponential sums."""
