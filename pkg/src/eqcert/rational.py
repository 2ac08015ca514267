"""Exact rational parsing, formatting, and root extraction.

Every certified quantity in this package is a `fractions.Fraction`; floats
never enter a certificate, a polytope computation, or a file we emit.  This
module fixes the text conventions for rationals ("p/q", integers, finite
decimals) and provides the integer/fraction root helpers that contest
success functions need to stay inside exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


class RationalFormatError(ValueError):
    """A value could not be read as an exact rational."""


def parse_rational(value) -> Fraction:
    """Read an exact rational from an int, Fraction, or string.

    Accepted strings: "p/q", plain integers ("-3"), and finite decimals
    ("0.25").  Floats are rejected: a float payoff has no well-defined
    exact value and would silently poison downstream certificates.
    """
    if isinstance(value, bool):
        raise RationalFormatError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise RationalFormatError(
            f"refusing float {value!r}: write rationals as strings like '1/4' or '0.25'"
        )
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise RationalFormatError("empty string is not a rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise RationalFormatError(f"cannot parse {value!r} as a rational") from exc
    raise RationalFormatError(f"cannot parse {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    """Canonical text form: lowest terms, "p/q", integers without "/1"."""
    return str(Fraction(value))


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of n >= 0: returns (r, exact) with r = floor(n**(1/k))."""
    if n < 0:
        raise ValueError("iroot of a negative integer")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if n in (0, 1) or k == 1:
        return n, True
    # Newton iteration on integers, seeded from the float root.
    r = max(1, int(round(n ** (1.0 / k))))
    while True:
        better = ((k - 1) * r + n // r ** (k - 1)) // k
        if better >= r:
            break
        r = better
    while (r + 1) ** k <= n:
        r += 1
    while r ** k > n:
        r -= 1
    return r, r ** k == n


def fraction_root(x: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of x >= 0, or None when no rational root exists."""
    if x < 0:
        raise ValueError("fraction_root of a negative rational")
    num_root, num_exact = iroot(x.numerator, k)
    if not num_exact:
        return None
    den_root, den_exact = iroot(x.denominator, k)
    if not den_exact:
        return None
    return Fraction(num_root, den_root)


def fraction_power(x: Fraction, r: Fraction) -> Fraction | None:
    """Exact x**r for x > 0 and rational r, or None when irrational."""
    if x <= 0:
        raise ValueError("fraction_power requires a positive base")
    r = Fraction(r)
    if r == 0:
        return Fraction(1)
    if r < 0:
        inverse = fraction_power(x, -r)
        return None if inverse is None else 1 / inverse
    powered = x ** r.numerator
    return fraction_root(powered, r.denominator)
