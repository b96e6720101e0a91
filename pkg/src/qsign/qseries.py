"""Exact truncated power-series arithmetic over Python integers.

This module is the ground truth of the whole verifier: every sign verdict
ultimately rests on the integer coefficients produced here, so everything
is exact integer arithmetic -- no floating point anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum


class Verdict(Enum):
    MATCH_POSITIVE = "MatchPositive"
    MATCH_NEGATIVE = "MatchNegative"
    ZERO_EXCEPTION = "ZeroException"
    MISMATCH = "Mismatch"


# Residue classes n mod 10 on which the coefficient is positive.
POSITIVE_RESIDUES = {
    1: frozenset({0, 2, 3, 6, 9}),
    -1: frozenset({0, 1, 2, 3, 9}),
}

# The complete (finite) sets of indices where the coefficient vanishes.
# Everywhere else the sign follows POSITIVE_RESIDUES.
ZERO_EXCEPTIONS = {
    1: frozenset({2, 5, 7, 9, 15, 17, 22, 27, 37, 47}),
    -1: frozenset({3, 4, 5, 6, 9, 13, 19, 23, 29, 39}),
}

# Residues mod 10 of the factor indices: numerator residues get exponent
# +delta, denominator residues -delta.
_NUMERATOR_RESIDUES = (1, 9)
_DENOMINATOR_RESIDUES = (3, 7)


class TruncatedSeries:
    """Integer power series in q, truncated inclusively at ``order``.

    Arithmetic between two series of different orders truncates to the
    smaller one, so coefficients are never silently wrong.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = tuple(int(c) for c in coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) != order + 1:
            raise ValueError(
                f"need {order + 1} coefficients for order {order}, got {len(coeffs)}"
            )
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,) + (0,) * order, order)

    def coefficient(self, n: int) -> int:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient index {n} outside [0, {self.order}]")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order > 5 else ""
        return f"TruncatedSeries(order={self.order}, coeffs=[{head}{tail}])"

    def to_json_dict(self, delta: int | None = None) -> dict:
        """Wire format: coefficients as decimal strings (they can exceed 64 bits)."""
        out = {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}
        if delta is not None:
            out["delta"] = delta
        return out

    def to_json(self, delta: int | None = None) -> str:
        return json.dumps(self.to_json_dict(delta), sort_keys=True)


@dataclass(frozen=True)
class ResidueProductSpec:
    """Product over n == residue (mod modulus) of (1 - q^n), or its reciprocal."""

    residue: int
    modulus: int
    sign_exponent: int = 1

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if self.sign_exponent not in (1, -1):
            raise ValueError("sign_exponent must be +1 or -1")
        object.__setattr__(self, "residue", self.residue % self.modulus)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at min(a.order, b.order)."""
    n = min(a.order, b.order)
    # iterate over the sparser operand for products against near-monomials
    if sum(1 for c in a.coeffs[: n + 1] if c) > sum(1 for c in b.coeffs[: n + 1] if c):
        a, b = b, a
    out = [0] * (n + 1)
    for i, ai in enumerate(a.coeffs[: n + 1]):
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(out, n)


def series_recip(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse by term-by-term long division.

    Requires the constant term to be a unit (+1 or -1) so that the result
    has integer coefficients.
    """
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise ValueError("non-invertible series: constant term must be +1 or -1")
    n = a.order
    out = [0] * (n + 1)
    out[0] = a0
    for m in range(1, n + 1):
        acc = 0
        for j in range(1, m + 1):
            aj = a.coeffs[j]
            if aj:
                acc += aj * out[m - j]
        out[m] = -a0 * acc
    return TruncatedSeries(out, n)


def pochhammer_inf(spec: ResidueProductSpec, order: int) -> TruncatedSeries:
    """Expansion of prod_{n == residue (mod modulus), 1 <= n <= order} (1 - q^n).

    Factors with n > order cannot touch coefficients <= order. The
    reciprocal is taken when sign_exponent is -1.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    series = TruncatedSeries.one(order)
    start = spec.residue if spec.residue >= 1 else spec.modulus
    for n in range(start, order + 1, spec.modulus):
        factor = [0] * (order + 1)
        factor[0] = 1
        factor[n] = -1
        series = series_mul(series, TruncatedSeries(factor, order))
    if spec.sign_exponent == -1:
        series = series_recip(series)
    return series


def _apply_factor(coeffs: list[int], a: int, exponent: int) -> None:
    """Multiply (exponent=+1) or divide (exponent=-1) by (1 - q^a), in place."""
    n = len(coeffs) - 1
    if exponent == 1:
        # descending order so untouched originals are read
        for m in range(n, a - 1, -1):
            coeffs[m] -= coeffs[m - a]
    else:
        # geometric-series recurrence b[m] = c[m] + b[m-a]
        for m in range(a, n + 1):
            coeffs[m] += coeffs[m - a]


def q10_series(delta: int, order: int) -> TruncatedSeries:
    """Coefficients c_delta(0..order) of the residue-product quotient.

    The quotient has factors (1-q^n) with n == 1, 9 (mod 10) in the
    numerator and n == 3, 7 (mod 10) in the denominator; ``delta`` = -1
    swaps the roles.  Each factor is applied by an O(order) in-place pass,
    so the whole expansion is O(order^2 / 5) integer operations.
    """
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for a in range(1, order + 1):
        r = a % 10
        if r in _NUMERATOR_RESIDUES:
            _apply_factor(coeffs, a, delta)
        elif r in _DENOMINATOR_RESIDUES:
            _apply_factor(coeffs, a, -delta)
    return TruncatedSeries(coeffs, order)


def q10_series_from_factors(delta: int, order: int) -> TruncatedSeries:
    """Same expansion assembled from pochhammer_inf and series_recip.

    Independent of the fast route in q10_series; used to cross-check it.
    """
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    num = series_mul(
        pochhammer_inf(ResidueProductSpec(1, 10), order),
        pochhammer_inf(ResidueProductSpec(9, 10), order),
    )
    den = series_mul(
        pochhammer_inf(ResidueProductSpec(3, 10), order),
        pochhammer_inf(ResidueProductSpec(7, 10), order),
    )
    if delta == 1:
        return series_mul(num, series_recip(den))
    return series_mul(den, series_recip(num))


def sign_pattern_verdict(delta: int, n: int, c: int) -> Verdict:
    """Compare sgn(c) against the periodic pattern for index n.

    A zero coefficient is a ZeroException only at the finitely many known
    vanishing indices; a zero anywhere else, or a sign against the pattern,
    is a Mismatch.
    """
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    if c == 0:
        if n in ZERO_EXCEPTIONS[delta]:
            return Verdict.ZERO_EXCEPTION
        return Verdict.MISMATCH
    positive = n % 10 in POSITIVE_RESIDUES[delta]
    if (c > 0) == positive:
        return Verdict.MATCH_POSITIVE if positive else Verdict.MATCH_NEGATIVE
    return Verdict.MISMATCH
