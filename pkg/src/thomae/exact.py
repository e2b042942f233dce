"""Exact rational building blocks.

Rising factorials, Stirling numbers of the second kind, and the
coefficient family attached to a list of parameter pairs whose members
differ by positive integers.  Everything in this module is computed over
``fractions.Fraction`` with no rounding anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import PreconditionError

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, ``"p/q"`` string, or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def pochhammer(a: RationalLike, n: int) -> Fraction:
    """Ascending factorial a(a+1)...(a+n-1), with the empty product equal to 1."""
    if n < 0:
        raise ValueError("ascending factorial needs n >= 0")
    a = as_rational(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def pochhammer_product(params: Iterable[RationalLike], k: int) -> Fraction:
    """Product of ascending factorials (a_1)_k ... (a_p)_k; empty list gives 1."""
    out = Fraction(1)
    for a in params:
        out *= pochhammer(a, k)
    return out


def falling_factorial(x: RationalLike, k: int) -> Fraction:
    """Descending factorial x(x-1)...(x-k+1)."""
    if k < 0:
        raise ValueError("descending factorial needs k >= 0")
    x = as_rational(x)
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


_STIRLING_ROWS: list[list[int]] = [[1]]


def stirling2(j: int, k: int) -> int:
    """Stirling number of the second kind S(j, k).

    Computed row by row from S(j,k) = k*S(j-1,k) + S(j-1,k-1) with
    S(0,0) = 1; rows are cached for reuse.
    """
    if j < 0 or k < 0:
        raise ValueError("Stirling indices must be nonnegative")
    if k > j:
        return 0
    while len(_STIRLING_ROWS) <= j:
        prev = _STIRLING_ROWS[-1]
        n = len(_STIRLING_ROWS)
        row = [0] * (n + 1)
        for i in range(1, n + 1):
            above = prev[i] if i < n else 0
            row[i] = i * above + prev[i - 1]
        _STIRLING_ROWS.append(row)
    return _STIRLING_ROWS[j][k]


@dataclass(frozen=True)
class ParamPairs:
    """The base parameters and positive-integer offsets of the shifted pairs.

    Each entry (f, shift) stands for the numerator/denominator pair
    (f + shift, f).  The empty list is a first-class value: it has total
    shift 0 and describes the classical, unshifted setting.
    """

    pairs: tuple[tuple[Fraction, int], ...]

    def __init__(self, pairs: Iterable[tuple[RationalLike, int]] = ()) -> None:
        normalized = []
        for f, shift in pairs:
            f = as_rational(f)
            shift = int(shift)
            if shift < 1:
                raise PreconditionError(
                    "invalid_param_pairs", f"pair offset must be >= 1, got {shift}"
                )
            # A nonpositive-integer base makes (f)_k vanish at some index, so
            # the pair ratio (f+shift)_k/(f)_k stops matching its polynomial
            # form and the transformation identities genuinely break.
            if f.denominator == 1 and f.numerator <= 0:
                raise PreconditionError(
                    "invalid_param_pairs",
                    f"base parameter must not be a nonpositive integer, got {f}",
                )
            normalized.append((f, shift))
        object.__setattr__(self, "pairs", tuple(normalized))

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def total_shift(self) -> int:
        """Sum of the pair offsets; the degree of the weight polynomials."""
        return sum(shift for _, shift in self.pairs)

    @property
    def poch_product(self) -> Fraction:
        """(f_1)_{shift_1} ... (f_r)_{shift_r}, guaranteed nonzero."""
        out = Fraction(1)
        for f, shift in self.pairs:
            out *= pochhammer(f, shift)
        return out

    def numerator_parameters(self) -> tuple[Fraction, ...]:
        return tuple(f + shift for f, shift in self.pairs)

    def denominator_parameters(self) -> tuple[Fraction, ...]:
        return tuple(f for f, _ in self.pairs)

    def describe(self) -> str:
        if not self.pairs:
            return "(no shifted pairs)"
        return ", ".join(f"{f}:{shift}" for f, shift in self.pairs)


def sigma_coefficients(pp: ParamPairs) -> list[Fraction]:
    """Coefficients of prod_j (f_j + x)_{shift_j} expanded in powers of x.

    Returns the ascending list of length total_shift + 1.  The constant
    term equals ``pp.poch_product`` and the leading term is 1.
    """
    coeffs = [Fraction(1)]
    for f, shift in pp.pairs:
        for i in range(shift):
            root = f + i
            # multiply by (root + x)
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for d, cd in enumerate(coeffs):
                nxt[d] += cd * root
                nxt[d + 1] += cd
            coeffs = nxt
    return coeffs


def c_coefficients(pp: ParamPairs) -> list[Fraction]:
    """The pair-expansion coefficients C_0..C_m of the shifted product.

    C_k = (1/L) * sum_{j=k}^{m} sigma_j * S(j, k) where L is the
    ascending-factorial product over the pairs and S the Stirling numbers
    of the second kind.  Always C_0 = 1 and C_m = 1/L exactly.
    """
    m = pp.total_shift
    norm = pp.poch_product
    sigma = sigma_coefficients(pp)
    return [
        sum((sigma[j] * stirling2(j, k) for j in range(k, m + 1)), Fraction(0)) / norm
        for k in range(m + 1)
    ]


def c_via_terminating_series(pp: ParamPairs, k: int) -> Fraction:
    """Independent route to C_k as a finite unit-argument hypergeometric sum.

    C_k = ((-1)^k / k!) * sum_{i=0}^{k} (-k)_i * prod_j (f_j+shift_j)_i/(f_j)_i / i!

    Exact, and used as a cross-check oracle for :func:`c_coefficients`.
    """
    if k < 0 or k > pp.total_shift:
        raise ValueError(f"index {k} outside 0..{pp.total_shift}")
    total = Fraction(0)
    term = Fraction(1)  # i = 0 value of (-k)_i * prod / i!
    for i in range(k + 1):
        total += term
        # advance i -> i+1
        ratio = Fraction(-k + i, i + 1)
        for f, shift in pp.pairs:
            ratio *= (f + shift + i) / (f + i)
        term *= ratio
    sign = -1 if k % 2 else 1
    factorial_k = 1
    for i in range(2, k + 1):
        factorial_k *= i
    return Fraction(sign, factorial_k) * total
