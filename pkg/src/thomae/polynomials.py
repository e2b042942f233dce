"""Dense univariate polynomials over the rationals and the parametric
weight polynomials of the transformation theorems.

The two weight families built here are degree-m polynomials normalized to
value 1 at the origin; their nonvanishing zeros become the shifted
parameter pairs of a transformed series.  A simultaneous-iteration
(Aberth-Ehrlich) root finder recovers those zeros numerically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NonConvergenceError, PreconditionError
from .exact import ParamPairs, RationalLike, as_rational, c_coefficients, pochhammer


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial with exact rational coefficients, ascending order.

    Trailing zero coefficients are stripped; the zero polynomial is the
    empty tuple and reports degree -1.
    """

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[RationalLike] = ()) -> None:
        coeffs = [as_rational(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def constant(cls, value: RationalLike) -> "RationalPolynomial":
        return cls([as_rational(value)])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, cb in enumerate(b):
            out[i] += cb
        return RationalPolynomial(out)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if self.is_zero() or other.is_zero():
                return RationalPolynomial()
            out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, ca in enumerate(self.coefficients):
                if ca == 0:
                    continue
                for j, cb in enumerate(other.coefficients):
                    out[i + j] += ca * cb
            return RationalPolynomial(out)
        scalar = as_rational(other)
        return RationalPolynomial([c * scalar for c in self.coefficients])

    __rmul__ = __mul__

    def evaluate(self, t: RationalLike) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def divide_by_root(self, root: RationalLike) -> "RationalPolynomial":
        """Exact deflation by a known rational root: self / (t - root).

        Raises ValueError if ``root`` is not actually a zero.
        """
        root = as_rational(root)
        coeffs = self.coefficients
        if len(coeffs) < 2:
            raise ValueError("cannot deflate a constant polynomial")
        out = [Fraction(0)] * (len(coeffs) - 1)
        carry = coeffs[-1]
        for i in range(len(coeffs) - 2, 0, -1):
            out[i] = carry
            carry = coeffs[i] + carry * root
        out[0] = carry
        remainder = coeffs[0] + carry * root
        if remainder != 0:
            raise ValueError(f"{root} is not a root (remainder {remainder})")
        return RationalPolynomial(out)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if power == 0:
                parts.append(str(c))
            elif power == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{power}")
        return " + ".join(parts).replace("+ -", "- ")


def rising_factorial_poly(offset: RationalLike, count: int) -> RationalPolynomial:
    """The polynomial (t + offset)(t + offset + 1)...(count factors)."""
    offset = as_rational(offset)
    out = RationalPolynomial.constant(1)
    for i in range(count):
        out = out * RationalPolynomial([offset + i, 1])
    return out


def reversed_rising_poly(base: RationalLike, count: int) -> RationalPolynomial:
    """The polynomial (base - t)(base - t + 1)...(count factors)."""
    base = as_rational(base)
    out = RationalPolynomial.constant(1)
    for i in range(count):
        out = out * RationalPolynomial([base + i, -1])
    return out


def build_G(m: int, k: int, a: RationalLike, b: RationalLike, c: RationalLike) -> RationalPolynomial:
    """Inner terminating-sum polynomial of degree m - k used by build_Qhat.

    G(t) = sum_{i=0}^{m-k} [(-m+k)_i (c-a-b-m)_i] /
           [(c-a-m+k)_i (c-b-m+k)_i i!] * (t+k)(t+k+1)...(i factors)
    """
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    den1 = c - a - m + k
    den2 = c - b - m + k
    for i in range(m - k):
        if den1 + i == 0 or den2 + i == 0:
            raise PreconditionError(
                "degenerate_g_denominator",
                f"denominator factor vanishes at step {i}: "
                f"(c-a-m+k)={den1}, (c-b-m+k)={den2}",
            )
    total = RationalPolynomial.constant(1)
    coeff = Fraction(1)
    for i in range(1, m - k + 1):
        coeff *= Fraction(-m + k + i - 1) * (c - a - b - m + i - 1)
        coeff /= (den1 + i - 1) * (den2 + i - 1) * i
        total = total + coeff * rising_factorial_poly(k, i)
    return total


def build_Q(pp: ParamPairs, b: RationalLike, c: RationalLike) -> RationalPolynomial:
    """First parametric weight polynomial, degree total_shift, value 1 at 0.

    Built from the expansion
        Q(t) = (1/(L)_m) * sum_k (b)_k C_k (t)_k (L - t)_{m-k},
    where m is the total shift and the base offset is L = c - b - m.  This
    offset choice is the one consistent with the degree-1 and degree-2
    closed forms and with the exact terminating transformation identities.
    """
    b, c = as_rational(b), as_rational(c)
    m = pp.total_shift
    for f, _ in pp.pairs:
        if b == f:
            raise PreconditionError(
                "b_equals_f", f"parameter b={b} coincides with base parameter f={f}"
            )
    lam = c - b - m
    if pochhammer(lam, m) == 0:
        raise PreconditionError(
            "cbm_pochhammer_zero", f"(c-b-m)_m vanishes for c-b-m={lam}, m={m}"
        )
    cks = c_coefficients(pp)
    total = RationalPolynomial()
    bk = Fraction(1)
    for k in range(m + 1):
        term = bk * cks[k] * rising_factorial_poly(0, k) * reversed_rising_poly(lam, m - k)
        total = total + term
        bk *= b + k
    return total * (Fraction(1) / pochhammer(lam, m))


def build_Qhat(
    pp: ParamPairs, a: RationalLike, b: RationalLike, c: RationalLike
) -> RationalPolynomial:
    """Second parametric weight polynomial, degree total_shift, value 1 at 0.

    Q^(t) = sum_k [(-1)^k C_k (a)_k (b)_k / ((c-a-m)_k (c-b-m)_k)] (t)_k G_{m,k}(t).
    """
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    m = pp.total_shift
    if pochhammer(c - a - m, m) == 0:
        raise PreconditionError(
            "cam_pochhammer_zero", f"(c-a-m)_m vanishes for c-a-m={c - a - m}, m={m}"
        )
    if pochhammer(c - b - m, m) == 0:
        raise PreconditionError(
            "cbm_pochhammer_zero", f"(c-b-m)_m vanishes for c-b-m={c - b - m}, m={m}"
        )
    cks = c_coefficients(pp)
    total = RationalPolynomial()
    front = Fraction(1)  # (-1)^k (a)_k (b)_k / ((c-a-m)_k (c-b-m)_k)
    for k in range(m + 1):
        term = front * cks[k] * rising_factorial_poly(0, k) * build_G(m, k, a, b, c)
        total = total + term
        if k < m:
            front *= -(a + k) * (b + k) / ((c - a - m + k) * (c - b - m + k))
    return total


@dataclass(frozen=True)
class ZeroSet:
    """Numerically found zeros (with multiplicity) and their residuals.

    Zeros are sorted by (real, imaginary) for deterministic output;
    residuals are |p(z)| / sum_i |c_i| |z|^i, i.e. relative to the
    coefficient magnitude at the point.
    """

    zeros: tuple[complex, ...]
    residuals: tuple[float, ...]
    converged: bool
    iterations: int


def find_zeros(
    p: RationalPolynomial, tol: float = 1e-13, max_iterations: int = 200
) -> ZeroSet:
    """All complex zeros of ``p`` by Aberth-Ehrlich simultaneous iteration.

    Requires degree >= 1 and p(0) != 0.  Initial guesses sit on a circle of
    radius 1 + max|c_i / c_deg| with a fixed angular jitter.  On failure to
    converge within ``max_iterations`` a NonConvergenceError carrying the
    best iterate is raised.
    """
    if p.is_zero() or p.degree < 1:
        raise PreconditionError("degenerate_polynomial", "need degree >= 1")
    if p.coefficients[0] == 0:
        raise PreconditionError("degenerate_polynomial", "polynomial vanishes at 0")
    coeffs = [float(c) for c in p.coefficients]
    deg = p.degree
    lead = coeffs[-1]
    radius = 1.0 + max(abs(c / lead) for c in coeffs[:-1])
    jitter = 0.41  # fixed angular offset so guesses avoid the real axis
    zs = [
        radius * cmath.exp(2j * cmath.pi * (i + jitter) / deg + 0.1j)
        for i in range(deg)
    ]

    def horner_with_derivative(z: complex) -> tuple[complex, complex]:
        val = 0j
        der = 0j
        for c in reversed(coeffs):
            der = der * z + val
            val = val * z + c
        return val, der

    def relative_residual(z: complex) -> float:
        val, _ = horner_with_derivative(z)
        scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(coeffs))
        return abs(val) / scale if scale else abs(val)

    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        offsets = []
        for i, z in enumerate(zs):
            val, der = horner_with_derivative(z)
            if val == 0:
                offsets.append(0j)
                continue
            newton = val / der if der != 0 else 0.1 + 0.1j
            repulsion = sum(1.0 / (z - w) for j, w in enumerate(zs) if j != i)
            denom = 1.0 - newton * repulsion
            offsets.append(newton / denom if denom != 0 else newton)
        zs = [z - dz for z, dz in zip(zs, offsets)]
        if all(relative_residual(z) <= tol for z in zs):
            converged = True
            break

    zs.sort(key=lambda z: (z.real, z.imag))
    residuals = tuple(relative_residual(z) for z in zs)
    result = ZeroSet(tuple(zs), residuals, converged, iterations)
    if not converged:
        raise NonConvergenceError(
            f"root finder did not reach tolerance {tol} in {iterations} iterations",
            best=result,
            history=residuals,
        )
    return result
