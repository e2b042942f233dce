"""Construction of the transformation identities.

Each constructor checks every admissibility condition of its identity,
builds the parametric weight polynomial, and returns a
:class:`TransformResult` pairing a prefactor descriptor with the target
series.  Targets are carried in weighted form (kernel plus polynomial
weight), so no polynomial zeros are ever needed to evaluate them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

from .errors import PreconditionError
from .exact import ParamPairs, RationalLike, as_rational, pochhammer
from .polynomials import RationalPolynomial, build_Q, build_Qhat
from .series import (
    SeriesSpec,
    WeightedSeriesSpec,
    gamma_ratio,
    parametric_excess,
)


@dataclass(frozen=True)
class PowerOfOneMinusX:
    """Prefactor (1-x)^exponent, evaluated at the source argument."""

    exponent: Fraction

    def numeric(self, x: Fraction, precision: int = 50):
        with mp.workdps(precision + 10):
            base = 1 - mpf(x.numerator) / x.denominator
            expo = mpf(self.exponent.numerator) / self.exponent.denominator
            return +(base**expo)

    def describe(self) -> str:
        return f"(1-x)^({self.exponent})"


@dataclass(frozen=True)
class GammaRatioPrefactor:
    """Prefactor prod Gamma(numerators) / prod Gamma(denominators)."""

    numerators: tuple[Fraction, ...]
    denominators: tuple[Fraction, ...]

    def numeric(self, precision: int = 50):
        return gamma_ratio(self.numerators, self.denominators, precision)

    def describe(self) -> str:
        num = " ".join(f"G({a})" for a in self.numerators)
        den = " ".join(f"G({b})" for b in self.denominators)
        return f"{num} / [{den}]"


@dataclass(frozen=True)
class PochhammerRatioPrefactor:
    """Prefactor (top)_count / (bottom)_count, exactly rational."""

    top: Fraction
    bottom: Fraction
    count: int

    def exact(self) -> Fraction:
        denominator = pochhammer(self.bottom, self.count)
        if denominator == 0:
            raise PreconditionError(
                "en_pochhammer_zero",
                f"({self.bottom})_{self.count} vanishes in the prefactor",
            )
        return pochhammer(self.top, self.count) / denominator

    def numeric(self, precision: int = 50):
        value = self.exact()
        with mp.workdps(precision + 10):
            return +(mpf(value.numerator) / value.denominator)

    def describe(self) -> str:
        return f"({self.top})_{self.count} / ({self.bottom})_{self.count}"


PrefactorDescriptor = Union[PowerOfOneMinusX, GammaRatioPrefactor, PochhammerRatioPrefactor]


@dataclass(frozen=True)
class ConditionCheck:
    """One named admissibility condition together with its outcome."""

    name: str
    satisfied: bool
    detail: str


@dataclass(frozen=True)
class TransformResult:
    """A validated identity: source series == prefactor * target series."""

    kind: str
    prefactor: PrefactorDescriptor
    target: WeightedSeriesSpec
    source: SeriesSpec
    polynomial: RationalPolynomial
    conditions: tuple[ConditionCheck, ...]

    def prefactor_value(self, precision: int = 50):
        """Numeric prefactor at the working precision."""
        if isinstance(self.prefactor, PowerOfOneMinusX):
            return self.prefactor.numeric(self.source.argument, precision)
        return self.prefactor.numeric(precision)

    def describe(self) -> str:
        return (
            f"{self.kind}: {self.source.describe()} == "
            f"{self.prefactor.describe()} * [{self.target.describe()}]"
        )


def _check(conditions: list[ConditionCheck], name: str, ok: bool, detail: str) -> None:
    conditions.append(ConditionCheck(name, ok, detail))


def _check_c_regular(conditions: list[ConditionCheck], c: Fraction) -> None:
    # A nonpositive-integer c breaks the analytic identities even when a
    # terminating numerator shields the literal series from the pole.
    ok = not (c.denominator == 1 and c.numerator <= 0)
    _check(conditions, "c_nonpositive_integer", ok, f"c={c} must not be a nonpositive integer")


def _enforce(conditions: list[ConditionCheck]) -> None:
    failed = [c for c in conditions if not c.satisfied]
    if failed:
        summary = "; ".join(f"{c.name}: {c.detail}" for c in failed)
        raise PreconditionError(failed[0].name, summary)


def euler1(
    a: RationalLike,
    b: RationalLike,
    c: RationalLike,
    pp: ParamPairs,
    x: RationalLike,
) -> TransformResult:
    """Argument-mapping transformation with prefactor (1-x)^(-a).

    Sends the series at x to a weighted series at x/(x-1) whose weight is
    the first parametric polynomial.
    """
    a, b, c, x = map(as_rational, (a, b, c, x))
    m = pp.total_shift
    conditions: list[ConditionCheck] = []
    for f, _ in pp.pairs:
        _check(conditions, "b_equals_f", b != f, f"b={b} must differ from base parameter {f}")
    _check(
        conditions,
        "cbm_pochhammer_zero",
        pochhammer(c - b - m, m) != 0,
        f"(c-b-m)_m must be nonzero, c-b-m={c - b - m}",
    )
    _check(conditions, "argument_out_of_range", x < 1, f"need x < 1, got {x}")
    _check_c_regular(conditions, c)
    _enforce(conditions)
    weight = build_Q(pp, b, c)
    source = SeriesSpec(
        (a, b) + pp.numerator_parameters(), (c,) + pp.denominator_parameters(), x
    )
    target = WeightedSeriesSpec((a, c - b - m), (c,), weight, x / (x - 1))
    return TransformResult("euler1", PowerOfOneMinusX(-a), target, source, weight, tuple(conditions))


def euler2(
    a: RationalLike,
    b: RationalLike,
    c: RationalLike,
    pp: ParamPairs,
    x: RationalLike,
) -> TransformResult:
    """Argument-preserving transformation with prefactor (1-x)^(c-a-b-m)."""
    a, b, c, x = map(as_rational, (a, b, c, x))
    m = pp.total_shift
    conditions: list[ConditionCheck] = []
    _check(
        conditions,
        "cam_pochhammer_zero",
        pochhammer(c - a - m, m) != 0,
        f"(c-a-m)_m must be nonzero, c-a-m={c - a - m}",
    )
    _check(
        conditions,
        "cbm_pochhammer_zero",
        pochhammer(c - b - m, m) != 0,
        f"(c-b-m)_m must be nonzero, c-b-m={c - b - m}",
    )
    _check(conditions, "argument_out_of_range", x < 1, f"need x < 1, got {x}")
    _check_c_regular(conditions, c)
    _enforce(conditions)
    weight = build_Qhat(pp, a, b, c)
    source = SeriesSpec(
        (a, b) + pp.numerator_parameters(), (c,) + pp.denominator_parameters(), x
    )
    target = WeightedSeriesSpec((c - a - m, c - b - m), (c,), weight, x)
    return TransformResult(
        "euler2", PowerOfOneMinusX(c - a - b - m), target, source, weight, tuple(conditions)
    )


def thomae(
    a: RationalLike,
    b: RationalLike,
    d: RationalLike,
    c: RationalLike,
    e: RationalLike,
    pp: ParamPairs,
) -> TransformResult:
    """Unit-argument transformation with gamma-ratio prefactor.

    Source and target both sit at unit argument; positivity of the
    parametric excess s and of e-d are required for convergence.
    """
    a, b, d, c, e = map(as_rational, (a, b, d, c, e))
    m = pp.total_shift
    s = parametric_excess(a, b, c, d, e, m)
    conditions: list[ConditionCheck] = []
    _check(
        conditions,
        "cam_pochhammer_zero",
        pochhammer(c - a - m, m) != 0,
        f"(c-a-m)_m must be nonzero, c-a-m={c - a - m}",
    )
    _check(
        conditions,
        "cbm_pochhammer_zero",
        pochhammer(c - b - m, m) != 0,
        f"(c-b-m)_m must be nonzero, c-b-m={c - b - m}",
    )
    _check(conditions, "ed_not_positive", e - d > 0, f"need e-d > 0, got {e - d}")
    _check(conditions, "excess_not_positive", s > 0, f"need excess > 0, got s={s}")
    _check_c_regular(conditions, c)
    for name, value in (("e", e), ("s_plus_d", s + d)):
        pole = value.denominator == 1 and value.numerator <= 0
        _check(
            conditions,
            "gamma_pole",
            not pole,
            f"gamma argument {name}={value} is a nonpositive integer",
        )
    _enforce(conditions)
    weight = build_Qhat(pp, a, b, c)
    source = SeriesSpec(
        (a, b, d) + pp.numerator_parameters(),
        (c, e) + pp.denominator_parameters(),
        Fraction(1),
    )
    target = WeightedSeriesSpec((c - a - m, c - b - m, d), (c, s + d), weight, Fraction(1))
    prefactor = GammaRatioPrefactor((e, s), (e - d, s + d))
    return TransformResult("thomae", prefactor, target, source, weight, tuple(conditions))


def thomae_terminating(
    n: int,
    b: RationalLike,
    d: RationalLike,
    c: RationalLike,
    e: RationalLike,
    pp: ParamPairs,
) -> TransformResult:
    """Terminating unit-argument transformation; both sides exact rationals."""
    if n < 0:
        raise PreconditionError("invalid_terminating_index", f"need n >= 0, got {n}")
    b, d, c, e = map(as_rational, (b, d, c, e))
    m = pp.total_shift
    conditions: list[ConditionCheck] = []
    for f, _ in pp.pairs:
        _check(conditions, "b_equals_f", b != f, f"b={b} must differ from base parameter {f}")
    _check(
        conditions,
        "cbm_pochhammer_zero",
        pochhammer(c - b - m, m) != 0,
        f"(c-b-m)_m must be nonzero, c-b-m={c - b - m}",
    )
    _check(conditions, "ed_not_positive", e - d > 0, f"need e-d > 0, got {e - d}")
    _check(
        conditions,
        "en_pochhammer_zero",
        pochhammer(e, n) != 0,
        f"(e)_n must be nonzero, e={e}, n={n}",
    )
    _enforce(conditions)
    weight = build_Q(pp, b, c)
    source = SeriesSpec(
        (Fraction(-n), b, d) + pp.numerator_parameters(),
        (c, e) + pp.denominator_parameters(),
        Fraction(1),
    )
    target = WeightedSeriesSpec(
        (Fraction(-n), c - b - m, d), (c, 1 - e + d - n), weight, Fraction(1)
    )
    prefactor = PochhammerRatioPrefactor(e - d, e, n)
    return TransformResult(
        "thomae_terminating", prefactor, target, source, weight, tuple(conditions)
    )


def contract_pairs(target: WeightedSeriesSpec) -> WeightedSeriesSpec:
    """Cancel weight zeros against matching kernel parameters.

    A weight zero z contributes the shifted pair (z+1)/(z).  When z+1
    equals a kernel denominator that denominator is traded for z; when z
    equals a kernel numerator that numerator is traded for z+1.  Either
    way the weight loses the factor (1 - t/z), the series order drops by
    one, and the value is unchanged term by term.  No-op when nothing
    matches.
    """
    nums = list(target.kernel_numerators)
    dens = list(target.kernel_denominators)
    weight = target.weight
    changed = True
    while changed and weight.degree >= 1:
        changed = False
        for i, den in enumerate(dens):
            z = den - 1
            if z != 0 and weight.evaluate(z) == 0:
                candidate_weight = -z * weight.divide_by_root(z)
                try:
                    WeightedSeriesSpec(
                        nums, dens[:i] + [z] + dens[i + 1 :], candidate_weight, target.argument
                    )
                except PreconditionError:
                    continue
                dens[i] = z
                weight = candidate_weight
                changed = True
                break
        if changed:
            continue
        for i, num in enumerate(nums):
            z = num
            if z != 0 and weight.evaluate(z) == 0:
                candidate_weight = -z * weight.divide_by_root(z)
                try:
                    WeightedSeriesSpec(
                        nums[:i] + [z + 1] + nums[i + 1 :], dens, candidate_weight, target.argument
                    )
                except PreconditionError:
                    continue
                nums[i] = z + 1
                weight = candidate_weight
                changed = True
                break
    return WeightedSeriesSpec(nums, dens, weight, target.argument)
