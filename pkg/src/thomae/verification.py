"""Independent verification of the transformation identities.

Three instruments: a two-sided checker that evaluates both sides of a
constructed identity (exactly when both sides terminate, numerically
otherwise), a quadrature oracle that replays the moment-integral
construction behind the unit-argument identities on a Gauss-Jacobi rule,
and a reproducible rejection sampler for admissible random cases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from mpmath import mp, mpf
from scipy.special import gammaln, roots_jacobi

from .errors import NonConvergenceError, PreconditionError
from .exact import ParamPairs, RationalLike, as_rational
from .series import SeriesSpec, eval_numeric, eval_terminating
from .transforms import (
    PochhammerRatioPrefactor,
    TransformResult,
    euler1,
    euler2,
    thomae,
    thomae_terminating,
)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one identity.

    ``verdict`` is "pass", "fail", or "inconclusive"; the last means the
    evaluators could not push their error bounds below the requested
    tolerance within budget, so no judgement is possible.  For exact
    (rational) checks the discrepancy is an exact Fraction and the
    combined tolerance is zero.
    """

    description: str
    lhs_value: object
    rhs_value: object
    discrepancy: object
    combined_tolerance: object
    budget_used: tuple[int, int]
    verdict: str
    precondition_log: tuple[str, ...]
    exact: bool

    def passed(self) -> bool:
        return self.verdict == "pass"


def _condition_log(transform: TransformResult) -> tuple[str, ...]:
    return tuple(
        f"{c.name}: {'ok' if c.satisfied else 'VIOLATED'} ({c.detail})"
        for c in transform.conditions
    )


def verify_transform(
    transform: TransformResult,
    tol: float = 1e-10,
    budget: int = 40_000,
    precision: int = 50,
) -> VerificationReport:
    """Evaluate both sides of an identity and compare.

    When both sides terminate and the prefactor is a rational Pochhammer
    ratio the comparison is exact with zero tolerance.  Otherwise both
    sides are evaluated numerically and the verdict uses the combined
    allowance tol * scale + (lhs bound) + (rhs bound): a failure requires
    a discrepancy exceeding every reported uncertainty.
    """
    log = _condition_log(transform)
    exact_possible = (
        transform.source.termination_index() is not None
        and transform.target.termination_index() is not None
        and isinstance(transform.prefactor, PochhammerRatioPrefactor)
    )
    if exact_possible:
        lhs = eval_terminating(transform.source)
        rhs = transform.prefactor.exact() * eval_terminating(transform.target)
        discrepancy = abs(lhs - rhs)
        verdict = "pass" if discrepancy == 0 else "fail"
        budgets = (
            transform.source.termination_index() + 1,
            transform.target.termination_index() + 1,
        )
        return VerificationReport(
            transform.describe(), lhs, rhs, discrepancy, Fraction(0), budgets, verdict, log, True
        )

    with mp.workdps(precision + 10):
        inner_tol = tol / 8
        pref = transform.prefactor_value(precision)
        lhs_res = eval_numeric(transform.source, precision, inner_tol, budget)
        rhs_res = eval_numeric(
            transform.target, precision, inner_tol / max(1.0, abs(float(pref))), budget
        )
        lhs = lhs_res.value
        rhs = pref * rhs_res.value
        # prefactor itself is accurate to working precision
        pref_bound = abs(pref) * mpf(10) ** (5 - precision)
        rhs_bound = abs(pref) * rhs_res.abs_error_bound + abs(rhs_res.value) * pref_bound
        discrepancy = abs(lhs - rhs)
        scale = max(mpf(1), abs(lhs), abs(rhs))
        combined = mpf(tol) * scale + lhs_res.abs_error_bound + rhs_bound
        bounds_met = (lhs_res.abs_error_bound + rhs_bound) <= mpf(tol) * scale
        if discrepancy > combined:
            verdict = "fail"
        elif bounds_met:
            verdict = "pass"
        else:
            verdict = "inconclusive"
        return VerificationReport(
            transform.describe(),
            +lhs,
            +rhs,
            +discrepancy,
            +combined,
            (lhs_res.terms_used, rhs_res.terms_used),
            verdict,
            log,
            False,
        )


def _series_values_on_nodes(inner: SeriesSpec, xs: np.ndarray) -> np.ndarray:
    """Evaluate the series at each node in float64.

    Terminating series go through an exact-coefficient polynomial;
    otherwise all parameters must be positive and each term is recovered
    from log-gamma values, summed in chunks until the running term drops
    below relative machine noise.
    """
    n = inner.termination_index()
    if n is not None:
        coeffs = []
        kernel = Fraction(1)
        for k in range(n + 1):
            coeffs.append(float(kernel))
            if k < n:
                for a in inner.numerator_params:
                    kernel *= a + k
                for b in inner.denominator_params:
                    kernel /= b + k
                kernel /= k + 1
        powers = np.vander(xs, n + 1, increasing=True)
        return powers @ np.asarray(coeffs)

    nums = [float(a) for a in inner.numerator_params]
    dens = [float(b) for b in inner.denominator_params]
    if any(v <= 0 for v in nums + dens):
        raise PreconditionError(
            "unsupported_inner_parameters",
            "the quadrature oracle needs positive parameters for a "
            "non-terminating integrand series",
        )
    base = sum(gammaln(a) for a in nums) - sum(gammaln(b) for b in dens)
    out = np.zeros_like(xs)
    chunk = 4096
    for i, x in enumerate(xs):
        logx = np.log(x) if x > 0 else -np.inf
        total = 0.0
        k0 = 0
        while True:
            ks = np.arange(k0, k0 + chunk, dtype=float)
            logt = -base - gammaln(ks + 1.0) + ks * logx
            for a in nums:
                logt += gammaln(a + ks)
            for b in dens:
                logt -= gammaln(b + ks)
            terms = np.exp(logt)
            total += terms.sum()
            k0 += chunk
            if terms[-1] <= 1e-17 * max(abs(total), 1e-300) and terms[-1] <= terms[0]:
                break
            if k0 > 8_000_000:
                raise NonConvergenceError(
                    f"series at node x={x} did not converge within 8e6 terms",
                    best=total,
                )
        out[i] = total
    return out


def beta_integral_oracle(
    d: RationalLike,
    e: RationalLike,
    inner: SeriesSpec,
    rel_tol: float = 1e-8,
    max_nodes: int = 768,
) -> float:
    """Integrate x^(d-1) (1-x)^(e-d-1) * F(x) over [0, 1] by quadrature.

    The endpoint weight is absorbed into a Gauss-Jacobi rule, so only the
    series factor is sampled (at strictly interior nodes); the rule size
    doubles until two successive estimates agree to ``rel_tol``.  The
    ``argument`` field of ``inner`` is ignored: the series is evaluated
    in x across the quadrature nodes.
    """
    d = as_rational(d)
    e = as_rational(e)
    if d <= 0:
        raise PreconditionError("d_not_positive", f"need d > 0, got {d}")
    if e - d <= 0:
        raise PreconditionError("ed_not_positive", f"need e-d > 0, got e-d={e - d}")
    if (
        inner.termination_index() is None
        and len(inner.numerator_params) == len(inner.denominator_params) + 1
    ):
        endpoint = (e - d) + min(Fraction(0), inner.excess())
        if endpoint <= 0:
            raise PreconditionError(
                "divergent",
                f"integrand is not integrable at x=1: (e-d) + min(0, excess) = {endpoint}",
            )
    alpha = float(e - d - 1)
    beta = float(d - 1)
    scale = 0.5 ** float(e - 1)
    estimates = []
    n = 24
    while n <= max_nodes:
        nodes, weights = roots_jacobi(n, alpha, beta)
        xs = (1.0 + nodes) / 2.0
        values = _series_values_on_nodes(inner, xs)
        estimates.append(scale * float(weights @ values))
        if len(estimates) >= 2:
            prev, curr = estimates[-2], estimates[-1]
            if abs(curr - prev) <= 0.5 * rel_tol * max(abs(curr), 1e-300):
                return curr
        n *= 2
    raise NonConvergenceError(
        f"quadrature did not stabilize to {rel_tol} within {max_nodes} nodes",
        best=estimates[-1],
        history=estimates,
    )


@dataclass(frozen=True)
class CaseProfile:
    """Constraints for the admissible-case sampler.

    Rational parameters are drawn with numerator and denominator bounded
    by ``max_abs`` in absolute value; every drawn tuple must construct
    its transform without a violated condition, plus the extra filters
    recorded here.
    """

    kind: str = "thomae"
    count: int = 20
    max_r: int = 2
    max_shift: int = 3
    max_abs: int = 12
    min_excess: Fraction = Fraction(1)
    min_ed: Fraction = Fraction(1)
    max_n: int = 6
    argument: Fraction = Fraction(3, 10)
    positive_source: bool = False
    max_weight_coeff: int = 10**6
    attempts_per_case: int = 400


@dataclass
class GeneratedCase:
    """One admissible sampled case and its constructed transform."""

    label: str
    params: dict
    transform: TransformResult


@dataclass
class GeneratedCases:
    cases: list[GeneratedCase]
    note: Optional[str] = None


def _draw_rational(rng: random.Random, max_abs: int, positive: bool = False) -> Fraction:
    num = rng.randint(1 if positive else -max_abs, max_abs)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, max_abs))


def _draw_pairs(rng: random.Random, profile: CaseProfile) -> ParamPairs:
    r = rng.randint(0, profile.max_r)
    pairs = []
    for _ in range(r):
        shift = rng.randint(1, profile.max_shift)
        f = _draw_rational(rng, profile.max_abs, positive=profile.positive_source)
        pairs.append((f, shift))
    return ParamPairs(pairs)


def _weight_small_enough(transform: TransformResult, cap: int) -> bool:
    return all(
        abs(c.numerator) <= cap * c.denominator for c in transform.polynomial.coefficients
    )


def generate_cases(seed: int, profile: CaseProfile) -> GeneratedCases:
    """Deterministic rejection sampling of admissible parameter tuples.

    Draws parameters, attempts the construction, and applies the profile
    filters; identical (seed, profile) always reproduce the same list.
    Returns fewer cases with an explanatory note when the attempt cap is
    exhausted (e.g. for unsatisfiable profiles).
    """
    rng = random.Random(seed)
    found: list[GeneratedCase] = []
    attempts = 0
    cap = profile.count * profile.attempts_per_case
    while len(found) < profile.count and attempts < cap:
        attempts += 1
        try:
            pp = _draw_pairs(rng, profile)
            positive = profile.positive_source
            if profile.kind == "thomae":
                a = _draw_rational(rng, profile.max_abs, positive)
                b = _draw_rational(rng, profile.max_abs, positive)
                d = _draw_rational(rng, profile.max_abs, positive)
                c = _draw_rational(rng, profile.max_abs, positive)
                # choose e so the excess lands at min_excess plus a small bonus
                e = a + b + d + pp.total_shift - c + profile.min_excess + rng.randint(0, 3)
                params = {"a": a, "b": b, "d": d, "c": c, "e": e, "pairs": pp.pairs}
                transform = thomae(a, b, d, c, e, pp)
                s = parametric_excess_of(transform)
                if s < profile.min_excess or (e - d) < profile.min_ed:
                    continue
            elif profile.kind == "thomae_terminating":
                n = rng.randint(0, profile.max_n)
                b = _draw_rational(rng, profile.max_abs, positive)
                d = _draw_rational(rng, profile.max_abs, positive)
                c = _draw_rational(rng, profile.max_abs, positive)
                e = d + profile.min_ed + Fraction(rng.randint(0, 3 * profile.max_abs), profile.max_abs)
                params = {"n": n, "b": b, "d": d, "c": c, "e": e, "pairs": pp.pairs}
                transform = thomae_terminating(n, b, d, c, e, pp)
            elif profile.kind in ("euler1", "euler2"):
                a = _draw_rational(rng, profile.max_abs, positive)
                b = _draw_rational(rng, profile.max_abs, positive)
                c = _draw_rational(rng, profile.max_abs, positive)
                params = {"a": a, "b": b, "c": c, "x": profile.argument, "pairs": pp.pairs}
                builder = euler1 if profile.kind == "euler1" else euler2
                transform = builder(a, b, c, pp, profile.argument)
            else:
                raise ValueError(f"unknown case kind {profile.kind!r}")
            if positive and any(
                v <= 0
                for v in transform.source.numerator_params
                + transform.source.denominator_params
            ):
                continue
            if not _weight_small_enough(transform, profile.max_weight_coeff):
                continue
        except PreconditionError:
            continue
        label = f"{profile.kind}[" + ", ".join(
            f"{k}={_fmt_param(v)}" for k, v in params.items()
        ) + "]"
        found.append(GeneratedCase(label, params, transform))
    note = None
    if len(found) < profile.count:
        note = (
            f"only {len(found)} of {profile.count} requested cases found "
            f"after {attempts} attempts; profile may be unsatisfiable"
        )
    return GeneratedCases(found, note)


def _fmt_param(value) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(f"{f}:{s}" for f, s in value) + ")"
    return str(value)


def parametric_excess_of(transform: TransformResult) -> Fraction:
    """Source-side unit-argument excess of a constructed transform."""
    return transform.source.excess()


@dataclass
class SweepSummary:
    admissible: int
    passed: int
    failed: int
    failures: list[str] = field(default_factory=list)

    def all_passed(self) -> bool:
        return self.failed == 0 and self.admissible > 0


def terminating_sweep(
    max_n: int = 6,
    max_shift: int = 3,
    f_grid: Sequence[RationalLike] = (Fraction(1, 2), Fraction(1, 3), 2),
    b_grid: Sequence[RationalLike] = (Fraction(1, 2), 2, Fraction(-3, 2)),
    d_grid: Sequence[RationalLike] = (Fraction(1, 3), 1),
    c_grid: Sequence[RationalLike] = (Fraction(5, 2), 4),
    e_grid: Sequence[RationalLike] = (Fraction(7, 2), 5, Fraction(13, 3)),
    max_r: int = 1,
) -> SweepSummary:
    """Exhaustive exact check of the terminating identity on a small grid.

    Every admissible tuple must give exactly equal rationals on both
    sides; any discrepancy is recorded verbatim.
    """
    pair_choices: list[ParamPairs] = [ParamPairs()]
    if max_r >= 1:
        for f in f_grid:
            for shift in range(1, max_shift + 1):
                try:
                    pair_choices.append(ParamPairs([(f, shift)]))
                except PreconditionError:
                    continue
    summary = SweepSummary(0, 0, 0)
    for n in range(max_n + 1):
        for pp in pair_choices:
            for b in b_grid:
                for d in d_grid:
                    for c in c_grid:
                        for e in e_grid:
                            try:
                                transform = thomae_terminating(n, b, d, c, e, pp)
                            except PreconditionError:
                                continue
                            summary.admissible += 1
                            report = verify_transform(transform)
                            if report.passed():
                                summary.passed += 1
                            else:
                                summary.failed += 1
                                summary.failures.append(report.description)
    return summary
