"""Acceptance criteria.

Each test implements one exit criterion at its stated tolerance and
runtime limit and prints a single PASS line (visible with ``pytest -s``).
Tolerances are pinned here, not configurable.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from mpmath import mp, mpf

from thomae.errors import PreconditionError
from thomae.exact import (
    ParamPairs,
    c_coefficients,
    c_via_terminating_series,
    pochhammer,
)
from thomae.polynomials import build_G, build_Q, build_Qhat, find_zeros
from thomae.series import SeriesSpec, WeightedSeriesSpec, eval_numeric, eval_terminating, gamma_ratio
from thomae.transforms import euler1, euler2, thomae, thomae_terminating
from thomae.verification import (
    CaseProfile,
    beta_integral_oracle,
    generate_cases,
    terminating_sweep,
    verify_transform,
)

F = Fraction
QUAD_PAIRS = ParamPairs([(F(1, 2), 2)])
A, B, C = F(1, 4), F(5, 2), F(3, 2)


def _finish(number: int, label: str, started: float, limit: float) -> None:
    elapsed = time.perf_counter() - started
    assert elapsed < limit, f"criterion {number} exceeded {limit}s ({elapsed:.1f}s)"
    print(f"ACCEPTANCE {number:2d} [{label}]: PASS ({elapsed:.2f}s, limit {limit:.0f}s)")


def _random_base(rng: random.Random) -> Fraction:
    while True:
        f = F(rng.randint(-12, 12), rng.randint(1, 12))
        if f != 0 and not (f.denominator == 1 and f.numerator <= 0):
            return f


def test_criterion_01_quadratic_fixture():
    started = time.perf_counter()
    q = build_Q(QUAD_PAIRS, B, C)
    assert q.coefficients == (F(1), F(-20, 9), F(4, 9))
    qh = build_Qhat(QUAD_PAIRS, A, B, C)
    assert qh.coefficients == (F(1), F(-20, 27), F(-68, 27))
    zq = find_zeros(q).zeros
    assert abs(zq[0] - 0.5) < 1e-10 and abs(zq[1] - 4.5) < 1e-10
    zh = find_zeros(qh).zeros
    assert abs(zh[0] - (-27 / 34)) < 1e-10 and abs(zh[1] - 0.5) < 1e-10
    _finish(1, "quadratic fixture", started, 1.0)


def test_criterion_02_coefficient_triple_agreement():
    started = time.perf_counter()
    rng = random.Random(202)
    for _ in range(20):
        f = _random_base(rng)
        for m in range(1, 9):
            pp = ParamPairs([(f, m)])
            direct = c_coefficients(pp)
            for k in range(m + 1):
                alternative = c_via_terminating_series(pp, k)
                closed_form = F(math.comb(m, k)) / pochhammer(f, k)
                assert direct[k] == alternative == closed_form
    _finish(2, "coefficient triple agreement", started, 5.0)


def test_criterion_03_terminating_exact_sweep():
    started = time.perf_counter()
    summary = terminating_sweep()
    assert summary.admissible >= 500
    assert summary.failed == 0
    assert summary.passed == summary.admissible
    _finish(3, f"terminating sweep ({summary.admissible} cases)", started, 60.0)


def test_criterion_04_terminating_family_fixture():
    started = time.perf_counter()
    choices = ((F(1, 3), F(7, 2)), (F(1), F(5)), (F(5, 4), F(29, 6)))
    for d, e in choices:
        assert e - d > 0
        for n in range(6):
            t = thomae_terminating(n, B, d, C, e, QUAD_PAIRS)
            assert t.target.termination_index() == min(n, 3)
            lhs = eval_terminating(t.source)
            rhs = t.prefactor.exact() * eval_terminating(t.target)
            assert lhs == rhs
    _finish(4, "terminating family, 3 weights x n=0..5", started, 5.0)


def test_criterion_05_unit_argument_fixture():
    started = time.perf_counter()
    t = thomae(A, B, F(1), C, F(8), QUAD_PAIRS)
    assert t.source.excess() == F(15, 4)
    assert t.target.termination_index() == 3  # four-term finite sum
    lhs = eval_numeric(t.source, precision=50, tol=1e-10)
    exact_rhs = eval_terminating(t.target)
    with mp.workdps(60):
        pref = t.prefactor_value(50)
        rhs = pref * mpf(exact_rhs.numerator) / exact_rhs.denominator
        rel = abs(lhs.value - rhs) / abs(rhs)
        assert rel <= 1e-8
    _finish(5, "unit-argument fixture e=8 d=1", started, 30.0)


def test_criterion_06_unit_argument_random_suite():
    started = time.perf_counter()
    generated = generate_cases(
        2025, CaseProfile(kind="thomae", count=50, min_excess=F(1))
    )
    assert len(generated.cases) == 50
    for case in generated.cases:
        assert case.transform.source.excess() >= 1
        report = verify_transform(case.transform, tol=1e-8, budget=40_000)
        assert report.verdict == "pass", f"{case.label}: {report.verdict}"
    _finish(6, "unit-argument random suite (50 cases)", started, 300.0)


def test_criterion_07_euler_random_suite():
    started = time.perf_counter()
    arguments = (F(-1, 2), F(3, 10))
    checked = 0
    for kind, builder in (("euler1", euler1), ("euler2", euler2)):
        generated = generate_cases(
            707, CaseProfile(kind=kind, count=25, argument=arguments[0])
        )
        assert len(generated.cases) == 25
        for case in generated.cases:
            params = case.params
            for x in arguments:
                transform = builder(
                    params["a"], params["b"], params["c"], ParamPairs(params["pairs"]), x
                )
                lhs = eval_numeric(transform.source, precision=45, tol=1e-18)
                rhs = eval_numeric(transform.target, precision=45, tol=1e-18)
                with mp.workdps(55):
                    pref = transform.prefactor_value(45)
                    rel = abs(lhs.value - pref * rhs.value) / max(mpf(1), abs(lhs.value))
                    assert rel <= 1e-12, f"{case.label} at x={x}: {rel}"
            checked += 1
    assert checked == 50
    _finish(7, "argument transforms at x in {-1/2, 3/10} (50 cases)", started, 60.0)


def _eval_explicit_pairs(kernel_nums, kernel_dens, zeros, x: Fraction, dps: int = 40):
    """Independent oracle: sum the series with the shifted pairs written
    out explicitly as complex Pochhammer ratios."""
    with mp.workdps(dps):
        xv = mpf(x.numerator) / x.denominator
        total = mp.mpc(0)
        term = mp.mpc(1)
        k = 0
        while k < 4000:
            total += term
            ratio = xv / (k + 1)
            for a in kernel_nums:
                ratio *= mpf(a.numerator) / a.denominator + k
            for b in kernel_dens:
                ratio /= mpf(b.numerator) / b.denominator + k
            for z in zeros:
                ratio *= (mp.mpc(z) + 1 + k) / (mp.mpc(z) + k)
            term *= ratio
            k += 1
            if k > 10 and abs(term) < mpf(10) ** (-dps + 5) * max(abs(total), mpf(1)):
                break
        return total


def test_criterion_08_zero_free_equivalence():
    started = time.perf_counter()
    rng = random.Random(808)
    checked = 0
    while checked < 20:
        a = _random_base(rng)
        b = _random_base(rng)
        c = _random_base(rng) + 5  # keep the kernel denominator regular
        pairs = [(_random_base(rng), rng.randint(1, 2)) for _ in range(rng.randint(1, 2))]
        try:
            pp = ParamPairs(pairs)
            transform = euler1(a, b, c, pp, F(1, 5))
        except PreconditionError:
            continue
        weight = transform.polynomial
        if weight.degree != pp.total_shift:
            continue
        zeros = find_zeros(weight).zeros
        if any(abs(z + k) < 1e-2 for z in zeros for k in range(0, 60)):
            continue  # explicit pair would sit on a pole
        kernel_nums = transform.target.kernel_numerators
        kernel_dens = transform.target.kernel_denominators
        for x in (F(1, 5), F(-2, 5)):
            weighted = WeightedSeriesSpec(kernel_nums, kernel_dens, weight, x)
            direct = eval_numeric(weighted, precision=40, tol=1e-16)
            explicit = _eval_explicit_pairs(kernel_nums, kernel_dens, zeros, x)
            with mp.workdps(40):
                rel = abs(direct.value - explicit) / max(mpf(1), abs(direct.value))
                assert rel <= 1e-9, f"{a},{b},{c},{pairs} at x={x}: {rel}"
        checked += 1
    _finish(8, "zero-free equivalence (20 cases)", started, 30.0)


def test_criterion_09_beta_integral_pipeline():
    started = time.perf_counter()
    cases = 0
    # base case: constant integrand reproduces the gamma ratio exactly
    one = SeriesSpec([0, 1], [2], 1)
    for d, e in ((F(1, 2), F(3, 2)), (F(1), F(3)), (F(3, 4), F(17, 4))):
        val = beta_integral_oracle(d, e, one)
        ref = float(gamma_ratio([d, e - d], [e]))
        assert abs(val - ref) <= 1e-12 * abs(ref)
        cases += 1
    fixed = [
        (F(1), F(3), SeriesSpec([F(1, 2), F(1, 2)], [2], 1)),
        (F(1), F(8), SeriesSpec([A, B, B], [C, F(1, 2)], 1)),
    ]
    generated = generate_cases(
        909,
        CaseProfile(
            kind="thomae", count=5, positive_source=True,
            min_excess=F(2), max_abs=6, max_r=1, max_shift=2,
        ),
    )
    assert len(generated.cases) == 5
    for case in generated.cases:
        source = case.transform.source
        d, e = case.params["d"], case.params["e"]
        nums = list(source.numerator_params)
        nums.remove(d)
        dens = list(source.denominator_params)
        dens.remove(e)
        fixed.append((d, e, SeriesSpec(nums, dens, 1)))
    for d, e, inner in fixed:
        oracle = beta_integral_oracle(d, e, inner, rel_tol=2e-8)
        series = SeriesSpec(
            tuple(inner.numerator_params) + (d,),
            tuple(inner.denominator_params) + (e,),
            1,
        )
        res = eval_numeric(series, precision=40, tol=1e-12)
        ref = float(gamma_ratio([d, e - d], [e])) * float(res.value)
        assert abs(oracle - ref) <= 1e-7 * abs(ref), f"d={d} e={e}: {oracle} vs {ref}"
        cases += 1
    assert cases == 10
    _finish(9, "moment-integral pipeline (10 cases)", started, 60.0)


def test_criterion_10_normalization_and_degree():
    started = time.perf_counter()
    rng = random.Random(1010)
    checked = 0
    while checked < 100:
        r = rng.randint(0, 2)
        pairs = []
        budget = 5
        for _ in range(r):
            shift = rng.randint(1, min(3, budget))
            budget -= shift
            pairs.append((_random_base(rng), shift))
            if budget == 0:
                break
        a, b, c = (_random_base(rng) for _ in range(3))
        try:
            pp = ParamPairs(pairs)
            m = pp.total_shift
            q = build_Q(pp, b, c)
            qh = build_Qhat(pp, a, b, c)
            k = rng.randint(0, m)
            g = build_G(m, k, a, b, c)
        except PreconditionError:
            continue
        assert q.evaluate(0) == 1
        assert qh.evaluate(0) == 1
        top = c - a - b - m
        if not (top.denominator == 1 and top.numerator <= 0):
            assert g.degree == m - k
        checked += 1
    _finish(10, "normalization and degree (100 cases)", started, 10.0)
