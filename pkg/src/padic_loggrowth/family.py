"""Log-growth of the family's horizontal sections: estimators and exact checks.

A series y = sum c_n X^{n+1} is of log-growth lam when
``|c_n|_p / (n+1)**lam`` stays bounded. With c_n = a_n / (n+1) and a_n
supported on ``n = p**r * (p**(floor(delta r) + 1) + 1) - 1`` this reduces,
for every r, to an inequality between rational exponents of p. The
``verify_*`` functions check those inequalities exactly for every r (and n)
in a finite window. The float estimator only shows convergence; it never
certifies anything on its own.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .nabla import generic_pullback_coeffs
from .newton import NewtonPolygon, from_slopes, left_endpoint, lies_above, p_sigma, polygons_equal
from .padic import Ordering, cmp_power, floor_mul, is_unit_binomial, vp_binomial, vp_int
from .series import (FamilyParams, antiderivative, build_f, fraction_str, gauss_valuation,
                     support_index)

DEFAULT_TAIL = 10
DEFAULT_N_MAX = 1000


class WitnessNotFound(ValueError):
    """No r within r_max pushes the exponent past the requested bound."""


class PaperClaimViolation(AssertionError):
    """An inequality or identity claimed by the construction failed exactly."""


@dataclass(frozen=True)
class GrowthSample:
    n1: int
    neg_valuation: int

    def __post_init__(self):
        if self.n1 < 1:
            raise ValueError("n1 must be >= 1")


def log_p(m: int, p: int) -> float:
    """log base p of m, exact when m is a power of p."""
    e = vp_int(m, p)
    if p**e == m:
        return float(e)
    return math.log(m) / math.log(p)


def loggrowth_estimate(samples: Sequence[GrowthSample], p: int, tail: int = DEFAULT_TAIL) -> float:
    """Max of neg_valuation * ln p / ln n1 over the last ``tail`` samples.

    Samples with n1 == 1 carry no growth information and are skipped.
    """
    if not samples:
        raise ValueError("no samples")
    if not 1 <= tail <= len(samples):
        raise ValueError(f"tail must be in [1, {len(samples)}], got {tail}")
    window = [s for s in samples[-tail:] if s.n1 > 1]
    if not window:
        raise ValueError("every sample in the window has n1 == 1")
    return max(s.neg_valuation / log_p(s.n1, p) for s in window)


def special_samples(params: FamilyParams) -> list[GrowthSample]:
    """(n+1, -v_p) for each nonzero coefficient of y_s = integral of f."""
    y_s = antiderivative(build_f(params, exact=False), params.p)
    return [GrowthSample(t.exponent, -t.valuation) for t in y_s]


def generic_samples(params: FamilyParams) -> list[GrowthSample]:
    """(n+1, -Gauss valuation) of the y_g coefficients along n = p**r - 1."""
    p = params.p
    coeffs = generic_pullback_coeffs(params, [p**r - 1 for r in range(params.r_max + 1)])
    return [GrowthSample(c.n + 1, -gauss_valuation(c)) for c in coeffs]


def special_exponent(params: FamilyParams, r: int, lam) -> Fraction:
    """-floor(sigma' r) + r - (r + floor(delta r) + 1) * lam."""
    lam = Fraction(lam)
    return (-floor_mul(params.sigma_prime, r) + r
            - (r + floor_mul(params.delta, r) + 1) * lam)


def generic_exponent(params: FamilyParams, r: int, lam) -> Fraction:
    """-floor(sigma' r) + r - r * lam, the exponent at n = p**r - 1."""
    return -floor_mul(params.sigma_prime, r) + r - r * Fraction(lam)


def verify_special_bounded(params: FamilyParams, lam, termwise: bool = True) -> tuple[bool, int]:
    """Check the special-side exponent stays <= 1 at lam for all r <= r_max.

    With ``termwise`` the true norm ``|a_n/(n+1)|_p / (n+1)**lam <= p`` is
    also compared exactly via :func:`cmp_power`. Returns (passed, argmax r).
    """
    lam = Fraction(lam)
    if lam < 1 - params.sigma:
        raise ValueError(f"lambda={lam} is below 1 - sigma = {1 - params.sigma}")
    p = params.p
    ok = True
    worst_r, worst = 0, None
    for r in range(params.r_max + 1):
        e = special_exponent(params, r, lam)
        if worst is None or e > worst:
            worst_r, worst = r, e
        if e > 1:
            ok = False
        if termwise:
            n1 = support_index(r, params) + 1
            v = floor_mul(params.sigma_prime, r) - vp_int(n1, p)
            if cmp_power(v, n1, lam, 1, p) is Ordering.GREATER:
                ok = False
    return ok, worst_r


def verify_special_unbounded(params: FamilyParams, lam, B: int) -> int:
    """Least r <= r_max whose special exponent at lam exceeds B."""
    lam = Fraction(lam)
    if lam >= 1 - params.sigma:
        raise ValueError(f"lambda={lam} must be below 1 - sigma = {1 - params.sigma}")
    for r in range(params.r_max + 1):
        if special_exponent(params, r, lam) > B:
            return r
    raise WitnessNotFound(f"no r <= {params.r_max} with special exponent > {B} at lambda={lam}")


def verify_generic_unbounded(params: FamilyParams, lam, B: int) -> int:
    """Least r <= r_max whose generic exponent at n = p**r - 1 exceeds B.

    First asserts, for every r <= r_max, that the binomial
    C(support_index(r), p**r - 1) multiplying the t**(p**(r + floor(delta r) + 1))
    term is a p-adic unit.
    """
    lam = Fraction(lam)
    if lam >= 1 - params.sigma_prime:
        raise ValueError(f"lambda={lam} must be below 1 - sigma' = {1 - params.sigma_prime}")
    p = params.p
    for r in range(params.r_max + 1):
        u = p ** (floor_mul(params.delta, r) + 1) + 1
        if not is_unit_binomial(r, u, r, p):
            raise PaperClaimViolation(f"C(p^{r}*{u} - 1, p^{r} - 1) is not a unit for p={p}")
    for r in range(params.r_max + 1):
        if generic_exponent(params, r, lam) > B:
            return r
    raise WitnessNotFound(f"no r <= {params.r_max} with generic exponent > {B} at lambda={lam}")


@dataclass
class GenericBoundedResult:
    passed: bool
    counterexample: Optional[dict] = None
    n_checked: int = 0
    case1_terms: int = 0
    case2_terms: int = 0
    # max over terms of log_p(|term|_p / (n+1)**lam); bounded by 1 when passed
    max_log_ratio: float = float("-inf")
    max_at: Optional[tuple[int, int]] = None

    def __bool__(self):
        return self.passed

    def merge(self, other: "GenericBoundedResult") -> "GenericBoundedResult":
        out = GenericBoundedResult(
            self.passed and other.passed,
            self.counterexample or other.counterexample,
            self.n_checked + other.n_checked,
            self.case1_terms + other.case1_terms,
            self.case2_terms + other.case2_terms,
        )
        best = max((self, other), key=lambda res: res.max_log_ratio)
        out.max_log_ratio, out.max_at = best.max_log_ratio, best.max_at
        return out

    def to_record(self) -> dict:
        return {
            "passed": self.passed,
            "counterexample": self.counterexample,
            "n_checked": self.n_checked,
            "case1_terms": self.case1_terms,
            "case2_terms": self.case2_terms,
            "max_log_ratio": self.max_log_ratio,
            "max_at": None if self.max_at is None else [str(x) for x in self.max_at],
        }


def _generic_bounded_range(params: FamilyParams, lam: Fraction, n_lo: int, n_hi: int) -> GenericBoundedResult:
    p = params.p
    ks = [support_index(r, params) for r in range(params.r_max + 1)]
    fl = [floor_mul(params.sigma_prime, r) for r in range(params.r_max + 1)]
    case_cache: dict[tuple[int, int], bool] = {}
    res = GenericBoundedResult(True)
    log_p = math.log(p)

    def fail(**info):
        res.passed = False
        if res.counterexample is None:
            res.counterexample = {k: str(v) for k, v in info.items()}

    r0 = 0
    for n in range(n_lo, n_hi):
        res.n_checked += 1
        n1 = n + 1
        vn = vp_int(n1, p)
        log_n1 = math.log(n1)
        while r0 < len(ks) and ks[r0] < n:
            r0 += 1
        for r in range(r0, len(ks)):
            k = ks[r]
            case1 = r >= vn
            key = (r, vn)
            if key not in case_cache:
                if case1:
                    case_cache[key] = -fl[r] + vn * (1 - lam) <= 1
                else:
                    case_cache[key] = -fl[r] + r - vn * lam < 1
            if not case_cache[key]:
                fail(case=1 if case1 else 2, n=n, k=k, r=r, check="exponent chain")
            vb = vp_binomial(k, n, p)
            v_term = fl[r] + vb - vn
            if case1:
                res.case1_terms += 1
                if v_term < fl[r] - vn:
                    fail(case=1, n=n, k=k, r=r, check="binomial integrality")
            else:
                res.case2_terms += 1
                # C(k,n)/(n+1) == C(k+1,n+1)/(k+1), compared on valuations
                if vb - vn != vp_binomial(k + 1, n1, p) - vp_int(k + 1, p):
                    fail(case=2, n=n, k=k, r=r, check="binomial identity")
                if v_term < fl[r] - r:
                    fail(case=2, n=n, k=k, r=r, check="binomial bound")
            if cmp_power(v_term, n1, lam, 1, p) is Ordering.GREATER:
                fail(case=1 if case1 else 2, n=n, k=k, r=r, check="termwise <= p")
            ratio = -v_term - float(lam) * log_n1 / log_p
            if ratio > res.max_log_ratio:
                res.max_log_ratio, res.max_at = ratio, (n, k)
    return res


def _chunk_worker(args):
    params, lam, lo, hi = args
    return _generic_bounded_range(params, lam, lo, hi)


def worker_count() -> int:
    value = os.environ.get("PADIC_LOGGROWTH_THREADS")
    if not value:
        return 1
    try:
        return max(1, int(value))
    except ValueError:
        raise ValueError(f"PADIC_LOGGROWTH_THREADS must be an integer, got {value!r}") from None


def verify_generic_bounded(params: FamilyParams, n_max: int, lam=None,
                           workers: Optional[int] = None) -> GenericBoundedResult:
    """Check every y_g coefficient with n <= n_max is O((n+1)**lam) with constant p.

    ``lam`` defaults to 1 - sigma'. Every support term k >= n with r <= r_max
    is classified by r >= v_p(n+1) (case 1) or r < v_p(n+1) (case 2); the
    matching exponent inequality, the binomial step and the term-wise bound
    ``|a_k C(k,n)/(n+1)|_p / (n+1)**lam <= p`` (with the true binomial
    valuation) are all checked exactly. The result is truthy iff all pass.
    """
    lam = Fraction(1 - params.sigma_prime if lam is None else lam)
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    workers = worker_count() if workers is None else workers
    if workers <= 1 or n_max < 2000:
        return _generic_bounded_range(params, lam, 0, n_max + 1)
    step = -(-(n_max + 1) // workers)
    jobs = [(params, lam, lo, min(lo + step, n_max + 1)) for lo in range(0, n_max + 1, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_chunk_worker, jobs))
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class VerificationReport:
    params: FamilyParams
    special_estimate: float
    generic_estimate: float
    special_polygon: NewtonPolygon
    generic_polygon: NewtonPolygon
    endpoint_gap: Fraction
    exact_checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.exact_checks)

    def failures(self) -> list[Check]:
        return [c for c in self.exact_checks if not c.passed]

    def to_record(self) -> dict[str, Any]:
        return {
            "params": self.params.to_record(),
            "passed": self.passed,
            "special_estimate": self.special_estimate,
            "generic_estimate": self.generic_estimate,
            "special_polygon": self.special_polygon.to_record(),
            "generic_polygon": self.generic_polygon.to_record(),
            "endpoint_gap": fraction_str(self.endpoint_gap),
            "exact_checks": [c.to_record() for c in self.exact_checks],
        }


def theorem_report(params: FamilyParams, r_max_estimator: int = 40, tolerance: float = 0.05,
                   bound: int = 5, n_max: Optional[int] = None, tail: int = DEFAULT_TAIL,
                   workers: Optional[int] = None) -> VerificationReport:
    """Assemble the special and generic polygons and check every claim about them.

    Exact checks use ``params.r_max``; the estimators use ``r_max_estimator``.
    Failures are recorded in the report with their witnesses, never raised.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    sigma, sigma_prime = params.sigma, params.sigma_prime
    special_target, generic_target = 1 - sigma, 1 - sigma_prime
    n_max = n_max if n_max is not None else (params.n_max if params.n_max is not None else DEFAULT_N_MAX)
    checks: list[Check] = []

    ok, worst_r = verify_special_bounded(params, special_target)
    checks.append(Check("special_bounded", ok, {
        "lambda": fraction_str(special_target), "worst_r": worst_r,
        "max_exponent": fraction_str(special_exponent(params, worst_r, special_target))}))

    lam = special_target / 2
    try:
        r = verify_special_unbounded(params, lam, bound)
        checks.append(Check("special_unbounded", True, {"lambda": fraction_str(lam), "bound": bound, "r": r}))
    except WitnessNotFound as exc:
        checks.append(Check("special_unbounded", False, {"lambda": fraction_str(lam), "bound": bound,
                                                         "error": str(exc)}))

    res = verify_generic_bounded(params, n_max, generic_target, workers=workers)
    checks.append(Check("generic_bounded", res.passed, {"lambda": fraction_str(generic_target),
                                                        "n_max": n_max, **res.to_record()}))

    lam = generic_target / 2
    try:
        r = verify_generic_unbounded(params, lam, bound)
        checks.append(Check("lemma_unit_binomials", True, {"r_max": params.r_max}))
        checks.append(Check("generic_unbounded", True, {"lambda": fraction_str(lam), "bound": bound, "r": r}))
    except PaperClaimViolation as exc:
        checks.append(Check("lemma_unit_binomials", False, {"error": str(exc)}))
    except WitnessNotFound as exc:
        checks.append(Check("lemma_unit_binomials", True, {"r_max": params.r_max}))
        checks.append(Check("generic_unbounded", False, {"lambda": fraction_str(lam), "bound": bound,
                                                         "error": str(exc)}))

    est_params = params.replace(r_max=r_max_estimator)
    tail = min(tail, r_max_estimator)
    special_est = loggrowth_estimate(special_samples(est_params), params.p, tail)
    generic_est = loggrowth_estimate(generic_samples(est_params), params.p, tail)
    for name, est, target in (("special_estimate", special_est, special_target),
                              ("generic_estimate", generic_est, generic_target)):
        err = abs(est - float(target))
        checks.append(Check(name, err <= tolerance, {
            "estimate": est, "target": fraction_str(target), "error": err,
            "tolerance": tolerance, "r_max": r_max_estimator, "tail": tail}))
    checks.append(Check("monotone_estimates", special_est <= generic_est + tolerance,
                        {"special": special_est, "generic": generic_est}))

    # basis {e1, y e1 + e2}: e1 is constant (log-growth 0)
    special = from_slopes([0, special_target], 2)
    generic = from_slopes([0, generic_target], 2)
    checks.append(Check("special_polygon", polygons_equal(special, p_sigma(special_target)),
                        {"expected": p_sigma(special_target).to_record()}))
    checks.append(Check("generic_polygon", polygons_equal(generic, p_sigma(generic_target)),
                        {"expected": p_sigma(generic_target).to_record()}))

    gap = left_endpoint(special)[1] - left_endpoint(generic)[1]
    checks.append(Check("endpoint_gap", gap == sigma - sigma_prime,
                        {"gap": fraction_str(gap), "expected": fraction_str(sigma - sigma_prime)}))
    checks.append(Check("lies_above", lies_above(special, generic), {}))
    if params.degenerate:
        checks.append(Check("degenerate_equal_polygons", polygons_equal(special, generic),
                            {"gap": fraction_str(gap)}))
    else:
        checks.append(Check("strictly_above_at_left_endpoint", gap > 0, {"gap": fraction_str(gap)}))

    return VerificationReport(params, special_est, generic_est, special, generic, gap, checks)
