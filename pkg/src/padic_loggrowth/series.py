"""Truncated power series over Q, sparse (valuation-first) and dense.

The sparse form stores only nonzero terms as ``(exponent, valuation,
coefficient)`` triples. Exponents of the family's series grow like
``p**(r * (1 + delta))``, so they are Python ints of arbitrary size and the
exact coefficient is optional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .padic import INFINITY, check_prime, floor_mul, vp_binomial, vp_int, vp_rat

# beyond this many support indices f is built valuation-only by default
EXACT_R_LIMIT = 30


def fraction_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class FamilyParams:
    """Parameters ``(p, sigma, sigma')`` of the family plus truncation bounds.

    ``delta = (sigma - sigma') / (1 - sigma)`` is derived. ``sigma' == sigma``
    is accepted as the degenerate (delta = 0) member.
    """

    p: int
    sigma: Fraction
    sigma_prime: Fraction
    r_max: int = 40
    n_max: Optional[int] = None
    delta: Fraction = field(init=False)

    def __post_init__(self):
        check_prime(self.p)
        sigma, sigma_prime = Fraction(self.sigma), Fraction(self.sigma_prime)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "sigma_prime", sigma_prime)
        if not 0 <= sigma_prime:
            raise ValueError(f"sigma' must be >= 0, got {sigma_prime}")
        if not sigma_prime <= sigma:
            raise ValueError(f"sigma' must not exceed sigma, got sigma'={sigma_prime} > sigma={sigma}")
        if not sigma < 1:
            raise ValueError(f"sigma must be < 1, got {sigma}")
        if self.r_max < 1:
            raise ValueError(f"r_max must be >= 1, got {self.r_max}")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError("n_max must be natural")
        object.__setattr__(self, "delta", (sigma - sigma_prime) / (1 - sigma))

    @property
    def degenerate(self) -> bool:
        return self.sigma == self.sigma_prime

    def replace(self, **changes) -> "FamilyParams":
        kwargs = dict(p=self.p, sigma=self.sigma, sigma_prime=self.sigma_prime,
                      r_max=self.r_max, n_max=self.n_max)
        kwargs.update(changes)
        return FamilyParams(**kwargs)

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "sigma": fraction_str(self.sigma),
            "sigma_prime": fraction_str(self.sigma_prime),
            "delta": fraction_str(self.delta),
            "r_max": self.r_max,
            "n_max": self.n_max,
        }


class Term(NamedTuple):
    exponent: int
    valuation: int
    coefficient: Optional[Fraction] = None


@dataclass(frozen=True)
class SparseValSeries:
    terms: tuple[Term, ...]
    truncation_bound: int

    def __post_init__(self):
        prev = -1
        for t in self.terms:
            if t.exponent <= prev:
                raise ValueError("exponents must be strictly increasing")
            if t.exponent > self.truncation_bound:
                raise ValueError(f"exponent {t.exponent} beyond truncation bound")
            prev = t.exponent

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def exact(self) -> bool:
        return all(t.coefficient is not None for t in self.terms)

    def check_valuations(self, p: int) -> bool:
        return all(t.coefficient is None or vp_rat(t.coefficient, p) == t.valuation
                   for t in self.terms)

    def derivative(self, p: int) -> "SparseValSeries":
        out = []
        for n, v, c in self.terms:
            if n == 0:
                continue
            out.append(Term(n - 1, v + vp_int(n, p), None if c is None else c * n))
        return SparseValSeries(tuple(out), max(self.truncation_bound - 1, 0))

    def to_dense(self, degree: int) -> "DenseSeries":
        if not self.exact:
            raise ValueError("dense materialization needs exact coefficients")
        coeffs = [Fraction(0)] * (degree + 1)
        for n, _, c in self.terms:
            if n > degree:
                break
            coeffs[n] = c
        return DenseSeries(tuple(coeffs))

    def to_record(self) -> dict:
        return {
            "truncation_bound": str(self.truncation_bound),
            "terms": [
                {
                    "exponent": str(t.exponent),
                    "valuation": str(t.valuation),
                    "coefficient": None if t.coefficient is None else fraction_str(t.coefficient),
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_record(cls, record: dict) -> "SparseValSeries":
        terms = tuple(
            Term(int(t["exponent"]), int(t["valuation"]),
                 None if t["coefficient"] is None else parse_fraction(t["coefficient"]))
            for t in record["terms"]
        )
        return cls(terms, int(record["truncation_bound"]))


@dataclass(frozen=True)
class DenseSeries:
    """Coefficients c_0..c_N of a series truncated at degree N."""

    coefficients: tuple[Fraction, ...]

    @classmethod
    def zero(cls, degree: int) -> "DenseSeries":
        return cls((Fraction(0),) * (degree + 1))

    @classmethod
    def constant(cls, value, degree: int) -> "DenseSeries":
        return cls((Fraction(value),) + (Fraction(0),) * degree)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        return self.coefficients[i]

    def __neg__(self):
        return DenseSeries(tuple(-c for c in self.coefficients))

    def __add__(self, other: "DenseSeries") -> "DenseSeries":
        n = min(self.degree, other.degree)
        return DenseSeries(tuple(a + b for a, b in zip(self.coefficients[:n + 1], other.coefficients)))

    def support(self) -> list[tuple[int, Fraction]]:
        return [(i, c) for i, c in enumerate(self.coefficients) if c]

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def derivative(self) -> "DenseSeries":
        cs = self.coefficients
        return DenseSeries(tuple(i * cs[i] for i in range(1, len(cs))) or (Fraction(0),))

    def to_record(self) -> dict:
        return {"degree": self.degree, "coefficients": [fraction_str(c) for c in self.coefficients]}


@dataclass(frozen=True)
class GenericCoeff:
    """Coefficient data at ``(X - t)**(n + 1)``: a t-series as (t-exponent, valuation) pairs."""

    n: int
    t_terms: tuple[tuple[int, int], ...]
    r_range: int

    def __post_init__(self):
        exps = [e for e, _ in self.t_terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("t-exponents must be strictly increasing")

    def to_record(self) -> dict:
        return {
            "n": str(self.n),
            "r_range": self.r_range,
            "gauss_valuation": _val_str(gauss_valuation(self)),
            "t_terms": [{"t_exponent": str(e), "valuation": str(v)} for e, v in self.t_terms],
        }

    @classmethod
    def from_record(cls, record: dict) -> "GenericCoeff":
        terms = tuple((int(t["t_exponent"]), int(t["valuation"])) for t in record["t_terms"])
        return cls(int(record["n"]), terms, int(record["r_range"]))


def _val_str(v) -> str:
    return "inf" if v == INFINITY else str(v)


def support_index(r: int, params: FamilyParams) -> int:
    """The exponent ``p**r * (p**(floor(delta*r) + 1) + 1) - 1`` carrying a nonzero a_n."""
    p = params.p
    return p**r * (p ** (floor_mul(params.delta, r) + 1) + 1) - 1


def build_f(params: FamilyParams, exact: Optional[bool] = None) -> SparseValSeries:
    """Sparse f = sum a_n X^n with a_n = p**floor(sigma' r) on the support indices r <= r_max."""
    if exact is None:
        exact = params.r_max <= EXACT_R_LIMIT
    terms = []
    for r in range(params.r_max + 1):
        v = floor_mul(params.sigma_prime, r)
        terms.append(Term(support_index(r, params), v, Fraction(params.p**v) if exact else None))
    # every coefficient below the next support index is known exactly
    bound = support_index(params.r_max + 1, params) - 1
    return SparseValSeries(tuple(terms), bound)


def antiderivative(s: SparseValSeries, p: int) -> SparseValSeries:
    """Formal integral with zero constant term: (n, v, c) -> (n+1, v - v_p(n+1), c/(n+1))."""
    out = tuple(
        Term(n + 1, v - vp_int(n + 1, p), None if c is None else c / (n + 1))
        for n, v, c in s.terms
    )
    return SparseValSeries(out, s.truncation_bound + 1)


def recenter_coeff(f: SparseValSeries, n: int, params: FamilyParams) -> GenericCoeff:
    """Inner sum ``sum_{k >= n} a_k C(k, n) t**(k - n)`` as valuation data."""
    if n < 0:
        raise ValueError("n must be natural")
    if n > f.truncation_bound:
        raise ValueError(f"n={n} exceeds the truncation bound of f")
    p = params.p
    t_terms = tuple(
        (k - n, v + vp_binomial(k, n, p)) for k, v, _ in f.terms if k >= n
    )
    return GenericCoeff(n, t_terms, len(f.terms))


def gauss_valuation(c: GenericCoeff):
    """Minimum valuation over the t-terms; INFINITY for the zero series."""
    return min((v for _, v in c.t_terms), default=INFINITY)
