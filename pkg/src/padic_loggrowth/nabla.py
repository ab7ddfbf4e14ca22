"""Connection matrices over truncated series and their horizontal sections.

A connection acts on a row of basis vectors, ``nabla(d/dX)(e_1 .. e_mu) =
(e_1 .. e_mu) G``. For a section ``s = sum g_i e_i`` the Leibniz rule gives
``nabla(s) = sum (g_i' + (G g)_i) e_i``, so the coordinate column of a
horizontal section solves ``g' = -G g``. Comparing coefficients of X^m,

    g_{m+1} = -(G g)_m / (m + 1),

which determines g from g_0. Starting from the identity gives the
fundamental solution normalized at X = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .padic import vp_int
from .series import (DenseSeries, FamilyParams, GenericCoeff, build_f, recenter_coeff,
                     support_index)

# dense materialization cap; the solver is a low-degree cross-check only
MAX_DENSE_DEGREE = 20000


@dataclass(frozen=True)
class ConnectionMatrix:
    entries: tuple[tuple[DenseSeries, ...], ...]

    def __post_init__(self):
        mu = len(self.entries)
        if mu == 0 or any(len(row) != mu for row in self.entries):
            raise ValueError("connection matrix must be square and non-empty")
        degrees = {e.degree for row in self.entries for e in row}
        if len(degrees) != 1:
            raise ValueError("all entries must share one truncation degree")

    @property
    def mu(self) -> int:
        return len(self.entries)

    @property
    def N(self) -> int:
        return self.entries[0][0].degree

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Sequence]], N: int) -> "ConnectionMatrix":
        """Build from nested lists of coefficient lists, padding each entry to degree N."""
        def pad(cs):
            cs = [Fraction(c) for c in cs][: N + 1]
            return DenseSeries(tuple(cs + [Fraction(0)] * (N + 1 - len(cs))))
        return cls(tuple(tuple(pad(e) for e in row) for row in rows))

    def to_record(self) -> dict:
        return {"mu": self.mu, "N": self.N,
                "entries": [[e.to_record()["coefficients"] for e in row] for row in self.entries]}


@dataclass(frozen=True)
class SolutionBasis:
    """Fundamental solution: column j holds the coordinates of the j-th horizontal section."""

    columns: tuple[tuple[DenseSeries, ...], ...]

    @property
    def mu(self) -> int:
        return len(self.columns)

    def at_zero(self) -> list[list[Fraction]]:
        return [[self.columns[j][i][0] for j in range(self.mu)] for i in range(self.mu)]

    def to_record(self) -> dict:
        return {"columns": [[s.to_record()["coefficients"] for s in col] for col in self.columns]}


def family_connection(params: FamilyParams, N: int) -> ConnectionMatrix:
    """The rank-2 matrix ((0, -f), (0, 0)) with f truncated at degree N."""
    if N < 0:
        raise ValueError("N must be natural")
    if N > MAX_DENSE_DEGREE:
        raise ValueError(f"N={N} exceeds the dense solver cap {MAX_DENSE_DEGREE}")
    # enough support indices to cover degree N
    r = 1
    while support_index(r, params) <= N:
        r += 1
    f = build_f(params.replace(r_max=max(r, 1)), exact=True)
    zero = DenseSeries.zero(N)
    return ConnectionMatrix(((zero, -f.to_dense(N)), (zero, zero)))


def _product_coeff(G: ConnectionMatrix, nonzero, g: list[list[Fraction]], i: int, m: int) -> Fraction:
    """Coefficient of X^m in (G g)_i, using only nonzero entries of G."""
    total = Fraction(0)
    for j, terms in enumerate(nonzero[i]):
        gj = g[j]
        for d, c in terms:
            if d > m:
                break
            total += c * gj[m - d]
    return total


def _nonzero(G: ConnectionMatrix):
    return [[e.support() for e in row] for row in G.entries]


def solve_horizontal(G: ConnectionMatrix) -> SolutionBasis:
    """Fundamental solution of g' = -G g through degree N + 1."""
    mu, N = G.mu, G.N
    nonzero = _nonzero(G)
    columns = []
    for col in range(mu):
        g = [[Fraction(int(i == col))] for i in range(mu)]
        for m in range(N + 1):
            nxt = [-_product_coeff(G, nonzero, g, i, m) / (m + 1) for i in range(mu)]
            for i in range(mu):
                g[i].append(nxt[i])
        columns.append(tuple(DenseSeries(tuple(gi)) for gi in g))
    return SolutionBasis(tuple(columns))


def residual(G: ConnectionMatrix, basis: SolutionBasis) -> list[tuple[int, int, int, Fraction]]:
    """Nonzero coefficients of g' + G g through degree N, as (column, row, degree, value)."""
    nonzero = _nonzero(G)
    bad = []
    for col, g in enumerate(basis.columns):
        coeffs = [list(s.coefficients) for s in g]
        for i in range(G.mu):
            for m in range(G.N + 1):
                value = (m + 1) * coeffs[i][m + 1] + _product_coeff(G, nonzero, coeffs, i, m)
                if value:
                    bad.append((col, i, m, value))
    return bad


def generic_pullback_coeffs(params: FamilyParams, n_list: Iterable[int]) -> list[GenericCoeff]:
    """Coefficient data of y_g at (X - t)**(n + 1) for each n: recentred f divided by n + 1."""
    f = build_f(params, exact=False)
    out = []
    for n in n_list:
        c = recenter_coeff(f, n, params)
        shift = vp_int(n + 1, params.p)
        out.append(GenericCoeff(n, tuple((e, v - shift) for e, v in c.t_terms), c.r_range))
    return out
