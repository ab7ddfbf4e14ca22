import random
from fractions import Fraction

import pytest

from padic_loggrowth.nabla import (ConnectionMatrix, MAX_DENSE_DEGREE, family_connection,
                                   generic_pullback_coeffs, residual, solve_horizontal)
from padic_loggrowth.padic import vp_int
from padic_loggrowth.series import (DenseSeries, FamilyParams, antiderivative, build_f,
                                    gauss_valuation, support_index)
from oracles import convolve

F = Fraction
P0 = FamilyParams(2, F(1, 2), F(0), r_max=4)


def independent_residual(G, basis):
    """g' + G g via plain convolution, no shared code with the solver."""
    N, mu = G.N, G.mu
    bad = []
    for g in basis.columns:
        for i in range(mu):
            total = [(m + 1) * g[i][m + 1] for m in range(N + 1)]
            for j in range(mu):
                prod = convolve(list(G.entries[i][j].coefficients), list(g[j].coefficients), N)
                total = [a + b for a, b in zip(total, prod)]
            bad.extend(x for x in total if x)
    return bad


def random_matrix(rng, mu, N, upper=False):
    rows = []
    for i in range(mu):
        row = []
        for j in range(mu):
            if upper and j < i:
                row.append([])
                continue
            cs = [0] * (N + 1)
            for d in rng.sample(range(N + 1), 3):
                cs[d] = F(rng.randint(-3, 3), rng.randint(1, 3))
            row.append(cs)
        rows.append(row)
    return ConnectionMatrix.from_rows(rows, N)


def test_family_connection_example():
    G = family_connection(P0, 10)
    expected = [0] * 11
    expected[2] = expected[9] = F(-1)
    assert list(G.entries[0][1].coefficients) == expected
    for i, j in ((0, 0), (1, 0), (1, 1)):
        assert G.entries[i][j].is_zero()


def test_family_connection_low_degree_is_zero():
    G = family_connection(P0, 1)
    assert G.entries[0][1].is_zero()
    assert solve_horizontal(G).at_zero() == [[1, 0], [0, 1]]


def test_family_connection_guard():
    with pytest.raises(ValueError):
        family_connection(P0, MAX_DENSE_DEGREE + 1)


def test_zero_matrix_gives_constants():
    G = ConnectionMatrix.from_rows([[[], []], [[], []]], 5)
    basis = solve_horizontal(G)
    for j, col in enumerate(basis.columns):
        for i, s in enumerate(col):
            assert list(s.coefficients) == [F(int(i == j))] + [F(0)] * 6


def test_family_basis_column_two():
    G = family_connection(P0, 10)
    basis = solve_horizontal(G)
    e1_coord, e2_coord = basis.columns[1]
    expected = [F(0)] * 12
    expected[3], expected[10] = F(1, 3), F(1, 10)
    assert list(e1_coord.coefficients) == expected
    assert list(e2_coord.coefficients) == [F(1)] + [F(0)] * 11
    assert basis.columns[0][0].coefficients[0] == 1 and basis.columns[0][1].is_zero()
    assert residual(G, basis) == []
    assert independent_residual(G, basis) == []


@pytest.mark.parametrize("P", [FamilyParams(2, F(1, 2), F(1, 4)), FamilyParams(3, F(2, 3), F(1, 3))])
def test_solver_matches_antiderivative(P):
    N = 300
    basis = solve_horizontal(family_connection(P, N))
    y = antiderivative(build_f(P.replace(r_max=6), exact=True), P.p)
    dense = [F(0)] * (N + 2)
    for t in y:
        if t.exponent <= N + 1:
            dense[t.exponent] = t.coefficient
    assert list(basis.columns[1][0].coefficients) == dense


@pytest.mark.parametrize("mu", [2, 3])
def test_random_residuals(mu):
    rng = random.Random(mu)
    for upper in (False, True):
        for _ in range(5):
            G = random_matrix(rng, mu, 16, upper=upper)
            basis = solve_horizontal(G)
            assert basis.at_zero() == [[int(i == j) for j in range(mu)] for i in range(mu)]
            assert independent_residual(G, basis) == []
            assert residual(G, basis) == []


def test_connection_matrix_validation():
    with pytest.raises(ValueError):
        ConnectionMatrix(((DenseSeries.zero(2), DenseSeries.zero(2)),))
    with pytest.raises(ValueError):
        ConnectionMatrix(((DenseSeries.zero(2), DenseSeries.zero(3)),
                          (DenseSeries.zero(2), DenseSeries.zero(2))))


def test_generic_pullback_examples():
    P = FamilyParams(2, F(1, 2), F(0), r_max=5)
    c0, c1, far = generic_pullback_coeffs(P, [0, 1, support_index(P.r_max, P) + 1])
    assert c0.t_terms == tuple((t.exponent, t.valuation) for t in build_f(P))
    assert (8, -1) in c1.t_terms
    assert far.t_terms == ()


@pytest.mark.parametrize("P", [FamilyParams(2, F(1, 2), F(1, 4), r_max=12),
                               FamilyParams(5, F(3, 4), F(1, 2), r_max=6)])
def test_generic_special_consistency_at_t0(P):
    y_s = {t.exponent: t.valuation for t in antiderivative(build_f(P), P.p)}
    for n in sorted(y_s)[:6]:
        k = n - 1
        (c,) = generic_pullback_coeffs(P, [k])
        assert dict(c.t_terms)[0] == y_s[n]


def test_generic_coeff_at_p_power_minus_one():
    P = FamilyParams(3, F(2, 3), F(1, 3), r_max=15)
    ns = [3**r - 1 for r in range(P.r_max + 1)]
    for r, c in enumerate(generic_pullback_coeffs(P, ns)):
        texp = support_index(r, P) - ns[r]
        assert dict(c.t_terms)[texp] == r // 3 - r
        assert gauss_valuation(c) == r // 3 - r
