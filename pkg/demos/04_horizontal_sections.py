# %% [markdown]
# # Solving for horizontal sections
#
# Independently of the closed form, the coordinate ODE g' = -G g can be
# solved coefficient by coefficient. For the family matrix the second
# column must reproduce y_s = integral of f.

# %%
from fractions import Fraction

from padic_loggrowth import (FamilyParams, antiderivative, build_f, family_connection, residual,
                             solve_horizontal)

params = FamilyParams(2, Fraction(1, 2), Fraction(0), r_max=4)
G = family_connection(params, 10)
basis = solve_horizontal(G)
e1_coord, e2_coord = basis.columns[1]
print([(i, c) for i, c in enumerate(e1_coord.coefficients) if c])
print(e2_coord.coefficients[:3])
print("residual terms:", residual(G, basis))

# %%
print([(t.exponent, t.coefficient) for t in antiderivative(build_f(params), 2)][:2])
