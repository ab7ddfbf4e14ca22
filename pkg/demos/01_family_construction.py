# %% [markdown]
# # Building the family
#
# The module M over Q_p[[X]]_0 has basis e1, e2 with d/dX acting through
# the matrix ((0, -f), (0, 0)). Everything hinges on the sparse series f:
# its coefficient a_n is p**floor(sigma' r) when
# n = p**r * (p**(floor(delta r) + 1) + 1) - 1, and zero otherwise.

# %%
from fractions import Fraction

from padic_loggrowth import FamilyParams, antiderivative, build_f, support_index

params = FamilyParams(p=2, sigma=Fraction(1, 2), sigma_prime=Fraction(1, 4), r_max=8)
print("delta =", params.delta)

# %% [markdown]
# The support indices grow like p**(r (1 + delta)), so only a handful of
# terms exist below any practical degree.

# %%
for r in range(params.r_max + 1):
    print(r, support_index(r, params))

# %%
f = build_f(params)
print([(t.exponent, t.valuation, t.coefficient) for t in f][:5])

# %% [markdown]
# The horizontal section y_s e1 + e2 has y_s' = f. Integrating divides a_n
# by n + 1, and since p**r divides n + 1 the valuation drops by r.

# %%
y_s = antiderivative(f, params.p)
for t in list(y_s)[:6]:
    print(f"X^{t.exponent}: valuation {t.valuation}, coefficient {t.coefficient}")

# %% [markdown]
# With r_max large the exponents outgrow any fixed-width integer. Beyond
# 30 support indices the series is kept valuation-only by default.

# %%
big = build_f(params.replace(r_max=40))
print(big.exact, big.terms[-1].exponent)
