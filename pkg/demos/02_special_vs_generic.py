# %% [markdown]
# # Special and generic log-growth
#
# At X = 0 the section y_s grows like (n+1)**(1 - sigma). Pulled back to a
# generic point t, the coefficient of (X - t)**(n + 1) is a series in t
# whose Gauss norm grows like (n+1)**(1 - sigma'). Both rates are read off
# valuations alone.

# %%
from fractions import Fraction
from pathlib import Path

from padic_loggrowth import FamilyParams, generic_pullback_coeffs, loggrowth_estimate
from padic_loggrowth.family import generic_samples, special_samples
from padic_loggrowth.svg import polygons_svg

params = FamilyParams(3, Fraction(2, 3), Fraction(1, 3), r_max=40)

# %% [markdown]
# Along n = p**r - 1 the generic coefficient picks up the support term with
# a unit binomial, which is where its large norm comes from.

# %%
(c,) = generic_pullback_coeffs(params, [3**5 - 1])
print(c.n, c.t_terms[:4])

# %%
special = loggrowth_estimate(special_samples(params), params.p, tail=10)
generic = loggrowth_estimate(generic_samples(params), params.p, tail=10)
print(f"special ~ {special:.4f} (exact {1 - params.sigma})")
print(f"generic ~ {generic:.4f} (exact {1 - params.sigma_prime})")

# %% [markdown]
# The basis {e1, y e1 + e2} has slopes {0, log-growth of y}; anchored at
# (2, 0) this gives the two polygons. The special left endpoint sits
# sigma - sigma' above the generic one.

# %%
from padic_loggrowth import from_slopes, left_endpoint, lies_above

P_special = from_slopes([0, 1 - params.sigma], 2)
P_generic = from_slopes([0, 1 - params.sigma_prime], 2)
print(P_special, P_generic)
print("gap:", left_endpoint(P_special)[1] - left_endpoint(P_generic)[1])
print("special above generic:", lies_above(P_special, P_generic))

# %%
Path("polygons.svg").write_text(polygons_svg(P_special, P_generic))
