# %% [markdown]
# # Exact certificates
#
# The float estimates above only show a trend. Each growth claim is an
# inequality between rational exponents of p, one per r (and per n on the
# generic side), and those are checked here with integers and fractions.

# %%
from fractions import Fraction

from padic_loggrowth import (FamilyParams, theorem_report, verify_generic_bounded,
                             verify_generic_unbounded, verify_special_bounded,
                             verify_special_unbounded)

params = FamilyParams(5, Fraction(3, 4), Fraction(1, 2), r_max=1000)

# %% [markdown]
# Bounded at lambda = 1 - sigma, and unbounded just below it: the witness r
# is the first index where the normalized norm exceeds p**B.

# %%
print(verify_special_bounded(params, 1 - params.sigma))
print(verify_special_unbounded(params, (1 - params.sigma) / 2, 100))

# %% [markdown]
# On the generic side the bounded check walks every n, splits the support
# terms by r >= v_p(n+1) or not, and compares each term against p exactly.

# %%
res = verify_generic_bounded(params.replace(r_max=40), 3000)
print(res.passed, res.case1_terms, res.case2_terms, round(res.max_log_ratio, 3))
print(verify_generic_unbounded(params, (1 - params.sigma_prime) / 2, 100))

# %% [markdown]
# Everything together, as the `verify` command reports it.

# %%
report = theorem_report(params.replace(r_max=40))
for check in report.exact_checks:
    print("PASS" if check.passed else "FAIL", check.name)
