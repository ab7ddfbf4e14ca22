"""Log-growth Newton polygons of a rank-2 family of p-adic differential modules.

The family M_{sigma, sigma'} over Q_p[[X]]_0 has special log-growth polygon
P_{1-sigma} at X = 0 and generic polygon P_{1-sigma'} at a Dwork generic
point, so for sigma' < sigma the special left endpoint sits strictly above
the generic one. This package builds the family, estimates both log-growths
numerically and checks the underlying valuation inequalities exactly.
"""

__version__ = "0.1.0"

from .padic import (INFINITY, Ordering, cmp_power, floor_mul, is_unit_binomial, vp_binomial,
                    vp_factorial, vp_int, vp_rat)
from .series import (DenseSeries, FamilyParams, GenericCoeff, SparseValSeries, Term,
                     antiderivative, build_f, gauss_valuation, recenter_coeff, support_index)
from .newton import NewtonPolygon, from_slopes, left_endpoint, lies_above, p_sigma, polygons_equal
from .nabla import (ConnectionMatrix, SolutionBasis, family_connection, generic_pullback_coeffs,
                    residual, solve_horizontal)
from .family import (GrowthSample, VerificationReport, loggrowth_estimate, theorem_report,
                     verify_generic_bounded, verify_generic_unbounded, verify_special_bounded,
                     verify_special_unbounded)
