"""High-precision sums of the Entry-7 q-series and their polygonal / Pochhammer extensions."""

from .cfrac import CFrac, Sign, closed_form_e, cfrac_to_series, eval_cfrac, gauss_entry7_coeffs, muir_rogers, ramanujan_cf_coeffs
from .heine import GParams, Phi21Params, g0, g1, heine_transform, phi21, rogers_fine_general, rogers_fine_rhs, s2_closed_form
from .numerics import approx_equal, exact_det, real_from_rat
from .qcore import QParam, polygonal_exponent, qpoch, qpoch_inf, qpoch_rat
from .series import SeriesSpec, Status, SumResult, cesaro_pair_average, gauss_problem2, q_infinity, sum_S1, sum_S2

__version__ = "0.1.0"
