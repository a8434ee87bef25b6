"""Density of primes p with gcd(#E(F_p), p - 1) = 1 for elliptic curves over Q."""

from .conjecture import curve_conjecture, local_factor, universal_constant
from .count import ap_naive, cardinality_bsgs, compute_trace, is_anomalous
from .curve import new_curve, parse_curve, reduce_mod_p
from .entangle import EntangleSpec, correction_factor, delta_S, density_S, enumerate_density
from .survey import run_survey

__version__ = "0.1.0"
