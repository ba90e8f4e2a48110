"""
Weighted logarithmic and identric means of positive numbers and of SPD
matrices, with Loewner-order, positivity and invariance checks.
"""
from .operator_means import MeanKind, Pencil, RepFn, mean, rep_function
from .order import OrderVerdict, loewner_leq, monotone_order_test
from .scalar_means import (
    heronian_weighted,
    identric_mean,
    logarithmic_mean,
    stolarsky,
    weighted_arithmetic,
    weighted_geometric,
    weighted_harmonic,
    weighted_identric,
    weighted_logarithmic,
)

__version__ = "0.1.0"
