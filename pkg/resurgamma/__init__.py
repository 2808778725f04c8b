'''Γ(-a, λa) through its large-a expansion, with computable remainder bounds.'''
from .numerics import (ConvergenceError, DomainError, InvalidTruncationError, NumericOverflowError,
                       PrecisionContext, RegimeError, ResurgammaError, SectorError, SingularError)
from .coeffs import b_coeff, b_coeff_polynomial, b_coeff_table, stirling_gamma
from .phase import Regime, phase_data
from .expansion import optimal_truncation, partial_sum, true_remainder
from .bounds import bound_m, remainder_bound
from .latecoeffs import late_coeff_approx, late_table, optimal_k
from .terminant import stokes_smoothing, terminant, terminant_polar
from .hyper import hyper_expand, improved_remainder_bound, order_estimate_check

__all__ = [
    'ConvergenceError', 'DomainError', 'InvalidTruncationError', 'NumericOverflowError',
    'PrecisionContext', 'RegimeError', 'ResurgammaError', 'SectorError', 'SingularError',
    'b_coeff', 'b_coeff_polynomial', 'b_coeff_table', 'stirling_gamma',
    'Regime', 'phase_data',
    'optimal_truncation', 'partial_sum', 'true_remainder',
    'bound_m', 'remainder_bound',
    'late_coeff_approx', 'late_table', 'optimal_k',
    'stokes_smoothing', 'terminant', 'terminant_polar',
    'hyper_expand', 'improved_remainder_bound', 'order_estimate_check',
]
