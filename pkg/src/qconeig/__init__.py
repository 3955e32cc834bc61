"""Quaternion matrices, their right coneigenvalues, and perturbation bounds."""

from .errors import (InputError, LengthMismatch, NoConvergence, NotAConeigenvalue, NotCondiagonalizable,
                     NotHermitian, PairingFailure, ParseError, QConeigError, ResampleLimit, ShapeMismatch,
                     Singular, StructureViolation, ZeroVector)
from .genmat import GeneratedMatrix, random_structured, split_seed
from .localization import (gersgorin_balls, connected_components, verify_component_counts,
                           verify_left_pair, verify_right_gersgorin)
from .perturbation import (MatchResult, VerificationReport, check_normal_counterexample, optimal_matching,
                           verify_bauer_fike, verify_generalized_hw, verify_hw)
from .qmat import (QMatrix, StructureFlags, complex_adjoint, complex_split, fro_norm, qm_add, qm_conj_transpose,
                   qm_inverse, qm_jconj, qm_mul, qm_scale_left, qm_scale_right, qm_transpose, spec_norm,
                   structure_flags)
from .quat import (BasalQuaternion, Quaternion, is_consimilar, is_similar, jconj, orbit_distance,
                   parse_quaternion, qabs, qconj, qinv, qmul)
from .serialize import dump_matrix, parse_matrix
from .spectra import (BasalSpectrum, Condiagonalization, StandardSpectrum, basal_coneigenvalues, condiagonalize,
                      right_coneigenvector, standard_eigenvalues)
from .variation import (con_hausdorff, con_spectral_variation, elsner_bound, hausdorff, spectral_variation,
                        verify_variation_bounds)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
