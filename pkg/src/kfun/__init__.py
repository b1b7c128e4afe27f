"""Coherent-label kernel calculus for Gaussian states.

Pure Gaussian states are represented by a Gaussian kernel over coherent
labels; photon subtraction, heralding, boson-sampling probabilities and
pure loss all reduce to Gaussian matching integrals evaluated exactly by
:mod:`kfun.engine`.  ``BACKEND`` names the active matching kernel
("compiled" or "python").
"""

__version__ = "0.1.0"

from .engine import (BACKEND, ComplexGaussianIntegrand, MomentMatrix,
                     build_moment_matrix, gaussian_integral, gaussian_moment,
                     hafnian, integrate)
from .errors import (DegreeCapError, GammaNotInvertibleError,
                     KernelNotConvergentError, KfunError,
                     NormalizeFirstError, OddDimensionError,
                     UnsupportedDisplacementError)
from .gaussian import (GaussianPureState, GraphSpec, KKernel, build_k_kernel,
                       cluster_b_matrix, cluster_covariance,
                       displacement_factor, gamma_inverse_blocks,
                       graph_from_dict, k_eval, label_to_xvec,
                       passive_transform, product_state,
                       squeezed_vacuum_state, state_from_dict, state_to_dict,
                       tmsv_state, vacuum_state, xvec_to_label)
from .gbs import (HMatrix, PhotonPattern, build_h, fock_probability, herald,
                  pattern_probability)
from .kstate import (CoherentSuperposition, NonGaussianKState,
                     apply_interferometer, cat_bell, coherent_inner,
                     coherent_overlap, fidelity, subtract, subtract_coherent,
                     success_probability)
from .loss import (MixedKernelState, apply_uniform_loss,
                   lossy_marginal_probability, lossy_pattern_probability,
                   mean_photon_number, trace)
from .scenarios import (Method, Scenario, ScenarioResult,
                        compare_bell_schemes, five_photon_tmsv, grid, sweep,
                        write_sweep_csv)

__all__ = [
    "BACKEND", "__version__",
    "ComplexGaussianIntegrand", "MomentMatrix", "build_moment_matrix",
    "gaussian_integral", "gaussian_moment", "hafnian", "integrate",
    "KfunError", "GammaNotInvertibleError", "KernelNotConvergentError",
    "OddDimensionError", "DegreeCapError", "UnsupportedDisplacementError",
    "NormalizeFirstError",
    "GaussianPureState", "KKernel", "GraphSpec", "build_k_kernel",
    "cluster_b_matrix", "cluster_covariance", "displacement_factor",
    "gamma_inverse_blocks", "graph_from_dict", "k_eval", "label_to_xvec",
    "passive_transform", "product_state", "squeezed_vacuum_state",
    "state_from_dict", "state_to_dict", "tmsv_state", "vacuum_state",
    "xvec_to_label",
    "HMatrix", "PhotonPattern", "build_h", "fock_probability", "herald",
    "pattern_probability",
    "CoherentSuperposition", "NonGaussianKState", "apply_interferometer",
    "cat_bell", "coherent_inner", "coherent_overlap", "fidelity", "subtract",
    "subtract_coherent", "success_probability",
    "MixedKernelState", "apply_uniform_loss", "lossy_marginal_probability",
    "lossy_pattern_probability", "mean_photon_number", "trace",
    "Method", "Scenario", "ScenarioResult", "compare_bell_schemes",
    "five_photon_tmsv", "grid", "sweep", "write_sweep_csv",
]
