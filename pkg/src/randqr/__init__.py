"""Blocked QR factorizations with randomized pivot selection.

Dense double-precision linear algebra at desk scale: classical pivoted
Householder QR and a one-sided Jacobi SVD as baselines, blocked QR whose
pivots are chosen a block at a time from a Gaussian sketch, and a
rank-revealing variant whose R carries the singular values on its
diagonal blocks.  A benchmark harness reproduces the truncation-error
experiments on three synthetic spectra and emits CSV.
"""

from .backend import backend_name, get_kernels, set_backend
from .blocked import BlockConfig, Factorization, block_qr, block_rrqr, panel_svd
from .core import (
    column_norms,
    frobenius_norm,
    load_matrix,
    matmul,
    save_matrix,
    spectral_norm,
    transpose,
)
from .errors import ConvergenceError, DimensionError, RandQRError
from .experiments import method_config, run_experiment, run_suite
from .householder import (
    QRResult,
    Reflector,
    WYFactor,
    apply_wy_left,
    apply_wy_right,
    qr_column_pivoted,
    qr_tall_pivoted,
    qr_unpivoted,
    reflector_from_vector,
    wy_accumulate,
)
from .matrices import MatrixSpec, gen_matrix, haar_orthonormal
from .metrics import (
    DiagComparison,
    ErrorCurve,
    diag_comparison,
    svd_error_curve,
    truncation_errors,
)
from .pivoting import (
    PermutationPivot,
    ReflectorPivot,
    SketchConfig,
    build_sketch,
    select_pivot_permutation,
    select_pivot_reflectors,
)
from .rng import RngState, gaussian_matrix
from .svd import SVDResult, svd_full, svd_values

__version__ = "0.1.0"
