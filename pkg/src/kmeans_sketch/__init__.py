"""Dimensionality reduction for k-means clustering.

Three reduction methods with provable quality guarantees relative to the
optimal clustering objective: randomized feature (column) sampling, random
sign projection, and projection onto an exact or randomized top-k singular
basis.  A Lloyd's k-means engine, a synthetic-data benchmark harness, and
empirical verifiers for the supporting concentration results round out the
package.

Hot kernels (Jacobi sweeps, blockwise sign-matrix multiplication) run in a
compiled extension when it was built; a numpy fallback is selected at
import time otherwise (``KMEANS_SKETCH_BACKEND=python`` forces it).
"""

from ._backend import available_backends, backend_name
from .datagen import Dataset, SynthSpec, gen_synth, load_csv, save_csv
from .kmeans import (
    ClusterAssignment,
    KMeansConfig,
    accuracy,
    indicator_matrix,
    lloyd,
    normalized_objective,
    objective,
)
from .linalg import (
    ConvergenceError,
    frobenius_norm,
    multiply,
    pseudo_inverse,
    qr_orthonormalize,
    spectral_norm,
)
from .reducers import (
    ReductionMethod,
    ReductionResult,
    reduce_rp,
    reduce_sampling,
    reduce_svd,
    run_reduction,
    theory_r,
)
from .sketch import (
    SamplingPlan,
    SignSketch,
    apply_sampling,
    mailman_multiply,
    naive_sign_multiply,
    random_sign_sketch,
    randomized_sampling,
    sampling_probabilities,
)
from .svd import SvdResult, exact_svd, fast_frobenius_svd, jacobi_eigh, top_k_right_singular

__version__ = "0.1.0"
