"""Pick the compiled kernels when they are importable, else numpy.

Set ``LLEPROJ_PURE_PYTHON=1`` to force the numpy kernels.
"""
import os

from . import _fallback

if os.environ.get("LLEPROJ_PURE_PYTHON") == "1":
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _fallback
        BACKEND = "python"

knn_indices = kernels.knn_indices
gram_batch = kernels.gram_batch
regularized_weights = kernels.regularized_weights
