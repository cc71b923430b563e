"""Hermite expansions, Riesz transforms and Hardy/Lipschitz machinery."""

import os as _os

# HAK_THREADS caps the BLAS/OpenMP pools; it must be applied before numpy loads.
_threads = _os.environ.get("HAK_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)

__version__ = "0.1.0"
