"""Backend selection for the hot loops.

The compiled numba kernels are used by default. Setting the environment
variable ``LSPEC_DISABLE_NUMBA=1`` (or running without numba installed)
switches to the pure-numpy implementations, which share the same signatures.
"""

import os

_disabled = os.environ.get("LSPEC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

if _disabled:
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on the environment
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"

sturm_counts = _impl.sturm_counts
bisect_eigs = _impl.bisect_eigs
nu1_flux = _impl.nu1_flux
nu1_flux_sequence = _impl.nu1_flux_sequence
p_flux = _impl.p_flux
jacobi_eigs = _impl.jacobi_eigs

__all__ = [
    "BACKEND",
    "sturm_counts",
    "bisect_eigs",
    "nu1_flux",
    "nu1_flux_sequence",
    "p_flux",
    "jacobi_eigs",
]
