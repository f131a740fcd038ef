"""Integrand kernels for the adaptive quadrature hot loops.

Two interchangeable backends: a Cython extension (fast) and a numpy fallback
(pure).  The compiled one is used when importable; set CASIMIR_PURE_KERNELS=1
to force the fallback.  ``BACKEND`` reports which one is active.
"""

from __future__ import annotations

import os

from . import pure

MODEL_IDEAL = pure.MODEL_IDEAL
MODEL_PLASMA = pure.MODEL_PLASMA
MODEL_DRUDE = pure.MODEL_DRUDE
ZF_PLASMA_PERP = pure.ZF_PLASMA_PERP
ZF_DRUDE_DIAG = pure.ZF_DRUDE_DIAG
ZF_DRUDE_DIAG_DGAMMA = pure.ZF_DRUDE_DIAG_DGAMMA

if os.environ.get("CASIMIR_PURE_KERNELS", "") not in ("", "0"):
    _impl = pure
else:
    try:
        from . import fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND = "cython" if _impl is not pure else "numpy"

reflection = _impl.reflection
reflection_derivatives = _impl.reflection_derivatives
free_energy_integrand = _impl.free_energy_integrand
boundary_log_delta = _impl.boundary_log_delta
energy_integrand = _impl.energy_integrand
zero_freq_integrand = _impl.zero_freq_integrand
