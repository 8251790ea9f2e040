"""Hot complex-double kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` take over.  Setting ``WHITNEY_PURE_PYTHON=1``
forces the fallback.  ``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels as python

compiled = None
if os.environ.get("WHITNEY_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

solve_dense = _impl.solve_dense
horner_eval = _impl.horner_eval
esym_all = _impl.esym_all
power_matrix = _impl.power_matrix

__all__ = ["BACKEND", "compiled", "python", "solve_dense", "horner_eval", "esym_all",
           "power_matrix"]
