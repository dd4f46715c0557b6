"""Backend selection for the row-reduction kernel.

The compiled Cython kernel is used when it was built; otherwise the numpy
implementation. Set ``LIEENV_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _rref_py

python_rref_modp = _rref_py.rref_modp

try:
    from ._rref import rref_modp as compiled_rref_modp
except ImportError:  # extension not built
    compiled_rref_modp = None

if compiled_rref_modp is not None and not os.environ.get("LIEENV_PURE_PYTHON"):
    rref_modp = compiled_rref_modp
    BACKEND = "cython"
else:
    rref_modp = python_rref_modp
    BACKEND = "python"
