"""Hot sampling kernels: a numpy implementation and a compiled core.

``BACKEND`` records which implementation is active.  The numpy backend
is the default: its hot loops already run inside numpy's vectorized C
(see benchmarks/bench_kernels.py, where the scalar compiled core
measures at 0.7-0.9x of it).  Set ``FRACSTOCH_BACKEND=cython`` to select
the compiled core when built; ``FRACSTOCH_BACKEND=numpy`` pins the
fallback explicitly.
"""

import os

from . import pybackend

_choice = os.environ.get("FRACSTOCH_BACKEND", "numpy").lower()

if _choice == "cython":
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = pybackend
else:
    _impl = pybackend

BACKEND = _impl.NAME
stable_standard = _impl.stable_standard
combo_increments = _impl.combo_increments
first_passage_batch = _impl.first_passage_batch

__all__ = ["BACKEND", "stable_standard", "combo_increments", "first_passage_batch", "pybackend"]
