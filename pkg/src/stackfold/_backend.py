"""Pick the compiled kernels when importable, else the pure-Python ones.

Set ``STACKFOLD_PURE_PYTHON=1`` to force the fallback.
"""
import os

import numpy as np

from . import _pykernels

_CODE = np.full(256, 255, dtype=np.uint8)
for _i, _c in enumerate(b"ACGU"):
    _CODE[_c] = _i

compiled = None
if not os.environ.get("STACKFOLD_PURE_PYTHON"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

BACKENDS = {"python": _pykernels}
if compiled is not None:
    BACKENDS["compiled"] = compiled

NAME = "compiled" if compiled is not None else "python"
kernels = BACKENDS[NAME]


def get(name: str | None = None):
    if name is None or name == "auto":
        return kernels
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def encode(text: str) -> np.ndarray:
    return _CODE[np.frombuffer(text.encode("ascii"), dtype=np.uint8)]
