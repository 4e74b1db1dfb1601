"""Select the flip kernel implementation at import time.

The compiled ``_walk`` extension is used when it was built; otherwise, or
when ``GREEDYFLIP_PURE`` is set to a non-empty value, the pure-Python
``_walk_py`` module is used. Both expose ``flip_inplace`` and
``GreedyWalker`` with identical behaviour.
"""

import os

from . import _walk_py

if os.environ.get("GREEDYFLIP_PURE"):
    _impl = _walk_py
else:
    try:
        from . import _walk as _impl
    except ImportError:
        _impl = _walk_py

flip_inplace = _impl.flip_inplace
GreedyWalker = _impl.GreedyWalker
BACKEND = "python" if _impl is _walk_py else "cython"


def available_backends():
    """Mapping from backend name to kernel module, for tests and benchmarks."""
    out = {"python": _walk_py}
    try:
        from . import _walk
    except ImportError:
        pass
    else:
        out["cython"] = _walk
    return out
