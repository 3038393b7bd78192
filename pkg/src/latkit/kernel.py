"""Backend selection for the hot kernels.

Prefers the compiled extension; falls back to the pure-Python twin.  Set
``LATKIT_PURE_PYTHON=1`` to force the fallback (used by the benchmark and by
the backend-agreement tests).
"""

import os

from latkit import _pykernel

if os.environ.get("LATKIT_PURE_PYTHON"):
    _impl = _pykernel
else:
    try:
        from latkit import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernel

BACKEND = _impl.BACKEND

pack = _impl.pack
unpack = _impl.unpack
leq_code = _impl.leq_code
meet_code = _impl.meet_code
join_code = _impl.join_code
delta_code = _impl.delta_code
pair_closure = _impl.pair_closure

CODE_ZERO = _impl.CODE_ZERO
CODE_ONE = _impl.CODE_ONE


def backends():
    """All importable backends, compiled first."""
    found = []
    try:
        from latkit import _kernel  # type: ignore[attr-defined]

        found.append(_kernel)
    except ImportError:
        pass
    found.append(_pykernel)
    return found
