"""Kernel lane selection.

Imports the compiled extension when it is available, otherwise falls back to
the pure-NumPy twin.  ``INEQTEST_NO_EXT=1`` forces the fallback; ``BACKEND``
reports which lane is active.  Both lanes expose the same functions and agree
to floating-point roundoff.
"""

import os

if os.environ.get("INEQTEST_NO_EXT"):
    _impl = None
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = None

if _impl is not None:
    BACKEND = "compiled"
else:
    from . import _pykernels as _impl  # type: ignore[no-redef]

    BACKEND = "python"

gini_stat = _impl.gini_stat
theil_stat = _impl.theil_stat
mld_stat = _impl.mld_stat
ge_stat = _impl.ge_stat
gini_segments = _impl.gini_segments
theil_segments = _impl.theil_segments
mld_segments = _impl.mld_segments
ge_segments = _impl.ge_segments
gini_rows = _impl.gini_rows
theil_rows = _impl.theil_rows
mld_rows = _impl.mld_rows
ge_rows = _impl.ge_rows
