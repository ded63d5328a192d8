"""Select the kernel backend at import time.

The compiled ``_kernels`` extension is used when present; setting
``PRUFORGE_PURE=1`` forces the pure-Python twin.
"""

import os

from . import _pykernels

if os.environ.get("PRUFORGE_PURE", "") not in ("", "0"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.BACKEND
