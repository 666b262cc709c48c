"""Backend switch for the array kernels.

Set ``XYZDM_PURE_NUMPY=1`` to force the vectorised numpy kernels even when
numba is importable.
"""

import os

ENV_FLAG = "XYZDM_PURE_NUMPY"

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    HAVE_NUMBA = False


def numba_disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not numba_disabled_by_env()
