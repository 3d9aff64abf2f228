"""Kernel selection: compiled extension if available, pure Python otherwise.

``QVERIFY_BACKEND=python`` forces the pure kernel, ``=compiled`` requires
the extension (raising if it is missing); anything else / unset tries the
extension first and falls back silently.
"""

import os

_requested = os.environ.get("QVERIFY_BACKEND", "auto").strip().lower() or "auto"

if _requested in ("auto", "c", "compiled", "cython"):
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested != "auto":
            raise ImportError(
                "QVERIFY_BACKEND requested the compiled kernel but "
                "qverify._kernel is not built (run pip install -e . "
                "--no-build-isolation)"
            )
        from . import _kernel_py as kernel

        BACKEND = "python"
elif _requested in ("py", "python", "pure"):
    from . import _kernel_py as kernel

    BACKEND = "python"
else:
    raise ImportError(f"unrecognized QVERIFY_BACKEND value {_requested!r}")
