"""Kernel backend selection.

The compiled extension ffinfra._kernel_c is preferred when it imported
successfully; ffinfra._kernel_py is the always-available fallback.  The
environment variable FFINFRA_BACKEND forces the choice: "c" requires the
compiled kernels (ImportError if absent), "py" forces pure Python.

Both backends implement the same contract, documented in _kernel_py.
"""

import os

_choice = os.environ.get("FFINFRA_BACKEND", "").strip().lower()
if _choice not in ("", "c", "py"):
    raise ImportError(f"FFINFRA_BACKEND must be 'c' or 'py', not {_choice!r}")

_impl = None
if _choice in ("", "c"):
    try:
        from . import _kernel_c as _impl
        name = "c"
    except ImportError:
        if _choice == "c":
            raise ImportError(
                "FFINFRA_BACKEND=c but the compiled kernels are not built; "
                "reinstall with Cython available or unset FFINFRA_BACKEND"
            )
if _impl is None:
    from . import _kernel_py as _impl
    name = "py"

poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
poly_axpy_shift = _impl.poly_axpy_shift
poly_submul = _impl.poly_submul
