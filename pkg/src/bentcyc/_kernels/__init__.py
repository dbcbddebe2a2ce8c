"""Kernel selection: compiled Cython core when available, pure Python otherwise.

Set BENTCYC_KERNELS=py (or =c) to force a backend; the default prefers the
compiled extension. ACTIVE reports which one is in use.
"""

import os

_forced = os.environ.get("BENTCYC_KERNELS", "").strip().lower()

if _forced in ("py", "python", "pure"):
    from . import _pykernels as _impl
elif _forced in ("c", "cython", "ext"):
    from . import _ckernels as _impl  # noqa: F401  (ImportError is intentional here)
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

ACTIVE = _impl.IMPL_NAME

fwht_i64 = _impl.fwht_i64
mobius_u8 = _impl.mobius_u8
walsh_from_bits = _impl.walsh_from_bits
bent_from_bits = _impl.bent_from_bits
expand_coset = _impl.expand_coset
naive_walsh = _impl.naive_walsh
sparse_eval_all = _impl.sparse_eval_all

__all__ = [
    "ACTIVE",
    "fwht_i64",
    "mobius_u8",
    "walsh_from_bits",
    "bent_from_bits",
    "expand_coset",
    "naive_walsh",
    "sparse_eval_all",
]
