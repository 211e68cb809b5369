"""Hot-kernel dispatch: compiled Cython backend with a pure numpy fallback.

The backend is chosen once at import. Set ADSXAI_PURE_PYTHON=1 to force
the fallback; `use_backend` exists so benchmarks and equivalence tests
can switch in-process. Both backends are kept numerically identical
(same accumulation order, no FMA contraction in the compiled build).
"""
import os

import numpy as np

from . import _pure

OP_CONST = _pure.OP_CONST
OP_VAR = _pure.OP_VAR
OP_ADD = _pure.OP_ADD
OP_SUB = _pure.OP_SUB
OP_MUL = _pure.OP_MUL
OP_DIV = _pure.OP_DIV
OP_NEG = _pure.OP_NEG

_ckern = None
if os.environ.get("ADSXAI_PURE_PYTHON", "") != "1":
    try:
        from . import _ckern
    except ImportError:
        _ckern = None

_impl = _ckern if _ckern is not None else _pure


def backend_name() -> str:
    return "cython" if _impl is _ckern and _ckern is not None else "python"


def compiled_available() -> bool:
    return _ckern is not None


def use_backend(name: str) -> None:
    """Switch backend in-process ('cython' or 'python'); for benchmarks/tests."""
    global _impl
    if name == "python":
        _impl = _pure
    elif name == "cython":
        if _ckern is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = _ckern
    else:
        raise ValueError(f"unknown backend {name!r}")


def eval_program(ops, args, X):
    ops = np.ascontiguousarray(ops, dtype=np.int32)
    args = np.ascontiguousarray(args, dtype=np.float64)
    X = np.ascontiguousarray(X, dtype=np.float64)
    return _impl.eval_program(ops, args, X)


def best_split(values, y, w, min_leaf):
    values = np.ascontiguousarray(values, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    return _impl.best_split(values, y, w, int(min_leaf))
