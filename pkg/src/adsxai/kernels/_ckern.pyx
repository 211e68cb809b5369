# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; semantics must stay in sync with _pure.py."""
import numpy as np

from libc.math cimport INFINITY, isfinite

DEF MAX_STACK = 128

OP_CONST = 0
OP_VAR = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_NEG = 6


def eval_program(const int[::1] ops, const double[::1] args, const double[:, ::1] X):
    """Postfix stack-machine evaluation over rows of X (C-contiguous)."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t m = ops.shape[0]
    cdef Py_ssize_t r, k, sp
    cdef int op
    cdef double stack[MAX_STACK]
    cdef double b
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    # validate stack depth once (also catches malformed programs)
    sp = 0
    for k in range(m):
        op = ops[k]
        if op == 0 or op == 1:
            sp += 1
            if sp > MAX_STACK:
                raise ValueError("expression too deep for compiled backend")
        elif op == 6:
            if sp < 1:
                raise ValueError("program underflows the stack")
        elif 2 <= op <= 5:
            if sp < 2:
                raise ValueError("program underflows the stack")
            sp -= 1
        else:
            raise ValueError(f"bad opcode {op}")
    if sp != 1:
        raise ValueError("program did not reduce to a single value")

    for r in range(n):
        sp = 0
        for k in range(m):
            op = ops[k]
            if op == 0:
                stack[sp] = args[k]
                sp += 1
            elif op == 1:
                stack[sp] = X[r, <Py_ssize_t> args[k]]
                sp += 1
            elif op == 2:
                b = stack[sp - 1]
                sp -= 1
                stack[sp - 1] = stack[sp - 1] + b
            elif op == 3:
                b = stack[sp - 1]
                sp -= 1
                stack[sp - 1] = stack[sp - 1] - b
            elif op == 4:
                b = stack[sp - 1]
                sp -= 1
                stack[sp - 1] = stack[sp - 1] * b
            elif op == 5:
                b = stack[sp - 1]
                sp -= 1
                stack[sp - 1] = stack[sp - 1] / b
            else:
                stack[sp - 1] = -stack[sp - 1]
        out[r] = stack[0]
    return out_arr


def best_split(const double[::1] values, const double[::1] y,
               const double[::1] w, Py_ssize_t min_leaf):
    """Best variance-reduction split on an ascending column; see _pure.py."""
    cdef Py_ssize_t n = values.shape[0]
    if n < 2 * min_leaf:
        return -1, -INFINITY
    cdef double total_w = 0.0, total_s = 0.0
    cdef Py_ssize_t p
    for p in range(n):
        total_w = total_w + w[p]
        total_s = total_s + w[p] * y[p]
    cdef double wl = 0.0, sl = 0.0, wr, sr, proxy
    cdef double best = -INFINITY
    cdef Py_ssize_t best_pos = -1
    for p in range(1, n):
        wl = wl + w[p - 1]
        sl = sl + w[p - 1] * y[p - 1]
        if p < min_leaf or p > n - min_leaf:
            continue
        if values[p] <= values[p - 1]:
            continue
        wr = total_w - wl
        sr = total_s - sl
        proxy = sl * sl / wl + sr * sr / wr
        if isfinite(proxy) and proxy > best:
            best = proxy
            best_pos = p
    return best_pos, best
