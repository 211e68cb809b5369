"""Pure numpy implementations of the hot kernels.

Semantics (including accumulation order and tie-breaking) mirror the
Cython versions in _ckern.pyx so both backends produce identical
results; keep the two files in sync.
"""
import numpy as np

# opcodes shared with _ckern.pyx
OP_CONST = 0
OP_VAR = 1
OP_ADD = 2
OP_SUB = 3
OP_MUL = 4
OP_DIV = 5
OP_NEG = 6


def eval_program(ops, args, X):
    """Run a postfix expression program over the rows of X.

    ops/args encode the program: (OP_CONST, value), (OP_VAR, column),
    or an operator applied to the top of the stack. Non-finite results
    (division by ~0, overflow) stay in the output as inf/nan.
    """
    n = X.shape[0]
    stack = []
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for op, arg in zip(ops, args):
            if op == OP_CONST:
                stack.append(np.full(n, arg))
            elif op == OP_VAR:
                stack.append(X[:, int(arg)].copy())
            elif op == OP_NEG:
                stack[-1] = -stack[-1]
            else:
                b = stack.pop()
                a = stack.pop()
                if op == OP_ADD:
                    stack.append(a + b)
                elif op == OP_SUB:
                    stack.append(a - b)
                elif op == OP_MUL:
                    stack.append(a * b)
                elif op == OP_DIV:
                    stack.append(a / b)
                else:
                    raise ValueError(f"bad opcode {op}")
    if len(stack) != 1:
        raise ValueError("program did not reduce to a single value")
    return stack[0]


def best_split(values, y, w, min_leaf):
    """Best variance-reduction split of a sorted feature column.

    values must be ascending; a split at position p sends rows [0, p) left.
    Candidates need strictly increasing values across the boundary and
    min_leaf rows on each side. Maximizes the weighted proxy
    S_L^2/W_L + S_R^2/W_R (equivalent to minimizing weighted SSE).
    Returns (position, proxy); position -1 when no valid split exists.
    """
    n = len(values)
    if n < 2 * min_leaf:
        return -1, -np.inf
    cw = np.cumsum(w)
    cs = np.cumsum(w * y)
    total_w = cw[-1]
    total_s = cs[-1]
    wl = cw[:-1]
    sl = cs[:-1]
    wr = total_w - wl
    sr = total_s - sl
    with np.errstate(divide="ignore", invalid="ignore"):
        proxy = sl * sl / wl + sr * sr / wr
    pos = np.arange(1, n)
    valid = (values[1:] > values[:-1]) & (pos >= min_leaf) & (pos <= n - min_leaf)
    proxy = np.where(valid & np.isfinite(proxy), proxy, -np.inf)
    best = int(np.argmax(proxy))
    if proxy[best] == -np.inf:
        return -1, -np.inf
    return best + 1, float(proxy[best])
