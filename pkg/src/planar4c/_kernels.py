"""Exhaustive-search kernels over triangle orientation assignments.

Every kernel exists twice: a loop version compiled with numba ``@njit`` and a
pure-numpy (or plain Python, for the depth-first search) fallback.  The loop
versions are used unless numba is missing or ``PLANAR4C_DISABLE_NUMBA`` is set
to a non-empty value other than ``0``.

Assignments are encoded as bitmasks: bit ``k`` set means triangle ``k`` has
orientation value 2, clear means value 1.  Incidence arrays have shape
``(t, 3)`` and hold dense local vertex indices.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_flag = os.environ.get("PLANAR4C_DISABLE_NUMBA", "")
USE_NUMBA = HAVE_NUMBA and _flag in ("", "0")

_CHUNK = 1 << 16


def vertex_masks(inc, n_vertices):
    """Bitmask of incident triangles for every vertex."""
    masks = np.zeros(n_vertices, dtype=np.int64)
    for k in range(inc.shape[0]):
        for j in range(3):
            masks[inc[k, j]] |= np.int64(1) << k
    return masks


def digit_weights(n_vertices, selected):
    """Base-3 place value per vertex; unselected vertices weigh 0."""
    w = np.zeros(n_vertices, dtype=np.int64)
    for j, u in enumerate(selected):
        w[u] = 3**j
    return w


# ---------------------------------------------------------------------------
# numpy / Python reference paths


def _cv3_codes_np(inc, n_vertices, weights):
    t = inc.shape[0]
    vmask = vertex_masks(inc, n_vertices)
    deg = np.bitwise_count(vmask).astype(np.int64)
    used = np.nonzero(weights)[0]
    out = np.empty(1 << t, dtype=np.int64)
    for start in range(0, 1 << t, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << t), dtype=np.int64)
        acc = np.zeros(masks.shape[0], dtype=np.int64)
        for u in used:
            twos = np.bitwise_count(masks & vmask[u]).astype(np.int64)
            acc += weights[u] * ((deg[u] + twos) % 3)
        out[start : start + masks.shape[0]] = acc
    return out


def _count_residue_np(t, target):
    total = 0
    for start in range(0, 1 << t, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << t), dtype=np.int64)
        sums = t + np.bitwise_count(masks).astype(np.int64)
        total += int(np.count_nonzero(sums % 3 == target))
    return total


def _inverse_gray(g):
    x = g.copy()
    shift = 1
    while shift < 64:
        x ^= x >> shift
        shift <<= 1
    return x


def _first_zero_np(inc, n_vertices, weights):
    codes = _cv3_codes_np(inc, n_vertices, weights)
    hits = np.flatnonzero(codes == 0).astype(np.int64)
    if not hits.size:
        return -1
    # match the Gray-code scan order of the compiled kernel
    return int(hits[np.argmin(_inverse_gray(hits))])


def _dfs_zero_py(inc, order, ptr, completes, n_vertices):
    t = order.shape[0]
    sums = [0] * n_vertices
    cur = [0] * t
    rows = [tuple(int(x) for x in inc[order[i]]) for i in range(t)]
    checks = [tuple(int(x) for x in completes[ptr[i] : ptr[i + 1]]) for i in range(t)]
    i = 0
    nodes = 0
    while i >= 0:
        if i == t:
            out = np.zeros(t, dtype=np.int64)
            for p in range(t):
                out[order[p]] = cur[p]
            return out, nodes
        a, b, c = rows[i]
        val = cur[i]
        if val:
            sums[a] -= val
            sums[b] -= val
            sums[c] -= val
        if val == 2:
            cur[i] = 0
            i -= 1
            continue
        val += 1
        cur[i] = val
        nodes += 1
        sums[a] += val
        sums[b] += val
        sums[c] += val
        if all(sums[u] % 3 == 0 for u in checks[i]):
            i += 1
    return np.zeros(0, dtype=np.int64), nodes


# ---------------------------------------------------------------------------
# numba paths

if HAVE_NUMBA:

    @njit(cache=True)
    def _cv3_codes_jit(inc, n_vertices, weights):
        t = inc.shape[0]
        vals = np.zeros(n_vertices, dtype=np.int64)
        for k in range(t):
            for j in range(3):
                vals[inc[k, j]] += 1
        code = 0
        for u in range(n_vertices):
            vals[u] %= 3
            code += weights[u] * vals[u]
        out = np.empty(1 << t, dtype=np.int64)
        out[0] = code
        gray = 0
        for i in range(1, 1 << t):
            k = 0
            while not (i >> k) & 1:
                k += 1
            gray ^= 1 << k
            step = 1 if (gray >> k) & 1 else 2
            for j in range(3):
                u = inc[k, j]
                new = (vals[u] + step) % 3
                code += weights[u] * (new - vals[u])
                vals[u] = new
            out[gray] = code
        return out

    @njit(cache=True)
    def _count_residue_jit(t, target):
        total = 0
        for m in range(1 << t):
            x = m
            pop = 0
            while x:
                x &= x - 1
                pop += 1
            if (t + pop) % 3 == target:
                total += 1
        return total

    @njit(cache=True)
    def _first_zero_jit(inc, n_vertices, weights):
        t = inc.shape[0]
        vals = np.zeros(n_vertices, dtype=np.int64)
        for k in range(t):
            for j in range(3):
                vals[inc[k, j]] += 1
        code = 0
        for u in range(n_vertices):
            vals[u] %= 3
            code += weights[u] * vals[u]
        if code == 0:
            return 0
        gray = 0
        for i in range(1, 1 << t):
            k = 0
            while not (i >> k) & 1:
                k += 1
            gray ^= 1 << k
            step = 1 if (gray >> k) & 1 else 2
            for j in range(3):
                u = inc[k, j]
                new = (vals[u] + step) % 3
                code += weights[u] * (new - vals[u])
                vals[u] = new
            if code == 0:
                return gray
        return -1

    @njit(cache=True)
    def _dfs_zero_jit(inc, order, ptr, completes, n_vertices):
        t = order.shape[0]
        sums = np.zeros(n_vertices, dtype=np.int64)
        cur = np.zeros(t, dtype=np.int64)
        i = 0
        nodes = 0
        while i >= 0:
            if i == t:
                out = np.zeros(t, dtype=np.int64)
                for p in range(t):
                    out[order[p]] = cur[p]
                return out, nodes
            tri = order[i]
            val = cur[i]
            if val != 0:
                for j in range(3):
                    sums[inc[tri, j]] -= val
            if val == 2:
                cur[i] = 0
                i -= 1
                continue
            val += 1
            cur[i] = val
            nodes += 1
            for j in range(3):
                sums[inc[tri, j]] += val
            ok = True
            for q in range(ptr[i], ptr[i + 1]):
                if sums[completes[q]] % 3 != 0:
                    ok = False
                    break
            if ok:
                i += 1
        return np.zeros(0, dtype=np.int64), nodes

else:  # pragma: no cover
    _cv3_codes_jit = _count_residue_jit = _first_zero_jit = _dfs_zero_jit = None


def _pick(jit_fn, np_fn):
    return jit_fn if USE_NUMBA else np_fn


#: all ``2**t`` vertex numberings, as base-3 codes indexed by assignment mask
cv3_codes = _pick(_cv3_codes_jit, _cv3_codes_np)
#: number of assignments of ``t`` values whose sum is ``target`` mod 3
count_residue = _pick(_count_residue_jit, _count_residue_np)
#: first mask in Gray-code order whose weighted numbering is all zero, or -1
first_zero = _pick(_first_zero_jit, _first_zero_np)
#: depth-first search with per-vertex completion checks
dfs_zero = _pick(_dfs_zero_jit, _dfs_zero_py)

IMPLEMENTATIONS = {
    "numpy": {
        "cv3_codes": _cv3_codes_np,
        "count_residue": _count_residue_np,
        "first_zero": _first_zero_np,
        "dfs_zero": _dfs_zero_py,
    },
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "cv3_codes": _cv3_codes_jit,
        "count_residue": _count_residue_jit,
        "first_zero": _first_zero_jit,
        "dfs_zero": _dfs_zero_jit,
    }
