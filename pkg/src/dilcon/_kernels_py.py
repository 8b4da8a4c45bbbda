"""Pure NumPy/Python kernels.

Same contracts as the compiled module ``dilcon._kernels``; this module is
selected at import time when the extension is not built (or when forced
via ``DILCON_BACKEND=py``).  Outputs are bit-identical to the compiled
kernels.
"""

import numpy as np

# first / second corner offsets and neighbor direction, indexed by edge
# code 1..4 = bottom, right, top, left (counterclockwise around the pixel)
_FX = np.array([0, 0, 1, 1, 0], dtype=np.int64)
_FY = np.array([0, 0, 0, 1, 1], dtype=np.int64)
_SX = np.array([0, 1, 1, 0, 0], dtype=np.int64)
_SY = np.array([0, 0, 1, 1, 0], dtype=np.int64)


def extract_rows(raster, r0, r1):
    """Boundary edges of raster rows r0..r1-1, in row-major then
    bottom/right/top/left order.  Returns (parent_x, parent_y, etype)
    with parents in math coordinates (y up)."""
    h, w = raster.shape
    r0 = max(r0, 0)
    r1 = min(r1, h)
    if r1 <= r0:
        return (
            np.empty(0, np.int32),
            np.empty(0, np.int32),
            np.empty(0, np.uint8),
        )
    pad = np.zeros((h + 2, w + 2), dtype=np.uint8)
    pad[1:-1, 1:-1] = raster
    white = pad[r0 + 1 : r1 + 1, 1:-1] != 0
    below = pad[r0 + 2 : r1 + 2, 1:-1] == 0  # raster row r+1 = math y-1
    right = pad[r0 + 1 : r1 + 1, 2:] == 0
    above = pad[r0:r1, 1:-1] == 0
    left = pad[r0 + 1 : r1 + 1, :-2] == 0
    mask = np.stack(
        [white & below, white & right, white & above, white & left], axis=-1
    )
    idx = np.flatnonzero(mask.reshape(-1))
    et = (idx & 3).astype(np.uint8) + 1
    rest = idx >> 2
    px = (rest % w).astype(np.int32)
    py = (h - 1 - (rest // w + r0)).astype(np.int32)
    return px, py, et


def _two_slot(keys, n_corners):
    """First two edge ids per corner key, ids ascending.  Third hit at a
    key is reported as the error key (more than four edges meeting)."""
    a = np.full(n_corners, -1, dtype=np.int32)
    b = np.full(n_corners, -1, dtype=np.int32)
    n = len(keys)
    if n == 0:
        return a, b, -1
    order = np.argsort(keys, kind="stable")  # stable: ids ascending per key
    sk = keys[order]
    first = np.ones(n, dtype=bool)
    first[1:] = sk[1:] != sk[:-1]
    group_start = np.maximum.accumulate(np.where(first, np.arange(n), 0))
    pos = np.arange(n) - group_start
    a[sk[pos == 0]] = order[pos == 0]
    b[sk[pos == 1]] = order[pos == 1]
    over = pos >= 2
    err = int(sk[over][0]) if over.any() else -1
    return a, b, err


def fill_point_table(px, py, et, width, height):
    """Per-corner outgoing/incoming edge slots (-1 = empty, ids ascending).

    Corner key = cy * (width + 1) + cx.  Returns
    (out_a, out_b, in_a, in_b, err_key); err_key >= 0 flags a corner with
    more than two outgoing or incoming edges.
    """
    n_corners = (width + 1) * (height + 1)
    etl = et.astype(np.int64)
    x = px.astype(np.int64)
    y = py.astype(np.int64)
    fkey = (y + _FY[etl]) * (width + 1) + (x + _FX[etl])
    skey = (y + _SY[etl]) * (width + 1) + (x + _SX[etl])
    out_a, out_b, err_out = _two_slot(fkey, n_corners)
    in_a, in_b, err_in = _two_slot(skey, n_corners)
    err = err_out if err_out >= 0 else err_in
    return out_a, out_b, in_a, in_b, err


def trace_edges(px, py, et, out_a, out_b, width, height):
    """Walk every edge into closed loops.

    Successor of an edge is the outgoing edge at its head corner; at a
    four-valent corner, the outgoing edge owned by the same parent pixel.
    Loops are seeded from the lowest unused edge id.  Returns
    (order, offsets, used_total, err_key): ``order`` is the edge-id
    permutation in traversal order, ``offsets`` the loop boundaries,
    ``err_key`` >= 0 the corner where no legal successor existed.
    """
    n = len(px)
    etl = et.astype(np.int64)
    x = px.astype(np.int64)
    y = py.astype(np.int64)
    skey = ((y + _SY[etl]) * (width + 1) + (x + _SX[etl])).tolist()
    pid = (y * width + x).tolist()
    oa = out_a.tolist()
    ob = out_b.tolist()
    used = bytearray(n)
    order = []
    offsets = [0]
    err = -1
    for seed in range(n):
        if used[seed]:
            continue
        used[seed] = 1
        order.append(seed)
        cur = seed
        while True:
            k = skey[cur]
            a = oa[k]
            b = ob[k]
            if b < 0:
                nxt = a
            else:
                a_same = pid[a] == pid[cur]
                if a_same == (pid[b] == pid[cur]):
                    err = k  # tie-break must match exactly one edge
                    break
                nxt = a if a_same else b
            if nxt < 0:
                err = k
                break
            if used[nxt]:
                if nxt != seed:
                    err = k
                break
            used[nxt] = 1
            order.append(nxt)
            cur = nxt
        if err >= 0:
            break
        offsets.append(len(order))
    return (
        np.array(order, dtype=np.int32),
        np.array(offsets, dtype=np.int32),
        len(order),
        err,
    )
