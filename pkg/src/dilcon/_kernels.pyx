# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: boundary-edge scan, endpoint table fill, loop walk.

Mirrors ``dilcon._kernels_py`` exactly; the loops release the GIL so the
row-band thread pool in ``extract_edges`` scales with real cores.
"""

import numpy as np


def extract_rows(const unsigned char[:, ::1] raster, Py_ssize_t r0, Py_ssize_t r1):
    """Boundary edges of raster rows r0..r1-1 (row-major, then
    bottom/right/top/left per pixel); parents in math coordinates."""
    cdef Py_ssize_t h = raster.shape[0]
    cdef Py_ssize_t w = raster.shape[1]
    if r0 < 0:
        r0 = 0
    if r1 > h:
        r1 = h
    cdef Py_ssize_t r, x
    cdef Py_ssize_t m = 0
    if r1 > r0:
        with nogil:
            for r in range(r0, r1):
                for x in range(w):
                    if raster[r, x]:
                        if r + 1 >= h or raster[r + 1, x] == 0:
                            m += 1
                        if x + 1 >= w or raster[r, x + 1] == 0:
                            m += 1
                        if r == 0 or raster[r - 1, x] == 0:
                            m += 1
                        if x == 0 or raster[r, x - 1] == 0:
                            m += 1
    px_arr = np.empty(m, dtype=np.int32)
    py_arr = np.empty(m, dtype=np.int32)
    et_arr = np.empty(m, dtype=np.uint8)
    if m == 0:
        return px_arr, py_arr, et_arr
    cdef int[::1] px = px_arr
    cdef int[::1] py = py_arr
    cdef unsigned char[::1] et = et_arr
    cdef Py_ssize_t i = 0
    cdef int yy
    with nogil:
        for r in range(r0, r1):
            yy = <int> (h - 1 - r)
            for x in range(w):
                if raster[r, x]:
                    if r + 1 >= h or raster[r + 1, x] == 0:   # bottom
                        px[i] = <int> x; py[i] = yy; et[i] = 1; i += 1
                    if x + 1 >= w or raster[r, x + 1] == 0:   # right
                        px[i] = <int> x; py[i] = yy; et[i] = 2; i += 1
                    if r == 0 or raster[r - 1, x] == 0:       # top
                        px[i] = <int> x; py[i] = yy; et[i] = 3; i += 1
                    if x == 0 or raster[r, x - 1] == 0:       # left
                        px[i] = <int> x; py[i] = yy; et[i] = 4; i += 1
    return px_arr, py_arr, et_arr


def fill_point_table(const int[::1] px, const int[::1] py,
                     const unsigned char[::1] et, int width, int height):
    """Per-corner outgoing/incoming slots (-1 = empty, ids ascending);
    error key >= 0 flags a corner with a third outgoing or incoming edge."""
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t n_corners = (<Py_ssize_t> (width + 1)) * (height + 1)
    out_a_arr = np.full(n_corners, -1, dtype=np.int32)
    out_b_arr = np.full(n_corners, -1, dtype=np.int32)
    in_a_arr = np.full(n_corners, -1, dtype=np.int32)
    in_b_arr = np.full(n_corners, -1, dtype=np.int32)
    cdef int[::1] out_a = out_a_arr
    cdef int[::1] out_b = out_b_arr
    cdef int[::1] in_a = in_a_arr
    cdef int[::1] in_b = in_b_arr
    cdef long long err = -1
    cdef Py_ssize_t i, k
    cdef int x, y, fx, fy, sx, sy
    cdef unsigned char t
    cdef Py_ssize_t w1 = width + 1
    with nogil:
        for i in range(n):
            t = et[i]
            x = px[i]
            y = py[i]
            if t == 1:
                fx = x; fy = y; sx = x + 1; sy = y
            elif t == 2:
                fx = x + 1; fy = y; sx = x + 1; sy = y + 1
            elif t == 3:
                fx = x + 1; fy = y + 1; sx = x; sy = y + 1
            else:
                fx = x; fy = y + 1; sx = x; sy = y
            k = fy * w1 + fx
            if out_a[k] < 0:
                out_a[k] = <int> i
            elif out_b[k] < 0:
                out_b[k] = <int> i
            else:
                err = k
                break
            k = sy * w1 + sx
            if in_a[k] < 0:
                in_a[k] = <int> i
            elif in_b[k] < 0:
                in_b[k] = <int> i
            else:
                err = k
                break
    return out_a_arr, out_b_arr, in_a_arr, in_b_arr, err


def trace_edges(const int[::1] px, const int[::1] py,
                const unsigned char[::1] et,
                const int[::1] out_a, const int[::1] out_b,
                int width, int height):
    """Walk all edges into closed loops (same-parent tie-break at
    four-valent corners, seeds in ascending id order).  Returns
    (order, offsets, used_total, err_key)."""
    cdef Py_ssize_t n = px.shape[0]
    order_arr = np.empty(n, dtype=np.int32)
    offsets_arr = np.empty(n + 1, dtype=np.int32)
    used_arr = np.zeros(n, dtype=np.uint8)
    cdef int[::1] order = order_arr
    cdef int[::1] offsets = offsets_arr
    cdef unsigned char[::1] used = used_arr
    cdef Py_ssize_t w1 = width + 1
    cdef long long err = -1
    cdef Py_ssize_t total = 0, n_loops = 0
    cdef Py_ssize_t seed, cur, k
    cdef int a, b, nxt
    cdef int x, y, sx, sy
    cdef unsigned char t
    cdef bint a_same, b_same
    offsets[0] = 0
    with nogil:
        for seed in range(n):
            if used[seed]:
                continue
            used[seed] = 1
            order[total] = <int> seed
            total += 1
            cur = seed
            while True:
                t = et[cur]
                x = px[cur]
                y = py[cur]
                if t == 1:
                    sx = x + 1; sy = y
                elif t == 2:
                    sx = x + 1; sy = y + 1
                elif t == 3:
                    sx = x; sy = y + 1
                else:
                    sx = x; sy = y
                k = sy * w1 + sx
                a = out_a[k]
                b = out_b[k]
                if b < 0:
                    nxt = a
                else:
                    a_same = px[a] == x and py[a] == y
                    b_same = px[b] == x and py[b] == y
                    if a_same == b_same:
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
                order[total] = nxt
                total += 1
                cur = nxt
            if err >= 0:
                break
            n_loops += 1
            offsets[n_loops] = <int> total
    return order_arr, offsets_arr[: n_loops + 1].copy(), total, err
