# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Weyl orbit BFS. Same contract as ``_weyl_bfs_py.weyl_bfs``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map

cnp.import_array()


def weyl_bfs(cartan, tracked, int64_t expected, int64_t bound):
    """Orbit BFS keyed by a mixed-radix code of the pairing vector.

    ``bound`` must dominate every |<beta, rho^vee>|; the caller guarantees
    ``(2*bound+1)**rank < 2**62``.
    """
    cdef int64_t[:, ::1] C = np.ascontiguousarray(cartan, dtype=np.int64)
    cdef int64_t[:, ::1] T = np.ascontiguousarray(tracked, dtype=np.int64)
    cdef Py_ssize_t r = C.shape[0]
    cdef Py_ssize_t m = T.shape[1]
    cdef Py_ssize_t cap = expected if expected > 0 else 1

    pts_arr = np.empty((cap, r), dtype=np.int64)
    par_arr = np.empty(cap, dtype=np.int64)
    gen_arr = np.empty(cap, dtype=np.int64)
    img_arr = np.empty((cap, r, m), dtype=np.int64)
    cdef int64_t[:, ::1] pts = pts_arr
    cdef int64_t[::1] par = par_arr
    cdef int64_t[::1] gen = gen_arr
    cdef int64_t[:, :, ::1] img = img_arr

    cdef int64_t radix = 2 * bound + 1
    cdef unordered_map[int64_t, int64_t] seen
    cdef Py_ssize_t i, j, k, col, head = 0, count = 1
    cdef int64_t key, pi, acc

    for j in range(r):
        pts[0, j] = 1
        for col in range(m):
            img[0, j, col] = T[j, col]
    par[0] = -1
    gen[0] = -1
    key = 0
    for j in range(r - 1, -1, -1):
        key = key * radix + (1 + bound)
    seen[key] = 0

    cdef int64_t[::1] q = np.empty(r, dtype=np.int64)
    while head < count:
        for i in range(r):
            pi = pts[head, i]
            key = 0
            for j in range(r - 1, -1, -1):
                q[j] = pts[head, j] - pi * C[j, i]
                key = key * radix + (q[j] + bound)
            if seen.count(key):
                continue
            if count >= cap:
                raise RuntimeError("orbit larger than the expected group order")
            seen[key] = count
            for j in range(r):
                pts[count, j] = q[j]
            par[count] = head
            gen[count] = i
            for col in range(m):
                for j in range(r):
                    img[count, j, col] = img[head, j, col]
                acc = 0
                for j in range(r):
                    acc += C[i, j] * img[head, j, col]
                img[count, i, col] -= acc
            count += 1
        head += 1
    if expected > 0 and count != expected:
        raise RuntimeError(f"orbit enumeration found {count} elements, expected {expected}")
    return par_arr[:count].copy(), gen_arr[:count].copy(), img_arr[:count].copy()
