# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled resolution-cube circle counter (hot kernel).

Same contract as oddkh._kernels.pure.circle_counts_all; the work is a
union-find over the arc set for each of the 2**n smoothings.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "fast"


def circle_counts_all(quads, int arc_count):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] q = np.ascontiguousarray(quads, dtype=np.int64)
    cdef int n = q.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(1 << n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] parent = np.empty(max(arc_count, 1), dtype=np.int64)
    cdef long m, total = 1 << n
    cdef int i, circles
    cdef long a, b, c, d, u, v, ru, rv, t
    for m in range(total):
        for i in range(arc_count):
            parent[i] = i
        circles = arc_count
        for i in range(n):
            a = q[i, 0]; b = q[i, 1]; c = q[i, 2]; d = q[i, 3]
            if (m >> i) & 1:
                u = a; v = d
            else:
                u = a; v = b
            ru = u
            while parent[ru] != ru:
                parent[ru] = parent[parent[ru]]
                ru = parent[ru]
            rv = v
            while parent[rv] != rv:
                parent[rv] = parent[parent[rv]]
                rv = parent[rv]
            if ru != rv:
                parent[ru] = rv
                circles -= 1
            if (m >> i) & 1:
                u = b; v = c
            else:
                u = c; v = d
            ru = u
            while parent[ru] != ru:
                parent[ru] = parent[parent[ru]]
                ru = parent[ru]
            rv = v
            while parent[rv] != rv:
                parent[rv] = parent[parent[rv]]
                rv = parent[rv]
            if ru != rv:
                parent[ru] = rv
                circles -= 1
        out[m] = circles
    return out
