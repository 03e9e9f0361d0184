"""Pure-Python fallback for the resolution-cube circle counter.

Mirrors the compiled extension's API exactly; selected at import time by
``oddkh._kernels`` when the extension is unavailable or disabled.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def circle_counts_all(quads: np.ndarray, arc_count: int) -> np.ndarray:
    """Circle counts of every full resolution of the diagram.

    quads: (n, 4) int array of 0-based arc labels, counterclockwise from the
    incoming under-arc.  Returns an int32 array of length 2**n whose m-th
    entry is the number of circles of the resolution with smoothing bits m
    (bit i = resolution of crossing i; 0 joins slots 0-1 and 2-3, 1 joins
    slots 0-3 and 1-2).
    """
    n = len(quads)
    out = np.empty(1 << n, dtype=np.int32)
    q = [tuple(int(x) for x in row) for row in quads]
    for m in range(1 << n):
        parent = list(range(arc_count))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        circles = arc_count
        for i in range(n):
            a, b, c, d = q[i]
            if (m >> i) & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    circles -= 1
        out[m] = circles
    return out
