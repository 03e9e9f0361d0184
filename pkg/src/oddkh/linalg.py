"""Exact linear algebra over F2, Q and Z.

Matrices are lists of rows.  F2 rows are packed into Python ints (bit j =
column j); rational rows hold ``fractions.Fraction`` entries.  Everything here
is exact -- no floating point touches any rank or normal-form computation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

# ---------------------------------------------------------------------------
# F2: rows as bitmasks


def f2_pack(rows):
    """Pack 0/1 iterables into bitmask rows."""
    packed = []
    for row in rows:
        bits = 0
        for j, v in enumerate(row):
            if v % 2:
                bits |= 1 << j
        packed.append(bits)
    return packed


class F2Space:
    """Row space over F2 in echelon form, supporting incremental inserts."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, int] = {}  # pivot column -> row bits

    def reduce(self, vec: int) -> int:
        while vec:
            p = vec.bit_length() - 1
            row = self.pivots.get(p)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert vec; return True if it enlarged the space."""
        vec = self.reduce(vec)
        if vec == 0:
            return False
        self.pivots[vec.bit_length() - 1] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def dim(self) -> int:
        return len(self.pivots)


def f2_rank(rows, ncols: int) -> int:
    space = F2Space(ncols)
    for r in rows:
        space.add(r)
    return space.dim


def f2_kernel(rows, ncols: int):
    """Kernel basis of the map x -> M x, rows of M given as bitmasks."""
    # Transpose-free elimination: echelonize columns via augmented identity.
    # Work with columns of M as vectors of length len(rows).
    nrows = len(rows)
    cols = []
    for j in range(ncols):
        bits = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                bits |= 1 << i
        cols.append(bits)
    space: dict[int, tuple[int, int]] = {}  # pivot row -> (colvec, combo)
    kernel = []
    for j in range(ncols):
        vec, combo = cols[j], 1 << j
        while vec:
            p = vec.bit_length() - 1
            if p in space:
                pv, pc = space[p]
                vec ^= pv
                combo ^= pc
            else:
                space[p] = (vec, combo)
                break
        if vec == 0:
            kernel.append(combo)
    return kernel


def f2_matvec(rows, vec: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        if (r & vec).bit_count() & 1:
            out |= 1 << i
    return out


# ---------------------------------------------------------------------------
# Q: Fraction echelon spaces


class QSpace:
    """Row space over Q kept in reduced echelon form."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivot_cols: list[int] = []

    def reduce(self, vec):
        vec = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivot_cols):
            if vec[p]:
                c = vec[p]
                for j in range(p, self.ncols):
                    if row[j]:
                        vec[j] -= c * row[j]
        return vec

    def add(self, vec) -> bool:
        vec = self.reduce(vec)
        p = next((j for j, x in enumerate(vec) if x), None)
        if p is None:
            return False
        c = vec[p]
        vec = [x / c for x in vec]
        for row in self.rows:
            if row[p]:
                cr = row[p]
                for j in range(self.ncols):
                    if vec[j]:
                        row[j] -= cr * vec[j]
        self.rows.append(vec)
        self.pivot_cols.append(p)
        return True

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    @property
    def dim(self) -> int:
        return len(self.rows)


def q_rank(rows) -> int:
    if not rows:
        return 0
    space = QSpace(len(rows[0]))
    for r in rows:
        space.add(r)
    return space.dim


def q_kernel(rows, ncols: int):
    """Kernel basis over Q of x -> M x with integer/Fraction rows."""
    aug = QSpace(len(rows) + ncols)
    kernel = []
    for j in range(ncols):
        col = [Fraction(rows[i][j]) for i in range(len(rows))]
        vec = col + [Fraction(0)] * ncols
        vec[len(rows) + j] = Fraction(1)
        red = aug.reduce(vec)
        if all(x == 0 for x in red[: len(rows)]):
            kernel.append(red[len(rows):])
        else:
            aug.add(vec)
    return kernel


def int_kernel(rows, ncols: int):
    """Integer basis of the rational kernel of x -> M x.

    Fraction-free elimination on the transpose augmented with an identity:
    rows whose image part clears give (integer) kernel vectors.
    """
    aug = []
    for j in range(ncols):
        aug.append([int(rows[i][j]) for i in range(len(rows))] + [int(i == j) for i in range(ncols)])
    nrows_img = len(rows)
    kernel = []
    pivots: dict[int, list[int]] = {}
    for row in aug:
        for col in range(nrows_img):
            if not row[col]:
                continue
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                row = None
                break
            a, b = piv[col], row[col]
            g = gcd(a, b)
            ca, cb = b // g, a // g
            row = [cb * x - ca * y for x, y in zip(row, piv)]
        if row is not None:
            vec = row[nrows_img:]
            if any(vec):
                g = 0
                for v in vec:
                    g = gcd(g, v)
                kernel.append([v // g for v in vec])
    return kernel


def int_rank(rows) -> int:
    """Rank of an integer matrix (fraction-free Gaussian elimination)."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        best = None
        for i in range(row, nrows):
            v = m[i][col]
            if v and (best is None or abs(v) < best):
                pivot, best = i, abs(v)
                if best == 1:
                    break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for i in range(row + 1, nrows):
            v = m[i][col]
            if v:
                g = gcd(pv, v)
                a, b = pv // g, v // g
                ri, rr = m[i], m[row]
                for j in range(col, ncols):
                    ri[j] = a * ri[j] - b * rr[j]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def express(vec, basis, field: str):
    """Coefficients writing vec as a combination of basis vectors, or None.

    Vectors are coordinate sequences (F2 entries are 0/1 ints).
    """
    if not basis:
        return [] if not any(vec) else None
    n = len(vec)
    if field == "f2":
        cols = f2_pack(basis)  # each basis vector packed by coordinate
        space: dict[int, tuple[int, int]] = {}
        for idx, b in enumerate(cols):
            v, combo = b, 1 << idx
            while v:
                p = v.bit_length() - 1
                if p in space:
                    pv, pc = space[p]
                    v ^= pv
                    combo ^= pc
                else:
                    space[p] = (v, combo)
                    break
        target = f2_pack([vec])[0]
        combo = 0
        while target:
            p = target.bit_length() - 1
            if p not in space:
                return None
            pv, pc = space[p]
            target ^= pv
            combo ^= pc
        return [(combo >> i) & 1 for i in range(len(basis))]
    # rational path: echelonize [basis | e_idx] rows
    aug = QSpace(n + len(basis))
    for idx, b in enumerate(basis):
        row = [Fraction(x) for x in b] + [Fraction(0)] * len(basis)
        row[n + idx] = Fraction(1)
        aug.add(row)
    red = aug.reduce([Fraction(x) for x in vec] + [Fraction(0)] * len(basis))
    if any(red[:n]):
        return None
    return [-c for c in red[n:]]


# ---------------------------------------------------------------------------
# Z: Smith normal form invariant factors


def snf_invariant_factors(rows) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    m = [list(map(int, r)) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag = []
    top = 0
    while top < min(nrows, ncols):
        # locate a pivot of minimal absolute value
        pivot = None
        best = None
        for i in range(top, nrows):
            mi = m[i]
            for j in range(top, ncols):
                v = mi[j]
                if v and (best is None or abs(v) < best):
                    pivot, best = (i, j), abs(v)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for r in m:
            r[top], r[pj] = r[pj], r[top]
        while True:
            # clear the pivot column
            pv = m[top][top]
            for i in range(top + 1, nrows):
                v = m[i][top]
                if v:
                    q = v // pv
                    ri, rt = m[i], m[top]
                    for j in range(top, ncols):
                        ri[j] -= q * rt[j]
                    if m[i][top]:  # remainder smaller than pivot: swap up
                        m[top], m[i] = m[i], m[top]
                        break
            else:
                # column clear; clear the pivot row
                pv = m[top][top]
                dirty = False
                for j in range(top + 1, ncols):
                    v = m[top][j]
                    if v:
                        q = v // pv
                        for i in range(top, nrows):
                            m[i][j] -= q * m[i][top]
                        if m[top][j]:
                            for r in m:
                                r[top], r[j] = r[j], r[top]
                            dirty = True
                            break
                if not dirty:
                    break
        diag.append(abs(m[top][top]))
        top += 1
    # enforce divisibility d1 | d2 | ...
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g
    diag.sort()
    return [d for d in diag if d]


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
