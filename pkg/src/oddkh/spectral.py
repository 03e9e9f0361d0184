"""Spectral sequence of a finite filtered graded chain complex over a field.

Conventions: the filtration level p never decreases along the differential
and the internal degree rises by exactly 1.  Page E_1 is the associated
graded complex; for r >= 1,

    Z_r(p)   = { x in F_p : d x in F_(p+r) }
    E_r(p)   = Z_r(p) / ( Z_(r-1)(p+1) + d Z_(r-1)(p-r+1) )
    d_r      : E_r(p, deg) -> E_r(p+r, deg+1), induced by d.

All linear algebra is exact (F2 bitsets or Fractions); pages are computed up
to the filtration length, past which every d_r vanishes for degree reasons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import BigradedComplex
from .errors import DifferentialNotSquareZero, FiltrationViolated
from .linalg import F2Space, QSpace, express, f2_kernel, q_kernel

Key = tuple[int, Fraction]


@dataclass
class FilteredComplex:
    """Generators with (filtration, degree) and a sparse differential.

    d[j] is the column of generator j as {row: coefficient}.  field is "q"
    (rationals) or "f2".
    """

    filtration: list[int]
    degree: list[Fraction]
    d: list[dict[int, int]]
    field: str = "q"

    def __post_init__(self):
        if self.field not in ("q", "f2"):
            raise ValueError(f"field must be 'q' or 'f2', got {self.field!r}")
        self.degree = [Fraction(x) for x in self.degree]
        n = len(self.filtration)
        if len(self.degree) != n or len(self.d) != n:
            raise FiltrationViolated("generator data lengths disagree")
        for j, col in enumerate(self.d):
            for i, c in col.items():
                if self.filtration[i] < self.filtration[j]:
                    raise FiltrationViolated(
                        f"d lowers filtration: {j} (p={self.filtration[j]}) -> "
                        f"{i} (p={self.filtration[i]})"
                    )
                if self.degree[i] != self.degree[j] + 1:
                    raise FiltrationViolated("d must raise the degree by exactly 1")
        # d**2 = 0
        for j, col in enumerate(self.d):
            acc: dict[int, int] = {}
            for i, c in col.items():
                for i2, c2 in self.d[i].items():
                    acc[i2] = acc.get(i2, 0) + c * c2
            mod = 2 if self.field == "f2" else 0
            if any((v % 2 if mod else v) for v in acc.values()):
                raise DifferentialNotSquareZero(f"d**2 != 0 on generator {j}")

    @property
    def size(self) -> int:
        return len(self.filtration)

    def p_range(self) -> tuple[int, int]:
        if not self.filtration:
            return 0, 0
        return min(self.filtration), max(self.filtration)

    def apply_d(self, vec):
        out = [0] * self.size
        for j, c in enumerate(vec):
            if c:
                for i, v in self.d[j].items():
                    out[i] += c * v
        if self.field == "f2":
            out = [x % 2 for x in out]
        return out


@dataclass
class SSPage:
    r: int
    ranks: dict[Key, int]
    d_r: dict[Key, list[list]] = field(default_factory=dict)

    def rank_at(self, p, deg) -> int:
        return self.ranks.get((p, Fraction(deg)), 0)

    def dr_nonzero(self) -> bool:
        return any(any(any(row) for row in m) for m in self.d_r.values())

    def to_json(self) -> dict:
        entries = [
            {"p": p, "degree": str(deg), "rank": rank}
            for (p, deg), rank in sorted(self.ranks.items())
        ]
        return {"r": self.r, "entries": entries, "dr_nonzero": self.dr_nonzero()}


@dataclass
class PagesResult:
    pages: list[SSPage]
    degeneration_page: int

    def infinity_ranks(self) -> dict[Key, int]:
        return dict(self.pages[-1].ranks)


class _Engine:
    def __init__(self, c: FilteredComplex):
        self.c = c
        self.keys = sorted({(p, d) for p, d in zip(c.filtration, c.degree)})
        self._z_cache: dict[tuple[int, int, Fraction], list] = {}

    def _space(self):
        return F2Space(self.c.size) if self.c.field == "f2" else QSpace(self.c.size)

    def _pack(self, vec):
        if self.c.field == "f2":
            bits = 0
            for j, v in enumerate(vec):
                if v % 2:
                    bits |= 1 << j
            return bits
        return [Fraction(x) for x in vec]

    def z_basis(self, r: int, p: int, deg: Fraction):
        """Basis of Z_r(p, deg) as coordinate vectors on the full complex."""
        key = (r, p, Fraction(deg))
        cached = self._z_cache.get(key)
        if cached is not None:
            return cached
        out = self._z_basis_uncached(r, p, deg)
        self._z_cache[key] = out
        return out

    def _z_basis_uncached(self, r: int, p: int, deg: Fraction):
        c = self.c
        dom = [
            j
            for j in range(c.size)
            if c.degree[j] == deg and c.filtration[j] >= p
        ]
        if not dom:
            return []
        # rows: coordinates of d(e_j) with filtration < p+r (the obstruction)
        obstruction_rows = [
            i for i in range(c.size) if c.degree[i] == deg + 1 and c.filtration[i] < p + r
        ]
        if c.field == "f2":
            rows = []
            for i in obstruction_rows:
                bits = 0
                for col, j in enumerate(dom):
                    if c.d[j].get(i, 0) % 2:
                        bits |= 1 << col
                rows.append(bits)
            combos = f2_kernel(rows, len(dom))
            out = []
            for combo in combos:
                vec = [0] * c.size
                for col, j in enumerate(dom):
                    if (combo >> col) & 1:
                        vec[j] = 1
                out.append(vec)
            return out
        rows = [[Fraction(c.d[j].get(i, 0)) for j in dom] for i in obstruction_rows]
        combos = q_kernel(rows, len(dom))
        out = []
        for combo in combos:
            vec = [Fraction(0)] * c.size
            for col, j in enumerate(dom):
                vec[j] = combo[col]
            out.append(vec)
        return out

    def page_data(self, r: int):
        """For each (p, deg): (denominator span, representatives) of E_r."""
        data: dict[Key, tuple[object, list]] = {}
        for (p, deg) in self.keys:
            z_here = self.z_basis(r, p, deg)
            if not z_here:
                continue
            span = self._space()
            for v in self.z_basis(r - 1, p + 1, deg):
                span.add(self._pack(v))
            for v in self.z_basis(r - 1, p - r + 1, Fraction(deg) - 1):
                span.add(self._pack(self.c.apply_d(v)))
            reps = []
            for v in z_here:
                if span.add(self._pack(v)):
                    reps.append(v)
            if reps:
                data[(p, deg)] = (span, reps)
        return data

    def page(self, r: int) -> SSPage:
        data = self.page_data(r)
        ranks = {key: len(reps) for key, (span, reps) in data.items()}
        d_r: dict[Key, list[list]] = {}
        for (p, deg), (span, reps) in data.items():
            tgt_key = (p + r, Fraction(deg) + 1)
            tgt = data.get(tgt_key)
            images = [self.c.apply_d(v) for v in reps]
            if tgt is None:
                continue  # target page vanishes; the image sits in its denominator
            tgt_span, tgt_reps = tgt
            # denominator basis of the target
            denom = self._denominator_basis(r, tgt_key)
            basis = denom + tgt_reps
            cols = []
            for img in images:
                coeffs = express(list(img), [list(b) for b in basis], self.c.field)
                if coeffs is None:
                    raise DifferentialNotSquareZero(
                        "page differential leaves its target page"
                    )
                cols.append(coeffs[len(denom):])
            if cols:
                mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt_reps))]
                if any(any(row) for row in mat):
                    d_r[(p, deg)] = mat
        return SSPage(r, ranks, d_r)

    def _denominator_basis(self, r: int, key: Key):
        p, deg = key
        out = list(self.z_basis(r - 1, p + 1, deg))
        out += [self.c.apply_d(v) for v in self.z_basis(r - 1, p - r + 1, Fraction(deg) - 1)]
        # prune to an independent set
        span = self._space()
        basis = []
        for v in out:
            if span.add(self._pack(v)):
                basis.append(v)
        return basis


def pages(c: FilteredComplex, r_max: int | None = None) -> PagesResult:
    """Pages E_1 .. E_(r_max) plus the degeneration page index."""
    lo, hi = c.p_range()
    stable = max(hi - lo, 0) + 1  # all d_r vanish beyond the filtration span
    if r_max is None:
        r_max = stable
    r_max = max(1, r_max)
    engine = _Engine(c)
    out = []
    last_nonzero = 0
    for r in range(1, max(r_max, stable) + 1):
        page = engine.page(r)
        if page.dr_nonzero():
            last_nonzero = r
        if r <= r_max:
            out.append(page)
    return PagesResult(out, last_nonzero + 1)


def einfinity_oracle(c: FilteredComplex) -> dict[Key, int]:
    """Associated-graded ranks of H(C) under the induced filtration.

    Independent of the page machinery: computes homology directly, then
    gr_p H = (ker d cap F_p + im d)/(ker d cap F_(p+1) + im d) via ranks.
    """
    lo, hi = c.p_range()
    degs = sorted({d for d in c.degree})
    out: dict[Key, int] = {}

    def dim_fp_h(p: int, deg: Fraction) -> int:
        dom = [j for j in range(c.size) if c.degree[j] == deg and c.filtration[j] >= p]
        # dim(ker d | F_p) at this degree
        rows_idx = [i for i in range(c.size) if c.degree[i] == deg + 1]
        if c.field == "f2":
            rows = []
            for i in rows_idx:
                bits = 0
                for col, j in enumerate(dom):
                    if c.d[j].get(i, 0) % 2:
                        bits |= 1 << col
                rows.append(bits)
            ker_fp = len(f2_kernel(rows, len(dom)))
        else:
            rows = [[Fraction(c.d[j].get(i, 0)) for j in dom] for i in rows_idx]
            ker_fp = len(q_kernel(rows, len(dom)))
        # dim(im d cap F_p) at this degree: x with dx in F_p, minus ker d
        below = [j for j in range(c.size) if c.degree[j] == deg - 1]
        if below:
            out_rows = [
                i
                for i in range(c.size)
                if c.degree[i] == deg and c.filtration[i] < p
            ]
            if c.field == "f2":
                rows = []
                for i in out_rows:
                    bits = 0
                    for col, j in enumerate(below):
                        if c.d[j].get(i, 0) % 2:
                            bits |= 1 << col
                    rows.append(bits)
                pre = len(f2_kernel(rows, len(below)))
                all_rows = []
                for i in range(c.size):
                    if c.degree[i] == deg:
                        bits = 0
                        for col, j in enumerate(below):
                            if c.d[j].get(i, 0) % 2:
                                bits |= 1 << col
                        all_rows.append(bits)
                ker_below = len(f2_kernel(all_rows, len(below)))
            else:
                rows = [[Fraction(c.d[j].get(i, 0)) for j in below] for i in out_rows]
                pre = len(q_kernel(rows, len(below)))
                all_rows = [
                    [Fraction(c.d[j].get(i, 0)) for j in below]
                    for i in range(c.size)
                    if c.degree[i] == deg
                ]
                ker_below = len(q_kernel(all_rows, len(below)))
            im_fp = pre - ker_below
        else:
            im_fp = 0
        return ker_fp - im_fp

    for deg in degs:
        for p in range(lo, hi + 1):
            g = dim_fp_h(p, deg) - dim_fp_h(p + 1, deg)
            if g:
                out[(p, Fraction(deg))] = g
    return out


def filtered_from_bigraded(c: BigradedComplex, field: str) -> FilteredComplex:
    """View a diagram complex as a filtered complex (p = h, degree = delta)."""
    order: dict[tuple, int] = {}
    filtration: list[int] = []
    degree: list[Fraction] = []
    for (h, q), gens in sorted(c.generators.items()):
        for idx, g in enumerate(gens):
            order[(h, q, idx)] = len(filtration)
            filtration.append(h)
            degree.append(Fraction(g.delta2, 2))
    d: list[dict[int, int]] = [dict() for _ in range(len(filtration))]
    for (h, q), mat in c.diffs.items():
        for col in range(mat.shape[1]):
            j = order[(h, q, col)]
            for row in range(mat.shape[0]):
                v = int(mat[row, col])
                if v:
                    d[j][order[(h + 1, q, row)]] = v
    return FilteredComplex(filtration, degree, d, field)
