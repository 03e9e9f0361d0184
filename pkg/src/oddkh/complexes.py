"""Assembly of the bigraded chain complex of a diagram and its homology.

Generators are wedge monomials over the circles of each resolution; the
differential is the signed sum of merge/split maps over cube edges.  Both
gradings are absolute:

    h     = -|m|_1 + n_-        (raised by exactly 1 along edges)
    delta = -(deg_p + |m|_1 - n_+)/2   with deg_p = (k-1) - 2*degree
    q     = 2*(h - delta) + 1   (preserved by the differential)

Reported tables use q - 1 so the 0-crossing unknot generator sits at (0, 0);
the +1 internal offset is recorded in the output metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cube import ResolutionCube, Vertex
from .edge_assignment import SignAssignment, solve
from .errors import DifferentialNotSquareZero
from .exterior import ExteriorElement
from .laurent import LaurentPoly
from .linalg import f2_pack, f2_rank, int_rank, snf_invariant_factors
from .pdcodes import Diagram

Q_OUTPUT_OFFSET = -1  # reported q = internal q + this


@dataclass(frozen=True)
class GradedGenerator:
    vertex: Vertex
    monomial: tuple[int, ...]
    h: int
    delta2: int  # 2*delta, kept integral
    q: int  # internal: 2*(h - delta) + 1

    @property
    def delta(self) -> Fraction:
        return Fraction(self.delta2, 2)


@dataclass
class BigradedComplex:
    """Free bigraded complex with per-(h, q) integer differential blocks."""

    name: str
    generators: dict[tuple[int, int], list[GradedGenerator]]
    diffs: dict[tuple[int, int], np.ndarray]  # (h, q) block maps into (h+1, q)
    shift_h: int = 0
    shift2_delta: int = 0  # twice the delta shift
    meta: dict = field(default_factory=dict)

    def block(self, h: int, q: int) -> np.ndarray:
        key = (h, q)
        src = len(self.generators.get(key, ()))
        tgt = len(self.generators.get((h + 1, q), ()))
        m = self.diffs.get(key)
        if m is None:
            return np.zeros((tgt, src), dtype=np.int64)
        return m

    def bidegrees(self) -> list[tuple[int, int]]:
        return sorted(self.generators)

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.generators.values())

    def output_bidegree(self, h: int, q: int) -> tuple[int, int]:
        return h, q + Q_OUTPUT_OFFSET

    def verify_d_squared(self) -> None:
        for (h, q), m in self.diffs.items():
            nxt = self.diffs.get((h + 1, q))
            if nxt is not None and m.size and nxt.size:
                if np.any(nxt @ m):
                    raise DifferentialNotSquareZero(
                        f"d**2 != 0 at bidegree (h={h}, q={q})"
                    )


def _gradings(d: Diagram, m: Vertex, k: int, j: int) -> tuple[int, int, int]:
    w = sum(m)
    h = -w + d.n_minus
    deg_p = (k - 1) - 2 * j
    delta2 = -deg_p - w + d.n_plus
    q = 2 * h - delta2 + 1
    return h, delta2, q


def assemble(
    d: Diagram,
    assignment: SignAssignment | None = None,
    flavor: str = "x",
    free_value: int = 1,
    signs: str = "assignment",
) -> BigradedComplex:
    """Build the bigraded complex of a diagram.

    signs="assignment" uses a solved edge assignment (the default);
    signs="unsigned" drops all signs, giving the mod-2 cube complex lifted
    with +1 coefficients (an independent assembly path used by validation).
    """
    cube = ResolutionCube(d)
    if signs == "assignment":
        if assignment is None:
            assignment = solve(d, flavor=flavor, cube=cube, free_value=free_value)
        sig = assignment.values
    elif signs == "unsigned":
        sig = None
    else:
        raise ValueError(f"unknown signs mode {signs!r}")

    gens: dict[tuple[int, int], list[GradedGenerator]] = {}
    index: dict[tuple[Vertex, tuple[int, ...]], tuple[tuple[int, int], int]] = {}
    for m in cube.vertices():
        res = cube.resolution(m)
        k = res.circle_count
        unit = res.module_unit()
        for mono in unit.basis_index():
            h, delta2, q = _gradings(d, m, k, len(mono))
            g = GradedGenerator(m, mono, h, delta2, q)
            bucket = gens.setdefault((h, q), [])
            index[(m, mono)] = ((h, q), len(bucket))
            bucket.append(g)

    entries: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for m in cube.vertices():
        res = cube.resolution(m)
        for edge in cube.edges_from(m):
            s = 1 if sig is None else sig[(edge.m, edge.crossing)]
            for mono in res.module_unit().basis_index():
                key, col = index[(m, mono)]
                x = ExteriorElement(res.circles, res.pointed, {mono: 1})
                y = cube.apply_edge(edge, x)
                for mono2, coef in y.terms.items():
                    key2, row = index[(edge.n, mono2)]
                    assert key2 == (key[0] + 1, key[1]), "edge map changed q"
                    entries.setdefault(key, []).append((row, col, s * coef))

    diffs: dict[tuple[int, int], np.ndarray] = {}
    for key, triples in entries.items():
        h, q = key
        mat = np.zeros((len(gens.get((h + 1, q), ())), len(gens[key])), dtype=np.int64)
        for row, col, v in triples:
            mat[row, col] += v
        diffs[key] = mat

    meta = {
        "diagram": d.name,
        "n_plus": d.n_plus,
        "n_minus": d.n_minus,
        "q_offset": Q_OUTPUT_OFFSET,
        "signs": signs,
    }
    if sig is not None:
        meta["flavor"] = assignment.flavor
    return BigradedComplex(d.name, gens, diffs, meta=meta)


def shift(c: BigradedComplex, a: int, b: Fraction | int) -> BigradedComplex:
    """Shift the homological and delta gradings down by (a, b)."""
    b2 = int(2 * Fraction(b))

    def remap(key):
        h, q = key
        return h - a, q - 2 * a + b2

    gens = {}
    for key, lst in c.generators.items():
        h2, q2 = remap(key)
        gens[(h2, q2)] = [
            GradedGenerator(g.vertex, g.monomial, g.h - a, g.delta2 - b2, g.q - 2 * a + b2)
            for g in lst
        ]
    diffs = {remap(k): v for k, v in c.diffs.items()}
    return BigradedComplex(
        c.name, gens, diffs, c.shift_h + a, c.shift2_delta + b2, dict(c.meta)
    )


@dataclass
class HomologySummary:
    """Bigraded homology: free ranks and (over Z) invariant factors."""

    coefficients: str
    table: dict[tuple[int, int], tuple[int, tuple[int, ...]]]
    meta: dict = field(default_factory=dict)

    @property
    def total_rank(self) -> int:
        return sum(r for r, _ in self.table.values())

    def ranks(self) -> dict[tuple[int, int], int]:
        return {k: r for k, (r, _) in self.table.items() if r}

    def f2_dimensions(self) -> dict[tuple[int, int], int]:
        """Dimensions of the mod-2 homology via universal coefficients.

        Valid when computed from Z coefficients: rank + even torsion here
        plus even torsion one step up in h (same q).
        """
        dims: dict[tuple[int, int], int] = {}
        for (h, q), (rank, tors) in self.table.items():
            here = rank + sum(1 for t in tors if t % 2 == 0)
            if here:
                dims[(h, q)] = dims.get((h, q), 0) + here
            below = sum(1 for t in tors if t % 2 == 0)
            if below:
                key = (h - 1, q)
                dims[key] = dims.get(key, 0) + below
        return {k: v for k, v in dims.items() if v}

    def to_json(self) -> dict:
        rows = [
            {"h": h, "q": q, "rank": r, "torsion": list(t)}
            for (h, q), (r, t) in sorted(self.table.items())
            if r or t
        ]
        return {"coefficients": self.coefficients, "table": rows, **self.meta}


def homology(c: BigradedComplex, coefficients: str = "z") -> HomologySummary:
    """Bigraded homology over Z ("z"), Q ("q") or F2 ("f2")."""
    coefficients = coefficients.lower()
    if coefficients not in ("z", "q", "f2"):
        raise ValueError(f"unknown coefficients {coefficients!r}")
    c.verify_d_squared()
    table: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    for (h, q) in c.bidegrees():
        dim = len(c.generators[(h, q)])
        out = c.block(h, q)
        inc = c.block(h - 1, q)
        if coefficients == "f2":
            r_out = f2_rank(f2_pack(out.tolist()), out.shape[1]) if out.size else 0
            r_in = f2_rank(f2_pack(inc.tolist()), inc.shape[1]) if inc.size else 0
            torsion: tuple[int, ...] = ()
        elif coefficients == "q":
            r_out = int_rank(out.tolist()) if out.size else 0
            r_in = int_rank(inc.tolist()) if inc.size else 0
            torsion = ()
        else:
            r_out = int_rank(out.tolist()) if out.size else 0
            factors = snf_invariant_factors(inc.tolist()) if inc.size else []
            r_in = len(factors)
            torsion = tuple(t for t in factors if t > 1)
        rank = dim - r_out - r_in
        if rank or torsion:
            table[c.output_bidegree(h, q)] = (rank, torsion)
    meta = {
        "diagram": c.meta.get("diagram", c.name),
        "normalization": {"q_offset": Q_OUTPUT_OFFSET},
    }
    return HomologySummary(coefficients, table, meta)


def euler_characteristic(c: BigradedComplex) -> LaurentPoly:
    """Sum of (-1)**h q**(reported q) over all generators."""
    poly = LaurentPoly.zero("q")
    coeffs: dict[int, int] = {}
    for (h, q), lst in c.generators.items():
        _, q_out = c.output_bidegree(h, q)
        coeffs[q_out] = coeffs.get(q_out, 0) + (len(lst) if h % 2 == 0 else -len(lst))
    return poly + LaurentPoly(coeffs, "q")


def split_by_crossing(c: BigradedComplex, crossing: int):
    """Partition the complex by the smoothing bit of one crossing.

    Returns (c0, c1, g_blocks): the two sub-cube complexes with inherited
    gradings, and the connecting blocks g: C1[(h, q)] -> C0[(h+1, q)] so that
    the full differential is [[d0, 0], [g, d1]] in the (C0, C1) splitting.
    """
    sel: dict[tuple[int, int], tuple[list[int], list[int]]] = {}
    gens0: dict[tuple[int, int], list[GradedGenerator]] = {}
    gens1: dict[tuple[int, int], list[GradedGenerator]] = {}
    for key, lst in c.generators.items():
        idx0 = [i for i, g in enumerate(lst) if g.vertex[crossing] == 0]
        idx1 = [i for i, g in enumerate(lst) if g.vertex[crossing] == 1]
        sel[key] = (idx0, idx1)
        if idx0:
            gens0[key] = [lst[i] for i in idx0]
        if idx1:
            gens1[key] = [lst[i] for i in idx1]

    diffs0, diffs1, g_blocks = {}, {}, {}
    for key, m in c.diffs.items():
        h, q = key
        up = (h + 1, q)
        i0, i1 = sel[key]
        j0, j1 = sel.get(up, ([], []))
        if i0 and j0:
            diffs0[key] = m[np.ix_(j0, i0)]
        if i1 and j1:
            diffs1[key] = m[np.ix_(j1, i1)]
        if i1 and j0:
            blk = m[np.ix_(j0, i1)]
            if blk.any():
                g_blocks[key] = blk
        if i0 and j1 and m[np.ix_(j1, i0)].any():
            raise DifferentialNotSquareZero("differential raises the crossing bit")
    c0 = BigradedComplex(f"{c.name}[{crossing}=0]", gens0, diffs0, meta=dict(c.meta))
    c1 = BigradedComplex(f"{c.name}[{crossing}=1]", gens1, diffs1, meta=dict(c.meta))
    return c0, c1, g_blocks
