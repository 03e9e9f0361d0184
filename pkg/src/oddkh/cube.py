"""The cube of resolutions: circles, merge/split edges, faces and their class.

Vertices are 0/1 tuples of length n.  The differential direction runs from a
vertex m to n = m - e_i (the changed crossing moves from its 1- to its
0-smoothing), so |m|_1 strictly drops along edges.

Smoothing conventions for X[a,b,c,d] (counterclockwise, slot 0 = incoming
under-arc): the 0-smoothing joins slots (0,1) and (2,3), the 1-smoothing
joins (0,3) and (1,2).  With these conventions the 0-smoothing of a positive
crossing is its oriented resolution.

Every crossing carries a decoration arrow used to orient split maps: at the
0-smoothing it points from the (0,1)-corner to the (2,3)-corner, at the
1-smoothing from the (1,2)-corner to the (0,3)-corner.  Faces whose two
compositions vanish are classified type X / type Y by the chirality of the
two interleaved arrows on the single circle they decorate, read with each
arrow's own side of the circle kept on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import exterior
from .errors import NotAFace, NotAnEdge
from .exterior import ExteriorElement
from .pdcodes import Diagram

Vertex = tuple[int, ...]

COMMUTATIVE = "commutative"
ANTICOMMUTATIVE = "anticommutative"
TYPE_X = "type_x"
TYPE_Y = "type_y"

# smoothing slot pairings: partner[(bit, slot)] -> slot
_PARTNER = {
    (0, 0): 1, (0, 1): 0, (0, 2): 3, (0, 3): 2,
    (1, 0): 3, (1, 3): 0, (1, 1): 2, (1, 2): 1,
}
# corner passages keeping the crossing's middle region on the left
_LEFT_KEEPING = {0: {(0, 1), (2, 3)}, 1: {(1, 2), (3, 0)}}


@dataclass(frozen=True)
class Resolution:
    """One full smoothing K_m: its circle partition and pointed circle.

    Circles are named by their least arc label; crossingless unknot
    components get sentinel labels -1, -2, ...
    """

    vertex: Vertex
    circle_of: dict[int, int]
    circles: tuple[int, ...]
    pointed: int

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def module_unit(self) -> ExteriorElement:
        return ExteriorElement.unit(self.circles, self.pointed)


@dataclass(frozen=True)
class CubeEdge:
    """An edge m -> n flipping one crossing from its 1- to its 0-smoothing."""

    m: Vertex
    n: Vertex
    crossing: int
    kind: str  # "merge" or "split"
    phi: dict[int, int]  # circle map of m into n (split circle sent to tail)
    split: tuple[int, int, int] | None  # (source circle, tail, head)
    sgn: int  # orientation sign (-1)**(sum of m_i below the crossing)


def oriented_vertex(d: Diagram) -> Vertex:
    """The vertex whose resolution is the oriented one (0 at positive crossings)."""
    return tuple(0 if s > 0 else 1 for s in d.signs)


def edge_sign(m: Vertex, n: Vertex) -> int:
    """(-1)**(number of 1s of m before the flipped coordinate)."""
    if len(m) != len(n):
        raise NotAnEdge("vertex lengths differ")
    diff = [i for i in range(len(m)) if m[i] != n[i]]
    if len(diff) != 1 or m[diff[0]] != 1:
        raise NotAnEdge(f"{m} -> {n} is not a descending edge")
    i0 = diff[0]
    return -1 if sum(m[:i0]) % 2 else 1


def resolve(d: Diagram, m: Vertex) -> Resolution:
    """Circle partition of the smoothing m, by union-find over arcs."""
    if len(m) != d.n:
        raise NotAnEdge(f"vertex length {len(m)} != crossing count {d.n}")
    parent = list(range(d.arc_count + 1))  # arcs are 1-based

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, quad in enumerate(d.crossings):
        a, b, c, e = quad
        pairs = ((a, e), (b, c)) if m[i] else ((a, b), (c, e))
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for arc in range(1, d.arc_count + 1):
        groups.setdefault(find(arc), []).append(arc)
    circle_of = {}
    ids = []
    for members in groups.values():
        cid = min(members)
        ids.append(cid)
        for arc in members:
            circle_of[arc] = cid
    for loop in range(1, d.free_loops + 1):
        ids.append(-loop)
    pointed = circle_of[d.basepoint_arc] if d.arc_count else -1
    return Resolution(tuple(m), circle_of, tuple(sorted(ids)), pointed)


class ResolutionCube:
    """All resolutions of a diagram plus edge and face structure."""

    def __init__(self, d: Diagram):
        self.diagram = d
        self._res: dict[Vertex, Resolution] = {}
        self._edges: dict[tuple[Vertex, int], CubeEdge] = {}
        self._ends: dict[int, dict[tuple[int, int], tuple[int, int]]] = {}

    def resolution(self, m: Vertex) -> Resolution:
        r = self._res.get(m)
        if r is None:
            r = self._res[m] = resolve(self.diagram, m)
        return r

    def vertices(self):
        n = self.diagram.n
        for bits in range(1 << n):
            yield tuple((bits >> i) & 1 for i in range(n))

    def edges_from(self, m: Vertex):
        for i in range(len(m)):
            if m[i]:
                yield self.edge(m, i)

    def edge(self, m: Vertex, i: int) -> CubeEdge:
        cached = self._edges.get((m, i))
        if cached is not None:
            return cached
        if not m[i]:
            raise NotAnEdge(f"crossing {i} is already 0-smoothed at {m}")
        n = m[:i] + (0,) + m[i + 1:]
        rm, rn = self.resolution(m), self.resolution(n)
        phi = {c: c for c in rm.circles if c < 0}
        for arc, cid in rm.circle_of.items():
            phi[cid] = rn.circle_of[arc]
        delta = rn.circle_count - rm.circle_count
        quad = self.diagram.crossings[i]
        if delta == -1:
            kind, split = "merge", None
        elif delta == 1:
            kind = "split"
            tail = rn.circle_of[quad[0]]  # (0,1)-corner of the 0-smoothing
            head = rn.circle_of[quad[2]]  # (2,3)-corner
            src = rm.circle_of[quad[0]]
            phi[src] = tail
            split = (src, tail, head)
        else:  # unreachable for planar diagrams
            raise NotAnEdge(f"edge {m}->{n} changes circle count by {delta}")
        out = CubeEdge(m, n, i, kind, phi, split, edge_sign(m, n))
        self._edges[(m, i)] = out
        return out

    def apply_edge(self, edge: CubeEdge, x: ExteriorElement) -> ExteriorElement:
        """The merge or split cobordism map of one edge (sign not applied)."""
        rn = self.resolution(edge.n)
        if edge.kind == "merge":
            return exterior.push(x, edge.phi, rn.circles, rn.pointed)
        src, tail, head = edge.split
        pushed = exterior.push(x, edge.phi, rn.circles, rn.pointed)
        return exterior.wedge_difference(tail, head, pushed)

    # -- faces ---------------------------------------------------------------

    def faces_from(self, m: Vertex):
        on = [i for i in range(len(m)) if m[i]]
        for ai in range(len(on)):
            for bi in range(ai + 1, len(on)):
                yield (m, on[ai], on[bi])

    def classify_face(self, m: Vertex, i: int, j: int) -> str:
        """Commutative / anticommutative / type X / type Y.

        The two compositions around the face agree up to sign; evaluating
        them on the unit decides the sign, and they vanish exactly when a
        split is undone by the opposite merge (the interleaved-arrow faces).
        """
        if i == j or not (m[i] and m[j]):
            raise NotAFace(f"({m}, {i}, {j}) is not a descending face")
        one = self.resolution(m).module_unit()
        e_mi = self.edge(m, i)
        e_mj = self.edge(m, j)
        k_i = e_mi.n
        k_j = e_mj.n
        f1 = self.apply_edge(self.edge(k_i, j), self.apply_edge(e_mi, one))
        f2 = self.apply_edge(self.edge(k_j, i), self.apply_edge(e_mj, one))
        if f1.is_zero() != f2.is_zero():
            raise NotAFace("face compositions disagree on vanishing")
        if not f1.is_zero():
            if f1 == f2:
                return COMMUTATIVE
            if f1 == -f2:
                return ANTICOMMUTATIVE
            raise NotAFace("face compositions are not equal up to sign")
        s_i = self._arrow_alignment(m, i, j)
        s_j = self._arrow_alignment(m, j, i)
        if s_i != s_j:
            raise NotAFace("inconsistent chord chirality")
        return TYPE_X if s_i == 0 else TYPE_Y

    def compose_face(self, m: Vertex, i: int, j: int, x: ExteriorElement):
        """Both full compositions around the face applied to x (for oracles)."""
        e_mi, e_mj = self.edge(m, i), self.edge(m, j)
        via_i = self.apply_edge(self.edge(e_mi.n, j), self.apply_edge(e_mi, x))
        via_j = self.apply_edge(self.edge(e_mj.n, i), self.apply_edge(e_mj, x))
        return via_i, via_j

    # -- decorated-arrow chirality --------------------------------------------

    def _arc_ends(self, arc: int):
        ends = self._ends_index().get(arc)
        return ends

    def _ends_index(self):
        if not self._ends:
            idx: dict[int, list[tuple[int, int]]] = {}
            for ci, quad in enumerate(self.diagram.crossings):
                for slot, arc in enumerate(quad):
                    idx.setdefault(arc, []).append((ci, slot))
            self._ends = idx
        return self._ends

    def _walk(self, m: Vertex, crossing: int, slot_in: int):
        """Traverse the resolution circle entering `crossing` at `slot_in`.

        Yields (crossing, slot_in, slot_out) passages until the walk closes.
        """
        ends = self._ends_index()
        c, s = crossing, slot_in
        while True:
            s_out = _PARTNER[(m[c], s)]
            yield (c, s, s_out)
            arc = self.diagram.crossings[c][s_out]
            e1, e2 = ends[arc]
            c, s = e2 if e1 == (c, s_out) else e1
            if (c, s) == (crossing, slot_in):
                return

    def _arrow_alignment(self, m: Vertex, i: int, j: int) -> int:
        """0 if, walking from crossing i's arrow tail with i's region on the
        left, the first passage at crossing j is j's tail corner; 1 if head.

        Both crossings must be 1-smoothed at m.  Tail corner of the
        1-smoothing arrow is (1,2), head is (3,0); traversals (1->2) and
        (3->0) keep the crossing's middle region on the left.
        """
        first = None
        for c, s_in, s_out in self._walk(m, i, 1):  # enters i at slot 1 -> exits 2
            if c == j and first is None and (c, s_in) != (i, 1):
                corner = frozenset((s_in, s_out))
                first = 0 if corner == frozenset((1, 2)) else 1
        if first is None:
            raise NotAFace(f"crossings {i},{j} do not share a circle at {m}")
        return first
