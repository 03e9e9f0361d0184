"""Planar diagram (PD) codes: parsing, validation, orientation and mirrors.

The text format is whitespace-separated ``X[a,b,c,d]`` tokens with optional
``BP[k]`` (basepoint arc) and ``U[k]`` (k crossingless unknot components)
tokens; ``#`` starts a line comment.  A quadruple lists the four arcs around a
crossing counterclockwise, starting at the incoming under-strand arc.

Crossing signs are never free data: they are recomputed from the unique (up to
component reversal) consistent strand orientation.  The over-strand of
``X[a,b,c,d]`` runs d->b at a positive crossing and b->d at a negative one.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    ArcCountViolation,
    MalformedToken,
    NonPlanarDiagram,
    OrientationInconsistent,
)

_TOKEN_RE = re.compile(r"([A-Za-z]+)\[([^\]]*)\]")

# slot layout of X[a,b,c,d]: 0=a (in, under), 1=b, 2=c (out, under), 3=d


@dataclass(frozen=True)
class Diagram:
    """A validated planar link diagram.

    crossings: counterclockwise arc quadruples, first entry the incoming
    under-arc.  free_loops counts extra crossingless unknot components, which
    PD quadruples cannot express.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    arc_count: int
    basepoint_arc: int
    name: str = ""
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        _validate_arcs(self)
        # orientation (hence signs) and planarity are checked eagerly
        self.signs
        _check_planar(self)
        if self.arc_count:
            if not 1 <= self.basepoint_arc <= self.arc_count:
                raise ArcCountViolation(
                    f"basepoint arc {self.basepoint_arc} outside 1..{self.arc_count}"
                )
        elif self.free_loops < 1:
            raise MalformedToken("empty diagram needs at least one unknot component")

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return _orient(self)[0]

    @cached_property
    def over_in_slots(self) -> tuple[int, ...]:
        """Per crossing: the incoming over-strand slot (3 if positive, 1 if not)."""
        return _orient(self)[1]

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @cached_property
    def strand_count(self) -> int:
        """Number of closed oriented strands (link components with crossings)."""
        if not self.crossings:
            return 0
        succ = {}
        for ci, quad in enumerate(self.crossings):
            over_in = self.over_in_slots[ci]
            over_out = 1 if over_in == 3 else 3
            succ[quad[0]] = quad[2]
            succ[quad[over_in]] = quad[over_out]
        seen = set()
        count = 0
        for arc in succ:
            if arc in seen:
                continue
            count += 1
            a = arc
            while a not in seen:
                seen.add(a)
                a = succ[a]
        return count

    @property
    def component_count(self) -> int:
        return self.strand_count + self.free_loops

    def serialize(self) -> str:
        parts = [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings]
        if self.free_loops:
            parts.append(f"U[{self.free_loops}]")
        parts.append(f"BP[{self.basepoint_arc}]")
        return " ".join(parts)

    def canonical_key(self) -> str:
        """Deterministic key for caching: arc labels are renumbered by first
        appearance along strands started at their least arc, then crossings
        are sorted by quadruple."""
        if not self.crossings:
            return f"U[{self.free_loops}] BP[{self.basepoint_arc}]"
        succ = {}
        for ci, quad in enumerate(self.crossings):
            over_in = self.over_in_slots[ci]
            over_out = 1 if over_in == 3 else 3
            succ[quad[0]] = quad[2]
            succ[quad[over_in]] = quad[over_out]
        relabel: dict[int, int] = {}
        nxt = 1
        for start in sorted(succ):
            if start in relabel:
                continue
            a = start
            while a not in relabel:
                relabel[a] = nxt
                nxt += 1
                a = succ[a]
        quads = sorted(tuple(relabel[x] for x in q) for q in self.crossings)
        body = " ".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in quads)
        return f"{body} U[{self.free_loops}] BP[{relabel[self.basepoint_arc]}]"

    def content_hash(self) -> str:
        return hashlib.sha256(self.canonical_key().encode()).hexdigest()[:16]


def _validate_arcs(d: Diagram) -> None:
    seen: dict[int, int] = {}
    for quad in d.crossings:
        if len(quad) != 4:
            raise MalformedToken(f"crossing {quad} is not a quadruple")
        for a in quad:
            if not isinstance(a, int) or a < 1:
                raise MalformedToken(f"bad arc label {a!r}")
            seen[a] = seen.get(a, 0) + 1
    labels = set(range(1, d.arc_count + 1))
    if set(seen) != labels or any(v != 2 for v in seen.values()):
        bad = sorted(set(seen) ^ labels) or sorted(a for a, v in seen.items() if v != 2)
        raise ArcCountViolation(f"arc labels not appearing exactly twice: {bad}")


def _occurrences(d: Diagram) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(d.crossings):
        for slot, arc in enumerate(quad):
            occ.setdefault(arc, []).append((ci, slot))
    return occ


def _orient(d: Diagram) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Solve for consistent strand orientations.

    Returns (signs, over_in_slots).  Crossing variable x=1 means the
    over-strand runs d->b (positive crossing); each arc must be the head of
    exactly one of its two slot occurrences.  Components that never pass
    under anything have a free orientation, fixed deterministically.
    """
    from collections import deque

    n = len(d.crossings)
    if n == 0:
        return (), ()
    occ = _occurrences(d)
    # role of the arc in a slot (1 = points into the crossing), as an affine
    # function k + a*x of the crossing variable:
    # slot0 -> 1, slot2 -> 0, slot1 -> 1+x, slot3 -> x
    parts = {0: (1, 0), 2: (0, 0), 1: (1, 1), 3: (0, 1)}
    x: list[int | None] = [None] * n
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    fixed: deque[int] = deque()

    def fix(c, val, why):
        if x[c] is None:
            x[c] = val
            fixed.append(c)
        elif x[c] != val:
            raise OrientationInconsistent(f"arc {why} forces conflicting orientations")

    for arc, pair in occ.items():
        (c1, s1), (c2, s2) = pair
        k1, a1 = parts[s1]
        k2, a2 = parts[s2]
        rhs = (1 + k1 + k2) % 2  # a1*x1 + a2*x2 = rhs
        if a1 == 0 and a2 == 0:
            if rhs != 0:
                raise OrientationInconsistent(f"arc {arc} cannot be oriented")
        elif a1 == 1 and a2 == 1 and c1 == c2:
            if rhs != 0:  # x + x = 0 always
                raise OrientationInconsistent(f"arc {arc} cannot be oriented")
        elif a1 == 0:
            fix(c2, rhs, arc)
        elif a2 == 0:
            fix(c1, rhs, arc)
        else:
            adj[c1].append((c2, rhs))
            adj[c2].append((c1, rhs))

    def propagate():
        while fixed:
            c = fixed.popleft()
            for c2, rhs in adj[c]:
                fix(c2, (x[c] + rhs) % 2, f"between crossings {c},{c2}")

    propagate()
    for c in range(n):
        if x[c] is None:
            fix(c, 1, c)  # all-over component: free choice, made deterministic
            propagate()
    signs = tuple(1 if v else -1 for v in x)
    over_in = tuple(3 if v else 1 for v in x)
    return signs, over_in


def _check_planar(d: Diagram) -> None:
    """Euler-characteristic test of the rotation system, per connected component."""
    n = len(d.crossings)
    if n == 0:
        return
    occ = _occurrences(d)
    other = {}
    for arc, pair in occ.items():
        (c1, s1), (c2, s2) = pair
        other[(c1, s1)] = (c2, s2)
        other[(c2, s2)] = (c1, s1)
    # connected components of the 4-valent graph
    comp = list(range(n))

    def find(i):
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    for arc, pair in occ.items():
        a, b = find(pair[0][0]), find(pair[1][0])
        if a != b:
            comp[a] = b
    # face orbits of phi = rotate-after-crossing-over
    darts = [(c, s) for c in range(n) for s in range(4)]
    seen = set()
    faces: dict[int, int] = {}
    for dart in darts:
        if dart in seen:
            continue
        root = find(dart[0])
        faces[root] = faces.get(root, 0) + 1
        cur = dart
        while cur not in seen:
            seen.add(cur)
            c2, s2 = other[cur]
            cur = (c2, (s2 + 1) % 4)
    sizes: dict[int, list[int]] = {}
    for c in range(n):
        sizes.setdefault(find(c), []).append(c)
    for root, members in sizes.items():
        v = len(members)
        e = 2 * v
        f = faces.get(root, 0)
        if v - e + f != 2:
            raise NonPlanarDiagram(
                f"component with crossings {members} has genus {(2 - (v - e + f)) // 2}"
            )


def parse_pd(text: str, basepoint: int | None = None, name: str | None = None) -> Diagram:
    """Parse a PD code string into a validated Diagram."""
    crossings = []
    free_loops = 0
    bp_token = None
    stripped = []
    for line in text.splitlines() or [""]:
        stripped.append(line.split("#", 1)[0])
    body = " ".join(stripped)
    pos = 0
    for m in _TOKEN_RE.finditer(body):
        between = body[pos:m.start()].strip().replace(",", "")
        if between:
            raise MalformedToken(f"unexpected text {between!r}")
        pos = m.end()
        kind = m.group(1).upper()
        try:
            nums = [int(p) for p in m.group(2).split(",") if p.strip() != ""]
        except ValueError:
            raise MalformedToken(f"non-integer entry in {m.group(0)!r}") from None
        if kind == "X":
            if len(nums) != 4:
                raise MalformedToken(f"{m.group(0)!r} needs four arcs")
            crossings.append(tuple(nums))
        elif kind == "BP":
            if len(nums) != 1:
                raise MalformedToken(f"{m.group(0)!r} needs one arc")
            bp_token = nums[0]
        elif kind == "U":
            if len(nums) != 1 or nums[0] < 0:
                raise MalformedToken(f"{m.group(0)!r} needs one nonnegative count")
            free_loops += nums[0]
        else:
            raise MalformedToken(f"unknown token {m.group(0)!r}")
    if body[pos:].strip():
        raise MalformedToken(f"unexpected trailing text {body[pos:].strip()!r}")
    if not crossings and free_loops == 0:
        free_loops = 1  # empty input: the 0-crossing unknot
    labels = sorted({a for q in crossings for a in q})
    arc_count = len(labels)
    if labels and labels != list(range(1, arc_count + 1)):
        raise ArcCountViolation(f"arc labels must be 1..{arc_count}, got {labels}")
    if basepoint is None:
        basepoint = bp_token if bp_token is not None else (1 if arc_count else 0)
    if name is None:
        name = hashlib.sha256(body.strip().encode()).hexdigest()[:12]
    return Diagram(
        crossings=tuple(crossings),
        arc_count=arc_count,
        basepoint_arc=basepoint,
        name=name,
        free_loops=free_loops,
    )


def crossing_signs(d: Diagram) -> list[int]:
    """Per-crossing signs; n+ counts +1 entries, n- counts -1 entries."""
    return list(d.signs)


def mirror(d: Diagram) -> Diagram:
    """Swap over/under strands everywhere.

    The quadruple is rotated so that it again starts at the incoming
    under-arc: by the orientation rule that is the old slot-3 arc at positive
    crossings and the old slot-1 arc at negative ones.
    """
    quads = []
    for quad, s in zip(d.crossings, d.signs):
        a, b, c, e = quad
        quads.append((e, a, b, c) if s > 0 else (b, c, e, a))
    return Diagram(
        crossings=tuple(quads),
        arc_count=d.arc_count,
        basepoint_arc=d.basepoint_arc,
        name=f"mirror({d.name})" if d.name else "",
        free_loops=d.free_loops,
    )
