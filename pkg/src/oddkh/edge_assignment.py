"""Edge sign assignments making every square of the cube anticommute.

One F2 variable per cube edge, one equation per face: around a face the
product of the four edge signs must be -1 when the two compositions agree
(so the signed square anticommutes), +1 when they are already negatives of
each other, and is pinned by the flavor rule on the two degenerate face
types whose compositions vanish.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cube import ANTICOMMUTATIVE, COMMUTATIVE, TYPE_X, TYPE_Y, ResolutionCube, Vertex
from .errors import Unsolvable
from .pdcodes import Diagram

EQUAL = "equal"
OPPOSITE = "opposite"


@dataclass(frozen=True)
class SignAssignment:
    """Signs on the descending cube edges, keyed by (vertex, crossing)."""

    values: dict[tuple[Vertex, int], int]
    flavor: str

    def sign(self, m: Vertex, crossing: int) -> int:
        return self.values[(m, crossing)]


def face_constraint(face_class: str, flavor: str = "x") -> str:
    """Required relation between the two edge-sign products of a face."""
    if face_class == COMMUTATIVE:
        return OPPOSITE
    if face_class == ANTICOMMUTATIVE:
        return EQUAL
    if face_class == TYPE_X:
        return EQUAL if flavor == "x" else OPPOSITE
    if face_class == TYPE_Y:
        return OPPOSITE if flavor == "x" else EQUAL
    raise ValueError(f"unknown face class {face_class!r}")


def solve(
    d: Diagram,
    flavor: str = "x",
    cube: ResolutionCube | None = None,
    free_value: int = 1,
) -> SignAssignment:
    """Solve the F2 face system by Gaussian elimination.

    Deterministic: edges are ordered lexicographically and free variables all
    take the sign ``free_value`` (+1 by default, -1 to sample a different
    solution of the same system).
    """
    if flavor not in ("x", "y"):
        raise ValueError(f"flavor must be 'x' or 'y', got {flavor!r}")
    if free_value not in (1, -1):
        raise ValueError("free_value must be +1 or -1")
    cube = cube or ResolutionCube(d)
    edges = []
    for m in cube.vertices():
        for i in range(d.n):
            if m[i]:
                edges.append((m, i))
    edges.sort()
    var = {e: idx for idx, e in enumerate(edges)}
    nvars = len(edges)

    rows: list[int] = []  # bit nvars = RHS
    for m in cube.vertices():
        for (_, i, j) in cube.faces_from(m):
            k_i = m[:i] + (0,) + m[i + 1:]
            k_j = m[:j] + (0,) + m[j + 1:]
            cls = cube.classify_face(m, i, j)
            rel = face_constraint(cls, flavor)
            row = (
                (1 << var[(m, i)])
                | (1 << var[(k_i, j)])
                | (1 << var[(m, j)])
                | (1 << var[(k_j, i)])
            )
            if rel == OPPOSITE:
                row |= 1 << nvars
            rows.append(row)

    pivots: dict[int, int] = {}
    for row in rows:
        while row & ((1 << nvars) - 1):
            p = (row & ((1 << nvars) - 1)).bit_length() - 1
            if p in pivots:
                row ^= pivots[p]
            else:
                pivots[p] = row
                row = 0
                break
        if row:  # reduced to 0 = 1
            raise Unsolvable(f"face constraint system of {d.name} has no solution")

    free_bit = 0 if free_value == 1 else 1
    x = [free_bit] * nvars
    # pivot rows only contain bits at or below their pivot, so resolve upward
    for p in sorted(pivots):
        row = pivots[p]
        acc = (row >> nvars) & 1
        rest = row & ((1 << nvars) - 1) & ~(1 << p)
        while rest:
            b = rest.bit_length() - 1
            acc ^= x[b]
            rest &= ~(1 << b)
        x[p] = acc
    values = {e: (-1 if x[idx] else 1) for e, idx in var.items()}
    return SignAssignment(values, flavor)
