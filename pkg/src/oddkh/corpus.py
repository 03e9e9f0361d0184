"""Reference diagrams and seeded random diagram generation for validation.

Diagrams are built from braid closures (always planar and orientable) or
fixed PD codes from the standard tables.  The random generator drives the
self-test corpora; it is deterministic for a given seed.
"""

from __future__ import annotations

import random

from .pdcodes import Diagram, parse_pd


def braid_closure(word: list[int], strands: int, name: str = "") -> Diagram:
    """Close a braid word (letters +-1..+-(strands-1), strands downward).

    Positive letter k: the strand entering at position k passes under.
    Unused strand positions close into crossingless unknot components.
    """
    if not all(0 < abs(w) < strands for w in word):
        raise ValueError(f"braid letters must have 0 < |w| < {strands}")
    cur: list[tuple] = [("init", i) for i in range(strands)]
    counter = [0]

    def fresh():
        counter[0] += 1
        return ("arc", counter[0])

    quads = []
    for w in word:
        k = abs(w) - 1
        left, right = cur[k], cur[k + 1]
        na, nb = fresh(), fresh()  # lower-left, lower-right outputs
        if w > 0:
            # under-strand upper-left -> lower-right; ccw from it: LL, LR, UR
            quads.append((left, na, nb, right))
        else:
            # under-strand upper-right -> lower-left
            quads.append((right, left, na, nb))
        cur[k], cur[k + 1] = na, nb
    # closure identifies the final token at each position with its initial one
    subst: dict[tuple, tuple] = {}
    free_loops = 0
    for i in range(strands):
        if cur[i] == ("init", i):
            free_loops += 1
        else:
            subst[("init", i)] = cur[i]

    def resolve(tok):
        while tok in subst:
            tok = subst[tok]
        return tok

    labels: dict[tuple, int] = {}

    def label(tok):
        tok = resolve(tok)
        if tok not in labels:
            labels[tok] = len(labels) + 1
        return labels[tok]

    crossings = tuple(tuple(label(t) for t in q) for q in quads)
    return Diagram(
        crossings=crossings,
        arc_count=len(labels),
        basepoint_arc=1 if crossings else 0,
        name=name or f"braid{word}",
        free_loops=free_loops,
    )


_NAMED_PD = {
    # standard table codes; determinants are asserted by the test suite
    "trefoil": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "figure_eight": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "cinquefoil": "X[2,8,3,7] X[4,10,5,9] X[6,2,7,1] X[8,4,9,3] X[10,6,1,5]",
    "knot_5_2": "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    "knot_6_1": "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
}


def named(name: str) -> Diagram:
    """Fixed reference diagrams by name."""
    if name in _NAMED_PD:
        return parse_pd(_NAMED_PD[name], name=name)
    builders = {
        "unknot0": lambda: parse_pd("", name="unknot0"),
        "unknot1": lambda: braid_closure([1], 2, "unknot1"),
        "unknot2": lambda: braid_closure([1, 2], 3, "unknot2"),
        "unknot3": lambda: braid_closure([1, 1, -1], 2, "unknot3"),
        "trefoil_rev": lambda: braid_closure([-1, -1, -1], 2, "trefoil_rev"),
        "trefoil4": lambda: braid_closure([-1, -1, -1, 2], 3, "trefoil4"),
        "trefoil5": lambda: braid_closure([-1, -1, -1, -1, 1], 2, "trefoil5"),
        "hopf": lambda: braid_closure([1, 1], 2, "hopf"),
        "unlink2": lambda: parse_pd("U[2]", name="unlink2"),
        "split_hopf_unknot": lambda: braid_closure([1, 1], 3, "split_hopf_unknot"),
    }
    if name not in builders:
        raise KeyError(f"unknown reference diagram {name!r}")
    return builders[name]()


DETERMINANT_KNOTS = {
    "trefoil": 3,
    "figure_eight": 5,
    "cinquefoil": 5,
    "knot_5_2": 7,
    "knot_6_1": 9,
    "unknot0": 1,
}

UNKNOT_DIAGRAMS = ("unknot0", "unknot1", "unknot2", "unknot3")
TREFOIL_DIAGRAMS = ("trefoil_rev", "trefoil4", "trefoil5")


def corpus_knots() -> list[Diagram]:
    """All named diagrams, in deterministic order."""
    names = (
        list(UNKNOT_DIAGRAMS)
        + list(TREFOIL_DIAGRAMS)
        + list(_NAMED_PD)
        + ["hopf", "unlink2", "split_hopf_unknot"]
    )
    return [named(n) for n in names]


def random_diagram(rng: random.Random, max_crossings: int = 8) -> Diagram:
    """A pseudo-random braid closure with at most max_crossings crossings."""
    while True:
        strands = rng.randint(2, 4)
        length = rng.randint(1, max_crossings)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
        d = braid_closure(word, strands, name=f"rand{word}")
        if d.n <= max_crossings:
            return d


def random_corpus(seed: int, count: int = 100, max_crossings: int = 8) -> list[Diagram]:
    rng = random.Random(seed)
    return [random_diagram(rng, max_crossings) for _ in range(count)]
