"""The acceptance suite: ten exact criteria over a deterministic corpus.

Each criterion returns a record {name, passed, detail, seconds}; run_all
executes them in order.  Tolerances are exact (integer equalities) and the
stated time budgets are enforced where the criterion carries one.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from . import corpus
from .complexes import assemble, euler_characteristic, homology
from .cones import skein_check
from .cube import ANTICOMMUTATIVE, COMMUTATIVE, TYPE_X, TYPE_Y, ResolutionCube
from .edge_assignment import solve
from .exterior import (
    ExteriorElement,
    cap_map,
    cup_map,
    merge_map,
    relabel,
    split_map,
)
from .jones import determinant, euler_reference
from .pdcodes import Diagram
from .spectral import FilteredComplex, einfinity_oracle, filtered_from_bigraded, pages

DEFAULT_SEED = 20250810


def _record(name, passed, detail, t0):
    return {
        "name": name,
        "passed": bool(passed),
        "detail": detail,
        "seconds": round(time.time() - t0, 3),
    }


def full_corpus(seed: int) -> list[Diagram]:
    return corpus.random_corpus(seed, count=100, max_crossings=8) + corpus.corpus_knots()


def criterion_1(seed: int = DEFAULT_SEED):
    """d**2 = 0 over Z for 100 random diagrams (<= 8 crossings) + named knots."""
    t0 = time.time()
    diagrams = full_corpus(seed)
    for d in diagrams:
        assemble(d).verify_d_squared()
    elapsed = time.time() - t0
    passed = elapsed < 10.0
    return _record(
        "1: d^2 = 0 over Z on the corpus",
        passed,
        f"{len(diagrams)} diagrams, {elapsed:.2f}s (< 10 s required)",
        t0,
    )


def criterion_2(seed: int = DEFAULT_SEED):
    """Total Q-rank of reduced homology equals the Kauffman determinant."""
    t0 = time.time()
    failures = []
    times = []
    for name, det_expected in corpus.DETERMINANT_KNOTS.items():
        d = corpus.named(name)
        t1 = time.time()
        rank = homology(assemble(d), "q").total_rank
        det = determinant(d)
        times.append(time.time() - t1)
        if not (rank == det == det_expected):
            failures.append(f"{name}: rank={rank} det={det} expected={det_expected}")
    passed = not failures and max(times) < 1.0
    detail = failures or [f"6 knots, slowest {max(times):.3f}s (< 1 s each)"]
    return _record("2: total Q-rank = determinant on alternating set", passed, "; ".join(detail), t0)


def criterion_3(seed: int = DEFAULT_SEED):
    """Bigraded ranks invariant under basepoint, flavor, free choices, moves."""
    t0 = time.time()
    failures = []

    def table(d, **kw):
        c = assemble(d, **kw)
        return homology(c, "q").ranks(), homology(c, "f2").ranks()

    for family in (corpus.UNKNOT_DIAGRAMS, corpus.TREFOIL_DIAGRAMS + ("trefoil",)):
        ref = None
        for name in family:
            d = corpus.named(name)
            variants = [table(d)]
            variants.append(table(d, flavor="y"))
            variants.append(table(d, free_value=-1))
            for bp in range(1, d.arc_count + 1):
                d2 = Diagram(d.crossings, d.arc_count, bp, d.name, d.free_loops)
                variants.append(table(d2))
            for v in variants:
                if ref is None:
                    ref = v
                elif v != ref:
                    failures.append(f"{name}: {v} != {ref}")
    return _record(
        "3: rank invariance (basepoint/flavor/free vars/Reidemeister)",
        not failures,
        "; ".join(failures) or "unknot and trefoil families agree across all choices",
        t0,
    )


def _e2_as_hq(c) -> dict:
    fc = filtered_from_bigraded(c, "f2")
    res = pages(fc, r_max=2)
    page = res.pages[1] if len(res.pages) > 1 else res.pages[0]
    out: dict = {}
    for (p, deg), r in page.ranks.items():
        if r:
            q_out = 2 * (p - deg)
            assert q_out.denominator == 1
            out[(p, int(q_out))] = out.get((p, int(q_out)), 0) + r
    return out


def criterion_4(seed: int = DEFAULT_SEED, diagrams=None):
    """E_2 over F2 equals the F2 homology of the unsigned cube complex."""
    t0 = time.time()
    diagrams = diagrams if diagrams is not None else full_corpus(seed)
    checked = 0
    for d in diagrams:
        c = assemble(d)
        e2 = _e2_as_hq(c)
        unsigned = homology(assemble(d, signs="unsigned"), "f2").ranks()
        if e2 != unsigned:
            return _record(
                "4: E_2 page = unsigned-complex F2 homology",
                False,
                f"{d.name}: {e2} != {unsigned}",
                t0,
            )
        checked += 1
    return _record(
        "4: E_2 page = unsigned-complex F2 homology",
        True,
        f"{checked} diagrams, bidegree-by-bidegree",
        t0,
    )


def criterion_5(seed: int = DEFAULT_SEED, diagrams=None):
    """Z homology is a valid integral lift: UCT F2 dimensions match criterion 4."""
    t0 = time.time()
    diagrams = diagrams if diagrams is not None else full_corpus(seed)
    for d in diagrams:
        c = assemble(d)
        uct = homology(c, "z").f2_dimensions()
        f2 = homology(assemble(d, signs="unsigned"), "f2").ranks()
        if uct != f2:
            return _record(
                "5: integral lift consistent (UCT vs F2 table)",
                False,
                f"{d.name}: {uct} != {f2}",
                t0,
            )
    return _record(
        "5: integral lift consistent (UCT vs F2 table)",
        True,
        f"{len(diagrams)} diagrams",
        t0,
    )


def random_filtered_complex(rng: random.Random, field: str) -> FilteredComplex:
    """Random small filtered complex: elementary pairs in a scrambled basis."""
    size = rng.randint(1, 20)
    filtration = [rng.randint(0, 4) for _ in range(size)]
    degree = [rng.randint(-2, 2) for _ in range(size)]
    d: list[dict[int, int]] = [dict() for _ in range(size)]
    used = set()
    order = list(range(size))
    rng.shuffle(order)
    for j in order:
        if j in used:
            continue
        targets = [
            i
            for i in range(size)
            if i not in used and i != j
            and degree[i] == degree[j] + 1 and filtration[i] >= filtration[j]
        ]
        if targets and rng.random() < 0.7:
            i = rng.choice(targets)
            d[j][i] = rng.choice([1, -1, 2]) if field == "q" else 1
            used.add(i)
            used.add(j)
    # scramble by filtration-compatible degree-preserving base changes
    # f_i = e_i + lam e_j needs p_j >= p_i and equal degrees
    for _ in range(3 * size):
        i, j = rng.randrange(size), rng.randrange(size)
        if i == j or degree[i] != degree[j] or filtration[j] < filtration[i]:
            continue
        lam = rng.choice([1, -1]) if field == "q" else 1
        newcol = dict(d[i])
        for tgt, v in d[j].items():
            newcol[tgt] = newcol.get(tgt, 0) + lam * v
        d[i] = {k: v for k, v in newcol.items() if v}
        for col in d:  # re-express image coordinates in the new basis
            if i in col:
                col[j] = col.get(j, 0) - lam * col[i]
                if not col[j]:
                    del col[j]
    return FilteredComplex(filtration, degree, d, field)


def criterion_6(seed: int = DEFAULT_SEED):
    """Pages vs brute-force associated-graded oracle on 200 random complexes."""
    t0 = time.time()
    rng = random.Random(seed + 6)
    checked = 0
    for field in ("f2", "q"):
        for _ in range(100):
            fc = random_filtered_complex(rng, field)
            res = pages(fc)
            einf = {k: v for k, v in res.pages[-1].ranks.items() if v}
            oracle = {k: v for k, v in einfinity_oracle(fc).items() if v}
            if einf != oracle:
                return _record(
                    "6: spectral engine vs associated-graded oracle",
                    False,
                    f"{field}: {einf} != {oracle}",
                    t0,
                )
            prev = None
            for page in res.pages:
                if prev is not None:
                    for key, r in page.ranks.items():
                        if r > prev.get(key, 0):
                            return _record(
                                "6: spectral engine vs associated-graded oracle",
                                False,
                                f"{field}: rank grew at {key} on page {page.r}",
                                t0,
                            )
                prev = page.ranks
            checked += 1
    elapsed = time.time() - t0
    return _record(
        "6: spectral engine vs associated-graded oracle",
        elapsed < 5.0,
        f"{checked} complexes, {elapsed:.2f}s (< 5 s required)",
        t0,
    )


def criterion_7(seed: int = DEFAULT_SEED):
    """Face dichotomy (full matrices) and flavor-consistent solvability."""
    t0 = time.time()
    diagrams = corpus.corpus_knots() + corpus.random_corpus(seed + 7, count=40, max_crossings=7)
    both_zero = 0
    nonzero = 0
    for d in diagrams:
        cube = ResolutionCube(d)
        for m in cube.vertices():
            res = cube.resolution(m)
            basis = res.module_unit().basis_index()
            for (_, i, j) in cube.faces_from(m):
                cls = cube.classify_face(m, i, j)
                eq = neg = zero = True
                for mono in basis:
                    x = ExteriorElement(res.circles, res.pointed, {mono: 1})
                    f1, f2 = cube.compose_face(m, i, j, x)
                    zero &= f1.is_zero() and f2.is_zero()
                    eq &= f1 == f2
                    neg &= f1 == -f2
                if cls in (TYPE_X, TYPE_Y):
                    if not zero:
                        return _record("7: face dichotomy + solvable flavors", False, f"{d.name} {m} {i},{j}: classified {cls} but compositions nonzero", t0)
                    both_zero += 1
                elif cls == COMMUTATIVE:
                    if zero or not eq:
                        return _record("7: face dichotomy + solvable flavors", False, f"{d.name} {m} {i},{j}: not commutative", t0)
                    nonzero += 1
                elif cls == ANTICOMMUTATIVE:
                    if zero or not neg:
                        return _record("7: face dichotomy + solvable flavors", False, f"{d.name} {m} {i},{j}: not anticommutative", t0)
                    nonzero += 1
        solve(d, "x")
        solve(d, "y")
    return _record(
        "7: face dichotomy + solvable flavors",
        True,
        f"{nonzero} nonzero faces exactly +-, {both_zero} vanishing faces typed, both flavors solvable",
        t0,
    )


def criterion_8(seed: int = DEFAULT_SEED):
    """Elementary cobordism composition laws on every basis element, k <= 5."""
    t0 = time.time()
    checked = 0
    for k in range(1, 6):
        circles = tuple(range(1, k + 1))
        pointed = k
        unit = ExteriorElement.unit(circles, pointed)
        for mono in unit.basis_index():
            x = ExteriorElement(circles, pointed, {mono: 1})
            capped = cap_map(x, k + 10)
            for tgt in circles:
                if merge_map(capped, k + 10, tgt, tgt) != x:
                    return _record("8: cobordism composition laws (k <= 5)", False, f"merge o cap != id at k={k}", t0)
            if not cup_map(capped, k + 10).is_zero():
                return _record("8: cobordism composition laws (k <= 5)", False, f"cup o cap != 0 at k={k}", t0)
            for c in circles:
                np_ = 90 if c == pointed else None
                s = split_map(x, c, 91, 90, new_pointed=np_)
                if not merge_map(s, 91, 90, 91).is_zero():
                    return _record("8: cobordism composition laws (k <= 5)", False, f"merge-back o split != 0 at k={k}", t0)
                sigma = {i: i for i in circles if i != c}
                if np_ != 90:
                    if cup_map(s, 90) != -relabel(x, {**sigma, c: 91}):
                        return _record("8: cobordism composition laws (k <= 5)", False, f"cup(head) o split wrong at k={k}", t0)
                want = relabel(x, {**sigma, c: 90}, new_pointed=90 if np_ == 90 else None)
                if cup_map(s, 91) != want:
                    return _record("8: cobordism composition laws (k <= 5)", False, f"cup(tail) o split wrong at k={k}", t0)
                checked += 1
    return _record(
        "8: cobordism composition laws (k <= 5)",
        True,
        f"{checked} split/merge/cap/cup identities on basis elements",
        t0,
    )


def criterion_9(seed: int = DEFAULT_SEED, diagrams=None):
    """Skein cone block structure and triangle rank identities, all crossings."""
    t0 = time.time()
    diagrams = diagrams if diagrams is not None else full_corpus(seed)
    checked = 0
    for d in diagrams:
        if d.n == 0:
            continue
        c = assemble(d)
        for i in range(d.n):
            rep = skein_check(c, i, fields=("f2", "q"))
            if not rep["holds"]:
                return _record(
                    "9: skein cone + triangle rank identities",
                    False,
                    f"{d.name} crossing {i}",
                    t0,
                )
            checked += 1
    return _record(
        "9: skein cone + triangle rank identities",
        True,
        f"{checked} (diagram, crossing) pairs over F2 and Q",
        t0,
    )


def criterion_10(seed: int = DEFAULT_SEED, diagrams=None):
    """Graded Euler characteristic equals the bracket-oracle reference."""
    t0 = time.time()
    diagrams = diagrams if diagrams is not None else full_corpus(seed)
    for d in diagrams:
        eu = euler_characteristic(assemble(d))
        ref = euler_reference(d)
        if eu != ref:
            return _record(
                "10: Euler characteristic = mirror Jones (oracle)",
                False,
                f"{d.name}: {eu} != {ref}",
                t0,
            )
    return _record(
        "10: Euler characteristic = mirror Jones (oracle)",
        True,
        f"{len(diagrams)} diagrams",
        t0,
    )


ALL_CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all(seed: int = DEFAULT_SEED, quick: bool = False) -> list[dict]:
    """Run every criterion; quick mode shrinks the shared random corpus."""
    shared = (
        corpus.random_corpus(seed, count=(20 if quick else 100), max_crossings=8)
        + corpus.corpus_knots()
    )
    results = []
    for fn in ALL_CRITERIA:
        if fn in (criterion_4, criterion_5, criterion_9, criterion_10):
            results.append(fn(seed, diagrams=shared))
        else:
            results.append(fn(seed))
    return results
