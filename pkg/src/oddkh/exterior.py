"""Integer exterior algebra over the sum-zero lattice of a pointed circle set.

A circle set S with a distinguished (pointed) element p carries the rank
|S|-1 lattice V = {f: S -> Z, sum f = 0} with basis v_i = e_i - e_p for
i in S \\ {p}.  Elements of the rank 2^(|S|-1) module Lambda*(V) are stored
as integer combinations of sorted wedge monomials in the v_i.

The четыре cobordism maps (merge, split, cap, cup) and circle relabelings are
all induced by lattice maps and are implemented through one primitive,
``push``, plus contraction.  Modelling V as the sum-zero sublattice (not a
quotient) keeps every map matrix-exact over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CannotRemovePointed,
    DuplicateCircle,
    InvalidBifurcation,
    InvalidRelabeling,
    MismatchedCircleSets,
    NotABijection,
)

Monomial = tuple[int, ...]  # strictly increasing circle labels, pointed excluded


def _merge_sign(a: Monomial, b: Monomial) -> tuple[Monomial, int]:
    """Concatenate-and-sort with the Koszul sign; 0 on repeated labels."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return (), 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] moves past the remaining len(a)-i generators of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


@dataclass(frozen=True)
class ExteriorElement:
    """An element of Lambda*(V) for the pointed circle set (circles, pointed)."""

    circles: tuple[int, ...]
    pointed: int
    terms: dict[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(sorted(self.circles)))
        if self.pointed not in self.circles:
            raise InvalidRelabeling(f"pointed {self.pointed} not in {self.circles}")
        clean = {}
        for mono, c in self.terms.items():
            if c:
                if self.pointed in mono:
                    raise InvalidRelabeling(f"monomial {mono} contains the pointed label")
                clean[tuple(sorted(mono))] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------
    @classmethod
    def unit(cls, circles, pointed) -> "ExteriorElement":
        return cls(tuple(circles), pointed, {(): 1})

    @classmethod
    def zero(cls, circles, pointed) -> "ExteriorElement":
        return cls(tuple(circles), pointed, {})

    @classmethod
    def generator(cls, circles, pointed, i) -> "ExteriorElement":
        return cls(tuple(circles), pointed, {(i,): 1})

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def same_module(self, other: "ExteriorElement") -> bool:
        return self.circles == other.circles and self.pointed == other.pointed

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        if not self.same_module(other):
            raise MismatchedCircleSets("cannot add across different circle sets")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return ExteriorElement(self.circles, self.pointed, terms)

    def __neg__(self) -> "ExteriorElement":
        return self.scale(-1)

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, c: int) -> "ExteriorElement":
        return ExteriorElement(self.circles, self.pointed, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExteriorElement)
            and self.same_module(other)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.circles, self.pointed, tuple(sorted(self.terms.items()))))

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def basis_index(self) -> list[Monomial]:
        """All monomials of the module in the canonical (sorted-subset) order."""
        gens = [c for c in self.circles if c != self.pointed]
        out: list[Monomial] = [()]
        for g in gens:
            out += [m + (g,) for m in out]
        return sorted(out, key=lambda m: (len(m), m))


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    """Bilinear graded-anticommutative product."""
    if not x.same_module(y):
        raise MismatchedCircleSets("wedge needs matching circle sets and pointed label")
    terms: dict[Monomial, int] = {}
    for ma, ca in x.terms.items():
        for mb, cb in y.terms.items():
            mono, s = _merge_sign(ma, mb)
            if s:
                terms[mono] = terms.get(mono, 0) + s * ca * cb
    return ExteriorElement(x.circles, x.pointed, terms)


def push(
    x: ExteriorElement,
    phi: dict[int, int],
    target_circles,
    target_pointed: int,
) -> ExteriorElement:
    """Functorial extension of the lattice map e_i -> e_phi(i).

    Each source generator v_i = e_i - e_p maps to e_phi(i) - e_phi(p), i.e.
    v'_phi(i) - v'_phi(p) in the target basis (terms at the target pointed
    label vanish).  This one primitive realizes merges, caps, relabelings and
    repointings.
    """
    tgt = tuple(sorted(target_circles))
    if target_pointed not in tgt:
        raise InvalidRelabeling(f"pointed {target_pointed} not in target {tgt}")
    for i in x.circles:
        if i not in phi:
            raise InvalidRelabeling(f"no image for circle {i}")
        if phi[i] not in tgt:
            raise InvalidRelabeling(f"image {phi[i]} of {i} not a target circle")
    p_img = phi[x.pointed]

    def gen_image(i: int) -> ExteriorElement:
        terms: dict[Monomial, int] = {}
        if phi[i] != target_pointed:
            terms[(phi[i],)] = 1
        if p_img != target_pointed:
            terms[(p_img,)] = terms.get((p_img,), 0) - 1
        return ExteriorElement(tgt, target_pointed, terms)

    out_terms: dict[Monomial, int] = {}
    for mono, coef in x.terms.items():
        acc = ExteriorElement.unit(tgt, target_pointed)
        for i in mono:
            acc = wedge(acc, gen_image(i))
            if acc.is_zero():
                break
        for m, c in acc.terms.items():
            out_terms[m] = out_terms.get(m, 0) + coef * c
    return ExteriorElement(tgt, target_pointed, out_terms)


def wedge_difference(a: int, b: int, x: ExteriorElement) -> ExteriorElement:
    """(e_a - e_b) wedge x, taken inside x's module."""
    terms: dict[Monomial, int] = {}
    if a != x.pointed:
        terms[(a,)] = 1
    if b != x.pointed:
        terms[(b,)] = terms.get((b,), 0) - 1
    v = ExteriorElement(x.circles, x.pointed, terms)
    return wedge(v, x)


def merge_map(x: ExteriorElement, a: int, b: int, c: int) -> ExteriorElement:
    """Identify circles a and b into c (the induced map on sum-zero lattices).

    c must be one of a, b; the merged circle is pointed in the target exactly
    when a or b was pointed in the source.
    """
    if a == b or a not in x.circles or b not in x.circles:
        raise InvalidRelabeling(f"cannot merge {a},{b} in {x.circles}")
    if c not in (a, b):
        raise InvalidRelabeling(f"merge target {c} must be {a} or {b}")
    tgt = tuple(i for i in x.circles if i != (b if c == a else a))
    phi = {i: (c if i in (a, b) else i) for i in x.circles}
    pointed = c if x.pointed in (a, b) else x.pointed
    return push(x, phi, tgt, pointed)


def split_map(
    x: ExteriorElement, c: int, a: int, b: int, new_pointed: int | None = None
) -> ExteriorElement:
    """Bifurcate circle c into (a, b): x -> (e_a - e_b) ^ j(x).

    The relabeling j sends c to either half (the difference factor kills the
    discrepancy); a carries the +1 coefficient, so (a, b) must be ordered
    tail-first along the decoration arrow.  Splitting the pointed circle
    requires naming the half that keeps the basepoint.
    """
    if c not in x.circles or a == b:
        raise InvalidBifurcation(f"cannot split {c} into {a},{b}")
    others = [i for i in x.circles if i != c]
    if a in others or b in others:
        raise InvalidBifurcation(f"labels {a},{b} collide with {x.circles}")
    tgt = tuple(others) + (a, b)
    if x.pointed == c:
        if new_pointed not in (a, b):
            raise InvalidBifurcation("splitting the pointed circle needs new_pointed in (a, b)")
        pointed = new_pointed
    else:
        pointed = x.pointed
    phi = {i: i for i in others}
    phi[c] = a
    return wedge_difference(a, b, push(x, phi, tgt, pointed))


def cap_map(x: ExteriorElement, a: int) -> ExteriorElement:
    """Add a disjoint circle a (extension by zero on reduced cohomology)."""
    if a in x.circles:
        raise DuplicateCircle(f"circle {a} already present")
    tgt = x.circles + (a,)
    return push(x, {i: i for i in x.circles}, tgt, x.pointed)


def cup_map(x: ExteriorElement, a: int) -> ExteriorElement:
    """Contract against the dual of circle a (degree -1 antiderivation)."""
    if a == x.pointed:
        raise CannotRemovePointed("repoint via relabel before removing the basepoint circle")
    if a not in x.circles:
        raise InvalidRelabeling(f"circle {a} not present")
    tgt = tuple(i for i in x.circles if i != a)
    terms: dict[Monomial, int] = {}
    for mono, coef in x.terms.items():
        if a not in mono:
            continue
        idx = mono.index(a)
        rest = mono[:idx] + mono[idx + 1:]
        sign = -1 if idx % 2 else 1
        terms[rest] = terms.get(rest, 0) + sign * coef
    return ExteriorElement(tgt, x.pointed, terms)


def relabel(
    x: ExteriorElement, sigma: dict[int, int], new_pointed: int | None = None
) -> ExteriorElement:
    """Apply a bijection of circle labels, optionally moving the basepoint.

    With sigma = identity and a new pointed circle this is the change of
    basis v_j -> v'_j - v'_(old pointed).
    """
    if set(sigma) != set(x.circles) or len(set(sigma.values())) != len(x.circles):
        raise NotABijection(f"{sigma} is not a bijection on {x.circles}")
    tgt = tuple(sorted(sigma.values()))
    pointed = sigma[x.pointed] if new_pointed is None else new_pointed
    return push(x, sigma, tgt, pointed)
