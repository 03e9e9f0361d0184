"""Integer Laurent polynomials in one variable."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class LaurentPoly:
    """Finite integer combination of powers of a formal variable."""

    coeffs: dict[int, int] = field(default_factory=dict)
    var: str = "q"

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", {e: c for e, c in self.coeffs.items() if c}
        )

    @classmethod
    def zero(cls, var="q"):
        return cls({}, var)

    @classmethod
    def one(cls, var="q"):
        return cls({0: 1}, var)

    @classmethod
    def monomial(cls, exp: int, coef: int = 1, var: str = "q"):
        return cls({exp: coef}, var)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return LaurentPoly(coeffs, self.var)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        coeffs: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                coeffs[e] = coeffs.get(e, 0) + c1 * c2
        return LaurentPoly(coeffs, self.var)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: c * v for e, v in self.coeffs.items()}, self.var)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.var)

    def substitute_square(self, sign: int, var: str) -> "LaurentPoly":
        """Map x**(2s) -> (sign)**s * y**s; all exponents must be even."""
        coeffs = {}
        for e, c in self.coeffs.items():
            if e % 2:
                raise ValueError(f"odd exponent {e} cannot be halved")
            s = e // 2
            coeffs[s] = coeffs.get(s, 0) + c * (sign ** (s & 1) if sign < 0 else 1)
        return LaurentPoly(coeffs, var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                exp = self.var if e == 1 else f"{self.var}^{e}"
                parts.append(f"{head}{exp}")
        out = " + ".join(parts).replace("+ -", "- ")
        return out

    def to_sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())
