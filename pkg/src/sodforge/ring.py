"""Signed group ring elements with integer coefficients and commuting variables."""
from __future__ import annotations

from typing import Iterable, Mapping

from .signed_group import GroupElement, GroupPresentation, PresentationMismatch

# A monomial is a sorted tuple of variable indices, degree 0..2.
Monomial = tuple[int, ...]
Key = tuple[int, Monomial]


def monomial(*vars: int) -> Monomial:
    if len(vars) > 2:
        raise ValueError("monomials have degree at most 2")
    return tuple(sorted(vars))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(sorted(a + b))
    if len(out) > 2:
        raise ValueError("product exceeds degree 2")
    return out


def _mono_str(m: Monomial) -> str:
    if not m:
        return ""
    if len(m) == 2 and m[0] == m[1]:
        return f"x{m[0] + 1}^2"
    return "*".join(f"x{v + 1}" for v in m)


class RingElement:
    """Finite sum of ``coef * g * monomial`` with ``g`` a canonical group word.

    The sign of a group element is folded into the integer coefficient, so
    the keys are ``(mask, monomial)``.
    """

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: GroupPresentation, terms: Mapping[Key, int] | None = None):
        self.presentation = presentation
        self.terms: dict[Key, int] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, presentation: GroupPresentation) -> "RingElement":
        return cls(presentation)

    @classmethod
    def term(cls, g: GroupElement, mono: Monomial = (), coef: int = 1) -> "RingElement":
        return cls(g.presentation, {(g.mask, tuple(mono)): coef * g.sign})

    @classmethod
    def scalar(cls, presentation: GroupPresentation, value: int) -> "RingElement":
        return cls(presentation, {(0, ()): value})

    def _check(self, other: "RingElement") -> None:
        if other.presentation != self.presentation:
            raise PresentationMismatch("ring elements over different groups")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    def __hash__(self):
        return hash((self.presentation.name, frozenset(self.terms.items())))

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RingElement(self.presentation, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.presentation, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c: int) -> "RingElement":
        return RingElement(self.presentation, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "RingElement") -> "RingElement":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.presentation
        out: dict[Key, int] = {}
        for (ma, xa), ca in self.terms.items():
            for (mb, xb), cb in other.terms.items():
                k = (ma ^ mb, _mono_mul(xa, xb))
                out[k] = out.get(k, 0) + ca * cb * p.product_sign(ma, mb)
        return RingElement(p, out)

    __rmul__ = scale

    def conjugate(self) -> "RingElement":
        p = self.presentation
        return RingElement(p, {(m, x): c * p.inverse_sign(m) for (m, x), c in self.terms.items()})

    def left_mul(self, g: GroupElement) -> "RingElement":
        p = self.presentation
        return RingElement(
            p, {(g.mask ^ m, x): g.sign * c * p.product_sign(g.mask, m) for (m, x), c in self.terms.items()}
        )

    def right_mul(self, g: GroupElement) -> "RingElement":
        p = self.presentation
        return RingElement(
            p, {(m ^ g.mask, x): g.sign * c * p.product_sign(m, g.mask) for (m, x), c in self.terms.items()}
        )

    def substitute(self, mapping: Mapping[int, int]) -> "RingElement":
        """Rename variables; the monomials stay commutative."""
        out: dict[Key, int] = {}
        for (m, x), c in self.terms.items():
            k = (m, tuple(sorted(mapping[v] for v in x)))
            out[k] = out.get(k, 0) + c
        return RingElement(self.presentation, out)

    def scalar_part(self) -> dict[Monomial, int]:
        return {x: c for (m, x), c in self.terms.items() if m == 0}

    def is_central_quadratic_form(self) -> bool:
        """True when every term is an identity-coefficient square ``c * x_i**2``."""
        return all(m == 0 and len(x) == 2 and x[0] == x[1] for (m, x) in self.terms)

    def __repr__(self) -> str:
        return f"RingElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, x), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            word = "".join(f"g{a + 1}" for a in range(m.bit_length()) if m >> a & 1)
            body = "*".join(s for s in ((str(mag) if mag != 1 or not (word or x) else ""), word, _mono_str(x)) if s)
            parts.append(sign + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def diagonal_form(presentation: GroupPresentation, weights: Iterable[int]) -> RingElement:
    """``sum_i weights[i] * x_i**2``."""
    return RingElement(presentation, {(0, (i, i)): u for i, u in enumerate(weights)})
