"""Presented signed groups of Clifford type and signed permutation matrices.

Every group here is generated by pairwise anticommuting generators
``g_1 .. g_k`` with ``g_a**2 = square_signs[a]``.  An element is stored as a
sign and a bitmask of generators (the generators appear in ascending index
order), which makes the canonical form unique.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

MAX_GENERATORS = 31
DEFAULT_ENUMERATE_BOUND = 12


class PresentationMismatch(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generator_count: int
    square_signs: tuple[int, ...]
    _negative_squares: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        signs = tuple(int(s) for s in self.square_signs)
        object.__setattr__(self, "square_signs", signs)
        if len(signs) != self.generator_count:
            raise ValueError("need one square sign per generator")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("square signs must be +1 or -1")
        if self.generator_count > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators are supported")
        neg = 0
        for a, s in enumerate(signs):
            if s == -1:
                neg |= 1 << a
        object.__setattr__(self, "_negative_squares", neg)

    @property
    def full_mask(self) -> int:
        return (1 << self.generator_count) - 1

    @property
    def order(self) -> int:
        """Signed-group order, i.e. the number of cosets of <-1>."""
        return 1 << self.generator_count

    def product_sign(self, a: int, b: int) -> int:
        """Sign picked up when writing ``g^a * g^b`` in canonical form."""
        return _product_sign(a, b, self._negative_squares)

    def inverse_sign(self, mask: int) -> int:
        k = _popcount(mask)
        s = -1 if _popcount(mask & self._negative_squares) & 1 else 1
        return -s if (k * (k - 1) // 2) & 1 else s

    def element(self, sign: int = 1, mask: int = 0) -> "GroupElement":
        return GroupElement(self, sign, mask)

    def generator(self, index: int) -> "GroupElement":
        """Generator by 0-based index."""
        if not 0 <= index < self.generator_count:
            raise IndexError(index)
        return GroupElement(self, 1, 1 << index)

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, 1, 0)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "generator_count": self.generator_count,
            "square_signs": list(self.square_signs),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GroupPresentation":
        return cls(d["name"], int(d["generator_count"]), tuple(d["square_signs"]))


@lru_cache(maxsize=1 << 20)
def _product_sign(a: int, b: int, negative_squares: int) -> int:
    # move every generator of b left past the larger generators of a
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        swaps += _popcount(a & ~((low << 1) - 1))
        bb ^= low
    swaps += _popcount(a & b & negative_squares)
    return -1 if swaps & 1 else 1


@dataclass(frozen=True)
class GroupElement:
    presentation: GroupPresentation
    sign: int
    mask: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.mask & ~self.presentation.full_mask:
            raise ValueError("mask uses generators outside the presentation")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.presentation, -self.sign, self.mask)

    def __str__(self) -> str:
        return format_element(self.sign, self.mask)

    @property
    def is_identity(self) -> bool:
        return self.sign == 1 and self.mask == 0


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.presentation != b.presentation:
        raise PresentationMismatch(
            f"cannot multiply elements of {a.presentation.name} and {b.presentation.name}"
        )
    p = a.presentation
    sign = a.sign * b.sign * p.product_sign(a.mask, b.mask)
    return GroupElement(p, sign, a.mask ^ b.mask)


def conjugate(a: GroupElement) -> GroupElement:
    """The conjugate of a group element, which is its inverse."""
    return GroupElement(a.presentation, a.sign * a.presentation.inverse_sign(a.mask), a.mask)


inverse = conjugate


def enumerate_elements(
    presentation: GroupPresentation, bound: int = DEFAULT_ENUMERATE_BOUND
) -> list[GroupElement]:
    """All ``2**(k+1)`` signed elements, ordered by mask then sign (+ first)."""
    if presentation.generator_count > bound:
        raise ValueError(
            f"{presentation.name} has {presentation.generator_count} generators (bound {bound})"
        )
    return [
        GroupElement(presentation, s, m)
        for m in range(presentation.order)
        for s in (1, -1)
    ]


def format_element(sign: int, mask: int) -> str:
    """``+1``, ``-1``, ``+g1*g3``, ``-g2`` (generators 1-indexed)."""
    head = "+" if sign > 0 else "-"
    if mask == 0:
        return head + "1"
    gens = [f"g{a + 1}" for a in range(mask.bit_length()) if mask >> a & 1]
    return head + "*".join(gens)


_ELEMENT_RE = re.compile(r"^([+-])(1|g\d+(?:\*?g\d+)*)$")


def parse_element(text: str, presentation: GroupPresentation) -> GroupElement:
    """Inverse of :func:`format_element`.

    Generator words may be written in any order (``g3*g1``); the result is
    brought to canonical form by multiplication.
    """
    text = text.strip()
    if text and text[0] not in "+-":
        text = "+" + text
    m = _ELEMENT_RE.match(text)
    if not m:
        raise ValueError(f"bad group element {text!r}")
    el = presentation.element(1 if m.group(1) == "+" else -1, 0)
    if m.group(2) != "1":
        for g in re.findall(r"g(\d+)", m.group(2)):
            el = el * presentation.generator(int(g) - 1)
    return el


# -- standard presentations -------------------------------------------------

SR = GroupPresentation("SR", 0, ())
SC = GroupPresentation("SC", 1, (-1,))
SQ = GroupPresentation("SQ", 2, (-1, -1))


def clifford_group(n: int) -> GroupPresentation:
    """S(n): ``2**n - 1`` anticommuting generators, all squaring to -1."""
    if n < 1:
        raise ValueError("n must be positive")
    k = (1 << n) - 1
    return GroupPresentation(f"S{n}", k, (-1,) * k)


def clifford_group_prime(n: int) -> GroupPresentation:
    """S'(n): ``s`` with ``s**2 = 1`` (generator 1) then ``2**n - 4`` generators squaring to -1."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return GroupPresentation(f"Sprime{n}", (1 << n) - 3, (1,) + (-1,) * ((1 << n) - 4))


def presentation_by_name(name: str) -> GroupPresentation:
    if name in ("SR", "SC", "SQ"):
        return {"SR": SR, "SC": SC, "SQ": SQ}[name]
    m = re.fullmatch(r"S(\d+)", name)
    if m:
        return clifford_group(int(m.group(1)))
    m = re.fullmatch(r"Sprime(\d+)", name)
    if m:
        return clifford_group_prime(int(m.group(1)))
    raise ValueError(f"unknown group {name!r}")


# -- signed permutation matrices --------------------------------------------


@dataclass(frozen=True)
class SignedPermMatrix:
    """Row ``r`` holds ``row_signs[r]`` in column ``permutation[r]``."""

    permutation: tuple[int, ...]
    row_signs: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(c) for c in self.permutation)
        signs = tuple(int(s) for s in self.row_signs)
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "row_signs", signs)
        if len(perm) != len(signs):
            raise ValueError("permutation and signs differ in length")
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("not a permutation")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("row signs must be +1 or -1")

    @property
    def order(self) -> int:
        return len(self.permutation)

    @classmethod
    def identity(cls, m: int) -> "SignedPermMatrix":
        return cls(tuple(range(m)), (1,) * m)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SignedPermMatrix":
        perm, signs = [], []
        for row in rows:
            nz = [(c, v) for c, v in enumerate(row) if v]
            if len(nz) != 1 or nz[0][1] not in (1, -1):
                raise ValueError("not a signed permutation matrix")
            perm.append(nz[0][0])
            signs.append(int(nz[0][1]))
        return cls(tuple(perm), tuple(signs))

    def to_dense(self):
        import numpy as np

        m = self.order
        out = np.zeros((m, m), dtype=np.int64)
        out[np.arange(m), list(self.permutation)] = self.row_signs
        return out

    def __matmul__(self, other: "SignedPermMatrix") -> "SignedPermMatrix":
        return sp_multiply(self, other)

    def __neg__(self) -> "SignedPermMatrix":
        return SignedPermMatrix(self.permutation, tuple(-s for s in self.row_signs))

    @property
    def T(self) -> "SignedPermMatrix":
        return sp_transpose(self)

    def kron(self, other: "SignedPermMatrix") -> "SignedPermMatrix":
        m = other.order
        perm, signs = [], []
        for r1, (c1, s1) in enumerate(zip(self.permutation, self.row_signs)):
            for c2, s2 in zip(other.permutation, other.row_signs):
                perm.append(c1 * m + c2)
                signs.append(s1 * s2)
        return SignedPermMatrix(tuple(perm), tuple(signs))


def _check_orders(a: SignedPermMatrix, b: SignedPermMatrix) -> None:
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")


def sp_multiply(a: SignedPermMatrix, b: SignedPermMatrix) -> SignedPermMatrix:
    _check_orders(a, b)
    perm = tuple(b.permutation[c] for c in a.permutation)
    signs = tuple(s * b.row_signs[c] for c, s in zip(a.permutation, a.row_signs))
    return SignedPermMatrix(perm, signs)


def sp_transpose(a: SignedPermMatrix) -> SignedPermMatrix:
    m = a.order
    perm = [0] * m
    signs = [0] * m
    for r, (c, s) in enumerate(zip(a.permutation, a.row_signs)):
        perm[c] = r
        signs[c] = s
    return SignedPermMatrix(tuple(perm), tuple(signs))


def sp_disjoint(a: SignedPermMatrix, b: SignedPermMatrix) -> bool:
    _check_orders(a, b)
    return all(x != y for x, y in zip(a.permutation, b.permutation))


def sp_anti_amicable(a: SignedPermMatrix, b: SignedPermMatrix) -> bool:
    """``A B^T == -B A^T``."""
    _check_orders(a, b)
    return sp_multiply(a, sp_transpose(b)) == -sp_multiply(b, sp_transpose(a))


def sp_amicable(a: SignedPermMatrix, b: SignedPermMatrix) -> bool:
    _check_orders(a, b)
    return sp_multiply(a, sp_transpose(b)) == sp_multiply(b, sp_transpose(a))


def sp_product(mats: Iterable[SignedPermMatrix], m: int) -> SignedPermMatrix:
    out = SignedPermMatrix.identity(m)
    for x in mats:
        out = sp_multiply(out, x)
    return out
