"""Real monomial representations and the SOD -> OD block expansion."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .constructions import hurwitz_radon_family, sylvester_hadamard
from .design import DesignMatrix
from .signed_group import (
    SC,
    SR,
    GroupPresentation,
    SignedPermMatrix,
    clifford_group,
    clifford_group_prime,
    sp_multiply,
)

MAX_REMREP_DEGREE = 128


class RemrepError(ValueError):
    pass


@dataclass(frozen=True)
class Remrep:
    source: GroupPresentation
    degree: int
    generator_images: tuple[SignedPermMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "generator_images", tuple(self.generator_images))
        if len(self.generator_images) != self.source.generator_count:
            raise RemrepError("need one image per generator")
        if any(g.order != self.degree for g in self.generator_images):
            raise RemrepError("generator images must have order equal to the degree")

    def image(self, sign: int, mask: int) -> SignedPermMatrix:
        return _image(self, sign, mask)

    def image_dense(self, sign: int, mask: int) -> np.ndarray:
        return self.image(sign, mask).to_dense()


@lru_cache(maxsize=4096)
def _image(phi: Remrep, sign: int, mask: int) -> SignedPermMatrix:
    out = SignedPermMatrix.identity(phi.degree)
    for a in range(mask.bit_length()):
        if mask >> a & 1:
            out = sp_multiply(out, phi.generator_images[a])
    return out if sign > 0 else -out


def validate(phi: Remrep) -> tuple[bool, Optional[str]]:
    """Check the defining relations on the generator images.

    ``phi(g_a)**2 = square_signs[a] I`` and ``phi(g_a) phi(g_b) = -phi(g_b) phi(g_a)``;
    ``phi(-1) = -I`` holds by construction of :meth:`Remrep.image`.
    """
    m = phi.degree
    eye = SignedPermMatrix.identity(m)
    imgs = phi.generator_images
    for a, (g, sq) in enumerate(zip(imgs, phi.source.square_signs)):
        want = eye if sq == 1 else -eye
        if sp_multiply(g, g) != want:
            return False, f"g{a + 1}^2 != {sq:+d}I"
    for a in range(len(imgs)):
        for b in range(a + 1, len(imgs)):
            if sp_multiply(imgs[a], imgs[b]) != -sp_multiply(imgs[b], imgs[a]):
                return False, f"g{a + 1} and g{b + 1} do not anticommute"
    return True, None


def _degree_exponent(n: int) -> int:
    return (1 << (n - 1)) - 1


def canonical_remrep_S(n: int) -> Remrep:
    """S(n) -> SP_m with ``m = 2**(2**(n-1) - 1)``, ``s_a -> A_a`` of the Hurwitz-Radon family."""
    if n <= 2:
        raise RemrepError("n must be greater than 2")
    t = _degree_exponent(n)
    if 1 << t > MAX_REMREP_DEGREE:
        raise RemrepError(f"degree 2**{t} exceeds {MAX_REMREP_DEGREE}")
    family = hurwitz_radon_family(t)
    k = (1 << n) - 1
    if len(family) < k + 1:  # pragma: no cover
        raise RemrepError("Hurwitz-Radon family too small")
    return Remrep(clifford_group(n), 1 << t, tuple(family[1:k + 1]))


def canonical_remrep_Sprime(n: int) -> Remrep:
    """S'(n) -> SP_m: ``s -> A_{2^n-3} A_{2^n-2} A_{2^n-1}`` and ``s_a -> A_a``."""
    if n != 4:
        raise RemrepError("only S'(4) is supported")
    base = canonical_remrep_S(n).generator_images
    top = (1 << n) - 1
    a_prime = sp_multiply(sp_multiply(base[top - 3], base[top - 2]), base[top - 1])
    images = (a_prime,) + base[: top - 3]
    return Remrep(clifford_group_prime(n), base[0].order, images)


# i -> [[0, -1], [1, 0]]
COMPLEX_REMREP = Remrep(SC, 2, (SignedPermMatrix((1, 0), (-1, 1)),))
TRIVIAL_REMREP = Remrep(SR, 1, ())


def is_hadamard(h: np.ndarray) -> bool:
    h = np.asarray(h)
    m = h.shape[0]
    if h.shape != (m, m) or not np.isin(h, (-1, 1)).all():
        return False
    return bool(np.array_equal(h @ h.T, m * np.eye(m, dtype=h.dtype)))


def expand_sod(
    x: DesignMatrix,
    phi: Remrep,
    h: Optional[np.ndarray] = None,
    check: bool = True,
) -> DesignMatrix:
    """Replace each entry ``g x_i`` by the block ``phi(g) H x_i`` (zero entries by zero blocks).

    Produces a design over SR of order ``m n`` and type ``m u``.
    """
    if phi.source != x.presentation:
        raise RemrepError(f"remrep is for {phi.source.name}, design is over {x.presentation.name}")
    if check:
        ok, why = validate(phi)
        if not ok:
            raise RemrepError(f"invalid remrep: {why}")
    m = phi.degree
    if h is None:
        h = sylvester_hadamard(m.bit_length() - 1)
    h = np.asarray(h, dtype=np.int64)
    if h.shape != (m, m) or not is_hadamard(h):
        raise ValueError(f"H is not a Hadamard matrix of order {m}")
    n = x.order
    uniq, inv = np.unique(x.masks, return_inverse=True)
    blocks = np.stack([phi.image_dense(1, int(mk)) @ h for mk in uniq]).astype(np.int8)
    block_of = inv.reshape(n, n)
    # (n, n, m, m) -> (n, m, n, m)
    signs = (x.signs[:, :, None, None] * blocks[block_of]).transpose(0, 2, 1, 3).reshape(n * m, n * m)
    vars = np.broadcast_to(x.vars[:, :, None, None], (n, n, m, m)).transpose(0, 2, 1, 3).reshape(n * m, n * m)
    return DesignMatrix(SR, signs, np.zeros_like(vars), vars, [m * u for u in x.claimed_type])


def cod_to_od(x: DesignMatrix, check_input: bool = True) -> DesignMatrix:
    """COD(n; u) -> OD(2n; 2u) through ``i -> [[0, -1], [1, 0]]`` and ``H_2``."""
    from .verify import verify_sod

    if x.presentation != SC:
        raise ValueError("input must be a design over SC")
    if check_input and not verify_sod(x).ok:
        raise ValueError("input is not a COD of its claimed type")
    return expand_sod(x, COMPLEX_REMREP, sylvester_hadamard(1))


def remrep_by_name(name: str, n: Optional[int] = None) -> Remrep:
    if name == "S":
        return canonical_remrep_S(n)
    if name == "Sprime":
        return canonical_remrep_Sprime(n if n is not None else 4)
    if name == "SC":
        return COMPLEX_REMREP
    if name == "SR":
        return TRIVIAL_REMREP
    raise ValueError(f"unknown remrep {name!r}")


def remrep_from_images(source: GroupPresentation, images: Sequence[Sequence[Sequence[int]]]) -> Remrep:
    """User-supplied generator images given as dense {0, +-1} matrices."""
    mats = tuple(SignedPermMatrix.from_dense(im) for im in images)
    degree = mats[0].order if mats else 1
    return Remrep(source, degree, mats)
