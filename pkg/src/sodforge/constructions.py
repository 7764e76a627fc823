"""Hurwitz-Radon families, Kronecker families and the SOD constructions built from them."""
from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .design import DesignMatrix
from .signed_group import (
    GroupElement,
    GroupPresentation,
    SR,
    SignedPermMatrix,
    clifford_group,
    clifford_group_prime,
    sp_anti_amicable,
    sp_disjoint,
    sp_multiply,
    sp_transpose,
)

MAX_HR_T = 10


def rho(n: int) -> int:
    """Radon-Hurwitz number of ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    a = (n & -n).bit_length() - 1
    c, d = divmod(a, 4)
    return 8 * c + 2**d


# -- Hurwitz-Radon families --------------------------------------------------
#
# Members are tensor words in the 2x2 signed permutations
#   I, P = [[0,1],[1,0]], Q = [[1,0],[0,-1]], R = QP = [[0,1],[-1,0]],
# encoded by bit pairs (x, z): I=(0,0), P=(1,0), Q=(0,1), R=(1,1).
# A word is skew iff it holds an odd number of R's; two words anticommute
# iff popcount(x1&z2) + popcount(z1&x2) is odd.  Two anticommuting skew
# words W, V are automatically disjoint: equal antidiagonal patterns would
# make WV a symmetric diagonal word, but WV is skew.

_LETTERS = {
    (0, 0): ((0, 1), (1, 1)),
    (1, 0): ((1, 0), (1, 1)),
    (0, 1): ((0, 1), (1, -1)),
    (1, 1): ((1, 0), (1, -1)),
}


def _popcount(x: int) -> int:
    return bin(x).count("1")


def pauli_word_matrix(x: int, z: int, t: int) -> SignedPermMatrix:
    """Kronecker product of letters; bit ``t-1-q`` of (x, z) names factor ``q``."""
    out = SignedPermMatrix.identity(1)
    for q in range(t):
        bit = t - 1 - q
        perm, signs = _LETTERS[(x >> bit & 1, z >> bit & 1)]
        out = out.kron(SignedPermMatrix(perm, signs))
    return out


def _anticommute(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return (_popcount(a[0] & b[1]) + _popcount(a[1] & b[0])) & 1 == 1


def _clique(cands: list, size: int) -> Optional[list]:
    if size == 0:
        return []
    for i, w in enumerate(cands):
        if len(cands) - i < size:
            return None
        rest = [v for v in cands[i + 1:] if _anticommute(w, v)]
        found = _clique(rest, size - 1)
        if found is not None:
            return [w] + found
    return None


@lru_cache(maxsize=None)
def hurwitz_radon_words(t: int) -> tuple[tuple[int, int], ...]:
    """``rho(2**t) - 1`` pairwise anticommuting skew tensor words on ``t`` factors.

    Found by depth-first search over words in increasing ``(x, z)`` order,
    so the result is deterministic.
    """
    if not 0 <= t <= MAX_HR_T:
        raise ValueError(f"t must be in 0..{MAX_HR_T}")
    need = rho(1 << t) - 1
    skew = [
        (x, z)
        for x in range(1 << t)
        for z in range(1 << t)
        if _popcount(x & z) & 1
    ]
    found = _clique(skew, need)
    if found is None:  # pragma: no cover - would contradict the Radon-Hurwitz bound
        raise RuntimeError(f"no Hurwitz-Radon family of order {2**t} found")
    return tuple(found)


def hurwitz_radon_family(t: int) -> list[SignedPermMatrix]:
    """``[I, A_1, ..., A_{rho(2**t)-1}]`` of order ``2**t``.

    Pairwise disjoint, ``A_i`` skew and pairwise anticommuting for ``i >= 1``.
    """
    words = hurwitz_radon_words(t)
    return [SignedPermMatrix.identity(1 << t)] + [pauli_word_matrix(x, z, t) for x, z in words]


def check_hurwitz_radon_family(family: Sequence[SignedPermMatrix]) -> list[str]:
    """Human-readable list of violated properties (empty when the family is valid)."""
    problems = []
    if not family:
        return ["empty family"]
    m = family[0].order
    if family[0] != SignedPermMatrix.identity(m):
        problems.append("first member is not the identity")
    for i, a in enumerate(family):
        for j in range(i + 1, len(family)):
            b = family[j]
            if not sp_disjoint(a, b):
                problems.append(f"A{i} and A{j} are not disjoint")
            if not sp_anti_amicable(a, b):
                problems.append(f"A{i} and A{j} are not anti-amicable")
            if i >= 1 and sp_multiply(a, b) != -sp_multiply(b, a):
                problems.append(f"A{i} and A{j} do not anticommute")
        if i >= 1 and sp_transpose(a) != -a:
            problems.append(f"A{i} is not skew")
    return problems


def hurwitz_radon_design(t: int) -> DesignMatrix:
    """``sum_i x_i A_i``, an OD(2**t; 1_(rho(2**t)))."""
    family = hurwitz_radon_family(t)
    m = 1 << t
    signs = np.zeros((m, m), dtype=np.int8)
    vars = np.full((m, m), -1, dtype=np.int32)
    for v, a in enumerate(family):
        rows = np.arange(m)
        cols = np.array(a.permutation)
        signs[rows, cols] = a.row_signs
        vars[rows, cols] = v
    return DesignMatrix(SR, signs, np.zeros_like(vars), vars, [1] * len(family))


# -- Kronecker machinery -----------------------------------------------------

I2 = np.eye(2, dtype=np.int64)
P2 = np.array([[0, 1], [1, 0]], dtype=np.int64)


def kronecker(a, b):
    """Block product ``[a_ij * B]``.

    Works for numpy arrays, :class:`SignedPermMatrix` and nested lists whose
    entries are ``None`` or :class:`GroupElement` (products taken as ``a_ij * b_kl``).
    """
    if isinstance(a, SignedPermMatrix):
        return a.kron(b)
    if isinstance(a, np.ndarray):
        return np.kron(a, b)
    rows = []
    for ra in a:
        for rb in b:
            row = []
            for ea in ra:
                for eb in rb:
                    row.append(None if ea is None or eb is None else ea * eb)
            rows.append(row)
    return rows


def kronecker_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = kronecker(out, m)
    return out


def ip_tensor_family(n: int) -> list[np.ndarray]:
    """All ``n``-fold Kronecker products of I and P; ``B_w`` has P where ``w`` has a 1 bit.

    The most significant bit of ``w`` picks the leftmost factor, so
    ``B_w[r, c] = 1`` exactly when ``c == r ^ w``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for w in range(1 << n):
        factors = [P2 if w >> (n - 1 - q) & 1 else I2 for q in range(n)]
        out.append(kronecker_all(factors))
    return out


def sylvester_hadamard(t: int) -> np.ndarray:
    """``H_{2**t}``, the ``t``-fold Kronecker power of ``[[1, 1], [1, -1]]``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    h = np.ones((1, 1), dtype=np.int64)
    h2 = np.array([[1, 1], [1, -1]], dtype=np.int64)
    for _ in range(t):
        h = np.kron(h, h2)
    return h


def hadamard_design(t: int) -> DesignMatrix:
    """Sylvester matrix as a one-variable design OD(2**t; 2**t)."""
    h = sylvester_hadamard(t)
    return DesignMatrix(SR, h, np.zeros_like(h), np.zeros_like(h), [h.shape[0]])


# -- SOD constructions -------------------------------------------------------


def sod_power2(n: int) -> DesignMatrix:
    """SOD(2**n; 1_(2**n)) over S(n): ``D = sum_w s_w x_w B_w`` with ``s_0 = 1``."""
    if n <= 2:
        raise ValueError("n must be greater than 2")
    p = clifford_group(n)
    size = 1 << n
    r = np.arange(size)[:, None]
    c = np.arange(size)[None, :]
    w = r ^ c
    masks = np.where(w == 0, 0, 1 << np.maximum(w - 1, 0))
    signs = np.ones((size, size), dtype=np.int8)
    return DesignMatrix(p, signs, masks, w, [1] * size)


def section4_blocks(p: GroupPresentation) -> list[list[list[Optional[GroupElement]]]]:
    """The eleven order-32 Kronecker blocks over S'(4)."""
    one = p.identity
    s = p.generator(0)
    s1 = p.generator(1)
    I = [[one, None], [None, one]]
    P = [[None, one], [one, None]]
    A = [[s1, one], [one, s1]]
    Is = [[s, None], [None, s]]
    Ps = [[None, s], [s, None]]
    words = [
        (I, I, Is, Is, Is),
        (I, I, Is, Is, Ps),
        (I, I, Is, Ps, Is),
        (I, I, Ps, Is, Is),
        (I, I, Is, Ps, Ps),
        (I, I, Ps, Is, Ps),
        (I, I, Ps, Ps, Is),
        (I, I, Ps, Ps, Ps),
        (P, I, A, A, A),
        (I, P, A, A, A),
        (P, P, A, A, A),
    ]
    return [kronecker_all(list(wd)) for wd in words]


def sod_section4() -> DesignMatrix:
    """SOD(2**5; 1_(8), 8, 8, 8) over S'(4): ``sum_{i=1}^{11} B_i s_{i+1} x_i``."""
    p = clifford_group_prime(4)
    blocks = section4_blocks(p)
    n = 32
    rows: list[list] = [[None] * n for _ in range(n)]
    for i, b in enumerate(blocks, start=1):
        right = p.generator(i + 1)
        for r in range(n):
            for c in range(n):
                e = b[r][c]
                if e is None:
                    continue
                if rows[r][c] is not None:
                    raise AssertionError(f"blocks overlap at ({r}, {c})")
                rows[r][c] = (e * right, i - 1)
    return DesignMatrix.from_entries(p, rows, [1] * 8 + [8, 8, 8])


# variable blocks (0-based) turning type (1_(8), 8, 8, 8) into (1, 1, 1, 9, 9, 11)
SECTION4_EQUATING = ([5], [6], [7], [0, 8], [1, 9], [2, 3, 4, 10])
