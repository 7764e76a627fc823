"""Design matrices over a signed group: entries are 0 or ``g * x_i``."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .signed_group import GroupElement, GroupPresentation, PresentationMismatch
from .ring import RingElement

# entry given as None/0, (GroupElement, var) or (sign, mask, var)
EntryLike = Union[None, int, tuple]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


def product_signs(p: GroupPresentation, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Elementwise sign of ``g^left * g^right`` for arrays of masks."""
    left = np.asarray(left, dtype=np.int64)
    right = np.asarray(right, dtype=np.int64)
    left, right = np.broadcast_arrays(left, right)
    if p.generator_count == 0:
        return np.ones(left.shape, dtype=np.int8)
    key = (left << 32) | right
    uniq, inv = np.unique(key.ravel(), return_inverse=True)
    table = np.array([p.product_sign(int(k) >> 32, int(k) & 0xFFFFFFFF) for k in uniq], dtype=np.int8)
    return table[inv].reshape(left.shape)


def inverse_signs(p: GroupPresentation, masks: np.ndarray) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.int64)
    if p.generator_count == 0:
        return np.ones(masks.shape, dtype=np.int8)
    uniq, inv = np.unique(masks.ravel(), return_inverse=True)
    table = np.array([p.inverse_sign(int(m)) for m in uniq], dtype=np.int8)
    return table[inv].reshape(masks.shape)


class DesignMatrix:
    """Square matrix with entries ``0`` or ``g * x_v`` and a claimed type.

    Stored as three parallel arrays: ``signs`` (0 marks a zero entry),
    ``masks`` (group word) and ``vars`` (variable index, -1 where zero).
    Instances are immutable.
    """

    def __init__(
        self,
        presentation: GroupPresentation,
        signs: np.ndarray,
        masks: np.ndarray,
        vars: np.ndarray,
        claimed_type: Sequence[int],
        variable_count: Optional[int] = None,
    ):
        signs = np.asarray(signs, dtype=np.int8)
        masks = np.asarray(masks, dtype=np.int32)
        vars = np.asarray(vars, dtype=np.int32)
        if signs.ndim != 2 or signs.shape[0] != signs.shape[1]:
            raise ValueError("design matrices are square")
        if masks.shape != signs.shape or vars.shape != signs.shape:
            raise ValueError("entry arrays differ in shape")
        zero = signs == 0
        masks = np.where(zero, 0, masks).astype(np.int32)
        vars = np.where(zero, -1, vars).astype(np.int32)
        if not np.isin(signs, (-1, 0, 1)).all():
            raise ValueError("signs must be -1, 0 or 1")
        if (masks & ~presentation.full_mask).any():
            raise ValueError(f"entry uses generators outside {presentation.name}")
        claimed_type = tuple(int(u) for u in claimed_type)
        k = len(claimed_type) if variable_count is None else int(variable_count)
        if len(claimed_type) != k:
            raise ValueError("claimed type must list one weight per variable")
        if any(u <= 0 for u in claimed_type):
            raise ValueError("type weights are positive integers")
        if (vars[~zero] < 0).any() or (vars >= k).any():
            raise ValueError("variable index out of range")
        self.presentation = presentation
        self.signs = _frozen(signs)
        self.masks = _frozen(masks)
        self.vars = _frozen(vars)
        self.claimed_type = claimed_type

    # -- construction ------------------------------------------------------

    @classmethod
    def from_entries(
        cls,
        presentation: GroupPresentation,
        rows: Sequence[Sequence[EntryLike]],
        claimed_type: Sequence[int],
    ) -> "DesignMatrix":
        n = len(rows)
        signs = np.zeros((n, n), dtype=np.int8)
        masks = np.zeros((n, n), dtype=np.int32)
        vars = np.full((n, n), -1, dtype=np.int32)
        for r, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("design matrices are square")
            for c, e in enumerate(row):
                if e is None or (isinstance(e, int) and e == 0):
                    continue
                if len(e) == 2:
                    g, v = e
                    if g.presentation != presentation:
                        raise PresentationMismatch("entry from a different group")
                    signs[r, c], masks[r, c], vars[r, c] = g.sign, g.mask, v
                else:
                    signs[r, c], masks[r, c], vars[r, c] = e
        return cls(presentation, signs, masks, vars, claimed_type)

    # -- accessors ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self.signs.shape[0]

    @property
    def variable_count(self) -> int:
        return len(self.claimed_type)

    def entry(self, r: int, c: int) -> Optional[tuple[GroupElement, int]]:
        s = int(self.signs[r, c])
        if s == 0:
            return None
        return GroupElement(self.presentation, s, int(self.masks[r, c])), int(self.vars[r, c])

    def ring_entry(self, r: int, c: int) -> RingElement:
        e = self.entry(r, c)
        if e is None:
            return RingElement.zero(self.presentation)
        return RingElement.term(e[0], (e[1],))

    def rows_as_tuples(self) -> list[list[Optional[tuple[int, int, int]]]]:
        """Plain-python rows of ``(sign, mask, var)`` or None, for tight loops."""
        out = []
        for s_row, m_row, v_row in zip(self.signs.tolist(), self.masks.tolist(), self.vars.tolist()):
            out.append([(s, m, v) if s else None for s, m, v in zip(s_row, m_row, v_row)])
        return out

    def is_full(self) -> bool:
        return bool((self.signs != 0).all())

    def coefficient_matrix(self, v: int) -> np.ndarray:
        """Signed indicator of variable ``v`` (only meaningful over SR)."""
        return np.where(self.vars == v, self.signs, 0).astype(np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DesignMatrix):
            return NotImplemented
        return (
            self.presentation == other.presentation
            and self.claimed_type == other.claimed_type
            and np.array_equal(self.signs, other.signs)
            and np.array_equal(self.masks, other.masks)
            and np.array_equal(self.vars, other.vars)
        )

    __hash__ = None

    def __repr__(self) -> str:
        t = ",".join(map(str, self.claimed_type))
        return f"<DesignMatrix order={self.order} group={self.presentation.name} type=({t})>"

    def with_type(self, claimed_type: Sequence[int]) -> "DesignMatrix":
        return DesignMatrix(self.presentation, self.signs, self.masks, self.vars, claimed_type)

    def replace_entries(self, signs=None, masks=None, vars=None) -> "DesignMatrix":
        return DesignMatrix(
            self.presentation,
            self.signs if signs is None else signs,
            self.masks if masks is None else masks,
            self.vars if vars is None else vars,
            self.claimed_type,
        )


def conj_transpose(x):
    """``(X*)_{ab} = conj(X_{ba})`` for a DesignMatrix or a matrix of RingElements."""
    if isinstance(x, DesignMatrix):
        masks = x.masks.T
        signs = x.signs.T * inverse_signs(x.presentation, masks)
        return DesignMatrix(x.presentation, signs, masks, x.vars.T, x.claimed_type)
    n = len(x)
    return [[x[b][a].conjugate() for b in range(n)] for a in range(len(x[0]))]


def equate_variables(x: DesignMatrix, partition: Iterable[Iterable[int]]) -> DesignMatrix:
    """Merge the variables of each block into one; block ``i`` becomes variable ``i``."""
    blocks = [list(b) for b in partition]
    k = x.variable_count
    seen = sorted(v for b in blocks for v in b)
    if seen != list(range(k)) or any(not b for b in blocks):
        raise ValueError(f"partition must cover variables 0..{k - 1} exactly once")
    mapping = np.empty(k, dtype=np.int32)
    for i, b in enumerate(blocks):
        mapping[b] = i
    new_vars = np.where(x.signs != 0, mapping[np.maximum(x.vars, 0)], -1)
    new_type = [sum(x.claimed_type[v] for v in b) for b in blocks]
    return DesignMatrix(x.presentation, x.signs, x.masks, new_vars, new_type)


def apply_equivalence(
    x: DesignMatrix,
    row_perm: Optional[Sequence[int]] = None,
    col_perm: Optional[Sequence[int]] = None,
    row_scales: Optional[Sequence[GroupElement]] = None,
    col_scales: Optional[Sequence[GroupElement]] = None,
) -> DesignMatrix:
    """``Y[r, c] = row_scales[r] * X[row_perm[r], col_perm[c]] * col_scales[c]``."""
    n = x.order
    p = x.presentation
    rp = np.arange(n) if row_perm is None else np.asarray(row_perm)
    cp = np.arange(n) if col_perm is None else np.asarray(col_perm)
    if sorted(rp.tolist()) != list(range(n)) or sorted(cp.tolist()) != list(range(n)):
        raise ValueError("row/column permutations must be permutations of 0..n-1")
    signs = x.signs[np.ix_(rp, cp)].astype(np.int64)
    masks = x.masks[np.ix_(rp, cp)].astype(np.int64)
    vars = x.vars[np.ix_(rp, cp)]
    for scales, left in ((row_scales, True), (col_scales, False)):
        if scales is None:
            continue
        if len(scales) != n or any(g.presentation != p for g in scales):
            raise ValueError("need one scale per row/column from the design's group")
        g_sign = np.array([g.sign for g in scales], dtype=np.int64)
        g_mask = np.array([g.mask for g in scales], dtype=np.int64)
        if left:
            g_sign, g_mask = g_sign[:, None], g_mask[:, None]
            signs = signs * g_sign * product_signs(p, g_mask, masks)
        else:
            g_sign, g_mask = g_sign[None, :], g_mask[None, :]
            signs = signs * g_sign * product_signs(p, masks, g_mask)
        masks = masks ^ g_mask
    return DesignMatrix(p, signs, masks, vars, x.claimed_type)


def variable_counts_per_row(x: DesignMatrix) -> np.ndarray:
    """``counts[r, v]`` = number of entries of row ``r`` carrying variable ``v``."""
    k = x.variable_count
    out = np.zeros((x.order, k), dtype=np.int64)
    for v in range(k):
        out[:, v] = (x.vars == v).sum(axis=1)
    return out
