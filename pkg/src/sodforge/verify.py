"""Gram matrices and design verification.

Three routes:

* the ring route works over any signed group and returns exact
  :class:`RingElement` residuals; cost is ``O(n**3)`` python operations;
* the dense route handles designs over SR and SC exactly by splitting
  ``X = sum_v x_v C_v`` into integer coefficient matrices and checking
  ``C_v C_v* = u_v I`` and ``C_v C_w* + C_w C_v* = 0`` with BLAS products
  (all intermediate values are integers far below 2**53);
* the randomized route substitutes residues mod a prime and compares the
  numeric Gram with the expected scalar matrix.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .design import DesignMatrix, conj_transpose
from .ring import RingElement, diagonal_form
from .signed_group import GroupPresentation

log = logging.getLogger(__name__)

EXACT_ORDER_LIMIT = 512
MERSENNE_31 = (1 << 31) - 1


@dataclass
class Certificate:
    row: int
    col: int
    residual: RingElement
    side: str = "XX*"

    def __str__(self) -> str:
        return f"{self.side}[{self.row + 1},{self.col + 1}] - expected = {self.residual}"


@dataclass
class VerifyResult:
    ok: bool
    certificate: Optional[Certificate] = None
    method: str = "ring"
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _row_product(p: GroupPresentation, ra, rb) -> dict:
    """``sum_c ra[c] * conj(rb[c])`` as a raw term dict."""
    out: dict = {}
    ps, inv = p.product_sign, p.inverse_sign
    for ea, eb in zip(ra, rb):
        if ea is None or eb is None:
            continue
        sa, ma, va = ea
        sb, mb, vb = eb
        k = (ma ^ mb, (va, vb) if va <= vb else (vb, va))
        out[k] = out.get(k, 0) + sa * sb * inv(mb) * ps(ma, mb)
    return out


def gram(x: DesignMatrix) -> list[list[RingElement]]:
    """Exact ``X X*`` in the signed group ring."""
    p = x.presentation
    rows = x.rows_as_tuples()
    n = x.order
    out = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            g = RingElement(p, _row_product(p, rows[a], rows[b]))
            out[a][b] = g
            out[b][a] = g if a == b else g.conjugate()
    return out


def _ring_first_failure(x: DesignMatrix, side: str) -> Optional[Certificate]:
    p = x.presentation
    target = diagonal_form(p, x.claimed_type).terms
    rows = x.rows_as_tuples()
    n = x.order
    for a in range(n):
        for b in range(a, n):
            got = RingElement(p, _row_product(p, rows[a], rows[b]))
            if a == b:
                if got.terms != target:
                    return Certificate(a, b, got - RingElement(p, target), side)
            elif got:
                return Certificate(a, b, got, side)
    return None


def is_scalar_presentation(p: GroupPresentation) -> bool:
    """SR, or a single generator squaring to -1 (SC)."""
    return p.generator_count == 0 or (p.generator_count == 1 and p.square_signs == (-1,))


def _coefficient_matrices(x: DesignMatrix) -> list[np.ndarray]:
    complex_entries = x.presentation.generator_count == 1
    unit = np.where(x.masks == 1, 1j, 1.0) if complex_entries else 1.0
    vals = x.signs * unit
    dtype = np.complex128 if complex_entries else np.float64
    return [np.where(x.vars == v, vals, 0).astype(dtype) for v in range(x.variable_count)]


def _dense_first_failure(x: DesignMatrix, side: str) -> Optional[Certificate]:
    mats = _coefficient_matrices(x)
    n = x.order
    eye = np.eye(n)
    bad = None
    for v, (cv, u) in enumerate(zip(mats, x.claimed_type)):
        g = cv @ cv.conj().T
        diff = g - u * eye
        if np.any(diff):
            bad = np.argwhere(diff)[0]
            break
        for w in range(v + 1, len(mats)):
            cw = mats[w]
            g = cv @ cw.conj().T
            cross = g + g.conj().T
            if np.any(cross):
                bad = np.argwhere(cross)[0]
                break
        if bad is not None:
            break
    if bad is None:
        return None
    a, b = int(bad[0]), int(bad[1])
    # residual from the ring route at the located position
    p = x.presentation
    rows = x.rows_as_tuples()
    got = RingElement(p, _row_product(p, rows[a], rows[b]))
    expected = diagonal_form(p, x.claimed_type) if a == b else RingElement.zero(p)
    return Certificate(a, b, got - expected, side)


def verify_sod(
    x: DesignMatrix,
    both_sides: bool = False,
    method: str = "auto",
) -> VerifyResult:
    """Exact check of ``X X* = (sum_i u_i x_i**2) I``.

    ``method`` is ``"ring"``, ``"dense"`` (SR/SC only) or ``"auto"``, which
    picks the dense route whenever the group allows it.  With
    ``both_sides`` the check is repeated for ``X* X``.
    """
    if method == "auto":
        method = "dense" if is_scalar_presentation(x.presentation) else "ring"
    if method == "dense" and not is_scalar_presentation(x.presentation):
        raise ValueError("dense verification needs a design over SR or SC")
    check = _dense_first_failure if method == "dense" else _ring_first_failure
    cert = check(x, "XX*")
    if cert is None and both_sides:
        cert = check(conj_transpose(x), "X*X")
    return VerifyResult(cert is None, cert, method)


def gram_certificates(x: DesignMatrix) -> list[Certificate]:
    """Every nonzero residual of ``X X* - D`` (upper triangle)."""
    p = x.presentation
    target = diagonal_form(p, x.claimed_type)
    g = gram(x)
    out = []
    for a in range(x.order):
        for b in range(a, x.order):
            r = g[a][b] - target if a == b else g[a][b]
            if r:
                out.append(Certificate(a, b, r))
    return out


# -- randomized modular verification ----------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        y = pow(a, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def default_prime(complex_entries: bool) -> int:
    """Largest prime below 2**31 (``= 1 mod 4`` when a square root of -1 is needed)."""
    p = MERSENNE_31
    while not (is_prime(p) and (not complex_entries or p % 4 == 1)):
        p -= 2
    return p


def sqrt_minus_one(p: int) -> int:
    if p % 4 != 1:
        raise ValueError("-1 is a square only for primes = 1 mod 4")
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return pow(c, (p - 1) // 4, p)
    raise ValueError("no quadratic non-residue found")


def _mod_matmul_t(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b.T mod p`` for int64 inputs in ``[0, p)``, ``p < 2**31``.

    Operands are split into 16-bit halves so that every float64 product sum
    stays an exact integer (``n * 2**32 < 2**53``).
    """
    a_hi, a_lo = (a >> 16).astype(np.float64), (a & 0xFFFF).astype(np.float64)
    if b is a:
        b_hi, b_lo = a_hi, a_lo
    else:
        b_hi, b_lo = (b >> 16).astype(np.float64), (b & 0xFFFF).astype(np.float64)
    hh = (a_hi @ b_hi.T).astype(np.int64) % p
    mid = ((a_hi @ b_lo.T).astype(np.int64) + (a_lo @ b_hi.T).astype(np.int64)) % p
    ll = (a_lo @ b_lo.T).astype(np.int64) % p
    s32 = pow(2, 32, p)
    s16 = pow(2, 16, p)
    return (hh * s32 % p + mid * s16 % p + ll) % p


def verify_scalar_randomized(
    x: DesignMatrix,
    trials: int = 3,
    prime: Optional[int] = None,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> VerifyResult:
    """Schwartz-Zippel test of the Gram identity at random points mod ``prime``.

    Each trial falsely accepts a bad design with probability at most ``2/p``
    per nonzero residual polynomial.
    """
    p_group = x.presentation
    if not is_scalar_presentation(p_group):
        raise ValueError("randomized verification needs a design over SR or SC")
    complex_entries = p_group.generator_count == 1
    p = default_prime(complex_entries) if prime is None else int(prime)
    if not is_prime(p) or p >= 1 << 31:
        raise ValueError("prime must be a prime below 2**31")
    if x.order >= 1 << 21:
        raise ValueError(f"order {x.order} too large for exact float accumulation")
    iota = sqrt_minus_one(p) if complex_entries else 1
    rng = rng or random.Random(seed)
    nz = x.signs != 0
    var_idx = np.where(nz, x.vars, 0)
    is_imag = (x.masks == 1) & nz
    for t in range(trials):
        vals = np.array([rng.randrange(p) for _ in range(x.variable_count)], dtype=np.int64)
        base = np.where(nz, (x.signs.astype(np.int64) * vals[var_idx]) % p, 0)
        if complex_entries:
            m = np.where(is_imag, base * iota % p, base)
            m_bar = np.where(is_imag, base * (p - iota) % p, base)
        else:
            m = m_bar = base
        g = _mod_matmul_t(m, m_bar, p)
        expected = sum(u * int(v) * int(v) for u, v in zip(x.claimed_type, vals)) % p
        diag = np.diagonal(g).copy()
        g[np.diag_indices_from(g)] = 0
        if g.any() or (diag != expected).any():
            if g.any():
                a, b = (int(i) for i in np.argwhere(g)[0])
            else:
                a = int(np.argwhere(diag != expected)[0][0])
                b = a
            log.debug("randomized check failed at trial %d, entry (%d, %d)", t, a, b)
            return VerifyResult(
                False, None, "randomized", {"trial": t, "row": a, "col": b, "prime": p}
            )
    return VerifyResult(True, None, "randomized", {"trials": trials, "prime": p})


def verify(
    x: DesignMatrix,
    mode: str = "auto",
    trials: int = 3,
    prime: Optional[int] = None,
    seed: Optional[int] = None,
    both_sides: bool = False,
) -> VerifyResult:
    """Front door used by the CLI and pipelines.

    ``auto`` means exact up to :data:`EXACT_ORDER_LIMIT` and randomized beyond
    (randomized is only available over SR/SC).
    """
    if mode == "auto":
        mode = "exact" if x.order <= EXACT_ORDER_LIMIT or not is_scalar_presentation(x.presentation) else "randomized"
    if mode == "exact":
        return verify_sod(x, both_sides=both_sides)
    if mode == "randomized":
        res = verify_scalar_randomized(x, trials=trials, prime=prime, seed=seed)
        if res.ok and both_sides:
            res = verify_scalar_randomized(conj_transpose(x), trials=trials, prime=prime, seed=seed)
        return res
    raise ValueError(f"unknown verification mode {mode!r}")
