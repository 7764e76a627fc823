"""Complex orthogonal designs from Golay pairs, Hermitian circulants and a full OD.

All circulant arithmetic happens on first rows.  The circulant with first
row ``(a_0, .., a_{m-1})`` has ``M[r, c] = a[(c - r) % m]``; the product of two
circulants is the circulant of the cyclic convolution of their first rows.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence as Seq

import numpy as np

from .constructions import sod_power2, sylvester_hadamard
from .design import DesignMatrix
from .golay import GolayPair, Sequence, is_complementary, reverse_conjugate
from .remrep import canonical_remrep_S, expand_sod
from .ring import RingElement, diagonal_form
from .signed_group import SC, SR

log = logging.getLogger(__name__)

Y, Z = 0, 1  # variable indices of y and z; x_j is variable j + 1
MAX_PIPELINE_N = 4
MATERIALIZE_LIMIT = 4096

_I = SC.generator(0)


def x_var(j: int) -> int:
    """Variable index of ``x_j`` (``j >= 1``)."""
    return j + 1


def variable_names(t: int) -> list[str]:
    return ["y", "z"] + [f"x{j}" for j in range(1, t + 1)]


@dataclass(frozen=True)
class CirculantRow:
    entries: tuple[RingElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("empty circulant")
        if any(e.presentation != SC for e in self.entries):
            raise ValueError("circulant entries live in the complex group ring")

    @classmethod
    def from_sequence(cls, s: Sequence) -> "CirculantRow":
        out = []
        for e in s.entries:
            if e is None:
                out.append(RingElement.zero(SC))
            else:
                k, v = e
                mono = () if v is None else (v,)
                out.append(RingElement(SC, {(k & 1, mono): -1 if k >= 2 else 1}))
        return cls(tuple(out))

    @classmethod
    def scalar(cls, m: int, value: RingElement) -> "CirculantRow":
        return cls((value,) + tuple(RingElement.zero(SC) for _ in range(m - 1)))

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "CirculantRow") -> "CirculantRow":
        _same_length(self, other)
        return CirculantRow(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "CirculantRow") -> "CirculantRow":
        _same_length(self, other)
        return CirculantRow(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "CirculantRow":
        return CirculantRow(tuple(-a for a in self.entries))

    def __mul__(self, other: "CirculantRow") -> "CirculantRow":
        return circ_multiply(self, other)

    def times_i(self) -> "CirculantRow":
        return CirculantRow(tuple(a.left_mul(_I) for a in self.entries))

    @property
    def star(self) -> "CirculantRow":
        """First row of the conjugate transpose."""
        m = len(self)
        return CirculantRow(tuple(self.entries[(m - k) % m].conjugate() for k in range(m)))

    def is_hermitian(self) -> bool:
        return self == self.star

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scalar_value(self) -> Optional[RingElement]:
        """The diagonal value when the circulant is a multiple of the identity."""
        if any(self.entries[1:]):
            return None
        return self.entries[0]

    def halve(self) -> "CirculantRow":
        out = []
        for e in self.entries:
            if any(c % 2 for c in e.terms.values()):
                raise ValueError(f"odd coefficient in {e}; input array is malformed")
            out.append(RingElement(SC, {k: c // 2 for k, c in e.terms.items()}))
        return CirculantRow(tuple(out))

    def to_dense(self) -> list[list[RingElement]]:
        m = len(self)
        return [[self.entries[(c - r) % m] for c in range(m)] for r in range(m)]

    def format(self, names: Optional[Seq[str]] = None) -> str:
        return ",".join(format_unit_term(e, names) for e in self.entries)


def _same_length(a: CirculantRow, b: CirculantRow) -> None:
    if len(a) != len(b):
        raise ValueError("circulants of different orders")


def circ_multiply(a: CirculantRow, b: CirculantRow) -> CirculantRow:
    """Cyclic convolution ``c_k = sum_{i+j = k mod m} a_i b_j``."""
    _same_length(a, b)
    m = len(a)
    acc = [RingElement.zero(SC) for _ in range(m)]
    for i, ai in enumerate(a.entries):
        if not ai:
            continue
        for j, bj in enumerate(b.entries):
            if bj:
                acc[(i + j) % m] = acc[(i + j) % m] + ai * bj
    return CirculantRow(tuple(acc))


def single_term(e: RingElement) -> Optional[tuple[int, int, int]]:
    """``(sign, mask, var)`` for ``+-x``/``+-ix`` entries, None for zero."""
    if not e:
        return None
    if len(e.terms) != 1:
        raise ValueError(f"entry {e} is not a single unit times a variable")
    ((mask, mono), c), = e.terms.items()
    if c not in (1, -1) or len(mono) != 1:
        raise ValueError(f"entry {e} is not a single unit times a variable")
    return c, mask, mono[0]


def format_unit_term(e: RingElement, names: Optional[Seq[str]] = None) -> str:
    """``0``, ``y``, ``-x``, ``iz``, ``-ix``..."""
    t = single_term(e)
    if t is None:
        return "0"
    sign, mask, v = t
    name = names[v] if names else f"x{v + 1}"
    return ("-" if sign < 0 else "") + ("i" if mask else "") + name


# -- the symbolic arrays ------------------------------------------------------


def build_EF(
    golay: GolayPair,
    complex_pairs: Seq[GolayPair],
    n: int,
) -> tuple[list[Sequence], list[Sequence]]:
    """Segments of E and F: ``(y, x_1 C1, .., zA, .., x_1 C1_R)`` and likewise with B, D.

    Each segment is a :class:`Sequence` carrying its variable.
    """
    if n <= 2:
        raise ValueError("n must be greater than 2")
    t = (1 << (n - 3)) - 1
    if len(complex_pairs) != t:
        raise ValueError(f"need exactly {t} complex Golay pairs for n={n}")
    if not is_complementary([golay.a, golay.b]) or not golay.a.is_real() or not golay.b.is_real():
        raise ValueError("(A; B) must be a real Golay pair")
    for cp in complex_pairs:
        if not is_complementary([cp.a, cp.b]):
            raise ValueError("complex pair is not complementary")
    y = Sequence(((0, Y),))
    e_mid = [cp.a.with_variable(x_var(j)) for j, cp in enumerate(complex_pairs, 1)]
    f_mid = [cp.b.with_variable(x_var(j)) for j, cp in enumerate(complex_pairs, 1)]
    e = [y] + e_mid + [golay.a.with_variable(Z)] + [reverse_conjugate(s) for s in reversed(e_mid)]
    f = [y] + f_mid + [golay.b.with_variable(Z)] + [reverse_conjugate(s) for s in reversed(f_mid)]
    return e, f


def expanded_length(segments: Seq[Sequence]) -> int:
    return sum(len(s) for s in segments)


def expand_rows(
    e: Seq[Sequence], f: Seq[Sequence], h: Optional[np.ndarray] = None
) -> tuple[list[CirculantRow], list[CirculantRow]]:
    """Row ``j`` multiplies segment ``s`` by ``H[j, s]`` and concatenates."""
    if len(e) != len(f):
        raise ValueError("E and F have different segment counts")
    if h is None:
        h = sylvester_hadamard(len(e).bit_length() - 1)
    h = np.asarray(h)
    if h.shape != (len(e), len(e)):
        raise ValueError(f"H must have order {len(e)}")

    def rows(segs):
        out = []
        for hrow in h:
            ents = []
            for s, sign in zip(segs, hrow):
                ents.extend((s if sign > 0 else -s).entries)
            out.append(CirculantRow.from_sequence(Sequence(tuple(ents))))
        return out

    return rows(e), rows(f)


def hermitian_split(g: CirculantRow) -> tuple[CirculantRow, CirculantRow]:
    """``G' = (G + G*)/2`` and ``G'' = i(G - G*)/2``, so that ``G = G' - i G''``."""
    gs = g.star
    g1 = (g + gs).halve()
    g2 = (g - gs).times_i().halve()
    return g1, g2


def omega_from_rows(es: Seq[CirculantRow], fs: Seq[CirculantRow]) -> list[CirculantRow]:
    out = []
    for g in list(es) + list(fs):
        g1, g2 = hermitian_split(g)
        out.extend([g1 - g2, g1 + g2])
    return out


def sum_of_products(pairs) -> CirculantRow:
    total = None
    for a, b in pairs:
        p = circ_multiply(a, b)
        total = p if total is None else total + p
    return total


def sum_of_squares(ws: Seq[CirculantRow]) -> CirculantRow:
    return sum_of_products((w, w) for w in ws)


def expected_form(scale: int, r: int, ks: Seq[int]) -> RingElement:
    """``scale * (y**2 + r z**2 + 2 sum_j k_j x_j**2)``."""
    return diagonal_form(SC, [scale, scale * r] + [2 * scale * k for k in ks])


def verify_EF_identity(
    es: Seq[CirculantRow], fs: Seq[CirculantRow], r: int, ks: Seq[int]
) -> tuple[bool, CirculantRow]:
    """Check ``sum_j (E_j E_j* + F_j F_j*) = 2**(n-1) (y**2 + r z**2 + 2 sum k_j x_j**2) I``.

    ``2**(n-1)`` equals twice the number of rows in ``es``.
    """
    total = sum_of_products([(g, g.star) for g in list(es) + list(fs)])
    want = expected_form(2 * len(es), r, ks)
    return total.scalar_value() == want, total


@dataclass
class OmegaSet:
    n: int
    r: int
    ks: tuple[int, ...]
    es: list[CirculantRow]
    fs: list[CirculantRow]
    members: list[CirculantRow]

    @property
    def m(self) -> int:
        return len(self.members[0])

    def expected(self) -> RingElement:
        return expected_form(1 << self.n, self.r, self.ks)


def omega_set(
    n: int,
    golay: GolayPair,
    complex_pairs: Seq[GolayPair],
    h: Optional[np.ndarray] = None,
) -> OmegaSet:
    """The ``2**n`` Hermitian circulants ``E'_j -+ E''_j``, ``F'_j -+ F''_j``, checked.

    Raises ``ValueError`` when a member is not Hermitian or the
    sum-of-squares identity fails.
    """
    e, f = build_EF(golay, complex_pairs, n)
    es, fs = expand_rows(e, f, h)
    members = omega_from_rows(es, fs)
    om = OmegaSet(n, len(golay), tuple(len(cp) for cp in complex_pairs), es, fs, members)
    for w in members:
        if not w.is_hermitian():
            raise ValueError("non-Hermitian member in the omega set")
    total = sum_of_squares(members).scalar_value()
    if total != om.expected():
        raise ValueError(f"sum of squares is {total}, expected {om.expected()}")
    return om


# -- plugging circulants into an OD -----------------------------------------


def _circulant_arrays(w: CirculantRow) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = len(w)
    terms = [single_term(e) for e in w.entries]
    s = np.array([t[0] if t else 0 for t in terms], dtype=np.int8)
    k = np.array([t[1] if t else 0 for t in terms], dtype=np.int32)
    v = np.array([t[2] if t else -1 for t in terms], dtype=np.int32)
    idx = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m
    return s[idx], k[idx], v[idx]


def plug_into_od(x: DesignMatrix, omega: Seq[CirculantRow]) -> DesignMatrix:
    """Replace variable ``i`` of an equal-type OD by the circulant ``omega[i]``.

    Needs Hermitian members of one order whose squares sum to a scalar
    quadratic form ``c``; the result is a COD of type ``u * c``.
    """
    if x.presentation != SR:
        raise ValueError("X must be an OD over SR")
    if len(set(x.claimed_type)) != 1:
        raise ValueError("X must have all type entries equal")
    if len(omega) != x.variable_count:
        raise ValueError(f"need {x.variable_count} circulants, got {len(omega)}")
    m = len(omega[0])
    if any(len(w) != m for w in omega):
        raise ValueError("circulants of different orders")
    for w in omega:
        if not w.is_hermitian():
            raise ValueError("non-Hermitian circulant")
    c = sum_of_squares(omega).scalar_value()
    if c is None or not c.is_central_quadratic_form():
        raise ValueError("squares of the circulants do not sum to a scalar form")
    u = x.claimed_type[0]
    coef = {mono[0]: val for (mask, mono), val in c.terms.items()}
    nvars = max(coef) + 1
    if any(coef.get(v, 0) <= 0 for v in range(nvars)):
        raise ValueError("every circulant variable needs a positive weight")
    arrays = [_circulant_arrays(w) for w in omega]
    ws = np.stack([a[0] for a in arrays])
    wk = np.stack([a[1] for a in arrays])
    wv = np.stack([a[2] for a in arrays])
    n = x.order
    sel = np.maximum(x.vars, 0)

    def assemble(arr, fill):
        blocks = np.where((x.signs != 0)[:, :, None, None], arr[sel], fill)
        return blocks.transpose(0, 2, 1, 3).reshape(n * m, n * m)

    signs = assemble(ws * 1, 0) * np.repeat(np.repeat(x.signs, m, axis=0), m, axis=1)
    masks = assemble(wk, 0)
    vars = assemble(wv, -1)
    return DesignMatrix(SC, signs, masks, vars, [u * coef[v] for v in range(nvars)])


# -- the whole pipeline ------------------------------------------------------


@dataclass
class PipelineResult:
    n: int
    q: int
    m: int
    omega: OmegaSet
    od: Optional[DesignMatrix]
    cod: Optional[DesignMatrix]
    claimed_type: tuple[int, ...]
    checks: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return (1 << self.q) * self.m


def pipeline_type(n: int, r: int, ks: Seq[int]) -> tuple[int, ...]:
    q = (1 << (n - 1)) + n - 1
    return (2**q, 2**q * r) + tuple(2 ** (q + 1) * k for k in ks)


def theorem_s2_pipeline(
    n: int,
    golay: GolayPair,
    complex_pairs: Seq[GolayPair],
    materialize: Optional[bool] = None,
    h: Optional[np.ndarray] = None,
) -> PipelineResult:
    """Golay pairs -> Hermitian circulants -> OD(2**q) -> COD(2**q m).

    ``materialize`` defaults to building the OD and the COD only when the COD
    order is at most :data:`MATERIALIZE_LIMIT`; otherwise the verified
    components stand in for the matrix.
    """
    if n > MAX_PIPELINE_N:
        raise ValueError(f"n={n} exceeds the materializable range (n <= {MAX_PIPELINE_N})")
    q = (1 << (n - 1)) + n - 1
    om = omega_set(n, golay, complex_pairs, h)
    ok, _ = verify_EF_identity(om.es, om.fs, om.r, om.ks)
    if not ok:
        raise ValueError("E/F identity failed")
    m = om.m
    claimed = pipeline_type(n, om.r, om.ks)
    res = PipelineResult(n, q, m, om, None, None, claimed, {"ef_identity": True, "omega_sum_of_squares": True})
    if materialize is None:
        materialize = (1 << q) * m <= MATERIALIZE_LIMIT
    if (1 << q) * m != sum(claimed):
        raise AssertionError("type does not fill the order")
    if materialize:
        od = expand_sod(sod_power2(n), canonical_remrep_S(n))
        res.od = od
        cod = plug_into_od(od, om.members)
        if cod.claimed_type != claimed:
            raise AssertionError(f"COD type {cod.claimed_type} differs from {claimed}")
        res.cod = cod
    return res
