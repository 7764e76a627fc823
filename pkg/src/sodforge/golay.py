"""Sequences over {0, +-1, +-i}, autocorrelation, Golay pairs and their search."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .ring import RingElement
from .signed_group import SC

# An entry is None (zero) or (k, var): the unit i**k times variable ``var``
# (``var`` is None for plain numbers).
Entry = Optional[tuple[int, Optional[int]]]

_UNIT_TOKENS = {"1": 0, "+1": 0, "i": 1, "+i": 1, "-1": 2, "-": 2, "-i": 3, "ī": 3}
_UNIT_NAMES = {0: "1", 1: "i", 2: "-1", 3: "-i"}
_GAUSS = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}


class BudgetExceeded(RuntimeError):
    pass


def search_budget(default: int) -> int:
    env = os.environ.get("SODFORGE_BUDGET")
    return int(env) if env else default


@dataclass(frozen=True)
class Sequence:
    entries: tuple[Entry, ...]

    def __post_init__(self):
        ents = tuple(None if e is None else (int(e[0]) % 4, e[1]) for e in self.entries)
        object.__setattr__(self, "entries", ents)
        if not ents:
            raise ValueError("sequences have length at least 1")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @classmethod
    def from_exponents(cls, exps: Iterable[int], var: Optional[int] = None) -> "Sequence":
        return cls(tuple((k, var) for k in exps))

    @classmethod
    def parse(cls, text: str) -> "Sequence":
        """Comma-separated tokens from ``1, -1, i, -i, 0`` (``-`` and ``ī`` accepted too)."""
        toks = [t.strip() for t in text.split(",") if t.strip()]
        ents = []
        for t in toks:
            if t == "0":
                ents.append(None)
            elif t in _UNIT_TOKENS:
                ents.append((_UNIT_TOKENS[t], None))
            else:
                raise ValueError(f"bad sequence token {t!r}")
        return cls(tuple(ents))

    def format(self) -> str:
        if not self.is_variable_free():
            raise ValueError("only variable-free sequences have a text form")
        return ",".join("0" if e is None else _UNIT_NAMES[e[0]] for e in self.entries)

    def __str__(self) -> str:
        return self.format() if self.is_variable_free() else repr(self)

    def is_variable_free(self) -> bool:
        return all(e is None or e[1] is None for e in self.entries)

    def is_real(self) -> bool:
        return all(e is not None and e[0] in (0, 2) for e in self.entries)

    def is_unimodular(self) -> bool:
        return all(e is not None for e in self.entries)

    def scaled(self, k: int) -> "Sequence":
        """Multiply every entry by ``i**k``."""
        return Sequence(tuple(None if e is None else (e[0] + k, e[1]) for e in self.entries))

    def __neg__(self) -> "Sequence":
        return self.scaled(2)

    def with_variable(self, var: int) -> "Sequence":
        return Sequence(tuple(None if e is None else (e[0], var) for e in self.entries))

    def __add__(self, other: "Sequence") -> "Sequence":
        return Sequence(self.entries + other.entries)


def reverse_conjugate(a: Sequence) -> Sequence:
    return Sequence(tuple(None if e is None else (-e[0], e[1]) for e in reversed(a.entries)))


def _ring_term(k: int, vars: tuple) -> RingElement:
    sign = -1 if k in (2, 3) else 1
    return RingElement(SC, {(k & 1, tuple(sorted(vars))): sign})


def npaf(a: Sequence, j: int):
    """Non-periodic autocorrelation ``sum_i a[i+j] * conj(a[i])``.

    Gaussian integer ``(re, im)`` for variable-free sequences, a
    :class:`RingElement` over SC otherwise.
    """
    n = len(a)
    if j < 0:
        raise ValueError("shift must be non-negative")
    if a.is_variable_free():
        re = im = 0
        for i in range(n - j):
            x, y = a.entries[i + j], a.entries[i]
            if x is None or y is None:
                continue
            dr, di = _GAUSS[(x[0] - y[0]) % 4]
            re += dr
            im += di
        return (re, im)
    out = RingElement.zero(SC)
    for i in range(n - j):
        x, y = a.entries[i + j], a.entries[i]
        if x is None or y is None:
            continue
        vs = tuple(v for v in (x[1], y[1]) if v is not None)
        out = out + _ring_term((x[0] - y[0]) % 4, vs)
    return out


def is_complementary(seqs: Iterable[Sequence]) -> bool:
    """Zero summed autocorrelation at every positive shift."""
    seqs = list(seqs)
    if not seqs:
        return True
    longest = max(len(s) for s in seqs)
    for j in range(1, longest):
        vals = [npaf(s, j) for s in seqs]
        if all(isinstance(v, tuple) for v in vals):
            if sum(v[0] for v in vals) or sum(v[1] for v in vals):
                return False
        else:
            total = RingElement.zero(SC)
            for v in vals:
                total = total + (v if isinstance(v, RingElement) else _gauss_to_ring(v))
            if total:
                return False
    return True


def _gauss_to_ring(z: tuple[int, int]) -> RingElement:
    return RingElement(SC, {(0, ()): z[0], (1, ()): z[1]})


@dataclass(frozen=True)
class GolayPair:
    a: Sequence
    b: Sequence
    alphabet: str  # "real" or "complex"

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("Golay pair sequences must have equal length")
        if self.alphabet not in ("real", "complex"):
            raise ValueError("alphabet is 'real' or 'complex'")
        if not (self.a.is_unimodular() and self.b.is_unimodular()):
            raise ValueError("Golay sequences have no zero entries")
        if self.alphabet == "real" and not (self.a.is_real() and self.b.is_real()):
            raise ValueError("real Golay pairs have +-1 entries")
        if not is_complementary([self.a, self.b]):
            raise ValueError("sequences are not complementary")

    def __len__(self) -> int:
        return len(self.a)


def golay_double(pair: GolayPair) -> GolayPair:
    """``(A; B) -> (A|B; A|-B)``."""
    if not is_complementary([pair.a, pair.b]):
        raise ValueError("input pair is not complementary")
    return GolayPair(pair.a + pair.b, pair.a + (-pair.b), pair.alphabet)


def search_golay(
    n: int,
    alphabet: str = "real",
    first_only: bool = False,
    budget: Optional[int] = None,
    max_length: Optional[int] = None,
) -> list[GolayPair]:
    """Every pair with ``A[0] = B[0] = 1``, by filling both ends inward.

    After placing positions ``0..d`` and ``n-1-d..n-1`` of both sequences, the
    autocorrelation at shift ``n-1-d`` is fully determined and must vanish.
    Multiplying a sequence by a unit keeps complementarity, so the
    normalization loses nothing.  The exploration order is fixed, so
    results and node counts are reproducible.
    """
    if alphabet not in ("real", "complex"):
        raise ValueError("alphabet is 'real' or 'complex'")
    limit = max_length if max_length is not None else (14 if alphabet == "real" else 8)
    if n < 1 or n > limit:
        raise ValueError(f"length {n} outside the search range 1..{limit}")
    budget = search_budget(50_000_000) if budget is None else budget
    units = (0, 2) if alphabet == "real" else (0, 1, 2, 3)
    # unit products: re/im of i**(p - q)
    re_tab = [[_GAUSS[(p - q) % 4][0] for q in range(4)] for p in range(4)]
    im_tab = [[_GAUSS[(p - q) % 4][1] for q in range(4)] for p in range(4)]
    a = [0] * n
    b = [0] * n
    out: list[GolayPair] = []
    nodes = 0

    def shift_ok(j: int) -> bool:
        re = im = 0
        for i in range(n - j):
            re += re_tab[a[i + j]][a[i]] + re_tab[b[i + j]][b[i]]
            im += im_tab[a[i + j]][a[i]] + im_tab[b[i + j]][b[i]]
        return re == 0 and im == 0

    last = (n - 1) // 2

    def rec(d: int) -> bool:
        nonlocal nodes
        lo, hi = d, n - 1 - d
        lo_choices = (0,) if d == 0 else units
        for al in lo_choices:
            for bl in lo_choices:
                hi_choices = units if hi != lo else (None,)
                for ah in hi_choices:
                    for bh in hi_choices:
                        nodes += 1
                        if nodes > budget:
                            raise BudgetExceeded(f"Golay search over length {n} exceeded {budget} nodes")
                        a[lo], b[lo] = al, bl
                        if ah is not None:
                            a[hi], b[hi] = ah, bh
                        if d == last:
                            if all(shift_ok(j) for j in range(1, n - d)):
                                out.append(
                                    GolayPair(Sequence.from_exponents(a), Sequence.from_exponents(b), alphabet)
                                )
                                if first_only:
                                    return True
                            continue
                        if not shift_ok(n - 1 - d):
                            continue
                        if rec(d + 1):
                            return True
        return False

    rec(0)
    search_golay.last_nodes = nodes
    return out


search_golay.last_nodes = 0


# -- seed catalog ------------------------------------------------------------

def _pair(a: str, b: str, alphabet: str) -> GolayPair:
    return GolayPair(Sequence.parse(a), Sequence.parse(b), alphabet)


# worked example pairs (length-8 real and length-11 complex)
EXAMPLE_A8 = "1,1,1,-1,1,1,-1,1"
EXAMPLE_B8 = "1,1,1,-1,-1,-1,1,-1"
EXAMPLE_C11 = "1,i,-1,1,-1,i,-i,-1,i,i,1"
EXAMPLE_D11 = "1,1,-i,-i,-i,1,1,i,-1,1,-1"

_CATALOG_TEXT = {
    ("real", 2): ("1,1", "1,-1"),
    ("real", 8): (EXAMPLE_A8, EXAMPLE_B8),
    ("real", 10): ("1,1,-1,1,-1,1,-1,-1,1,1", "1,1,-1,1,1,1,1,1,-1,-1"),
    ("real", 26): (
        "1,1,1,1,-1,1,1,-1,-1,1,-1,1,-1,1,-1,-1,1,-1,1,1,1,-1,-1,1,1,1",
        "1,1,1,1,-1,1,1,-1,-1,1,-1,1,1,1,1,1,-1,1,-1,-1,-1,1,1,-1,-1,-1",
    ),
    ("complex", 3): ("1,1,-1", "1,i,1"),
    ("complex", 5): ("1,1,1,-i,i", "1,i,-1,1,-i"),
    ("complex", 11): (EXAMPLE_C11, EXAMPLE_D11),
    ("complex", 13): (
        "1,1,1,i,-1,1,1,-i,1,-1,1,-i,i",
        "1,i,-1,-1,-1,i,-1,1,1,-i,-1,1,-i",
    ),
}


def catalog() -> dict[tuple[str, int], GolayPair]:
    """Seed pairs, each checked for complementarity on load."""
    return {key: _pair(a, b, key[0]) for key, (a, b) in _CATALOG_TEXT.items()}


def catalog_pair(length: int, alphabet: str = "real") -> GolayPair:
    """A catalog pair, reached by doubling a smaller seed when needed.

    Real pairs also serve as complex ones.
    """
    cat = catalog()
    alphabets = ("real",) if alphabet == "real" else ("complex", "real")
    for alpha in alphabets:
        if (alpha, length) in cat:
            p = cat[(alpha, length)]
            return GolayPair(p.a, p.b, alphabet)
    if length % 2 == 0 and length > 1:
        return golay_double(catalog_pair(length // 2, alphabet))
    if length == 1:
        one = Sequence.parse("1")
        return GolayPair(one, one, alphabet)
    raise KeyError(f"no {alphabet} Golay pair of length {length} in the catalog")


def is_admissible_cgn(a: int, b: int, c: int, d: int, e: int, u: int) -> bool:
    """Exponent condition under which ``2**(a+u) 3**b 5**c 11**d 13**e`` is a complex Golay number."""
    if min(a, b, c, d, e, u) < 0:
        raise ValueError("exponents are non-negative")
    return b + c + d + e <= a + 2 * u + 1 and u <= c + e


def cgn_value(a: int, b: int, c: int, d: int, e: int, u: int) -> int:
    return 2 ** (a + u) * 3**b * 5**c * 11**d * 13**e
