"""Exhaustive searches for small SWs, SHs and SODs over concrete signed groups.

Normal form (reachable from any solution by row/column permutations and
group scalings, which preserve orthogonality):

* row 0 is ``1*x_0 .. 1*x_0, 1*x_1 .., 0 .. 0`` (all-ones then zeros for SWs);
* every later row has its first nonzero group element equal to 1;
* rows 1..n-1 appear in increasing order of their index in the candidate list.

Only row orthogonality is used for pruning; the row multiplicities come
straight from the diagonal of ``X X*``.
"""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .design import DesignMatrix
from .golay import BudgetExceeded, search_budget
from .signed_group import SC, SQ, SR, GroupPresentation, enumerate_elements
from .verify import _row_product, verify_sod

NORMALIZATION = (
    "row 0 fixed to identity entries sorted by variable (column permutation and right scaling); "
    "first nonzero entry of each later row is 1 (left scaling); "
    "rows 1..n-1 strictly increasing in candidate order (row permutation)"
)
SUPPORTED_GROUPS = {"SR": SR, "SC": SC, "SQ": SQ}
DEFAULT_BUDGET = 200_000_000

Row = tuple  # tuple of None | (sign, mask, var)


@dataclass
class SearchReport:
    problem: str
    group: str
    result: str  # "none" or "found"
    nodes: int
    elapsed: float
    normalization: str = NORMALIZATION
    witness: Optional[DesignMatrix] = None
    candidates: int = 0
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.result == "found"

    def to_dict(self) -> dict:
        from .formats import design_to_rows

        d = {
            "problem": self.problem,
            "group": self.group,
            "result": self.result,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
            "normalization": self.normalization,
            "candidates": self.candidates,
            "note": self.note,
        }
        if self.witness is not None:
            d["witness"] = design_to_rows(self.witness)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _group(group) -> GroupPresentation:
    if isinstance(group, GroupPresentation):
        return group
    try:
        return SUPPORTED_GROUPS[group]
    except KeyError:
        raise ValueError(f"searches support SR, SC and SQ, not {group!r}") from None


def _units(p: GroupPresentation) -> list[tuple[int, int]]:
    return [(g.sign, g.mask) for g in enumerate_elements(p)]


def _layouts(n: int, weights: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct arrangements of variable labels (-1 = zero) in a row, sorted."""
    base = []
    for v, u in enumerate(weights):
        base += [v] * u
    base += [-1] * (n - len(base))
    return sorted(set(itertools.permutations(base)))


def candidate_rows(p: GroupPresentation, n: int, weights: Sequence[int]) -> list[Row]:
    """Rows with ``weights[v]`` entries of variable ``v`` whose first nonzero entry is 1."""
    units = _units(p)
    out = []
    for layout in _layouts(n, weights):
        pos = [c for c, v in enumerate(layout) if v >= 0]
        for combo in itertools.product(units, repeat=len(pos) - 1):
            row = [None] * n
            row[pos[0]] = (1, 0, layout[pos[0]])
            for c, (s, m) in zip(pos[1:], combo):
                row[c] = (s, m, layout[c])
            out.append(tuple(row))
    return out


def _orthogonal(p: GroupPresentation, a: Row, b: Row) -> bool:
    return not any(_row_product(p, a, b).values())


def _dfs(p, chosen: list, remaining: list, need: int, counter: list, budget: int):
    if need == 0:
        return list(chosen)
    for i, cand in enumerate(remaining):
        if len(remaining) - i < need:
            break
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
        rest = [d for d in remaining[i + 1:] if _orthogonal(p, cand, d)]
        if len(rest) < need - 1:
            continue
        chosen.append(cand)
        found = _dfs(p, chosen, rest, need - 1, counter, budget)
        if found is not None:
            return found
        chosen.pop()
    return None


def _partition_worker(args):
    p, first, rest, need, budget = args
    counter = [1]
    rest = [d for d in rest if _orthogonal(p, first, d)]
    found = None
    if len(rest) >= need - 1:
        found = _dfs(p, [first], rest, need - 1, counter, budget)
    return found, counter[0]


def _search(
    p: GroupPresentation,
    n: int,
    weights: Sequence[int],
    budget: Optional[int],
    jobs: int,
) -> tuple[Optional[list[Row]], int, int]:
    budget = search_budget(DEFAULT_BUDGET) if budget is None else budget
    row0 = [None] * n
    c = 0
    for v, u in enumerate(weights):
        for _ in range(u):
            row0[c] = (1, 0, v)
            c += 1
    row0 = tuple(row0)
    cands = candidate_rows(p, n, weights)
    pool = [r for r in cands if _orthogonal(p, row0, r)]
    if n == 1:
        return [row0], 0, len(cands)
    if jobs <= 1:
        counter = [0]
        found = _dfs(p, [row0], pool, n - 1, counter, budget)
        return found, counter[0], len(cands)
    # one task per choice of row 1; node totals match the sequential order
    tasks = [(p, cand, pool[i + 1:], n - 1, budget) for i, cand in enumerate(pool) if len(pool) - i >= n - 1]
    nodes = 0
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for found, k in ex.map(_partition_worker, tasks):
            nodes += k
            if found is not None:
                return [row0] + found, nodes, len(cands)
    return None, nodes, len(cands)


def _report(problem, p, n, weights, found, nodes, ncand, t0, claimed_type, note="") -> SearchReport:
    witness = None
    if found is not None:
        witness = DesignMatrix.from_entries(p, [list(r) for r in found], claimed_type)
        if not verify_sod(witness).ok:  # pragma: no cover - search bug guard
            raise AssertionError("search produced a non-orthogonal witness")
    return SearchReport(
        problem,
        p.name,
        "found" if found is not None else "none",
        nodes,
        time.perf_counter() - t0,
        witness=witness,
        candidates=ncand,
        note=note,
    )


def _scope_note(p: GroupPresentation) -> str:
    return f"exhaustive over {p.name} only; other signed groups are not covered"


def search_sw(
    n: int,
    w: int,
    group="SR",
    budget: Optional[int] = None,
    jobs: int = 1,
    allow_quaternion: bool = False,
) -> SearchReport:
    """Signed group weighing matrix SW(n, w) over ``group`` or proof of absence."""
    p = _group(group)
    if n > 8 or n < 1 or not 0 < w <= n:
        raise ValueError("need 1 <= w <= n <= 8")
    if p == SQ and not allow_quaternion and budget is None:
        raise BudgetExceeded("SQ searches need allow_quaternion=True or an explicit budget")
    t0 = time.perf_counter()
    found, nodes, ncand = _search(p, n, [w], budget, jobs)
    return _report(f"SW({n},{w})", p, n, [w], found, nodes, ncand, t0, [w], _scope_note(p))


def search_full_sh(n: int, group="SR", budget: Optional[int] = None, jobs: int = 1, **kw) -> SearchReport:
    """Signed group Hadamard matrix SH(n) (a weighing matrix of full weight)."""
    if n > 6 and _group(group) != SR:
        raise ValueError("SH searches over SC/SQ are limited to n <= 6")
    rep = search_sw(n, n, group, budget, jobs, **kw)
    rep.problem = f"SH({n})"
    return rep


def search_sod(
    n: int,
    weights: Sequence[int],
    group="SR",
    budget: Optional[int] = None,
    jobs: int = 1,
) -> SearchReport:
    """SOD(n; weights) over ``group`` or proof of absence."""
    p = _group(group)
    weights = [int(u) for u in weights]
    if p == SQ and n > 4 and budget is None:
        raise BudgetExceeded("SQ searches beyond order 4 need an explicit budget")
    if n > 6 or n < 1:
        raise ValueError("SOD searches are limited to n <= 6")
    if sum(weights) > n or any(u <= 0 for u in weights):
        raise ValueError("type weights must be positive with sum at most n")
    t0 = time.perf_counter()
    found, nodes, ncand = _search(p, n, weights, budget, jobs)
    label = ",".join(map(str, weights))
    return _report(f"SOD({n};{label})", p, n, weights, found, nodes, ncand, t0, weights, _scope_note(p))
