"""Design files.

Text form::

    order 4; vars 3; group SQ; type 1,1,2
    +g1g2*x1,+g1*x2,+g2*x3,+x3
    ...

Entries are ``0`` or ``[+-]<generators>*x<i>`` with generators and
variables 1-indexed.  The JSON form carries the same fields, with the
presentation spelled out.
"""
from __future__ import annotations

import io
import json
import re
from typing import IO, Iterable, Iterator, TextIO

import numpy as np

from .design import DesignMatrix
from .signed_group import GroupPresentation, parse_element, presentation_by_name

_HEADER_RE = re.compile(
    r"^\s*order\s+(\d+)\s*;\s*vars\s+(\d+)\s*;\s*group\s+(\S+)\s*;\s*type\s+([\d,\s]*)$"
)
_ENTRY_RE = re.compile(r"^([+-]?)((?:g\d+)*)\*?x(\d+)$")


def format_entry(sign: int, mask: int, var: int) -> str:
    if sign == 0:
        return "0"
    word = "".join(f"g{a + 1}" for a in range(mask.bit_length()) if mask >> a & 1)
    return ("+" if sign > 0 else "-") + (word + "*" if word else "") + f"x{var + 1}"


def parse_entry(tok: str, p: GroupPresentation) -> tuple[int, int, int]:
    tok = tok.strip()
    if tok == "0":
        return 0, 0, -1
    m = _ENTRY_RE.match(tok)
    if not m:
        raise ValueError(f"bad design entry {tok!r}")
    sign = -1 if m.group(1) == "-" else 1
    g = parse_element(("-" if sign < 0 else "+") + (m.group(2) or "1"), p)
    return g.sign, g.mask, int(m.group(3)) - 1


def header_line(x: DesignMatrix) -> str:
    t = ",".join(map(str, x.claimed_type))
    return f"order {x.order}; vars {x.variable_count}; group {x.presentation.name}; type {t}"


def iter_design_lines(x: DesignMatrix, block_rows: int = 256) -> Iterator[str]:
    """Header then one line per row, produced in blocks of rows."""
    yield header_line(x)
    n = x.order
    for start in range(0, n, block_rows):
        stop = min(n, start + block_rows)
        signs = x.signs[start:stop].tolist()
        masks = x.masks[start:stop].tolist()
        vars = x.vars[start:stop].tolist()
        for s_row, m_row, v_row in zip(signs, masks, vars):
            yield ",".join(format_entry(s, m, v) for s, m, v in zip(s_row, m_row, v_row))


def write_design(x: DesignMatrix, out: TextIO) -> None:
    for line in iter_design_lines(x):
        out.write(line + "\n")


def dumps_design(x: DesignMatrix) -> str:
    buf = io.StringIO()
    write_design(x, buf)
    return buf.getvalue()


def read_design(lines: Iterable[str]) -> DesignMatrix:
    it = (ln.strip() for ln in lines)
    it = (ln for ln in it if ln and not ln.startswith("#"))
    try:
        header = next(it)
    except StopIteration:
        raise ValueError("empty design file") from None
    m = _HEADER_RE.match(header)
    if not m:
        raise ValueError(f"bad design header {header!r}")
    n, k = int(m.group(1)), int(m.group(2))
    p = presentation_by_name(m.group(3))
    claimed = [int(u) for u in m.group(4).split(",") if u.strip()]
    if len(claimed) != k:
        raise ValueError("header lists a type of the wrong length")
    signs = np.zeros((n, n), dtype=np.int8)
    masks = np.zeros((n, n), dtype=np.int32)
    vars = np.full((n, n), -1, dtype=np.int32)
    cache: dict[str, tuple[int, int, int]] = {}
    r = -1
    for r, line in enumerate(it):
        if r >= n:
            raise ValueError("more rows than the declared order")
        toks = line.split(",")
        if len(toks) != n:
            raise ValueError(f"row {r + 1} has {len(toks)} entries, expected {n}")
        for c, tok in enumerate(toks):
            e = cache.get(tok)
            if e is None:
                e = cache[tok] = parse_entry(tok, p)
            signs[r, c], masks[r, c], vars[r, c] = e
    if r != n - 1:
        raise ValueError("fewer rows than the declared order")
    return DesignMatrix(p, signs, masks, vars, claimed)


def loads_design(text: str) -> DesignMatrix:
    text = text.strip()
    if text.startswith("{"):
        return design_from_json(json.loads(text))
    return read_design(text.splitlines())


def load_design(path_or_file) -> DesignMatrix:
    if hasattr(path_or_file, "read"):
        return loads_design(path_or_file.read())
    with open(path_or_file, encoding="utf-8") as fh:
        return loads_design(fh.read())


def design_to_rows(x: DesignMatrix) -> list[list[str]]:
    return [
        [format_entry(s, m, v) for s, m, v in zip(sr, mr, vr)]
        for sr, mr, vr in zip(x.signs.tolist(), x.masks.tolist(), x.vars.tolist())
    ]


def design_to_json(x: DesignMatrix) -> dict:
    return {
        "order": x.order,
        "vars": x.variable_count,
        "group": x.presentation.to_dict(),
        "type": list(x.claimed_type),
        "rows": design_to_rows(x),
    }


def design_from_json(d: dict) -> DesignMatrix:
    g = d["group"]
    p = presentation_by_name(g) if isinstance(g, str) else GroupPresentation.from_dict(g)
    n = int(d["order"])
    rows = d["rows"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("rows do not match the declared order")
    signs = np.zeros((n, n), dtype=np.int8)
    masks = np.zeros((n, n), dtype=np.int32)
    vars = np.full((n, n), -1, dtype=np.int32)
    for r, row in enumerate(rows):
        for c, tok in enumerate(row):
            signs[r, c], masks[r, c], vars[r, c] = parse_entry(tok, p)
    x = DesignMatrix(p, signs, masks, vars, d["type"])
    if x.variable_count != int(d["vars"]):
        raise ValueError("vars field disagrees with the type length")
    return x


def dumps_design_json(x: DesignMatrix) -> str:
    return json.dumps(design_to_json(x))
