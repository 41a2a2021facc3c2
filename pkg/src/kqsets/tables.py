"""Text format for function tables on the columns of M_{2^level}.

::

    q 2 level 1
    1 0 -> 1
    1 1 -> 0

One line per column, in column order: the column's entries, ``->``, the
value.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from .analysis import FunctionTable
from .kronecker import build_level_matrix


class TableFormatError(ValueError):
    pass


def parse_table(text: str) -> tuple[int, int, FunctionTable]:
    """Parse a table file; returns ``(q, level, table)``.

    Raises:
        TableFormatError: malformed lines, unknown or duplicated columns, or a
            table that does not cover every column ("table not total").
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TableFormatError("empty table")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "q" or head[2] != "level":
        raise TableFormatError(f"bad table header: {lines[0]!r}")
    try:
        q, level = int(head[1]), int(head[3])
    except ValueError as exc:
        raise TableFormatError(f"bad table header: {lines[0]!r}") from exc
    if q < 2:
        raise TableFormatError("modulus must be at least 2")
    m = build_level_matrix(q, level)
    known = {c.to_tuple() for c in m.columns()}
    values: dict[tuple[int, ...], int] = {}
    for ln in lines[1:]:
        if "->" not in ln:
            raise TableFormatError(f"missing '->' in line {ln!r}")
        lhs, rhs = ln.split("->", 1)
        try:
            key = tuple(int(x) for x in lhs.split())
            val = int(rhs.strip())
        except ValueError as exc:
            raise TableFormatError(f"non-integer entry in line {ln!r}") from exc
        if key not in known:
            raise TableFormatError(f"{key} is not a column of M_{2**level}")
        if key in values:
            raise TableFormatError(f"column {key} assigned twice")
        if not 0 <= val < q:
            raise TableFormatError(f"value {val} is not a residue mod {q}")
        values[key] = val
    if len(values) != len(known):
        raise TableFormatError("table not total")
    return q, level, FunctionTable(q, values)


def format_table(q: int, level: int, table: FunctionTable) -> str:
    m = build_level_matrix(q, level)
    lines = [f"q {q} level {level}"]
    for col in m.columns():
        key = col.to_tuple()
        lines.append(" ".join(map(str, key)) + f" -> {table.values[key]}")
    return "\n".join(lines) + "\n"
