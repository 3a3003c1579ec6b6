"""Grid-cell coordinate scheme shared by the simulator and the interpreter.

Cells are addressed like spreadsheet cells: letter column + 1-based row
("D3"). Column A is the left edge of the view, row 1 the top. The same
mapping is used both when overlaying the grid on a rendered frame and when
computing ground-truth cells for objects, so the two sides always agree.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GridSpec:
    columns: int = 8
    rows: int = 8
    line_color: tuple[int, int, int] = (255, 214, 0)
    label_color: tuple[int, int, int] = (255, 214, 0)

    def __post_init__(self) -> None:
        if self.columns < 2 or self.rows < 2:
            raise ValueError("grid needs at least 2 columns and 2 rows")


def column_letters(index: int) -> str:
    """0 -> 'A', 25 -> 'Z', 26 -> 'AA' (spreadsheet style)."""
    if index < 0:
        raise ValueError(f"negative column index {index}")
    out = ""
    index += 1
    while index > 0:
        index, rem = divmod(index - 1, 26)
        out = chr(ord("A") + rem) + out
    return out


def cell_name(col: int, row: int) -> str:
    """Cell label from 0-based column and 0-based row indices."""
    return f"{column_letters(col)}{row + 1}"


def cell_for_point(u: float, v: float, spec: GridSpec) -> str:
    """Cell containing viewport point (u, v), both in [0, 1).

    u runs left to right, v top to bottom. Points on the far edge land in
    the last cell.
    """
    col = min(int(u * spec.columns), spec.columns - 1)
    row = min(int(v * spec.rows), spec.rows - 1)
    return cell_name(max(col, 0), max(row, 0))


def parse_cell(label: str, spec: GridSpec) -> tuple[int, int]:
    """Inverse of cell_name: '(col, row)' 0-based. Raises on invalid labels."""
    i = 0
    while i < len(label) and label[i].isalpha():
        i += 1
    letters, digits = label[:i], label[i:]
    if not letters or not digits or not digits.isdigit():
        raise ValueError(f"malformed cell label {label!r}")
    col = 0
    for ch in letters.upper():
        col = col * 26 + (ord(ch) - ord("A") + 1)
    col -= 1
    row = int(digits) - 1
    if not (0 <= col < spec.columns and 0 <= row < spec.rows):
        raise ValueError(f"cell {label!r} outside {spec.columns}x{spec.rows} grid")
    return col, row


def is_valid_cell(label: str, spec: GridSpec) -> bool:
    try:
        parse_cell(label, spec)
    except ValueError:
        return False
    return True


def all_cells(spec: GridSpec) -> list[str]:
    """All cell labels in row-major order (A1, B1, ... of row 1 first)."""
    return [cell_name(c, r) for r in range(spec.rows) for c in range(spec.columns)]
