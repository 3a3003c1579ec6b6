"""Grid overlay drawn onto rendered frames before coordinate queries.

Lines sit at equal pixel intervals; column letters run along the top edge,
row numbers down the left edge. Drawing is pure: the input frame is never
touched and identical inputs give identical output bytes.
"""

from __future__ import annotations

import numpy as np

from ..grid import GridSpec, column_letters
from ..world.types import Frame

GLYPH_W, GLYPH_H = 3, 5
LABEL_PAD = 2

# 3x5 pixel font, enough for grid labels (letters + digits)
_GLYPHS = {
    "A": (".X.", "X.X", "XXX", "X.X", "X.X"),
    "B": ("XX.", "X.X", "XX.", "X.X", "XX."),
    "C": (".XX", "X..", "X..", "X..", ".XX"),
    "D": ("XX.", "X.X", "X.X", "X.X", "XX."),
    "E": ("XXX", "X..", "XX.", "X..", "XXX"),
    "F": ("XXX", "X..", "XX.", "X..", "X.."),
    "G": (".XX", "X..", "X.X", "X.X", ".XX"),
    "H": ("X.X", "X.X", "XXX", "X.X", "X.X"),
    "I": ("XXX", ".X.", ".X.", ".X.", "XXX"),
    "J": ("..X", "..X", "..X", "X.X", ".X."),
    "K": ("X.X", "X.X", "XX.", "X.X", "X.X"),
    "L": ("X..", "X..", "X..", "X..", "XXX"),
    "M": ("X.X", "XXX", "X.X", "X.X", "X.X"),
    "N": ("XX.", "X.X", "X.X", "X.X", "X.X"),
    "O": (".X.", "X.X", "X.X", "X.X", ".X."),
    "P": ("XX.", "X.X", "XX.", "X..", "X.."),
    "Q": (".X.", "X.X", "X.X", "XX.", ".XX"),
    "R": ("XX.", "X.X", "XX.", "X.X", "X.X"),
    "S": (".XX", "X..", ".X.", "..X", "XX."),
    "T": ("XXX", ".X.", ".X.", ".X.", ".X."),
    "U": ("X.X", "X.X", "X.X", "X.X", "XXX"),
    "V": ("X.X", "X.X", "X.X", "X.X", ".X."),
    "W": ("X.X", "X.X", "X.X", "XXX", "X.X"),
    "X": ("X.X", "X.X", ".X.", "X.X", "X.X"),
    "Y": ("X.X", "X.X", ".X.", ".X.", ".X."),
    "Z": ("XXX", "..X", ".X.", "X..", "XXX"),
    "0": (".X.", "X.X", "X.X", "X.X", ".X."),
    "1": (".X.", "XX.", ".X.", ".X.", "XXX"),
    "2": ("XX.", "..X", ".X.", "X..", "XXX"),
    "3": ("XX.", "..X", ".X.", "..X", "XX."),
    "4": ("X.X", "X.X", "XXX", "..X", "..X"),
    "5": ("XXX", "X..", "XX.", "..X", "XX."),
    "6": (".XX", "X..", "XX.", "X.X", ".X."),
    "7": ("XXX", "..X", ".X.", ".X.", ".X."),
    "8": (".X.", "X.X", ".X.", "X.X", ".X."),
    "9": (".X.", "X.X", ".XX", "..X", "XX."),
}


def line_positions(extent: int, cells: int) -> list[int]:
    """Pixel offsets of the interior grid lines along one axis."""
    return [round(i * extent / cells) for i in range(1, cells)]


def label_scale(width: int, height: int, spec: GridSpec) -> int:
    """Integer glyph scale so labels stay readable as cells grow."""
    cell = min(width // spec.columns, height // spec.rows)
    return max(1, cell // 16)


def _draw_text(buf: np.ndarray, text: str, x0: int, y0: int, scale: int, color) -> None:
    h, w = buf.shape[0], buf.shape[1]
    cx = x0
    for ch in text:
        glyph = _GLYPHS.get(ch.upper())
        if glyph is None:
            cx += (GLYPH_W + 1) * scale
            continue
        for gy, rowbits in enumerate(glyph):
            for gx, bit in enumerate(rowbits):
                if bit != "X":
                    continue
                ys = y0 + gy * scale
                xs = cx + gx * scale
                if ys >= h or xs >= w or ys + scale <= 0 or xs + scale <= 0:
                    continue
                buf[max(ys, 0) : min(ys + scale, h), max(xs, 0) : min(xs + scale, w)] = color
        cx += (GLYPH_W + 1) * scale


def overlay_grid(frame: Frame, spec: GridSpec | None = None) -> Frame:
    """Copy of the frame with grid lines and margin labels drawn on top."""
    spec = spec or GridSpec()
    if frame.width < spec.columns or frame.height < spec.rows:
        raise ValueError(
            f"{frame.width}x{frame.height} frame cannot fit a "
            f"{spec.columns}x{spec.rows} grid"
        )
    buf = np.frombuffer(frame.pixels, dtype=np.uint8).reshape(
        frame.height, frame.width, 3
    ).copy()
    line = np.array(spec.line_color, dtype=np.uint8)
    label = np.array(spec.label_color, dtype=np.uint8)

    for x in line_positions(frame.width, spec.columns):
        buf[:, x] = line
    for y in line_positions(frame.height, spec.rows):
        buf[y, :] = line

    scale = label_scale(frame.width, frame.height, spec)
    glyph_h = GLYPH_H * scale
    for col in range(spec.columns):
        text = column_letters(col)
        text_w = (len(text) * (GLYPH_W + 1) - 1) * scale
        center = round((col + 0.5) * frame.width / spec.columns)
        _draw_text(buf, text, center - text_w // 2, LABEL_PAD, scale, label)
    for row in range(spec.rows):
        text = str(row + 1)
        center = round((row + 0.5) * frame.height / spec.rows)
        _draw_text(buf, text, LABEL_PAD, center - glyph_h // 2, scale, label)

    return Frame(width=frame.width, height=frame.height, pixels=buf.tobytes())
