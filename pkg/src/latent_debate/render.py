"""Grid heatmaps of an evaluated debate, as ANSI text or SVG.

Red cells are attack-polarity arguments (final strength < 0), blue cells
support-polarity (>= 0); color intensity scales linearly with |strength|,
so a zero-strength cell renders blank.  Layer 1 is the bottom row.  Output
bytes are a pure function of the record and flags.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .qbaf import Qbaf, StrengthMap
from .grid import argument_layer, argument_token, grid_argument_id
from .records import DebateRecord

RED = (214, 39, 40)
BLUE = (31, 119, 180)
_CELL = 28
_PAD = 2


def _cell_color(sigma: float) -> tuple[int, int, int]:
    return RED if sigma < 0 else BLUE


def render_svg(record: DebateRecord, qbaf: Qbaf, strengths: StrengthMap) -> str:
    """Deterministic SVG heatmap; one rect per (layer, token) cell."""
    width = record.num_tokens * _CELL + 2 * _PAD
    height = record.num_layers * _CELL + 2 * _PAD
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<desc>{escape(record.claim)}</desc>",
    ]
    for layer in range(1, record.num_layers + 1):
        y = _PAD + (record.num_layers - layer) * _CELL
        for token in range(1, record.num_tokens + 1):
            aid = grid_argument_id(layer, token)
            sigma = strengths.sigma[aid]
            r, g, b = _cell_color(sigma)
            x = _PAD + (token - 1) * _CELL
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
                f'fill="rgb({r},{g},{b})" fill-opacity="{abs(sigma):.6f}" '
                f'stroke="#cccccc" stroke-width="1">'
                f"<title>{aid} sigma={sigma:.6f}</title></rect>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_ansi(record: DebateRecord, qbaf: Qbaf, strengths: StrengthMap) -> str:
    """Deterministic 24-bit-color text heatmap, top layer first."""
    by_cell = {
        (argument_layer(a.id), argument_token(a.id)): strengths.sigma[a.id]
        for a in qbaf.arguments
    }
    lines = []
    for layer in range(record.num_layers, 0, -1):
        cells = []
        for token in range(1, record.num_tokens + 1):
            sigma = by_cell[(layer, token)]
            base = _cell_color(sigma)
            alpha = abs(sigma)
            r, g, b = (round(255 - alpha * (255 - c)) for c in base)
            cells.append(f"\x1b[48;2;{r};{g};{b}m  ")
        lines.append("".join(cells) + "\x1b[0m")
    return "\n".join(lines) + "\n"
