"""Drawdown renderers: text grid, SVG, binary PPM.

All three are deterministic byte-for-byte: fixed element order
(pick-major, tablet-minor), fixed float formatting, no timestamps.  The
back face is rendered mirrored left-right, as if the band were turned
over about its long axis, with slants mirrored to match.
"""

from __future__ import annotations

from dataclasses import dataclass

from .loom import SLANT_GLYPHS, Drawdown

_MIRROR = {"|": "|", "/": "\\", "\\": "/"}


@dataclass
class RenderOptions:
    face: str = "front"          # front | back | both
    cell_size: int = 12
    show_slant: bool = True
    ansi: bool = False

    def __post_init__(self):
        if self.face not in ("front", "back", "both"):
            raise ValueError(f"bad face {self.face!r}")
        if self.cell_size < 1:
            raise ValueError("cell_size must be >= 1")


def face_matrices(drawdown: Drawdown, face: str):
    """(colors, slants) for one face; back is column-mirrored with slants flipped."""
    slants = [[SLANT_GLYPHS[int(drawdown.slant[p, t])] for t in range(drawdown.tablets)]
              for p in range(drawdown.picks)]
    if face == "front":
        return drawdown.front_colors(), slants
    colors = [list(reversed(row)) for row in drawdown.back_colors()]
    slants = [[_MIRROR[g] for g in reversed(row)] for row in slants]
    return colors, slants


def _hex_rgb(hexval: str):
    return int(hexval[1:3], 16), int(hexval[3:5], 16), int(hexval[5:7], 16)


def render_text(drawdown: Drawdown, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    faces = ["front", "back"] if opts.face == "both" else [opts.face]
    blocks = []
    for face in faces:
        colors, slants = face_matrices(drawdown, face)
        lines = []
        for crow, srow in zip(colors, slants):
            cells = []
            for color, slant in zip(crow, srow):
                glyph = color[0] + (slant if opts.show_slant else "")
                if opts.ansi:
                    r, g, b = _hex_rgb(drawdown.palette[color])
                    glyph = f"\x1b[38;2;{r};{g};{b}m{glyph}\x1b[0m"
                cells.append(glyph)
            lines.append("".join(cells))
        blocks.append("\n".join(lines))
    text = "\n\n".join(blocks)
    return text + "\n" if text else ""


def _svg_cell(x, y, size, slant, fill, show_slant):
    skew = size * 0.25 if show_slant else 0.0
    if slant == "/" and skew:
        pts = [(x + skew, y), (x + size, y), (x + size - skew, y + size), (x, y + size)]
    elif slant == "\\" and skew:
        pts = [(x, y), (x + size - skew, y), (x + size, y + size), (x + skew, y + size)]
    else:
        pts = [(x, y), (x + size, y), (x + size, y + size), (x, y + size)]
    points = " ".join(f"{px:.1f},{py:.1f}" for px, py in pts)
    return f'<polygon points="{points}" fill="{fill}"/>'


def render_svg(drawdown: Drawdown, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    faces = ["front", "back"] if opts.face == "both" else [opts.face]
    size = opts.cell_size
    width = drawdown.tablets * size
    rows = drawdown.picks if opts.face != "both" else 2 * drawdown.picks + 1
    height = rows * size
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">']
    y_off = 0
    for face in faces:
        colors, slants = face_matrices(drawdown, face)
        for p in range(drawdown.picks):
            for t in range(drawdown.tablets):
                parts.append(_svg_cell(
                    t * size, (y_off + p) * size, size, slants[p][t],
                    drawdown.palette[colors[p][t]], opts.show_slant))
        y_off += drawdown.picks + 1
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _blit(pixels, width, x0, y0, size, rgb, slant, show_slant):
    inv = tuple(255 - c for c in rgb)
    for dy in range(size):
        base = ((y0 + dy) * width + x0) * 3
        for dx in range(size):
            pixels[base + dx * 3: base + dx * 3 + 3] = bytes(rgb)
    if not show_slant:
        return
    for d in range(size):
        if slant == "\\":
            dx, dy = d, d
        elif slant == "/":
            dx, dy = size - 1 - d, d
        else:
            dx, dy = size // 2, d
        i = ((y0 + dy) * width + x0 + dx) * 3
        pixels[i:i + 3] = bytes(inv)


def render_raster(drawdown: Drawdown, opts: RenderOptions | None = None) -> bytes:
    """Binary PPM (P6), one cell_size square block per cell."""
    opts = opts or RenderOptions()
    faces = ["front", "back"] if opts.face == "both" else [opts.face]
    size = opts.cell_size
    width = drawdown.tablets * size
    rows = drawdown.picks if opts.face != "both" else 2 * drawdown.picks + 1
    height = rows * size
    pixels = bytearray(b"\xff" * (width * height * 3))
    y_off = 0
    for face in faces:
        colors, slants = face_matrices(drawdown, face)
        for p in range(drawdown.picks):
            for t in range(drawdown.tablets):
                rgb = _hex_rgb(drawdown.palette[colors[p][t]])
                _blit(pixels, width, t * size, (y_off + p) * size, size,
                      rgb, slants[p][t], opts.show_slant)
        y_off += drawdown.picks + 1
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + bytes(pixels)
