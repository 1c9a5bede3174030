"""Serialization and catalog loading.

The drawdown interchange format is a single-line JSON document with
sorted keys and no insignificant whitespace, so exports are byte-stable
and safe to use as golden files.  Grids are plain text, one pick per
line, whitespace-separated color names.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError
from .loom import SLANT_GLYPHS, Drawdown, Threading
from .plan import parse

_GLYPH_CODES = {g: c for c, g in SLANT_GLYPHS.items()}


def export_drawdown(drawdown: Drawdown) -> bytes:
    """Canonical JSON bytes: version 1, sorted keys, single line."""
    cells = []
    for p in range(drawdown.picks):
        row = []
        for t in range(drawdown.tablets):
            c = drawdown.cell(p, t)
            row.append({
                "f": c.front_color,
                "b": c.back_color,
                "s": c.slant,
                "h": c.hole,
                "r": c.rotation_after,
                "q": c.twist_after,
            })
        cells.append(row)
    doc = {
        "version": 1,
        "tablets": drawdown.tablets,
        "picks": drawdown.picks,
        "palette": dict(drawdown.palette),
        "threading": [{"sz": th.sz, "colors": list(th.colors)} for th in drawdown.threading],
        "cells": cells,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def import_drawdown(data: bytes | str) -> Drawdown:
    """Inverse of export_drawdown."""
    doc = json.loads(data)
    picks, tablets = doc["picks"], doc["tablets"]
    hole = np.zeros((picks, tablets), dtype=np.uint8)
    rot = np.zeros((picks, tablets), dtype=np.uint8)
    twist = np.zeros((picks, tablets), dtype=np.int32)
    slant = np.zeros((picks, tablets), dtype=np.int8)
    for p in range(picks):
        for t in range(tablets):
            c = doc["cells"][p][t]
            hole[p, t] = c["h"]
            rot[p, t] = c["r"]
            twist[p, t] = c["q"]
            slant[p, t] = _GLYPH_CODES[c["s"]]
    threading = [Threading(th["sz"], tuple(th["colors"])) for th in doc["threading"]]
    return Drawdown(tablets=tablets, picks=picks, palette=dict(doc["palette"]),
                    threading=threading, hole=hole, rot=rot, twist=twist, slant=slant)


ColorGrid = list  # picks x tablets nested list of color names


def import_grid(text: str) -> ColorGrid:
    """Parse an observed front-face grid: one pick per line."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        names = line.split()
        if not names:
            continue
        if width is None:
            width = len(names)
        elif len(names) != width:
            raise DomainError("E_RAGGED_ROW",
                              f"line {lineno} has {len(names)} entries, expected {width}",
                              line=lineno)
        rows.append(names)
    if not rows:
        raise DomainError("E_EMPTY_GRID", "grid text contains no rows")
    return rows


def grid_text(rows: ColorGrid) -> str:
    return "\n".join(" ".join(row) for row in rows) + "\n"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    title: str
    note: str
    source: str


@dataclass(frozen=True)
class CatalogFailure:
    id: str
    diagnostics: tuple


def default_catalog_dir() -> Path:
    override = os.environ.get("TABLETLOOM_EXAMPLES")
    if override:
        return Path(override)
    return Path(__file__).parent / "examples"


def _header_field(source: str, key: str) -> str:
    for line in source.splitlines():
        stripped = line.strip()
        if not stripped.startswith("#"):
            break
        body = stripped.lstrip("#").strip()
        if body.lower().startswith(key + ":"):
            return body[len(key) + 1:].strip()
    return ""


def load_catalog(directory: Path | str | None = None):
    """Load all .band files in a directory, sorted by id.

    Returns (entries, failures); files that fail to parse land in
    failures rather than being dropped.
    """
    directory = Path(directory) if directory is not None else default_catalog_dir()
    entries = []
    failures = []
    for path in sorted(directory.glob("*.band")):
        source = path.read_text(encoding="utf-8")
        entry_id = path.stem
        _, diags = parse(source)
        if diags:
            failures.append(CatalogFailure(entry_id, tuple(diags)))
            continue
        entries.append(CatalogEntry(
            id=entry_id,
            title=_header_field(source, "title") or entry_id,
            note=_header_field(source, "note"),
            source=source,
        ))
    return entries, failures
