"""The tablet-weaving state machine.

A band is a row of square tablets, each with four holes (A-D) carrying one
warp thread.  Between weft passes each tablet may be turned a quarter-turn
forward or backward, or flipped over.  The thread crossing the top of the
tablet after the turn is the one visible on the band's front face; the
hole two steps around shows on the back.

Convention: holes A-D are indices 0-3, home rotation is 0, a forward turn
shows the hole at the pre-turn rotation and increments it; a backward turn
shows (and moves to) rotation-1.  Flipping negates rotation, mirrors hole
lookup (h -> (4-h) mod 4) and toggles the effective S/Z character.  Twist
counts physical quarter-turns (F=+1, B=-1) regardless of flip state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .errors import DomainError

HOLE_LABELS = "ABCD"

SLANT_GLYPHS = {kernels.SLANT_NONE: "|", kernels.SLANT_FWD: "/", kernels.SLANT_BACK: "\\"}

FORWARD = "F"
BACKWARD = "B"
IDLE = "I"


@dataclass(frozen=True)
class Threading:
    """How one tablet is threaded: S or Z, plus the four hole colors A-D."""

    sz: str
    colors: tuple[str, str, str, str]

    def __post_init__(self):
        if self.sz not in ("S", "Z"):
            raise ValueError(f"sz must be 'S' or 'Z', got {self.sz!r}")
        if len(self.colors) != 4:
            raise ValueError("threading needs exactly 4 colors")
        object.__setattr__(self, "colors", tuple(self.colors))


@dataclass(frozen=True)
class TabletState:
    rotation: int = 0
    flipped: bool = False
    twist: int = 0


@dataclass(frozen=True)
class Cell:
    """One drawdown cell: what a single tablet shows after one pick."""

    front_color: str
    back_color: str
    slant: str
    hole: int
    rotation_after: int
    twist_after: int


@dataclass
class WeaveState:
    """Live simulation state: threading plus per-tablet automaton state."""

    threading: list[Threading]
    palette: dict[str, str]
    tablets: list[TabletState] = field(default_factory=list)
    picks_done: int = 0

    def __post_init__(self):
        if not self.tablets:
            self.tablets = [TabletState() for _ in self.threading]


def new_band(threading: list[Threading], palette: dict[str, str]) -> WeaveState:
    """Set up a band with every tablet at home (rotation 0, unflipped)."""
    if not threading:
        raise DomainError("E_NO_TABLETS", "a band needs at least one tablet")
    for t, th in enumerate(threading):
        for h, color in enumerate(th.colors):
            if color not in palette:
                raise DomainError(
                    "E_UNKNOWN_COLOR",
                    f"color {color!r} (tablet {t + 1}, hole {HOLE_LABELS[h]}) is not in the palette",
                    color=color, tablet=t, hole=h,
                )
    return WeaveState(threading=list(threading), palette=dict(palette))


def apply_flips(state: WeaveState, indices) -> WeaveState:
    """Flip the given tablets: toggle the flag and negate rotation."""
    n = len(state.tablets)
    idx = set(indices)
    for i in idx:
        if not 0 <= i < n:
            raise DomainError("E_BAD_INDEX", f"tablet index {i} out of range 0..{n - 1}", index=i)
    tablets = [
        replace(s, flipped=not s.flipped, rotation=(4 - s.rotation) % 4) if i in idx else s
        for i, s in enumerate(state.tablets)
    ]
    return replace(state, tablets=tablets)


def _color_at(th: Threading, flipped: bool, h: int) -> str:
    return th.colors[(4 - h) % 4 if flipped else h]


def step_pick(state: WeaveState, actions) -> tuple[WeaveState, list[Cell]]:
    """Advance every tablet one pick and return the emitted cell row.

    Pure-python reference; simulate() runs the same automaton through the
    array kernel.
    """
    if len(actions) != len(state.tablets):
        raise DomainError(
            "E_ROW_ARITY",
            f"action row has {len(actions)} entries for {len(state.tablets)} tablets",
        )
    new_tablets = []
    cells = []
    for s, th, a in zip(state.tablets, state.threading, actions):
        r = s.rotation
        if a == FORWARD:
            v = r
            r2, tw2 = (r + 1) % 4, s.twist + 1
        elif a == BACKWARD:
            v = (r + 3) % 4
            r2, tw2 = v, s.twist - 1
        elif a == IDLE:
            v = r
            r2, tw2 = r, s.twist
        else:
            raise DomainError("E_BAD_TOKEN", f"unknown action {a!r}")
        if a == IDLE:
            slant = "|"
        else:
            eff_s = (th.sz == "S") != s.flipped
            slant = "\\" if (a == FORWARD) == eff_s else "/"
        h = (4 - v) % 4 if s.flipped else v
        cells.append(Cell(
            front_color=th.colors[h],
            back_color=th.colors[(h + 2) % 4],
            slant=slant,
            hole=h,
            rotation_after=r2,
            twist_after=tw2,
        ))
        new_tablets.append(replace(s, rotation=r2, twist=tw2))
    return replace(state, tablets=new_tablets, picks_done=state.picks_done + 1), cells


@dataclass
class Drawdown:
    """picks x tablets grid of woven cells, stored column-major-friendly arrays."""

    tablets: int
    picks: int
    palette: dict[str, str]
    threading: list[Threading]
    hole: np.ndarray   # uint8, effective front hole
    rot: np.ndarray    # uint8, rotation after pick
    twist: np.ndarray  # int32
    slant: np.ndarray  # int8, kernels.SLANT_* codes

    def cell(self, p: int, t: int) -> Cell:
        th = self.threading[t]
        h = int(self.hole[p, t])
        return Cell(
            front_color=th.colors[h],
            back_color=th.colors[(h + 2) % 4],
            slant=SLANT_GLYPHS[int(self.slant[p, t])],
            hole=h,
            rotation_after=int(self.rot[p, t]),
            twist_after=int(self.twist[p, t]),
        )

    def front_colors(self) -> list[list[str]]:
        return [
            [self.threading[t].colors[int(self.hole[p, t])] for t in range(self.tablets)]
            for p in range(self.picks)
        ]

    def back_colors(self) -> list[list[str]]:
        return [
            [self.threading[t].colors[(int(self.hole[p, t]) + 2) % 4] for t in range(self.tablets)]
            for p in range(self.picks)
        ]


def simulate(flat) -> Drawdown:
    """Weave a FlatPlan into a Drawdown.  Deterministic and pure."""
    state = new_band(list(flat.threading), dict(flat.palette))
    tablets = len(flat.threading)
    rows = []
    flip_rows = []
    pending = np.zeros(tablets, dtype=bool)
    for kind, payload in flat.events:
        if kind == "flip":
            for i in payload:
                if not 0 <= i < tablets:
                    raise DomainError("E_BAD_INDEX", f"tablet index {i} out of range", index=i)
                pending[i] ^= True
        else:
            row = np.zeros(tablets, dtype=np.int8)
            for t, a in enumerate(payload):
                row[t] = 1 if a == FORWARD else (-1 if a == BACKWARD else 0)
            rows.append(row)
            flip_rows.append(pending)
            pending = np.zeros(tablets, dtype=bool)
    picks = len(rows)
    actions = np.array(rows, dtype=np.int8).reshape(picks, tablets)
    flips = np.array(flip_rows, dtype=bool).reshape(picks, tablets)
    sz_s = np.array([th.sz == "S" for th in flat.threading], dtype=bool)
    hole, rot, twist, slant = kernels.simulate_arrays(actions, flips, sz_s)
    return Drawdown(
        tablets=tablets,
        picks=picks,
        palette=dict(state.palette),
        threading=list(flat.threading),
        hole=hole,
        rot=rot,
        twist=twist,
        slant=slant,
    )


@dataclass
class TwistProfile:
    series: np.ndarray        # picks x tablets int32
    max_abs: int
    threshold: int
    first_warning_pick: int | None  # 1-based, None if never exceeded


def twist_profile(drawdown: Drawdown, threshold: int = 8) -> TwistProfile:
    """Per-tablet twist buildup plus the first pick past the warning threshold."""
    series = drawdown.twist
    max_abs = int(np.max(np.abs(series))) if series.size else 0
    first = None
    if series.size and max_abs > threshold:
        over = np.max(np.abs(series), axis=1) > threshold
        first = int(np.argmax(over)) + 1
    return TwistProfile(series=series, max_abs=max_abs, threshold=threshold,
                        first_warning_pick=first)
