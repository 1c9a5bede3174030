"""Inverse problems: reading turning sequences back out of fabric.

infer_turns reconstructs a turn-only (F/B) plan from an observed
front-face color grid by dynamic programming over each tablet's four
rotation states, counting every feasible turning sequence and returning
the lexicographically-first one (F preferred).  encode_bits/decode_bits
treat the band as a physical bit channel: with four distinct hole colors
per tablet each pick's turn direction is uniquely readable, so a weave
is a losslessly decodable signal.

Scope: flips and idles are not searched; a grid that needs them raises
E_UNWEAVABLE.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .loom import BACKWARD, FORWARD, Threading
from .plan import FlatPlan

# Reserved codec palette; fixed so independent encoders/decoders agree.
CODEC_PALETTE = (
    ("c0", "#000000"),
    ("c1", "#cc0000"),
    ("c2", "#00aa00"),
    ("c3", "#0044cc"),
)
CODEC_COLORS = ("c0", "c1", "c2", "c3")


@dataclass(frozen=True)
class InferenceResult:
    plan: FlatPlan           # turn-only canonical plan, F preferred
    solution_count: int      # exact, or saturated at cap
    capped: bool


def _tablet_paths(colors, observed, starts, cap):
    """DP over the 4 rotation states for one tablet.

    Returns (count, actions) where count is the number of feasible
    (start, turning sequence) pairs saturated at cap and actions is the
    lexicographically-first feasible sequence with F < B.
    Raises E_UNWEAVABLE with the first infeasible pick.
    """
    picks = len(observed)
    # feasible[p] = states from which picks p..end can still be matched
    feasible = [set() for _ in range(picks + 1)]
    feasible[picks] = {0, 1, 2, 3}
    for p in range(picks - 1, -1, -1):
        want = observed[p]
        for r in range(4):
            if colors[r] == want and (r + 1) % 4 in feasible[p + 1]:
                feasible[p].add(r)
            elif colors[(r + 3) % 4] == want and (r + 3) % 4 in feasible[p + 1]:
                feasible[p].add(r)
    live = set(starts) & feasible[0]
    if not live:
        # walk forward to find the first pick where every path dies
        reach = set(starts)
        for p in range(picks):
            want = observed[p]
            nxt = set()
            for r in reach:
                if colors[r] == want:
                    nxt.add((r + 1) % 4)
                if colors[(r + 3) % 4] == want:
                    nxt.add((r + 3) % 4)
            if not nxt:
                raise DomainError(
                    "E_UNWEAVABLE",
                    f"pick {p + 1} cannot be produced by turn-only weaving "
                    "(flips and idles are not searched)",
                    pick=p, first_infeasible_pick=p)
            reach = nxt
        raise DomainError("E_UNWEAVABLE", "no feasible turning sequence", pick=picks - 1)

    # path counting, forward
    counts = {r: 1 for r in set(starts)}
    for p in range(picks):
        want = observed[p]
        nxt: dict[int, int] = {}
        for r, c in counts.items():
            if colors[r] == want:
                r2 = (r + 1) % 4
                nxt[r2] = min(nxt.get(r2, 0) + c, cap)
            if colors[(r + 3) % 4] == want:
                r2 = (r + 3) % 4
                nxt[r2] = min(nxt.get(r2, 0) + c, cap)
        counts = nxt
    total = min(sum(counts.values()), cap)

    # lexicographically-first reconstruction, F preferred
    actions = []
    cur = live
    for p in range(picks):
        want = observed[p]
        f_next = {(r + 1) % 4 for r in cur if colors[r] == want} & feasible[p + 1]
        if f_next:
            actions.append(FORWARD)
            cur = f_next
        else:
            b_next = {(r + 3) % 4 for r in cur if colors[(r + 3) % 4] == want} & feasible[p + 1]
            actions.append(BACKWARD)
            cur = b_next
    return total, actions


def _fallback_palette(threading):
    names = sorted({c for th in threading for c in th.colors})
    # deterministic grays when no real palette accompanies the threading
    step = 255 // max(len(names), 1)
    return tuple((n, f"#{i * step:02x}{i * step:02x}{i * step:02x}")
                 for i, n in enumerate(names))


def infer_turns(grid, threading: list[Threading], assume_home: bool = True,
                cap: int = 1000, palette=None) -> InferenceResult:
    """Reconstruct a turn-only plan whose front face matches the grid."""
    tablets = len(threading)
    picks = len(grid)
    for row in grid:
        if len(row) != tablets:
            raise DomainError("E_ROW_ARITY",
                              f"grid row has {len(row)} entries for {tablets} tablets")
    starts = (0,) if assume_home else (0, 1, 2, 3)
    sat = cap + 1  # one unit of headroom so count == cap is not reported as capped
    total = 1
    columns = []
    for t in range(tablets):
        observed = [grid[p][t] for p in range(picks)]
        count, actions = _tablet_paths(threading[t].colors, observed, starts, sat)
        columns.append(actions)
        total = min(total * count, sat)
    capped = total > cap
    total = min(total, cap)
    events = tuple(("pick", tuple(columns[t][p] for t in range(tablets)))
                   for p in range(picks))
    if palette is None:
        palette = _fallback_palette(threading)
    plan = FlatPlan(tablets=tablets, palette=tuple(sorted(dict(palette).items())),
                    threading=tuple(threading), events=events)
    return InferenceResult(plan=plan, solution_count=total, capped=capped)


def codec_threading(tablets: int) -> list[Threading]:
    return [Threading("S", CODEC_COLORS) for _ in range(tablets)]


def encode_bits(bits, tablets: int) -> FlatPlan:
    """Lay a bitstream into a weave: 1 -> F, 0 -> B, row-major."""
    bits = list(bits)
    if tablets < 1:
        raise DomainError("E_NO_TABLETS", "need at least one tablet")
    if not bits:
        raise DomainError("E_EMPTY_BITS", "no bits to encode")
    picks = -(-len(bits) // tablets)
    events = []
    for p in range(picks):
        row = []
        for t in range(tablets):
            i = p * tablets + t
            bit = bits[i] if i < len(bits) else 1  # pad with F
            row.append(FORWARD if bit else BACKWARD)
        events.append(("pick", tuple(row)))
    return FlatPlan(tablets=tablets, palette=CODEC_PALETTE,
                    threading=tuple(codec_threading(tablets)),
                    events=tuple(events), bit_length=len(bits))


def decode_bits(grid, threading: list[Threading], bit_length: int):
    """Read a bitstream back off a woven grid.  Inverse of encode->simulate."""
    tablets = len(threading)
    for th in threading:
        if len(set(th.colors)) != 4:
            raise DomainError("E_BAD_THREADING",
                              "codec threading needs 4 distinct colors per tablet")
    picks = len(grid)
    matrix = []
    for t in range(tablets):
        colors = threading[t].colors
        r = 0
        column = []
        for p in range(picks):
            want = grid[p][t]
            if colors[r] == want:
                column.append(1)
                r = (r + 1) % 4
            elif colors[(r + 3) % 4] == want:
                column.append(0)
                r = (r + 3) % 4
            else:
                raise DomainError("E_CORRUPT",
                                  f"tablet {t + 1}, pick {p + 1}: color {want!r} matches "
                                  "neither a forward nor a backward turn",
                                  tablet=t, pick=p)
        matrix.append(column)
    bits = [matrix[t][p] for p in range(picks) for t in range(tablets)]
    return bits[:bit_length]
