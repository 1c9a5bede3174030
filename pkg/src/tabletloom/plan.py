"""The band plan language: parser, expander, pretty-printer, diagnostics.

A band plan is line-oriented UTF-8 text (extension ``.band``):

    tablets 8
    palette r #cc0000
    palette w #ffffff
    thread 1-8 S r r w w
    repeat 4
      F          # bare letter = all tablets
      1-4F 5-8B  # rangelist prefix = those tablets, rest idle
    end
    flip 1,3-4

``#`` starts a comment to end of line, except that a ``#RRGGBB`` token is
a color literal (so ``palette r #cc0000`` works).  Tablet indices are
1-based in source, 0-based everywhere else.  Parsing never raises: any
input yields either a Plan or a list of Diagnostics with stable codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DomainError
from .loom import IDLE, Threading

DEFAULT_PICK_CAP = 100000

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")
_PICK_TOKEN = re.compile(r"^([0-9]+(?:-[0-9]+)?(?:,[0-9]+(?:-[0-9]+)?)*)?([FBI])$")
_RANGE = re.compile(r"^([0-9]+)(?:-([0-9]+))?$")


@dataclass(frozen=True)
class Diagnostic:
    line: int  # 1-based
    col: int   # 1-based
    code: str
    message: str


@dataclass
class PickItem:
    line: int
    actions: tuple[str, ...]


@dataclass
class FlipItem:
    line: int
    indices: tuple[int, ...]  # 0-based, sorted, unique


@dataclass
class RepeatItem:
    line: int
    count: int
    body: list = field(default_factory=list)


@dataclass
class Plan:
    tablets: int
    palette: dict[str, str]
    threading: list[Threading]
    body: list


@dataclass(frozen=True)
class FlatPlan:
    """Fully expanded plan: repeats unrolled, every pick row complete."""

    tablets: int
    palette: tuple[tuple[str, str], ...]  # sorted (name, hex) pairs
    threading: tuple[Threading, ...]
    events: tuple  # ("flip", idx tuple) / ("pick", action tuple), in order
    bit_length: int | None = None  # set by the bit codec

    @property
    def palette_dict(self) -> dict[str, str]:
        return dict(self.palette)

    def pick_rows(self) -> list[tuple[str, ...]]:
        return [payload for kind, payload in self.events if kind == "pick"]


def _tokenize(line: str):
    """Split one line into (text, 1-based col) tokens, dropping comments."""
    tokens = []
    for m in re.finditer(r"\S+", line):
        text = m.group(0)
        if text.startswith("#") and not _HEX_COLOR.match(text):
            break
        tokens.append((text, m.start() + 1))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.diags: list[Diagnostic] = []
        self.tablets: int | None = None
        self.tablets_pos = (1, 1)
        self.palette: dict[str, str] = {}
        self.threading: list[Threading | None] = []
        self.root: list = []
        self.stack: list[RepeatItem] = []
        self.missing_reported = False

    def err(self, line, col, code, message):
        self.diags.append(Diagnostic(line, col, code, message))

    def need_tablets(self, line, col) -> bool:
        if self.tablets is None:
            if not self.missing_reported:
                self.err(line, col, "E_TABLETS_MISSING",
                         "a 'tablets N' statement must come first")
                self.missing_reported = True
            return False
        return True

    def parse_range(self, token, line, col, what="range"):
        m = _RANGE.match(token)
        if not m:
            self.err(line, col, "E_BAD_RANGE", f"malformed {what} {token!r}")
            return None
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) else a
        if a < 1 or b < a or (self.tablets is not None and b > self.tablets):
            self.err(line, col, "E_BAD_RANGE",
                     f"{what} {token!r} outside tablets 1..{self.tablets}")
            return None
        return a, b

    def parse_rangelist(self, token, line, col):
        out = []
        for part in token.split(","):
            rng = self.parse_range(part, line, col)
            if rng is None:
                return None
            out.extend(range(rng[0] - 1, rng[1]))
        return out

    def body(self) -> list:
        return self.stack[-1].body if self.stack else self.root

    def stmt_tablets(self, tokens, line):
        if self.tablets is not None:
            self.err(line, tokens[0][1], "E_BAD_TOKEN", "duplicate 'tablets' statement")
            return
        if len(tokens) != 2 or not tokens[1][0].isdigit() or int(tokens[1][0]) < 1:
            col = tokens[1][1] if len(tokens) > 1 else tokens[0][1]
            self.err(line, col, "E_BAD_TOKEN", "expected 'tablets N' with N >= 1")
            return
        self.tablets = int(tokens[1][0])
        self.tablets_pos = (line, tokens[0][1])
        self.threading = [None] * self.tablets

    def stmt_palette(self, tokens, line):
        if len(tokens) != 3 or not _HEX_COLOR.match(tokens[2][0]):
            col = tokens[-1][1]
            self.err(line, col, "E_BAD_TOKEN", "expected 'palette NAME #RRGGBB'")
            return
        self.palette[tokens[1][0]] = tokens[2][0].lower()

    def stmt_thread(self, tokens, line):
        if not self.need_tablets(line, tokens[0][1]):
            return
        if len(tokens) != 7 or tokens[2][0] not in ("S", "Z"):
            self.err(line, tokens[0][1], "E_BAD_TOKEN",
                     "expected 'thread RANGE S|Z colorA colorB colorC colorD'")
            return
        rng = self.parse_range(tokens[1][0], line, tokens[1][1], "tablet range")
        if rng is None:
            return
        colors = []
        ok = True
        for text, col in tokens[3:7]:
            if text not in self.palette:
                self.err(line, col, "E_UNKNOWN_COLOR", f"color {text!r} is not in the palette")
                ok = False
            colors.append(text)
        if not ok:
            return
        th = Threading(tokens[2][0], tuple(colors))
        for t in range(rng[0] - 1, rng[1]):
            if self.threading[t] is not None:
                self.err(line, tokens[1][1], "E_THREAD_DUP",
                         f"tablet {t + 1} is threaded twice")
            else:
                self.threading[t] = th

    def stmt_flip(self, tokens, line):
        if not self.need_tablets(line, tokens[0][1]):
            return
        if len(tokens) != 2:
            self.err(line, tokens[0][1], "E_BAD_TOKEN", "expected 'flip RANGELIST'")
            return
        indices = self.parse_rangelist(tokens[1][0], line, tokens[1][1])
        if indices is None:
            return
        self.body().append(FlipItem(line, tuple(sorted(set(indices)))))

    def stmt_repeat(self, tokens, line):
        if len(tokens) != 2 or not tokens[1][0].isdigit() or int(tokens[1][0]) < 1:
            col = tokens[1][1] if len(tokens) > 1 else tokens[0][1]
            self.err(line, col, "E_BAD_TOKEN", "expected 'repeat N' with N >= 1")
            return
        item = RepeatItem(line, int(tokens[1][0]))
        self.body().append(item)
        self.stack.append(item)

    def stmt_end(self, tokens, line):
        if not self.stack:
            self.err(line, tokens[0][1], "E_BAD_TOKEN", "'end' without matching 'repeat'")
            return
        self.stack.pop()

    def pick_line(self, tokens, line):
        if not self.need_tablets(line, tokens[0][1]):
            return
        actions: list[str | None] = [None] * self.tablets
        for text, col in tokens:
            m = _PICK_TOKEN.match(text)
            if not m:
                self.err(line, col, "E_BAD_TOKEN",
                         f"unrecognized token {text!r} (expected e.g. 'F', '2B', '1-4F')")
                return
            if m.group(1):
                indices = self.parse_rangelist(m.group(1), line, col)
                if indices is None:
                    return
            else:
                indices = range(self.tablets)
            for i in indices:
                if actions[i] is not None:
                    self.err(line, col, "E_OVERLAP",
                             f"tablet {i + 1} is assigned twice in one pick")
                    return
                actions[i] = m.group(2)
        self.body().append(PickItem(line, tuple(a if a else IDLE for a in actions)))

    def run(self):
        for lineno, raw in enumerate(self.source.splitlines(), start=1):
            tokens = _tokenize(raw)
            if not tokens:
                continue
            head = tokens[0][0]
            if head == "tablets":
                self.stmt_tablets(tokens, lineno)
            elif head == "palette":
                self.stmt_palette(tokens, lineno)
            elif head == "thread":
                self.stmt_thread(tokens, lineno)
            elif head == "flip":
                self.stmt_flip(tokens, lineno)
            elif head == "repeat":
                self.stmt_repeat(tokens, lineno)
            elif head == "end":
                self.stmt_end(tokens, lineno)
            else:
                self.pick_line(tokens, lineno)
        for item in self.stack:
            self.err(item.line, 1, "E_UNCLOSED_REPEAT",
                     f"'repeat' opened on line {item.line} is never closed")
        if self.tablets is None:
            if not self.missing_reported:
                self.err(1, 1, "E_TABLETS_MISSING", "no 'tablets N' statement found")
        else:
            missing = [str(t + 1) for t, th in enumerate(self.threading) if th is None]
            if missing:
                self.err(self.tablets_pos[0], self.tablets_pos[1], "E_THREAD_MISSING",
                         f"tablets {', '.join(missing)} are never threaded")
        if self.diags:
            return None, sorted(self.diags, key=lambda d: (d.line, d.col, d.code))
        return Plan(self.tablets, dict(self.palette), list(self.threading), self.root), []


def parse(source: str) -> tuple[Plan | None, list[Diagnostic]]:
    """Parse band plan text.  Returns (plan, []) or (None, diagnostics)."""
    return _Parser(source).run()


def expand(plan: Plan, cap: int = DEFAULT_PICK_CAP) -> FlatPlan:
    """Unroll repeats into a flat event list.  Raises E_REPEAT_OVERFLOW past cap."""
    events: list = []
    picks = 0

    def emit(body):
        nonlocal picks
        for item in body:
            if isinstance(item, PickItem):
                picks += 1
                if picks > cap:
                    raise DomainError("E_REPEAT_OVERFLOW",
                                      f"plan expands past {cap} picks", cap=cap)
                events.append(("pick", item.actions))
            elif isinstance(item, FlipItem):
                events.append(("flip", item.indices))
            else:
                for _ in range(item.count):
                    emit(item.body)

    emit(plan.body)
    return FlatPlan(
        tablets=plan.tablets,
        palette=tuple(sorted(plan.palette.items())),
        threading=tuple(plan.threading),
        events=tuple(events),
    )


def compile_plan(source: str, cap: int = DEFAULT_PICK_CAP) -> FlatPlan:
    """parse + expand; raises DomainError E_PARSE carrying the diagnostics."""
    parsed, diags = parse(source)
    if parsed is None:
        raise DomainError("E_PARSE", "plan has errors", diagnostics=diags)
    return expand(parsed, cap=cap)


def format_errors(diags: list[Diagnostic], source: str) -> str:
    """Human-readable diagnostics: position, code, message, caret line."""
    lines = source.splitlines()
    out = []
    for d in sorted(diags, key=lambda d: (d.line, d.col, d.code)):
        out.append(f"{d.line}:{d.col} {d.code} {d.message}")
        if 1 <= d.line <= len(lines):
            out.append(lines[d.line - 1])
            out.append(" " * (d.col - 1) + "^")
    return "\n".join(out) + ("\n" if out else "")


def _ranges(indices_1based):
    """[1,2,3,5] -> '1-3,5'"""
    parts = []
    run = [indices_1based[0], indices_1based[0]]
    for i in indices_1based[1:]:
        if i == run[1] + 1:
            run[1] = i
        else:
            parts.append(run)
            run = [i, i]
    parts.append(run)
    return ",".join(str(a) if a == b else f"{a}-{b}" for a, b in parts)


def pretty_print(flat: FlatPlan) -> str:
    """Emit canonical .band text; expand(parse(...)) round-trips exactly."""
    out = []
    if flat.bit_length is not None:
        out.append(f"# bits: {flat.bit_length}")
    out.append(f"tablets {flat.tablets}")
    for name, hexval in flat.palette:
        out.append(f"palette {name} {hexval}")
    start = 0
    for t in range(1, flat.tablets + 1):
        if t == flat.tablets or flat.threading[t] != flat.threading[start]:
            th = flat.threading[start]
            rng = str(start + 1) if start + 1 == t else f"{start + 1}-{t}"
            out.append(f"thread {rng} {th.sz} {' '.join(th.colors)}")
            start = t
    for kind, payload in flat.events:
        if kind == "flip":
            out.append(f"flip {_ranges([i + 1 for i in payload])}")
        else:
            tokens = []
            t = 0
            while t < flat.tablets:
                a = payload[t]
                t2 = t
                while t2 + 1 < flat.tablets and payload[t2 + 1] == a:
                    t2 += 1
                if a != IDLE:
                    rng = str(t + 1) if t == t2 else f"{t + 1}-{t2 + 1}"
                    tokens.append(f"{rng}{a}")
                t = t2 + 1
            out.append(" ".join(tokens) if tokens else "I")
    return "\n".join(out) + "\n"
