"""Acceptance suite: one test per release criterion, one PASS line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines.  Each test is self-contained and pins its own tolerances.
"""

import itertools
import json
import random
import threading
import time
import urllib.request
from pathlib import Path

import numpy as np

from conftest import random_flatplan
from tabletloom import bandio, render, server
from tabletloom.errors import DomainError
from tabletloom.loom import BACKWARD, FORWARD, Threading, simulate
from tabletloom.plan import FlatPlan, compile_plan, parse
from tabletloom.reader import CODEC_COLORS, decode_bits, encode_bits, infer_turns

GOLDENS = Path(__file__).parent / "goldens"


def announce(name):
    print(f"PASS: {name}")


def test_automaton_invariants():
    """Forward cycle, reversal doubling, back-face relation, flip involution
    and flip mirror over >= 1000 random plans in under 10 s."""
    rng = random.Random(1)
    t0 = time.monotonic()
    # definitional anchors
    anchor = FlatPlan(1, (("a", "#000000"), ("b", "#111111"), ("c", "#222222"), ("d", "#333333")),
                      (Threading("S", ("a", "b", "c", "d")),),
                      tuple(("pick", (FORWARD,)) for _ in range(4)))
    assert [int(h) for h in simulate(anchor).hole[:, 0]] == [0, 1, 2, 3]
    mirrored = FlatPlan(anchor.tablets, anchor.palette, anchor.threading,
                        (("flip", (0,)),) + anchor.events)
    assert [int(h) for h in simulate(mirrored).hole[:, 0]] == [0, 3, 2, 1]

    for i in range(1000):
        flat = random_flatplan(rng, max_tablets=16, max_picks=64, with_idle=False)
        dd = simulate(flat)
        # rotation closure + back-face relation
        assert 0 <= dd.rot.min() and dd.rot.max() <= 3
        for t in range(dd.tablets):
            colors = dd.threading[t].colors
            for p in range(dd.picks):
                h = int(dd.hole[p, t])
                assert dd.cell(p, t).back_color == colors[(h + 2) % 4]
        # reversal doubling appended to the random prefix
        for first, second in ((FORWARD, BACKWARD), (BACKWARD, FORWARD)):
            ext = FlatPlan(flat.tablets, flat.palette, flat.threading,
                           flat.events + (("pick", (first,) * flat.tablets),
                                          ("pick", (second,) * flat.tablets)))
            dde = simulate(ext)
            assert np.array_equal(dde.hole[-1], dde.hole[-2])
        # flip involution: double flip inserted anywhere changes nothing
        cut = rng.randint(0, len(flat.events))
        idx = tuple(sorted(rng.sample(range(flat.tablets),
                                      rng.randint(1, flat.tablets))))
        doubled = FlatPlan(flat.tablets, flat.palette, flat.threading,
                           flat.events[:cut] + (("flip", idx), ("flip", idx)) + flat.events[cut:])
        ddd = simulate(doubled)
        assert np.array_equal(dd.hole, ddd.hole) and np.array_equal(dd.slant, ddd.slant)
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0, f"property suite took {elapsed:.1f}s"
    announce(f"automaton invariant suite (1000 plans, {elapsed:.1f}s)")


def test_perfect_reconstruction():
    """infer_turns round-trips >= 500 random turn-only plans; distinct
    colors give a unique, exact reconstruction; exhaustive oracle agrees."""
    rng = random.Random(2)
    for i in range(500):
        distinct = i % 2 == 0
        flat = random_flatplan(rng, max_tablets=8, max_picks=32, with_flips=False,
                               with_idle=False, distinct_colors=distinct)
        grid = simulate(flat).front_colors()
        result = infer_turns(grid, list(flat.threading), cap=10 ** 6,
                             palette=flat.palette)
        assert simulate(result.plan).front_colors() == grid
        if distinct:
            assert result.solution_count == 1
            assert result.plan.pick_rows() == flat.pick_rows()

    # exhaustive enumeration oracle, <= 8 picks and <= 4 tablets
    for _ in range(60):
        tablets = rng.randint(1, 4)
        picks = rng.randint(1, 8)
        threading = [Threading(rng.choice("SZ"),
                               tuple(rng.choice("abcd") for _ in range(4)))
                     for _ in range(tablets)]
        rows = [tuple(rng.choice((FORWARD, BACKWARD)) for _ in range(tablets))
                for _ in range(picks)]
        palette = tuple((c, "#808080") for c in "abcd")
        flat = FlatPlan(tablets, palette, tuple(threading),
                        tuple(("pick", r) for r in rows))
        grid = simulate(flat).front_colors()
        expected = 1
        for t in range(tablets):
            observed = [grid[p][t] for p in range(picks)]
            count = 0
            for seq in itertools.product((FORWARD, BACKWARD), repeat=picks):
                r, ok = 0, True
                for a, want in zip(seq, observed):
                    v = r if a == FORWARD else (r + 3) % 4
                    if threading[t].colors[v] != want:
                        ok = False
                        break
                    r = (r + 1) % 4 if a == FORWARD else v
                count += ok
            expected *= count
        result = infer_turns(grid, threading, cap=10 ** 9, palette=palette)
        assert result.solution_count == expected
    announce("perfect-reconstruction round-trip (500 plans + exhaustive oracle)")


def test_weave_as_signal():
    """decode(simulate(encode(bits))) == bits for >= 200 random bitstreams
    up to 4096 bits, T in {1, 2, 8, 32}; tampering raises E_CORRUPT."""
    rng = random.Random(3)
    for i in range(200):
        tablets = (1, 2, 8, 32)[i % 4]
        n = rng.randint(1, 4096)
        bits = [rng.randint(0, 1) for _ in range(n)]
        flat = encode_bits(bits, tablets)
        grid = simulate(flat).front_colors()
        assert decode_bits(grid, list(flat.threading), n) == bits

    for _ in range(50):
        tablets = rng.choice((1, 2, 8))
        bits = [rng.randint(0, 1) for _ in range(rng.randint(8, 64))]
        flat = encode_bits(bits, tablets)
        grid = simulate(flat).front_colors()
        picks = len(grid)
        p, t = rng.randrange(picks), rng.randrange(tablets)
        r = 0
        for q in range(p):
            r = (r + 1) % 4 if grid[q][t] == CODEC_COLORS[r] else (r + 3) % 4
        grid[p][t] = CODEC_COLORS[(r + 1) % 4]  # impossible emission here
        try:
            decode_bits(grid, list(flat.threading), len(bits))
            raise AssertionError("tampering not detected")
        except DomainError as exc:
            assert exc.code == "E_CORRUPT"
            assert exc.details == {"tablet": t, "pick": p}
    announce("weave-as-signal round-trip (200 bitstreams + tamper detection)")


BAD_PLANS = [
    ("F\n", "E_TABLETS_MISSING", 1),
    ("thread 1 S r r r r\n", "E_TABLETS_MISSING", 1),
    ("", "E_TABLETS_MISSING", 1),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\nthread 2 S r r r r\n",
     "E_THREAD_DUP", 4),
    ("tablets 2\npalette r #cc0000\nthread 1 S r r r r\nF\n", "E_THREAD_MISSING", 1),
    ("tablets 2\npalette r #cc0000\nthread 1-3 S r r r r\n", "E_BAD_RANGE", 3),
    ("tablets 2\npalette r #cc0000\nthread 2-1 S r r r r\n", "E_BAD_RANGE", 3),
    ("tablets 2\npalette r #cc0000\nthread 0-1 S r r r r\n", "E_BAD_RANGE", 3),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\n5F\n", "E_BAD_RANGE", 4),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\n1-2F 2B\n", "E_OVERLAP", 4),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\nF F\n", "E_OVERLAP", 4),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\nZZZ\n", "E_BAD_TOKEN", 4),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\nrepeat\nF\nend\n",
     "E_BAD_TOKEN", 4),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\nrepeat 2\nF\n",
     "E_UNCLOSED_REPEAT", 4),
    ("tablets 2\npalette r #cc0000\nthread 1-2 S r r r r\nend\n", "E_BAD_TOKEN", 4),
    ("tablets 1\npalette r #cc0000\nthread 1 S r r w w\n", "E_UNKNOWN_COLOR", 3),
    ("tablets 1\ntablets 1\npalette r #cc0000\nthread 1 S r r r r\n", "E_BAD_TOKEN", 2),
]


def test_dsl_conformance():
    """>= 15 bad-plan fixtures hit their code at their line; the parser is
    crash-free on 100000 random byte inputs."""
    assert len(BAD_PLANS) >= 15
    for src, code, line in BAD_PLANS:
        plan, diags = parse(src)
        assert plan is None, src
        assert any(d.code == code and d.line == line for d in diags), (src, code, diags)

    rng = random.Random(4)
    for _ in range(100000):
        n = rng.randint(0, 48)
        blob = bytes(rng.randrange(256) for _ in range(n))
        parse(blob.decode("utf-8", errors="replace"))  # must not raise
    announce(f"DSL conformance ({len(BAD_PLANS)} fixtures + 100000-input fuzz)")


def test_determinism_golden_files():
    """Shipped examples reproduce the committed goldens, twice, in every format."""
    entries, failures = bandio.load_catalog()
    assert failures == []
    ids = {e.id for e in entries}
    assert {"diagonals", "chevron", "zigzag", "hallstatt-like"} <= ids
    for e in entries:
        for _ in range(2):
            dd = simulate(compile_plan(e.source))
            assert bandio.export_drawdown(dd) == (GOLDENS / f"{e.id}.json").read_bytes()
            both = render.RenderOptions(face="both")
            assert render.render_text(dd, both) == (GOLDENS / f"{e.id}.txt").read_text()
            assert render.render_svg(dd, render.RenderOptions(cell_size=8)) == \
                (GOLDENS / f"{e.id}.svg").read_text()
            assert render.render_raster(dd, render.RenderOptions(cell_size=4)) == \
                (GOLDENS / f"{e.id}.ppm").read_bytes()
    announce("determinism / golden files (4 entries x 4 formats x 2 runs)")


def test_twist_accounting():
    """twist_profile equals an independent signed recount; palindromes end at 0."""
    from tabletloom.loom import IDLE, twist_profile
    rng = random.Random(5)
    for _ in range(200):
        flat = random_flatplan(rng, max_tablets=8, max_picks=32)
        dd = simulate(flat)
        profile = twist_profile(dd)
        rows = flat.pick_rows()
        for t in range(flat.tablets):
            running = 0
            for p, row in enumerate(rows):
                running += {FORWARD: 1, BACKWARD: -1, IDLE: 0}[row[t]]
                assert int(profile.series[p, t]) == running
    for _ in range(50):
        flat = random_flatplan(rng, max_tablets=6, max_picks=16,
                               with_flips=False, with_idle=False)
        rows = flat.pick_rows()
        mirrored = [tuple(FORWARD if a == BACKWARD else BACKWARD for a in row)
                    for row in reversed(rows)]
        full = FlatPlan(flat.tablets, flat.palette, flat.threading,
                        flat.events + tuple(("pick", r) for r in mirrored))
        profile = twist_profile(simulate(full))
        assert all(int(v) == 0 for v in profile.series[-1])
    announce("twist accounting (250 plans, independent recount)")


def test_cli_service_parity():
    """POST /simulate bytes equal the simulate code path for the whole catalog."""
    srv = server.make_server(0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    try:
        base = f"http://127.0.0.1:{srv.server_address[1]}"
        entries, _ = bandio.load_catalog()
        assert entries
        for e in entries:
            req = urllib.request.Request(f"{base}/simulate",
                                         data=e.source.encode(), method="POST")
            with urllib.request.urlopen(req) as resp:
                assert resp.status == 200
                assert resp.read() == server.simulate_bytes(e.source)
    finally:
        srv.shutdown()
    announce(f"CLI/service parity ({len(entries)} catalog entries)")
