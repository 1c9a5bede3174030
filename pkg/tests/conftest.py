"""Shared test helpers: random plan generation and a pure-python fold oracle."""

import random

import pytest

from tabletloom.loom import (
    BACKWARD, FORWARD, IDLE, Threading, apply_flips, new_band, step_pick,
)
from tabletloom.plan import FlatPlan

PALETTE4 = (("a", "#111111"), ("b", "#cc0000"), ("c", "#00aa00"), ("d", "#0044cc"))


def random_threading(rng: random.Random, distinct=False) -> Threading:
    names = [p[0] for p in PALETTE4]
    if distinct:
        colors = tuple(rng.sample(names, 4))
    else:
        colors = tuple(rng.choice(names) for _ in range(4))
    return Threading(rng.choice("SZ"), colors)


def random_flatplan(rng: random.Random, max_tablets=16, max_picks=64,
                    with_flips=True, with_idle=True, distinct_colors=False) -> FlatPlan:
    tablets = rng.randint(1, max_tablets)
    picks = rng.randint(1, max_picks)
    threading = tuple(random_threading(rng, distinct_colors) for _ in range(tablets))
    actions = [FORWARD, BACKWARD] + ([IDLE] if with_idle else [])
    events = []
    for _ in range(picks):
        if with_flips and rng.random() < 0.15:
            k = rng.randint(1, tablets)
            events.append(("flip", tuple(sorted(rng.sample(range(tablets), k)))))
        events.append(("pick", tuple(rng.choice(actions) for _ in range(tablets))))
    return FlatPlan(tablets=tablets, palette=PALETTE4, threading=threading,
                    events=tuple(events))


def fold_simulate(flat: FlatPlan):
    """Independent oracle: fold the scalar step functions over the plan.

    Returns a picks x tablets list of Cell, never touching the array kernel.
    """
    state = new_band(list(flat.threading), dict(flat.palette))
    rows = []
    for kind, payload in flat.events:
        if kind == "flip":
            state = apply_flips(state, payload)
        else:
            state, cells = step_pick(state, payload)
            rows.append(cells)
    return rows


@pytest.fixture
def rng():
    return random.Random(20230811)
