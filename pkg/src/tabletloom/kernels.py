"""Hot inner loop of the weave simulation.

Two interchangeable implementations of the pick-by-pick tablet automaton:
a numba ``@njit`` kernel (default) and a pure-numpy fallback vectorised
over tablets.  Set ``TABLETLOOM_NO_NUMBA=1`` to force the numpy path;
``bench/benchmark.py`` compares the two.

Array conventions (all picks x tablets):
  actions : int8, +1 forward, -1 backward, 0 idle
  flips   : bool, tablet is flipped immediately before this pick
  sz_s    : bool per tablet, True for S threading
Outputs:
  hole    : uint8, effective front hole index 0..3 (thread visible on top)
  rot     : uint8, rotation after the pick
  twist   : int32, signed quarter-turn count after the pick
  slant   : int8, 0 = "|", 1 = "/", 2 = "\\"
"""

from __future__ import annotations

import os

import numpy as np

SLANT_NONE = 0
SLANT_FWD = 1  # "/"
SLANT_BACK = 2  # "\\"


def numba_enabled() -> bool:
    if os.environ.get("TABLETLOOM_NO_NUMBA", "") in ("1", "true", "yes"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _simulate_numpy(actions, flips, sz_s):
    picks, tablets = actions.shape
    hole = np.zeros((picks, tablets), dtype=np.uint8)
    rot = np.zeros((picks, tablets), dtype=np.uint8)
    twist = np.zeros((picks, tablets), dtype=np.int32)
    slant = np.zeros((picks, tablets), dtype=np.int8)

    r = np.zeros(tablets, dtype=np.int64)
    fl = np.zeros(tablets, dtype=bool)
    tw = np.zeros(tablets, dtype=np.int64)
    for p in range(picks):
        f = flips[p]
        fl = fl ^ f
        r = np.where(f, (4 - r) % 4, r)
        a = actions[p].astype(np.int64)
        fwd = a == 1
        back = a == -1
        v = np.where(back, (r + 3) % 4, r)
        r = np.where(fwd, (r + 1) % 4, np.where(back, (r + 3) % 4, r))
        tw = tw + a
        hole[p] = np.where(fl, (4 - v) % 4, v)
        rot[p] = r
        twist[p] = tw
        eff_s = sz_s ^ fl
        down = (fwd & eff_s) | (back & ~eff_s)
        slant[p] = np.where(a == 0, SLANT_NONE, np.where(down, SLANT_BACK, SLANT_FWD))
    return hole, rot, twist, slant


def _simulate_loops(actions, flips, sz_s, hole, rot, twist, slant):
    picks, tablets = actions.shape
    for t in range(tablets):
        r = 0
        fl = False
        tw = 0
        s = sz_s[t]
        for p in range(picks):
            if flips[p, t]:
                fl = not fl
                r = (4 - r) % 4
            a = actions[p, t]
            if a == 1:
                v = r
                r = (r + 1) % 4
                tw += 1
            elif a == -1:
                v = (r + 3) % 4
                r = v
                tw -= 1
            else:
                v = r
            hole[p, t] = (4 - v) % 4 if fl else v
            rot[p, t] = r
            twist[p, t] = tw
            if a == 0:
                slant[p, t] = SLANT_NONE
            else:
                eff_s = s != fl
                if (a == 1) == eff_s:
                    slant[p, t] = SLANT_BACK
                else:
                    slant[p, t] = SLANT_FWD


_numba_kernel = None


def _get_numba_kernel():
    global _numba_kernel
    if _numba_kernel is None:
        from numba import njit

        _numba_kernel = njit(cache=True)(_simulate_loops)
    return _numba_kernel


def simulate_arrays(actions, flips, sz_s):
    """Run the automaton over a full action matrix.

    Dispatches to the numba kernel unless TABLETLOOM_NO_NUMBA is set.
    """
    actions = np.ascontiguousarray(actions, dtype=np.int8)
    flips = np.ascontiguousarray(flips, dtype=np.bool_)
    sz_s = np.ascontiguousarray(sz_s, dtype=np.bool_)
    if not numba_enabled():
        return _simulate_numpy(actions, flips, sz_s)
    picks, tablets = actions.shape
    hole = np.zeros((picks, tablets), dtype=np.uint8)
    rot = np.zeros((picks, tablets), dtype=np.uint8)
    twist = np.zeros((picks, tablets), dtype=np.int32)
    slant = np.zeros((picks, tablets), dtype=np.int8)
    _get_numba_kernel()(actions, flips, sz_s, hole, rot, twist, slant)
    return hole, rot, twist, slant
