"""tabletloom: a deterministic tablet (card) weaving simulator.

Band plans in, drawdowns out; plus the inverse reader that reconstructs
turning sequences from observed fabric, and a bitstream codec that
treats the band as a physical digital channel.
"""

from .errors import DomainError
from .loom import (
    Cell,
    Drawdown,
    TabletState,
    Threading,
    WeaveState,
    apply_flips,
    new_band,
    simulate,
    step_pick,
    twist_profile,
)
from .plan import Diagnostic, FlatPlan, Plan, compile_plan, expand, format_errors, parse, pretty_print
from .reader import InferenceResult, decode_bits, encode_bits, infer_turns

__all__ = [
    "Cell", "Diagnostic", "DomainError", "Drawdown", "FlatPlan", "InferenceResult",
    "Plan", "TabletState", "Threading", "WeaveState", "apply_flips", "compile_plan",
    "decode_bits", "encode_bits", "expand", "format_errors", "infer_turns", "new_band",
    "parse", "pretty_print", "simulate", "step_pick", "twist_profile",
]

__version__ = "0.1.0"
