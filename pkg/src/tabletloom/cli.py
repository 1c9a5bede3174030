"""Command-line entry point.

    tabletloom simulate <plan> [--out FILE]
    tabletloom render <plan|drawdown.json> --format text|svg|ppm
                      [--face front|back|both] [--cell-size N] [--ansi] [--out FILE]
    tabletloom validate <plan>
    tabletloom twist <plan> [--threshold N]
    tabletloom read <grid> <threading-plan> [--any-start] [--cap N]
    tabletloom encode --tablets T (--bits-hex HEX | --in FILE)
    tabletloom decode <grid> <threading-plan> --bits N
    tabletloom serve [--port P]

`-` means stdin for any input file.  Exit codes: 0 ok, 1 domain error
(diagnostics on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import bandio, render, server
from .errors import DomainError
from .loom import simulate, twist_profile
from .plan import compile_plan, format_errors, parse, pretty_print
from .reader import decode_bits, encode_bits, infer_turns


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(path: str | None, data: bytes):
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _fail(exc: DomainError, source: str = "") -> int:
    diags = exc.details.get("diagnostics")
    if diags:
        sys.stderr.write(format_errors(diags, source))
    else:
        sys.stderr.write(f"{exc.code} {exc.message}\n")
    return 1


def cmd_simulate(args) -> int:
    source = _read_input(args.plan)
    try:
        _write_output(args.out, server.simulate_bytes(source))
    except DomainError as exc:
        return _fail(exc, source)
    return 0


def cmd_render(args) -> int:
    source = _read_input(args.input)
    try:
        if source.lstrip().startswith("{"):
            drawdown = bandio.import_drawdown(source)
        else:
            drawdown = simulate(compile_plan(source))
        opts = render.RenderOptions(face=args.face, cell_size=args.cell_size,
                                    ansi=args.ansi, show_slant=not args.no_slant)
        if args.format == "text":
            _write_output(args.out, render.render_text(drawdown, opts).encode("utf-8"))
        elif args.format == "svg":
            _write_output(args.out, render.render_svg(drawdown, opts).encode("utf-8"))
        else:
            _write_output(args.out, render.render_raster(drawdown, opts))
    except DomainError as exc:
        return _fail(exc, source)
    return 0


def cmd_validate(args) -> int:
    source = _read_input(args.plan)
    plan, diags = parse(source)
    if diags:
        sys.stderr.write(format_errors(diags, source))
        return 1
    print("OK")
    return 0


def cmd_twist(args) -> int:
    source = _read_input(args.plan)
    try:
        drawdown = simulate(compile_plan(source))
    except DomainError as exc:
        return _fail(exc, source)
    profile = twist_profile(drawdown, threshold=args.threshold)
    for t in range(drawdown.tablets):
        column = profile.series[:, t]
        final = int(column[-1]) if len(column) else 0
        peak = int(max(abs(column))) if len(column) else 0
        print(f"tablet {t + 1}: final {final:+d}, max |{peak}|")
    print(f"max |twist| {profile.max_abs} (threshold {profile.threshold})")
    if profile.first_warning_pick is not None:
        print(f"warning: threshold exceeded at pick {profile.first_warning_pick}")
    return 0


def _threading_from_plan(path: str):
    source = _read_input(path)
    flat = compile_plan(source)
    return list(flat.threading), flat.palette


def cmd_read(args) -> int:
    try:
        grid = bandio.import_grid(_read_input(args.grid))
        threading, palette = _threading_from_plan(args.threading_plan)
        result = infer_turns(grid, threading, assume_home=not args.any_start,
                             cap=args.cap, palette=palette)
    except DomainError as exc:
        return _fail(exc)
    sys.stdout.write(pretty_print(result.plan))
    suffix = " (capped)" if result.capped else ""
    print(f"# solutions: {result.solution_count}{suffix}")
    return 0


def _parse_bits(args) -> list[int]:
    if args.bits_hex is not None:
        try:
            raw = bytes.fromhex(args.bits_hex)
        except ValueError:
            raise DomainError("E_EMPTY_BITS", f"bad hex string {args.bits_hex!r}")
        return [(byte >> (7 - i)) & 1 for byte in raw for i in range(8)]
    text = _read_input(args.infile)
    return [int(c) for c in text if c in "01"]


def cmd_encode(args) -> int:
    try:
        flat = encode_bits(_parse_bits(args), args.tablets)
    except DomainError as exc:
        return _fail(exc)
    sys.stdout.write(pretty_print(flat))
    return 0


def cmd_decode(args) -> int:
    try:
        grid = bandio.import_grid(_read_input(args.grid))
        threading, _ = _threading_from_plan(args.threading_plan)
        bits = decode_bits(grid, threading, args.bits)
    except DomainError as exc:
        return _fail(exc)
    print("".join(str(b) for b in bits))
    return 0


def cmd_serve(args) -> int:
    server.serve(args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tabletloom",
                                  description="Tablet weaving simulator and band plan tools")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="plan -> canonical drawdown JSON")
    p.add_argument("plan")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("render", help="plan or drawdown JSON -> text/svg/ppm")
    p.add_argument("input")
    p.add_argument("--format", required=True, choices=["text", "svg", "ppm"])
    p.add_argument("--face", default="front", choices=["front", "back", "both"])
    p.add_argument("--cell-size", type=int, default=12)
    p.add_argument("--ansi", action="store_true")
    p.add_argument("--no-slant", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("validate", help="check a plan, print OK or diagnostics")
    p.add_argument("plan")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("twist", help="per-tablet twist buildup report")
    p.add_argument("plan")
    p.add_argument("--threshold", type=int, default=8)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("read", help="reconstruct a turning plan from a color grid")
    p.add_argument("grid")
    p.add_argument("threading_plan")
    p.add_argument("--any-start", action="store_true")
    p.add_argument("--cap", type=int, default=1000)
    p.set_defaults(func=cmd_read)

    p = sub.add_parser("encode", help="bitstream -> band plan (1=F, 0=B)")
    p.add_argument("--tablets", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--bits-hex")
    group.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="woven grid -> bitstream")
    p.add_argument("grid")
    p.add_argument("threading_plan")
    p.add_argument("--bits", type=int, required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--port", type=int, default=8337)
    p.set_defaults(func=cmd_serve)
    return top


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DomainError as exc:
        return _fail(exc)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
