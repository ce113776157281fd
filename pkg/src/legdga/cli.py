"""Command-line interface: ``legdga <command> [flags] [file|-]``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from pathlib import Path

from . import cedga
from . import chordpath as cp
from .corpus import NAMED, random_corpus
from .diagram import FrontDiagram, FrontError, front_from_json
from .mcs import (
    AFormMcs,
    Mcs,
    McsError,
    aform_from_set,
    degree_zero_crossings,
    enumerate_aform,
    mcs_from_json,
    parse_marked_front,
    propagate,
)
from .moves import MoveError, apply_move, parse_move, random_move
from .render import render_svg
from .verify import SUITES, Runner
from .z2linalg import homology_dims

COMMANDS = ("validate", "dga", "augs", "aform", "homology", "verify", "move", "render")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def read_source(arg: str | None) -> str:
    """File path, ``-`` for stdin, a bundled front name, or inline front text."""
    if arg is None:
        raise UsageError("no input given")
    if arg == "-":
        return sys.stdin.read()
    if arg in NAMED:
        return NAMED[arg]
    p = Path(arg)
    if p.is_file():
        return p.read_text()
    if any(ch in arg for ch in ";\n") or arg.strip()[:1] in "lxr{":
        return arg
    raise UsageError(f"cannot read input {arg!r}")


def load(arg: str | None):
    """Return ``(front, marks, cusp_data)``; JSON input is recognised by a leading brace."""
    text = read_source(arg)
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        m = mcs_from_json(data) if data.get("marks") or data.get("cusp_data") else None
        if m is not None:
            return m.front, m.marks, dict(m.cusp_data)
        return front_from_json(data), (), {}
    return parse_marked_front(text)


def parse_aug(fd: FrontDiagram, bits: str) -> frozenset[int]:
    crossings = fd.crossings
    if len(bits) != len(crossings) or set(bits) - {"0", "1"}:
        raise UsageError(f"--aug needs {len(crossings)} bits (one per crossing, in order)")
    return frozenset(g.id for g, b in zip(crossings, bits) if b == "1")


def build_mcs(fd: FrontDiagram, marks, cdata, aug: str | None) -> Mcs:
    if aug is not None:
        if marks or cdata:
            raise UsageError("--aug builds an A-form MCS; the input must not carry marks")
        return aform_from_set(fd, parse_aug(fd, aug))
    return propagate(fd, marks, cdata)


def aform_set(m: Mcs) -> frozenset[int] | None:
    """Crossing set S if ``m`` is exactly the A-form MCS for S."""
    if isinstance(m, AFormMcs):
        return m.marked_crossings
    if m.cusp_data:
        return None
    fd = m.front
    S = set()
    for mk in m.marks:
        g = fd.generator_at(mk.gap + 1)
        if g is None or not g.is_crossing or (mk.upper, mk.lower) != (g.k, g.k + 1) or g.id in S:
            return None
        S.add(g.id)
    return frozenset(S) if len(S) == len(m.marks) else None


def _names(fd: FrontDiagram) -> dict[int, str]:
    return {g.id: g.name for g in fd.generators}


def _fmt_set(fd: FrontDiagram, S) -> str:
    names = _names(fd)
    return "{" + ",".join(names[g] for g in sorted(S)) + "}"


def _bits(fd: FrontDiagram, S) -> str:
    return "".join("1" if g.id in S else "0" for g in fd.crossings)


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text or json payload)


def cmd_validate(args):
    fd, marks, cdata = load(args.input)
    out = {"front": fd.render(), "generators": [
        {"name": g.name, "degree": g.degree} for g in fd.generators]}
    lines = [f"front: valid ({len(fd.events)} events; generators "
             + " ".join(f"{g.name}:{g.degree}" for g in fd.generators) + ")"]
    try:
        m = build_mcs(fd, marks, cdata, args.aug)
    except McsError as exc:
        out.update(valid=False, clause=exc.clause, slice=exc.slice_index, message=str(exc))
        lines.append(f"invalid: {exc}")
        return 1, lines, out
    S = aform_set(m)
    if S is not None:
        desc = f"valid A-form S={_fmt_set(fd, S)}"
    else:
        desc = f"valid ({len(m.marks)} marks, {len(m.cusp_data)} cusps with implicit marks)"
    out.update(valid=True, aform=None if S is None else _bits(fd, S))
    lines.append(desc)
    return 0, lines, out


def _dga_table(fd: FrontDiagram, diff, prefix: str):
    names = _names(fd)
    order = sorted(fd.generators, key=lambda g: (g.degree, g.id))
    lines = [f"{prefix}{g.name} = {diff[g.id].render(names)}" for g in order]
    data = {g.name: [[names[x] for x in w] for w in diff[g.id].sorted_words()] for g in order}
    return lines, data


def cmd_dga(args):
    fd, marks, cdata = load(args.input)
    which = args.which
    if which == "ce":
        diff, prefix = cedga.differential(fd), "∂"
    elif which == "ce-twisted":
        if args.aug is None:
            raise UsageError("ce-twisted needs --aug")
        try:
            diff = cedga.twist(cedga.differential(fd), parse_aug(fd, args.aug))
        except cedga.NotAnAugmentation as exc:
            raise UsageError(f"--aug {args.aug} is not an augmentation: {exc}") from None
        prefix = "∂^ε "
    else:
        m = build_mcs(fd, marks, cdata, args.aug)
        diff, prefix = cp.differential(m), "d "
    lines, data = _dga_table(fd, diff, prefix)
    return 0, lines, {"which": which, "differential": data}


def cmd_augs(args):
    fd, _, _ = load(args.input)
    augs = cedga.augmentations(fd)
    names = _names(fd)
    lines = [f"crossings: {' '.join(g.name for g in fd.crossings)}",
             f"degree-0: {' '.join(names[g] for g in degree_zero_crossings(fd))}",
             f"{len(augs)} augmentation(s)"]
    lines += [f"{a.bitstring()} S={_fmt_set(fd, a.support)}" for a in augs]
    return 0, lines, {"count": len(augs), "augmentations": [a.bitstring() for a in augs]}


def cmd_aform(args):
    fd, _, _ = load(args.input)
    ms = enumerate_aform(fd)
    lines = [f"{len(ms)} A-form MCS(s)"]
    lines += [f"{_bits(fd, m.marked_crossings)} S={_fmt_set(fd, m.marked_crossings)}" for m in ms]
    return 0, lines, {"count": len(ms), "mcs": [m.to_json() for m in ms]}


def _hom_str(h: dict[int, int]) -> str:
    return " ".join(f"H{d}={h[d]}" for d in sorted(h))


def cmd_homology(args):
    fd, marks, cdata = load(args.input)
    if marks or cdata or args.aug is not None:
        m = build_mcs(fd, marks, cdata, args.aug)
        h = homology_dims(cp.linearized(m))
        return 0, [_hom_str(h)], {"homology": {str(k): v for k, v in h.items()}}
    ce = cedga.differential(fd)
    aug_rows, mcs_rows = [], []
    for a in cedga.augmentations(fd, ce):
        h = homology_dims(cp.linearized_complex(fd, cedga.twist(ce, a)))
        aug_rows.append((a.bitstring(), h))
    for m in enumerate_aform(fd):
        mcs_rows.append((_bits(fd, m.marked_crossings), homology_dims(cp.linearized(m))))
    key = lambda h: tuple(sorted(h.items()))  # noqa: E731
    same = Counter(key(h) for _, h in aug_rows) == Counter(key(h) for _, h in mcs_rows)
    lines = ["augmentations:"] + [f"  {b} {_hom_str(h)}" for b, h in aug_rows]
    lines += ["A-form MCSs:"] + [f"  {b} {_hom_str(h)}" for b, h in mcs_rows]
    lines.append(f"multisets equal: {'yes' if same else 'no'}")
    data = {
        "augmentations": {b: {str(k): v for k, v in h.items()} for b, h in aug_rows},
        "aform": {b: {str(k): v for k, v in h.items()} for b, h in mcs_rows},
        "equal": same,
    }
    return (0 if same else 1), lines, data


def _fronts_for(args) -> list[FrontDiagram]:
    if args.random:
        return random_corpus(args.random, args.seed, max_crossings=args.max_crossings)
    fd, _, _ = load(args.input)
    return [fd]


def cmd_verify(args):
    extra = []
    if not args.random:
        fd, marks, cdata = load(args.input)
        if marks or cdata:
            extra.append(propagate(fd, marks, cdata))
        fronts = [fd]
    else:
        fronts = _fronts_for(args)
    runner = Runner(fronts, extra, seed=args.seed)
    results = runner.run(args.suite)
    ok = all(r.passed for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{'all passed' if ok else 'FAILED'} on {len(fronts)} front(s)")
    data = {"passed": ok, "results": [r.__dict__ for r in results], "fronts": len(fronts)}
    return (0 if ok else 1), lines, data


def cmd_move(args):
    fd, marks, cdata = load(args.input)
    m = build_mcs(fd, marks, cdata, args.aug)
    steps = list(args.step or [])
    if args.script:
        steps += [ln.strip() for ln in Path(args.script).read_text().splitlines()
                  if ln.strip() and not ln.lstrip().startswith("#")]
    log = []
    for s in steps:
        cert = apply_move(m, parse_move(s))
        log.append(f"# {cert.descriptor} [label {cert.label}] window {list(cert.window)}")
        m = cert.after
    if args.random:
        rng = random.Random(args.seed)
        for _ in range(args.random):
            cert = random_move(m, rng)
            if cert is None:
                break
            log.append(f"# {cert.descriptor} [label {cert.label}] window {list(cert.window)}")
            m = cert.after
    lines = log + m.to_text().splitlines()
    return 0, lines, {"moves": [ln[2:] for ln in log], "mcs": m.to_json()}


def cmd_render(args):
    fd, marks, cdata = load(args.input)
    if marks or cdata or args.aug is not None:
        obj = build_mcs(fd, marks, cdata, args.aug)
    else:
        obj = fd
    path = None
    if args.path:
        if not isinstance(obj, Mcs):
            obj = propagate(fd)
        name, _, idx = args.path.partition(":")
        a = fd.generator_named(name)
        paths = cp.enumerate_paths(obj, a)
        i = int(idx or 0)
        if not 0 <= i < len(paths):
            raise UsageError(f"{name} has {len(paths)} chord path(s)")
        path = paths[i]
    return 0, render_svg(obj, path), None


HANDLERS = {
    "validate": cmd_validate,
    "dga": cmd_dga,
    "augs": cmd_augs,
    "aform": cmd_aform,
    "homology": cmd_homology,
    "verify": cmd_verify,
    "move": cmd_move,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="legdga", description="Legendrian DGA and Morse complex sequence toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, svg=False):
        p.add_argument("--format", choices=("text", "json", "svg") if svg else ("text", "json"),
                       default="svg" if svg else "text")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--aug", help="augmentation bits in crossing order (builds the A-form MCS)")

    for name in ("validate", "augs", "aform", "homology"):
        common(sub.add_parser(name))
        sub.choices[name].add_argument("input", nargs="?", default="-")
    p = sub.add_parser("dga")
    common(p)
    p.add_argument("--which", choices=("mcs", "ce", "ce-twisted"), default="ce")
    p.add_argument("input", nargs="?", default="-")

    p = sub.add_parser("verify")
    common(p)
    p.add_argument("suite", nargs="?", default="all", choices=SUITES + ("all",))
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--random", type=int, default=0, metavar="N", help="check N random fronts instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-crossings", type=int, default=8)

    p = sub.add_parser("move")
    common(p)
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--step", action="append", help="one move, e.g. 'explosion 3 1 3'")
    p.add_argument("--script", help="file with one move per line")
    p.add_argument("--random", type=int, default=0, metavar="N", help="then apply N random moves")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("render")
    common(p, svg=True)
    p.set_defaults(format="svg")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--path", help="overlay chord path NAME[:INDEX], e.g. c1:0")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, lines, data = HANDLERS[args.command](args)
    except (FrontError, McsError, MoveError, UsageError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "render":
        text = lines
    elif args.format == "json":
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
