"""Versioned text serialization of a :class:`ConstructionState`.

Sections appear in a fixed order, one record per line; ``dumps(loads(t))``
returns ``t`` unchanged for any file written by :func:`dumps`.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .amalgam import AlternatingForm
from .autos import FreeAutomorphism, NielsenMove
from .engine import ConstructionState, FolnerBlock, Requirement, WitnessTriple
from .perm import Conflict, from_ranges, to_ranges
from .words import Word

MAGIC = "f2double-state"
VERSION = 1
SECTIONS = ("meta", "alpha", "sigma", "pinned", "sigma_pinned", "fixc", "witness",
            "order", "folner", "transitivity", "mover", "log")


class StateFormatError(ValueError):
    pass


def dumps(state: ConstructionState) -> str:
    out = [f"{MAGIC} {VERSION}", "meta:"]
    out.append(f"c_input {state.c_input}")
    out.append(f"c {state.c}")
    out.append(f"automorphism {state.automorphism}")
    out.append(f"stages {state.stages}")
    out.append(f"used_extent {state.used_extent}")
    out.append("alpha:")
    out += [f"{x} -> {y}" for x, y in state.alpha.items()]
    out.append("sigma:")
    out += [f"{x} -> {y}" for x, y in state.sigma.items()]
    for name, pts in (("pinned", state.alpha_pins), ("sigma_pinned", state.sigma_pins),
                      ("fixc", state.fixc)):
        out.append(f"{name}:")
        out += [f"{lo}..{hi}" for lo, hi in to_ranges(pts)]
    out.append("witness:")
    out += [f"{t.word} {t.x} {t.wx} {int(t.used)}" for t in state.witnesses]
    out.append("order:")
    out += [f"{k} {z} {image}" for k, z, image in state.orders]
    out.append("folner:")
    out += [f"{b.lo} {b.hi} {b.epsilon.numerator}/{b.epsilon.denominator} {int(b.reserved)}"
            for b in state.folner_blocks]
    out.append("transitivity:")
    out += [f"{n} {m} {','.join(map(str, reps)) or '-'}"
            for (n, m), reps in state.transitivity.items()]
    out.append("mover:")
    out += [f"{key} {x0} {image}" for key, (x0, image) in state.movers.items()]
    out.append("log:")
    out += state.log
    out.append("end")
    return "\n".join(out) + "\n"


def _split(text: str) -> dict:
    lines = text.split("\n")
    if not lines or lines[0] != f"{MAGIC} {VERSION}":
        raise StateFormatError(f"expected header {MAGIC!r} version {VERSION}, got {lines[0][:40]!r}")
    if lines[-1] != "" or lines[-2] != "end":
        raise StateFormatError("missing end marker")
    body = {}
    current = None
    expected = iter(SECTIONS)
    for no, line in enumerate(lines[1:-2], start=2):
        if line.endswith(":") and " " not in line:
            name = line[:-1]
            if name != next(expected, None):
                raise StateFormatError(f"line {no}: unexpected section {name!r}")
            current = body[name] = []
        elif current is None:
            raise StateFormatError(f"line {no}: record before the first section")
        else:
            current.append((no, line))
    missing = [s for s in SECTIONS if s not in body]
    if missing:
        raise StateFormatError(f"missing sections {missing}")
    return body


def _ints(no, line, count):
    parts = line.split()
    if len(parts) != count:
        raise StateFormatError(f"line {no}: expected {count} fields in {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise StateFormatError(f"line {no}: non-integer field in {line!r}") from None


def _pair(no, line, sep):
    left, found, right = line.partition(sep)
    if not found:
        raise StateFormatError(f"line {no}: expected 'x{sep}y', got {line!r}")
    return _ints(no, f"{left} {right}", 2)


def loads(text: str) -> ConstructionState:
    body = _split(text)
    meta = {}
    for no, line in body["meta"]:
        key, _, value = line.partition(" ")
        meta[key] = value
    try:
        moves = () if meta["automorphism"] == "identity" else tuple(
            NielsenMove[name] for name in meta["automorphism"].split())
        state = ConstructionState(Word.parse(meta["c_input"]), FreeAutomorphism(moves),
                                  Word.parse(meta["c"]))
        state.stages = int(meta["stages"])
        state.used_extent = int(meta["used_extent"])
    except (KeyError, ValueError) as exc:
        raise StateFormatError(f"bad meta section: {exc}") from None

    for name, target in (("alpha", state.alpha), ("sigma", state.sigma)):
        seen = {}
        for no, line in body[name]:
            x, y = _pair(no, line, " -> ")
            if y in seen:
                raise StateFormatError(
                    f"line {no}: {name} is not injective: {seen[y]} -> {y} and {x} -> {y}")
            seen[y] = x
            try:
                target.assign(x, y)
            except Conflict as exc:
                raise StateFormatError(f"line {no}: {name} entry {x} -> {y}: {exc}") from None
    for name, attr in (("pinned", "alpha_pins"), ("sigma_pinned", "sigma_pins"), ("fixc", "fixc")):
        ranges = [tuple(_pair(no, line, "..")) for no, line in body[name]]
        setattr(state, attr, from_ranges(ranges))

    for no, line in body["witness"]:
        parts = line.split()
        if len(parts) != 4:
            raise StateFormatError(f"line {no}: bad witness {line!r}")
        try:
            t = WitnessTriple(Word.parse(parts[0]), int(parts[1]), int(parts[2]), parts[3] == "1")
        except ValueError as exc:
            raise StateFormatError(f"line {no}: {exc}") from None
        state.witnesses.append(t)
        state.pool.setdefault(t.word, []).append(t)
    state.orders = [tuple(_ints(no, line, 3)) for no, line in body["order"]]
    for no, line in body["folner"]:
        parts = line.split()
        if len(parts) != 4:
            raise StateFormatError(f"line {no}: bad folner block {line!r}")
        try:
            lo, hi = int(parts[0]), int(parts[1])
            eps = Fraction(parts[2])
        except ValueError as exc:
            raise StateFormatError(f"line {no}: {exc}") from None
        state.folner_blocks.append(FolnerBlock(lo, hi, eps, parts[3] == "1"))
    for no, line in body["transitivity"]:
        parts = line.split()
        if len(parts) != 3:
            raise StateFormatError(f"line {no}: bad transitivity record {line!r}")
        n, m = _ints(no, " ".join(parts[:2]), 2)
        reps = () if parts[2] == "-" else tuple(_ints(no, parts[2].replace(",", " "), m))
        state.transitivity[(n, m)] = reps
    for no, line in body["mover"]:
        parts = line.split()
        if len(parts) != 3:
            raise StateFormatError(f"line {no}: bad mover {line!r}")
        try:
            AlternatingForm.parse(parts[0])
        except ValueError as exc:
            raise StateFormatError(f"line {no}: {exc}") from None
        x0, image = _ints(no, " ".join(parts[1:]), 2)
        state.movers[parts[0]] = (x0, image)
    for no, line in body["log"]:
        try:
            Requirement.parse(line)
        except ValueError as exc:
            raise StateFormatError(f"line {no}: {exc}") from None
        state.log.append(line)
    return state


def save(state: ConstructionState, path) -> None:
    Path(path).write_text(dumps(state), encoding="utf-8")


def load(path) -> ConstructionState:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise StateFormatError(f"{path} is not UTF-8 text: {exc}") from None
    return loads(text)
