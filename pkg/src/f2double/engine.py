"""Requirement scheduler building alpha and sigma by finite extensions.

Every ``satisfy_*`` call only adds stored edges, pins and records, so a
fact certified once (a witness triple, a fixed point of ``c``, a Folner
ratio) stays true for the rest of the run.
"""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import amalgam
from .amalgam import AlternatingForm
from .autos import FreeAutomorphism, specialize
from .graphs import build_ff_graph, embed, path_graph
from .perm import PartialInjection, apply_word, fresh_interval, settled_apply
from .words import Word, exponent_sums, free_reduce, is_special, power_of, words_up_to


class NonSpecialC(ValueError):
    pass


class CertificationError(RuntimeError):
    """A freshly built configuration failed its own exact check."""


@dataclass
class WitnessTriple:
    word: Word
    x: int
    wx: int
    used: bool = False


@dataclass
class FolnerBlock:
    lo: int
    hi: int
    epsilon: Fraction
    reserved: bool = False

    def points(self) -> range:
        return range(self.lo, self.hi + 1)

    def __len__(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class Requirement:
    kind: str
    args: tuple = ()

    KINDS = ("ff", "order", "folner", "trans", "sigma", "reserve")

    def __str__(self) -> str:
        return " ".join([self.kind] + [str(a) for a in self.args])

    @classmethod
    def parse(cls, line: str) -> "Requirement":
        kind, *rest = line.split()
        if kind == "ff" and len(rest) == 1:
            return cls(kind, (Word.parse(rest[0]),))
        if kind in ("order", "folner") and len(rest) == 1:
            return cls(kind, (int(rest[0]),))
        if kind == "trans" and len(rest) == 2:
            return cls(kind, (int(rest[0]), int(rest[1])))
        if kind == "sigma" and len(rest) == 1:
            return cls(kind, (AlternatingForm.parse(rest[0]),))
        if kind == "reserve" and not rest:
            return cls(kind)
        raise ValueError(f"bad requirement line {line!r}")


def _logged(kind: str):
    """Log top-level calls only; nested calls are reproduced by replay."""
    def deco(method):
        @functools.wraps(method)
        def wrapper(self, *args):
            if self._depth == 0:
                self.log.append(str(Requirement(kind, args)))
            self._depth += 1
            try:
                return method(self, *args)
            finally:
                self._depth -= 1
        return wrapper
    return deco


class ConstructionState:
    """Monotone construction state; see the module docstring."""

    def __init__(self, c_input, automorphism=None, c=None):
        c_input = Word(c_input)
        if not free_reduce(c_input):
            raise ValueError("c must be freely nontrivial")
        if c is None:
            automorphism, c = specialize(c_input)
        self.c_input = c_input
        self.automorphism = automorphism or FreeAutomorphism()
        self.c = Word(c)
        self.alpha = PartialInjection()
        self.sigma = PartialInjection()
        self.alpha_pins = set()
        self.sigma_pins = set()
        self.fixc = set()
        self.witnesses = []
        self.pool = {}
        self.orders = []
        self.folner_blocks = []
        self.transitivity = {}
        self.movers = {}
        self.used_extent = 0
        self.stages = 0
        self.log = []
        self._depth = 0

    # -- primitives -------------------------------------------------------

    def _certify(self, x: int) -> bool:
        if x in self.fixc:
            return True
        if settled_apply(self.alpha, self.alpha_pins, self.c, x) == x:
            self.fixc.add(x)
            return True
        return False

    def _embed(self, g):
        _, placement = embed(self, g)
        for z in placement.values():
            if not self.alpha.touches(z):
                self.alpha_pins.add(z)
        return placement

    def _record_ff(self, w) -> WitnessTriple:
        q = build_ff_graph(self.c, w)
        placement = self._embed(q)
        z0, wz0 = placement[q.anchors["v0"]], placement[q.anchors["wv0"]]
        if not (self._certify(z0) and self._certify(wz0)):
            raise CertificationError(f"FF anchors for {w} are not settled fixed points of c")
        if settled_apply(self.alpha, self.alpha_pins, w, z0) != wz0 or wz0 == z0:
            raise CertificationError(f"w={w} does not carry {z0} to {wz0}")
        triple = WitnessTriple(Word(w), z0, wz0)
        self.witnesses.append(triple)
        self.pool.setdefault(triple.word, []).append(triple)
        return triple

    def _take_triple(self, w) -> WitnessTriple:
        for t in self.pool.get(Word(w), ()):
            if not t.used:
                break
        else:
            t = self._record_ff(w)
        t.used = True
        return t

    def _any_triple(self, w) -> WitnessTriple:
        got = self.pool.get(Word(w))
        return got[0] if got else self._record_ff(w)

    def _swap(self, u: int, v: int) -> None:
        for p in (u, v):
            if p not in self.fixc:
                raise CertificationError(f"sigma may only move certified fixed points, {p} is not one")
        self.sigma.assign(u, v, self.sigma_pins)
        self.sigma.assign(v, u, self.sigma_pins)

    # -- requirements -----------------------------------------------------

    @_logged("ff")
    def satisfy_ff(self, w) -> WitnessTriple:
        """Add one more triple ``(w, x, wx)`` with ``cx = x``, ``c wx = wx``, ``wx != x``."""
        w = Word(w)
        if not w or free_reduce(w) != w:
            raise ValueError(f"{w} is not a nonempty reduced word")
        if power_of(w, self.c) is not None:
            raise ValueError(f"{w} is a power of c = {self.c}")
        return self._record_ff(w)

    @_logged("order")
    def satisfy_order(self, k: int) -> int:
        """Record a point moved by ``c^k``."""
        if k == 0:
            raise ValueError("k must be nonzero")
        ck = self.c ** k
        placement = self._embed(path_graph(ck))
        z = placement[0]
        image = settled_apply(self.alpha, self.alpha_pins, ck, z)
        if image is None or image == z:
            raise CertificationError(f"c^{k} does not move {z}")
        self.orders.append((k, z, image))
        return z

    satisfy_infinite_order = satisfy_order

    @_logged("folner")
    def satisfy_folner(self, l: int) -> FolnerBlock:
        """Add a block of Fix(c) with both ratios at most ``1/l``."""
        if l < 1:
            raise ValueError("l must be positive")
        sa, sb = exponent_sums(self.c)
        if not is_special(self.c):
            raise NonSpecialC(f"{self.c} is not special")
        t = 0 if sa == 0 else sb // sa
        n_beta = max((abs(e) for g, e in self.c.syllables() if g == 2), default=0)
        length = max(2 * l * max(abs(t), 1), len(self.c) * (n_beta + 1))
        if t == 0:
            pad = len(self.c)
            lo, hi = fresh_interval(self.used_extent, length + 2 * pad, pad)
            self.used_extent = hi
            for x in range(lo, hi + 1):
                self.alpha_pins.add(x)
        else:
            pad = len(self.c) * (abs(t) + n_beta)
            size = length + 2 * pad
            lo, hi = fresh_interval(self.used_extent, size + abs(t), pad)
            self.used_extent = hi
            if t > 0:
                lo += t
            else:
                hi += t
            for x in range(lo, hi + 1):
                self.alpha.assign(x, x - t, self.alpha_pins)
        block = FolnerBlock(lo + pad, hi - pad, Fraction(1, l))
        for x in block.points():
            if not self._certify(x):
                raise CertificationError(f"Folner point {x} is not a settled fixed point of c")
        ra, rb = folner_ratios(self, block)
        if ra > block.epsilon or rb > block.epsilon:
            raise CertificationError(f"Folner ratios {ra}, {rb} exceed {block.epsilon}")
        self.folner_blocks.append(block)
        return block

    @_logged("trans")
    def satisfy_trans(self, n: int, m: int) -> tuple:
        """Make ``<a^n, b^m>`` join every class of Z mod m."""
        if n < 1 or m < 1:
            raise ValueError("n and m must be positive")
        if m == 1:
            self.transitivity[(n, m)] = ()
            return ()
        margin = (1 - (self.used_extent + 1)) % m
        lo, hi = fresh_interval(self.used_extent, n * m, margin)
        self.used_extent = hi
        reps = tuple(lo + i for i in range(m))
        chain = []
        for x in reps:
            chain.extend(x + j * m for j in range(n))
        for i, x in enumerate(chain):
            self.alpha.assign(x, chain[(i + 1) % len(chain)], self.alpha_pins)
        self.transitivity[(n, m)] = reps
        return reps

    satisfy_transitivity = satisfy_trans

    @_logged("sigma")
    def satisfy_sigma(self, form) -> int:
        """Extend sigma until the amalgam element ``form`` moves a point."""
        if not isinstance(form, AlternatingForm):
            form = amalgam.to_alternating(form, self.c)
        form.validate(self.c)
        if form.is_identity:
            raise ValueError("the identity moves no point")
        key = str(form)
        if key in self.movers:
            return self.movers[key][0]
        if form.is_power_of_c:
            for k, z, _ in self.orders:
                if k == form.c_power:
                    break
            else:
                z = self.satisfy_order(form.c_power)
            x0 = z
        else:
            steps = list(reversed(form.syllables))
            f0, w0 = steps[0]
            if len(steps) == 1:
                x0 = (self._take_triple(w0) if f0 == 2 else self._any_triple(w0)).x
            else:
                if f0 == 1:
                    t = self._take_triple(w0)
                    x0, p = t.x, t.wx
                else:
                    x0 = self._take_triple(w0).x
                    t = self._take_triple(w0)
                    self._swap(x0, t.x)
                    p = t.wx
                for _, word in steps[1:]:
                    t = self._take_triple(word)
                    self._swap(p, t.x)
                    p = t.wx
        image = amalgam.act(self, form.spell(self.c), x0)
        if image == x0:
            raise CertificationError(f"{form} fixes its chosen point {x0}")
        self.movers[key] = (x0, image)
        return x0

    satisfy_sigma_faithful = satisfy_sigma

    @_logged("reserve")
    def sigma_reserve(self) -> FolnerBlock:
        """Pin sigma on the newest unreserved Folner block."""
        free = [b for b in self.folner_blocks if not b.reserved]
        if free:
            block = free[-1]
        else:
            nxt = max((b.epsilon.denominator for b in self.folner_blocks), default=0) + 1
            block = self.satisfy_folner(nxt)
        for x in block.points():
            if self.sigma.touches(x):
                raise CertificationError(f"reserved block point {x} is already moved by sigma")
        self.sigma_pins.update(block.points())
        block.reserved = True
        return block

    def apply(self, req: Requirement):
        if req.kind == "reserve":
            return self.sigma_reserve()
        return getattr(self, "satisfy_" + req.kind)(*req.args)

    # -- scheduling -------------------------------------------------------

    def stage_requirements(self, s: int) -> list:
        """Requirements processed at stage ``s`` (before any seed shuffle)."""
        reqs = [Requirement("ff", (w,)) for w in words_up_to(math.ceil(s / 2))
                if power_of(w, self.c) is None]
        reqs += [Requirement("order", (s,)), Requirement("order", (-s,))]
        reqs.append(Requirement("folner", (s,)))
        reqs += [Requirement("trans", (n, m)) for n in range(1, s + 1)
                 for m in range(1, s + 1) if max(n, m) == s]
        bound = math.ceil(s / 4)
        if bound > math.ceil((s - 1) / 4):
            reqs += [Requirement("sigma", (f,)) for f in amalgam.sigma_forms(self.c, bound)]
        reqs.append(Requirement("reserve"))
        return reqs

    def run_stage(self, s: int, rng: random.Random | None = None) -> None:
        reqs = self.stage_requirements(s)
        if rng is not None:
            rng.shuffle(reqs)
        for req in reqs:
            self.apply(req)
        self.stages = s


def new_state(c_input) -> ConstructionState:
    return ConstructionState(c_input)


def run(c_input, stages: int, seed: int | None = None) -> ConstructionState:
    if stages < 0:
        raise ValueError("stages must be nonnegative")
    state = ConstructionState(c_input)
    rng = None if seed is None else random.Random(seed)
    for s in range(1, stages + 1):
        state.run_stage(s, rng)
    return state


def replay(state: ConstructionState) -> ConstructionState:
    """Rebuild a state from its ``c`` input and requirement log."""
    out = ConstructionState(state.c_input)
    for line in state.log:
        out.apply(Requirement.parse(line))
    out.stages = state.stages
    return out


# -- exact checks used by tests and ``verify`` ---------------------------

def symmetric_difference_size(points, image) -> int:
    a, b = set(points), set(image)
    return len(a ^ b)


def folner_ratios(state, block: FolnerBlock) -> tuple:
    pts = block.points()
    n = len(pts)
    da = symmetric_difference_size(pts, (state.alpha(x) for x in pts))
    db = symmetric_difference_size(pts, (x + 1 for x in pts))
    return Fraction(da, n), Fraction(db, n)


def transfer_counts(state, block: FolnerBlock) -> dict:
    """For each factor-2 generator ``h``: ``(|A ^ h.A|, |A ^ h(a,b) A|)``."""
    pts = block.points()
    out = {}
    for h, base in (("x", "a"), ("X", "A"), ("y", "b"), ("Y", "B")):
        hw = amalgam.AmalgamWord.parse(h)
        bw = Word.parse(base)
        via_sigma = symmetric_difference_size(pts, (amalgam.act(state, hw, x) for x in pts))
        direct = symmetric_difference_size(pts, (_apply(state, bw, x) for x in pts))
        out[h] = (via_sigma, direct)
    return out


def _apply(state, w, x: int) -> int:
    return apply_word(state.alpha, w, x)


def check_triple(state, t: WitnessTriple) -> bool:
    c = state.c
    return (_apply(state, c, t.x) == t.x and _apply(state, c, t.wx) == t.wx
            and _apply(state, t.word, t.x) == t.wx and t.wx != t.x)


def reaches_all_classes(state, n: int, m: int, start: int = 0) -> bool:
    """BFS over ``a^{+-n}, b^{+-m}`` from ``start`` inside ``[0, used_extent]``."""
    lo, hi = min(0, start), max(state.used_extent, start)
    alpha = state.alpha

    def power(x, k):
        f = alpha if k > 0 else alpha.inv
        for _ in range(abs(k)):
            x = f(x)
        return x

    seen = {start}
    classes = {start % m}
    queue = [start]
    while queue and len(classes) < m:
        x = queue.pop()
        for y in (power(x, n), power(x, -n), x + m, x - m):
            if lo <= y <= hi and y not in seen:
                seen.add(y)
                classes.add(y % m)
                queue.append(y)
    return len(classes) == m
