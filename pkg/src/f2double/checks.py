"""Exact re-validation of every recorded fact in a construction state."""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import amalgam
from .amalgam import AlternatingForm, AmalgamWord
from .autos import specialize
from .engine import (check_triple, folner_ratios, reaches_all_classes, replay,
                     transfer_counts)
from .perm import apply_word
from .statefile import dumps
from .words import is_special, is_weakly_cyclically_reduced


@dataclass
class CheckResult:
    name: str
    ok: bool
    count: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{status} {self.name} ({self.count} checked){tail}"


def sample_points(state, n: int = 1000, seed: int = 0) -> list:
    """``n`` points drawn from the touched region plus a margin, fixed seed."""
    rng = random.Random(seed)
    hi = state.used_extent + 10
    return [rng.randint(-10, hi) for _ in range(n)]


def _result(name, items, bad_fn, describe=str) -> CheckResult:
    count = 0
    for item in items:
        count += 1
        if bad_fn(item):
            return CheckResult(name, False, count, f"violated at {describe(item)}")
    return CheckResult(name, True, count)


def check_c(state) -> CheckResult:
    auto, c = specialize(state.c_input)
    ok = (c == state.c and str(auto) == str(state.automorphism)
          and is_special(state.c) and is_weakly_cyclically_reduced(state.c))
    detail = "" if ok else f"stored c={state.c} but specialize gives {c} via {auto}"
    return CheckResult("c-special", ok, 1, detail)


def check_witnesses(state) -> CheckResult:
    return _result("witness-triples", state.witnesses, lambda t: not check_triple(state, t))


def check_fixc(state) -> CheckResult:
    c = state.c
    return _result("fix-c", sorted(state.fixc),
                   lambda x: apply_word(state.alpha, c, x) != x)


def check_pins(state) -> CheckResult:
    return _result("pinned-untouched", sorted(state.alpha_pins),
                   lambda x: state.alpha.touches(x))


def check_orders(state) -> CheckResult:
    def bad(rec):
        k, z, image = rec
        got = apply_word(state.alpha, state.c ** k, z)
        return got != image or got == z
    return _result("infinite-order", state.orders, bad)


def check_folner(state) -> CheckResult:
    def bad(block):
        if not all(x in state.fixc for x in block.points()):
            return True
        ra, rb = folner_ratios(state, block)
        if ra > block.epsilon or rb > block.epsilon:
            return True
        if block.reserved:
            if any(state.sigma(x) != x for x in block.points()):
                return True
            if any(a != b for a, b in transfer_counts(state, block).values()):
                return True
        return False
    return _result("folner-blocks", state.folner_blocks, bad)


def check_transitivity(state) -> CheckResult:
    return _result("transitivity", sorted(state.transitivity),
                   lambda nm: not reaches_all_classes(state, *nm))


def check_sigma(state) -> CheckResult:
    """sigma moves only certified fixed points of c, and keeps them there."""
    support = sorted(set(state.sigma.forward) | set(state.sigma.backward))
    return _result("sigma-support", support,
                   lambda x: x not in state.fixc or state.sigma(x) not in state.fixc)


def check_commutation(state, n: int = 1000) -> CheckResult:
    c, alpha, sigma = state.c, state.alpha, state.sigma
    pts = sorted(set(sigma.forward) | set(sigma.backward)) + sample_points(state, n)
    return _result("sigma-commutes-with-c", pts,
                   lambda x: sigma(apply_word(alpha, c, x)) != apply_word(alpha, c, sigma(x)))


def check_amalgamation(state, n: int = 1000) -> CheckResult:
    c1 = AmalgamWord.in_factor(1, state.c)
    c2 = AmalgamWord.in_factor(2, state.c)
    return _result("amalgamation-relation", sample_points(state, n, seed=1),
                   lambda x: amalgam.act(state, c1, x) != amalgam.act(state, c2, x))


def check_movers(state) -> CheckResult:
    def bad(item):
        key, (x0, image) = item
        got = amalgam.act(state, AlternatingForm.parse(key).spell(state.c), x0)
        return got != image or got == x0
    return _result("sigma-movers", state.movers.items(), bad, lambda it: it[0])


def check_replay(state) -> CheckResult:
    ok = dumps(replay(state)) == dumps(state)
    return CheckResult("log-replay", ok, len(state.log), "" if ok else "replayed state differs")


QUICK = (check_c, check_witnesses, check_fixc, check_pins, check_orders, check_folner,
         check_transitivity, check_sigma, check_commutation, check_amalgamation, check_movers)


def verify(state, level: str = "quick") -> list:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    results = [check(state) for check in QUICK]
    if level == "full":
        results.append(check_replay(state))
    return results
