"""The point space Z, the successor permutation, and partial injections.

A :class:`PartialInjection` stores finitely many edges ``x -> y``. It is read
as a genuine permutation of Z: stored edges are followed, the tail of each
open chain maps back to the chain's head, and every other point is fixed.
"""
from __future__ import annotations

from typing import Callable, Iterable


class Conflict(ValueError):
    def __init__(self, point: int, message: str = ""):
        self.point = point
        super().__init__(message or f"{type(self).__name__}({point})")


class DomainConflict(Conflict):
    pass


class ImageConflict(Conflict):
    pass


class PinnedConflict(Conflict):
    pass


def beta(x: int, k: int = 1) -> int:
    return x + k


class PartialInjection:
    __slots__ = ("forward", "backward", "_head_of", "_tail_of")

    def __init__(self, pairs: Iterable = ()):
        self.forward = {}
        self.backward = {}
        # tail -> head and head -> tail of every open chain
        self._head_of = {}
        self._tail_of = {}
        for x, y in pairs:
            self.assign(x, y)

    def assign(self, x: int, y: int, pins=()) -> None:
        if x in self.forward:
            raise DomainConflict(x, f"DomainConflict: {x} already maps to {self.forward[x]}")
        if y in self.backward:
            raise ImageConflict(y, f"ImageConflict: {y} already has preimage {self.backward[y]}")
        if x in pins:
            raise PinnedConflict(x, f"PinnedConflict: {x} is pinned")
        if y in pins:
            raise PinnedConflict(y, f"PinnedConflict: {y} is pinned")
        head = self._head_of.pop(x, x)
        tail = self._tail_of.pop(y, y)
        if head == y:
            # closes a stored cycle
            assert tail == x
        else:
            self._tail_of[head] = tail
            self._head_of[tail] = head
        self.forward[x] = y
        self.backward[y] = x

    def __call__(self, x: int) -> int:
        y = self.forward.get(x)
        if y is not None:
            return y
        return self._head_of.get(x, x)

    def inv(self, x: int) -> int:
        y = self.backward.get(x)
        if y is not None:
            return y
        return self._tail_of.get(x, x)

    def is_stored(self, x: int, sign: int = 1) -> bool:
        """Whether evaluating at ``x`` (or its inverse) follows a stored edge."""
        return x in (self.forward if sign > 0 else self.backward)

    def touches(self, x: int) -> bool:
        return x in self.forward or x in self.backward

    def support(self) -> set:
        return {x for x in self.forward if self(x) != x} | {
            x for x in self.backward if self(x) != x}

    def open_chains(self) -> dict:
        return dict(self._tail_of)

    def items(self):
        return sorted(self.forward.items())

    def copy(self) -> "PartialInjection":
        other = PartialInjection()
        other.forward = dict(self.forward)
        other.backward = dict(self.backward)
        other._head_of = dict(self._head_of)
        other._tail_of = dict(self._tail_of)
        return other

    def __len__(self) -> int:
        return len(self.forward)

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialInjection) and self.forward == other.forward

    def __repr__(self) -> str:
        body = ", ".join(f"{x}->{y}" for x, y in self.items()[:8])
        more = "" if len(self) <= 8 else f", ... ({len(self)} edges)"
        return f"PartialInjection({{{body}{more}}})"


def eval_closed(p: PartialInjection, pins, x: int) -> int:
    """Completed value at ``x``. Pins never change the value: a pinned
    point carries no stored edge, so it is fixed either way."""
    return p(x)


def eval_inverse_closed(p: PartialInjection, pins, x: int) -> int:
    return p.inv(x)


def assign(p: PartialInjection, pins, x: int, y: int) -> PartialInjection:
    p.assign(x, y, pins)
    return p


def evaluate_word(alpha: PartialInjection, pins, w, x: int) -> tuple:
    """Apply ``w`` right to left; ``b`` is the successor.

    Returns ``(endpoint, visited points)``. ``pins`` is accepted for
    symmetry with :func:`settled_apply` and does not affect the result.
    """
    touched = {x}
    for code in reversed(w):
        if code == 2:
            x += 1
        elif code == -2:
            x -= 1
        elif code == 1:
            x = alpha(x)
        else:
            x = alpha.inv(x)
        touched.add(x)
    return x, touched


def apply_word(alpha: PartialInjection, w, x: int) -> int:
    for code in reversed(w):
        if code == 2:
            x += 1
        elif code == -2:
            x -= 1
        elif code == 1:
            x = alpha(x)
        else:
            x = alpha.inv(x)
    return x


def settled_apply(alpha: PartialInjection, pins, w, x: int):
    """Like :func:`apply_word`, but return None unless every ``a``-step
    follows a stored edge or sits on a pinned point (so the value can never
    change under later extension)."""
    fwd, bwd = alpha.forward, alpha.backward
    for code in reversed(w):
        if code == 2:
            x += 1
        elif code == -2:
            x -= 1
        elif code == 1:
            y = fwd.get(x)
            if y is None:
                if x not in pins:
                    return None
            else:
                x = y
        else:
            y = bwd.get(x)
            if y is None:
                if x not in pins:
                    return None
            else:
                x = y
    return x


def fresh_interval(used_extent: int, size: int, margin: int = 0) -> tuple:
    if size < 1 or margin < 0:
        raise ValueError("size must be positive and margin nonnegative")
    lo = used_extent + margin + 1
    return lo, lo + size - 1


def def_on_finite(alpha_prime: Callable[[int], int], F: Iterable[int]) -> dict:
    """Permutation with finite support agreeing with ``alpha_prime`` on ``F``.

    The support lies inside ``F | alpha_prime(F)``: each maximal
    ``alpha_prime``-run through ``F`` is closed up into a cycle.
    """
    F = set(F)
    image = {alpha_prime(x) for x in F}
    out = {}
    for start in sorted(F - image):
        x = start
        while x in F:
            out[x] = alpha_prime(x)
            x = out[x]
        out[x] = start
    for x in sorted(F):
        if x not in out:
            out[x] = alpha_prime(x)
    return {x: y for x, y in out.items() if x != y}


def to_ranges(points) -> list:
    pts = sorted(points)
    out = []
    for x in pts:
        if out and out[-1][1] == x - 1:
            out[-1][1] = x
        else:
            out.append([x, x])
    return [(lo, hi) for lo, hi in out]


def from_ranges(ranges) -> set:
    out = set()
    for lo, hi in ranges:
        out.update(range(lo, hi + 1))
    return out
