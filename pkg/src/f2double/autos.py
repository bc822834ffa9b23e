"""Nielsen automorphisms of F2 and the specialization of a word.

Matrices act on exponent-sum column vectors ``(sum_a, sum_b)``: if ``a`` is
an automorphism with matrix ``M`` then
``exponent_sums(a(w)) == M @ exponent_sums(w)`` for every word ``w``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .words import (ExponentSums, Word, cyclically_reduce, exponent_sums,
                    free_reduce, is_special)


@dataclass(frozen=True)
class AbelianMatrix:
    """Integer 2x2 matrix ``[[p, q], [t, r]]``."""

    p: int
    q: int
    t: int
    r: int

    @classmethod
    def identity(cls) -> "AbelianMatrix":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.p * self.r - self.q * self.t

    def is_unimodular(self) -> bool:
        return self.det in (1, -1)

    def __matmul__(self, other):
        if isinstance(other, AbelianMatrix):
            return AbelianMatrix(
                self.p * other.p + self.q * other.t,
                self.p * other.q + self.q * other.r,
                self.t * other.p + self.r * other.t,
                self.t * other.q + self.r * other.r,
            )
        x, y = other
        return ExponentSums(self.p * x + self.q * y, self.t * x + self.r * y)

    def rows(self):
        return ((self.p, self.q), (self.t, self.r))


class NielsenMove(Enum):
    """Elementary automorphisms; value is ``(image of a, image of b)``."""

    INVERT_A = ("A", "b")
    INVERT_B = ("a", "B")
    MUL_AB = ("ab", "b")
    MUL_AB_INV = ("aB", "b")
    MUL_BA = ("a", "ba")
    MUL_BA_INV = ("a", "bA")

    @property
    def images(self):
        return Word.parse(self.value[0]), Word.parse(self.value[1])

    @property
    def matrix(self) -> AbelianMatrix:
        ia, ib = self.images
        sa, sb = exponent_sums(ia), exponent_sums(ib)
        return AbelianMatrix(sa.sum_a, sb.sum_a, sa.sum_b, sb.sum_b)

    @property
    def inverse(self) -> "NielsenMove":
        return _INVERSE[self]

    def apply(self, w) -> Word:
        ia, ib = self.images
        table = {1: ia, -1: ~ia, 2: ib, -2: ~ib}
        out = []
        for x in w:
            out.extend(table[x])
        return free_reduce(out)


_INVERSE = {
    NielsenMove.INVERT_A: NielsenMove.INVERT_A,
    NielsenMove.INVERT_B: NielsenMove.INVERT_B,
    NielsenMove.MUL_AB: NielsenMove.MUL_AB_INV,
    NielsenMove.MUL_AB_INV: NielsenMove.MUL_AB,
    NielsenMove.MUL_BA: NielsenMove.MUL_BA_INV,
    NielsenMove.MUL_BA_INV: NielsenMove.MUL_BA,
}


@dataclass(frozen=True)
class FreeAutomorphism:
    """Composite of Nielsen moves, applied first to last."""

    moves: tuple = ()

    @property
    def matrix(self) -> AbelianMatrix:
        m = AbelianMatrix.identity()
        for move in self.moves:
            m = move.matrix @ m
        return m

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(tuple(m.inverse for m in reversed(self.moves)))

    def __call__(self, w) -> Word:
        return apply_automorphism(self, w)

    def __str__(self) -> str:
        return " ".join(m.name for m in self.moves) or "identity"


def extended_gcd(s: int, t: int) -> tuple:
    """Return ``(d, p, q)`` with ``p*s + q*t == d == gcd(|s|, |t|) > 0``."""
    if s == 0 and t == 0:
        raise ValueError("extended_gcd(0, 0) is undefined")
    old_r, r = abs(s), abs(t)
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    p = old_x if s >= 0 else -old_x
    q = old_y if t >= 0 else -old_y
    return old_r, p, q


def _complete_row(p: int, q: int) -> tuple:
    """Find ``(t, r)`` with ``r*p - t*q == 1``, smallest |r| then |t|."""
    if p in (1, -1):
        return 0, p
    _, r0, t0 = extended_gcd(p, -q)
    # general solution: r = r0 + k*q, t = t0 + k*p
    k0 = -r0 // q if q else 0
    best = None
    for k in range(k0 - 2, k0 + 3):
        r, t = r0 + k * q, t0 + k * p
        key = (abs(r), abs(t), r, t)
        if best is None or key < best[0]:
            best = (key, t, r)
    return best[1], best[2]


def specializing_matrix(sums) -> AbelianMatrix:
    sa, sb = sums
    if sb == 0:
        return AbelianMatrix.identity()
    if sa == 0:
        return AbelianMatrix(0, 1, 1, 0)
    _, p, q = extended_gcd(sa, sb)
    t, r = _complete_row(p, q)
    return AbelianMatrix(p, q, t, r)


def decompose_to_nielsen(m: AbelianMatrix) -> FreeAutomorphism:
    """Write a unimodular matrix as a product of Nielsen move matrices.

    Row-reduces ``m`` to the identity by left multiplication with move
    matrices, then returns the inverse moves in reverse order.
    """
    if not m.is_unimodular():
        raise ValueError(f"determinant {m.det} is not +-1: {m.rows()}")
    ops = []

    def do(move):
        nonlocal m
        m = move.matrix @ m
        ops.append(move)

    M = NielsenMove
    while m.t != 0:
        if m.p == 0:
            do(M.MUL_BA)
        elif abs(m.p) > abs(m.t):
            do(M.MUL_BA_INV if m.p * m.t > 0 else M.MUL_BA)
        else:
            do(M.MUL_AB_INV if m.p * m.t > 0 else M.MUL_AB)
    if m.p < 0:
        do(M.INVERT_A)
    if m.r < 0:
        do(M.INVERT_B)
    while m.q != 0:
        do(M.MUL_BA_INV if m.q > 0 else M.MUL_BA)
    assert m == AbelianMatrix.identity()
    return FreeAutomorphism(tuple(op.inverse for op in reversed(ops)))


def apply_automorphism(a: FreeAutomorphism, w) -> Word:
    out = free_reduce(w)
    for move in a.moves:
        out = move.apply(out)
    return out


def specialize(c) -> tuple:
    """Return ``(a, c_special)`` with ``c_special`` special and weakly
    cyclically reduced, conjugate to ``a(c)``.

    Words that are already special only get cyclically reduced.
    """
    r = free_reduce(c)
    if not r:
        raise ValueError("cannot specialize the trivial word")
    if is_special(r):
        a = FreeAutomorphism()
    else:
        a = decompose_to_nielsen(specializing_matrix(exponent_sums(r)))
    core, _ = cyclically_reduce(apply_automorphism(a, r))
    return a, core
