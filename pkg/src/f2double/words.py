"""Reduced words in the free group on two generators ``a`` and ``b``.

A word is stored as a tuple of signed integers in display order::

    a -> 1    A -> -1    b -> 2    B -> -2

The leftmost letter is applied last, so ``aB`` acting on a point applies
``B`` first and then ``a``.
"""
from __future__ import annotations

import re
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional


class Generator(IntEnum):
    A = 1
    B = 2


_CHARS = {1: "a", -1: "A", 2: "b", -2: "B"}
_LETTERS = {v: k for k, v in _CHARS.items()}
_TOKEN = re.compile(r"\s*([A-Za-z])(?:\^(-?\d+))?")


def letter(gen: Generator, sign: int = 1) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return int(gen) * sign


def parse_letters(text: str, alphabet: dict) -> list:
    """Tokenize ``text`` into ``(symbol, exponent)`` pairs over ``alphabet``.

    Accepts plain letter strings (``aBAb``) and syllable syntax
    (``a^2 b^-1``). Raises ValueError naming the first bad character.
    """
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.group(1) not in alphabet:
            raise ValueError(f"bad character {text[pos]!r} at position {pos} in {text!r}")
        exp = int(m.group(2)) if m.group(2) is not None else 1
        out.append((alphabet[m.group(1)], exp))
        pos = m.end()
    return out


class Word(tuple):
    """A word over ``{a, A, b, B}``; not necessarily reduced.

    ``u * v`` is the group product (concatenate then freely reduce),
    ``u + v`` is raw concatenation, ``~u`` is the formal inverse.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(letters)
        for x in letters:
            if x not in _CHARS:
                raise ValueError(f"invalid letter code {x!r}")
        return super().__new__(cls, letters)

    @classmethod
    def _raw(cls, letters) -> "Word":
        return tuple.__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for code, exp in parse_letters(text, _LETTERS):
            letters.extend([code if exp > 0 else -code] * abs(exp))
        return cls._raw(letters)

    @classmethod
    def from_syllables(cls, syllables) -> "Word":
        letters = []
        for gen, exp in syllables:
            code = int(gen)
            letters.extend([code if exp > 0 else -code] * abs(exp))
        return cls._raw(letters)

    def __str__(self) -> str:
        return "".join(_CHARS[x] for x in self)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __add__(self, other) -> "Word":
        return Word._raw(tuple.__add__(self, tuple(other)))

    def __mul__(self, other) -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return free_reduce(self + other)

    def __rmul__(self, other):
        return NotImplemented

    def __invert__(self) -> "Word":
        return Word._raw(-x for x in reversed(self))

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else ~self
        return free_reduce(Word._raw(tuple(base) * abs(k)))

    def __getitem__(self, item):
        got = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return Word._raw(got)
        return got

    def applied(self):
        """Letters in application order (rightmost first)."""
        return reversed(self)

    def syllables(self) -> list:
        """Maximal runs as ``(Generator, exponent)`` pairs, display order."""
        out = []
        for x in self:
            gen, s = abs(x), (1 if x > 0 else -1)
            if out and out[-1][0] == gen and (out[-1][1] > 0) == (s > 0):
                out[-1][1] += s
            else:
                out.append([gen, s])
        return [(Generator(g), e) for g, e in out]

    def syllable_str(self) -> str:
        parts = []
        for gen, e in self.syllables():
            ch = "a" if gen == Generator.A else "b"
            parts.append(ch if e == 1 else f"{ch}^{e}")
        return " ".join(parts)


ALPHA = Word._raw((1,))
BETA = Word._raw((2,))
EMPTY = Word._raw(())


class ExponentSums(NamedTuple):
    sum_a: int
    sum_b: int


@lru_cache(maxsize=1 << 16)
def _reduce(letters: tuple) -> tuple:
    stack = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def free_reduce(w: Iterable[int]) -> Word:
    return Word._raw(_reduce(tuple(w)))


def is_reduced(w: Iterable[int]) -> bool:
    w = tuple(w)
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def _unwrap(r: tuple) -> int:
    i, j = 0, len(r) - 1
    while i < j and r[i] == -r[j]:
        i += 1
        j -= 1
    return i


def cyclically_reduce(w: Iterable[int]) -> tuple:
    """Return ``(core, conjugator)`` with ``w == conjugator * core * ~conjugator``."""
    r = _reduce(tuple(w))
    i = _unwrap(r)
    return Word._raw(r[i:len(r) - i]), Word._raw(r[:i])


def is_weakly_cyclically_reduced(w: Iterable[int]) -> bool:
    w = tuple(w)
    if not is_reduced(w):
        return False
    return len(w) < 2 or w[0] != -w[-1]


def exponent_sums(w: Iterable[int]) -> ExponentSums:
    sa = sb = 0
    for x in w:
        if x == 1:
            sa += 1
        elif x == -1:
            sa -= 1
        elif x == 2:
            sb += 1
        else:
            sb -= 1
    return ExponentSums(sa, sb)


def is_special(w: Iterable[int]) -> bool:
    sa, sb = exponent_sums(w)
    if sa == 0:
        return sb == 0
    return sb % sa == 0


@lru_cache(maxsize=1 << 17)
def _conjugacy_key(letters: tuple) -> tuple:
    r = _reduce(letters)
    i = _unwrap(r)
    core = r[i:len(r) - i]
    if not core:
        return ()
    return min(core[k:] + core[:k] for k in range(len(core)))


def are_conjugate(u: Iterable[int], v: Iterable[int]) -> bool:
    """Conjugacy test: cyclic cores must agree up to rotation."""
    return _conjugacy_key(tuple(u)) == _conjugacy_key(tuple(v))


def power_of(w: Iterable[int], c: Iterable[int]) -> Optional[int]:
    """Return ``k`` with ``reduce(w) == c^k`` literally, else None.

    ``c`` must be nonempty and weakly cyclically reduced, so that powers of
    ``c`` are plain concatenations.
    """
    c = tuple(c)
    if not c:
        raise ValueError("power_of: c must be nonempty")
    if not is_weakly_cyclically_reduced(c):
        raise ValueError(f"power_of: {Word._raw(c)} is not weakly cyclically reduced")
    r = _reduce(tuple(w))
    if not r:
        return 0
    n, m = len(r), len(c)
    if n % m:
        return None
    k = n // m
    if r == c * k:
        return k
    if r == tuple(-x for x in reversed(c)) * k:
        return -k
    return None


def reduced_words(length: int):
    """All reduced words of exactly ``length`` letters, shortlex order."""
    codes = (1, -1, 2, -2)

    def rec(prefix):
        if len(prefix) == length:
            yield Word._raw(prefix)
            return
        for x in codes:
            if prefix and prefix[-1] == -x:
                continue
            yield from rec(prefix + (x,))

    yield from rec(())


def words_up_to(max_length: int, include_empty: bool = False):
    for n in range(0 if include_empty else 1, max_length + 1):
        yield from reduced_words(n)
