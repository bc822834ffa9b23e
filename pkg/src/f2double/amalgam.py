"""Words in the double ``<a, b> *_<c> <x, y>`` and their action.

Factor 1 is spelled with ``a A b B``, factor 2 with ``x X y Y``; both
factors are copies of F2 and share the cyclic subgroup generated by ``c``.
A factor-2 element ``h`` acts as ``sigma^-1 h(a, b) sigma``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .words import Word, free_reduce, parse_letters, power_of, reduced_words

_CHARS = {
    (1, 1): "a", (1, -1): "A", (1, 2): "b", (1, -2): "B",
    (2, 1): "x", (2, -1): "X", (2, 2): "y", (2, -2): "Y",
}
_LETTERS = {v: k for k, v in _CHARS.items()}


class ReportIncomplete(RuntimeError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"no moved point for {len(self.missing)} forms: {self.missing[:5]}")


class AmalgamWord(tuple):
    """Sequence of ``(factor, letter code)`` pairs in display order."""

    __slots__ = ()

    def __new__(cls, letters=()):
        letters = tuple((int(f), int(x)) for f, x in letters)
        for f, x in letters:
            if (f, x) not in _CHARS:
                raise ValueError(f"invalid amalgam letter {(f, x)!r}")
        return super().__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> "AmalgamWord":
        out = []
        for (f, x), exp in parse_letters(text, _LETTERS):
            out.extend([(f, x if exp > 0 else -x)] * abs(exp))
        return cls(out)

    @classmethod
    def in_factor(cls, factor: int, w) -> "AmalgamWord":
        return cls((factor, x) for x in w)

    def __add__(self, other) -> "AmalgamWord":
        return AmalgamWord(tuple(self) + tuple(other))

    def __str__(self) -> str:
        return "".join(_CHARS[p] for p in self)

    def __repr__(self) -> str:
        return f"AmalgamWord({str(self)!r})"

    def runs(self) -> list:
        """Maximal same-factor runs as ``(factor, Word)``, display order."""
        out = []
        for f, x in self:
            if out and out[-1][0] == f:
                out[-1][1].append(x)
            else:
                out.append((f, [x]))
        return [(f, Word(xs)) for f, xs in out]


@dataclass(frozen=True)
class AlternatingForm:
    """``c^c_power`` followed by syllables of strictly alternating factors.

    With no syllables the form is a power of ``c`` (the identity when the
    power is 0).
    """

    c_power: int = 0
    syllables: tuple = ()

    @property
    def is_identity(self) -> bool:
        return not self.syllables and self.c_power == 0

    @property
    def is_power_of_c(self) -> bool:
        return not self.syllables

    @property
    def letter_length(self) -> int:
        return sum(len(w) for _, w in self.syllables)

    def spell(self, c) -> AmalgamWord:
        out = AmalgamWord.in_factor(1, Word(c) ** self.c_power)
        for f, w in self.syllables:
            out = out + AmalgamWord.in_factor(f, w)
        return out

    def __str__(self) -> str:
        parts = [str(AmalgamWord.in_factor(f, w)) for f, w in self.syllables]
        if self.c_power:
            parts.insert(0, f"c^{self.c_power}")
        return ".".join(parts) or "1"

    @classmethod
    def parse(cls, text: str) -> "AlternatingForm":
        if text == "1":
            return cls()
        power = 0
        syllables = []
        for part in text.split("."):
            if part.startswith("c^"):
                power = int(part[2:])
                continue
            runs = AmalgamWord.parse(part).runs()
            if len(runs) != 1:
                raise ValueError(f"syllable {part!r} mixes factors")
            syllables.append(runs[0])
        return cls(power, tuple(syllables))

    def validate(self, c) -> None:
        for i, (f, w) in enumerate(self.syllables):
            if f not in (1, 2) or not w or free_reduce(w) != w:
                raise ValueError(f"syllable {i} of {self} is not a reduced nonempty word")
            if power_of(w, c) is not None:
                raise ValueError(f"syllable {i} of {self} is a power of c")
            if i and self.syllables[i - 1][0] == f:
                raise ValueError(f"factors do not alternate in {self}")


def to_alternating(w: AmalgamWord, c) -> AlternatingForm:
    """Rewrite ``w`` as ``c^k g_n ... g_1`` with alternating factors.

    Syllables that reduce to a power of ``c`` are absorbed into their left
    neighbour (or into the leading power).
    """
    c = Word(c)
    syl = list(AmalgamWord(w).runs())
    power = 0
    changed = True
    while changed:
        changed = False
        merged = []
        for f, word in syl:
            r = free_reduce(word)
            if len(r) != len(word):
                changed = True
            if not r:
                continue
            if merged and merged[-1][0] == f:
                merged[-1] = (f, free_reduce(merged[-1][1] + r))
                changed = True
            else:
                merged.append((f, r))
        syl = merged
        for i, (f, word) in enumerate(syl):
            k = power_of(word, c)
            if k is None:
                continue
            del syl[i]
            if i == 0:
                power += k
            else:
                lf, lw = syl[i - 1]
                syl[i - 1] = (lf, free_reduce(lw + c ** k))
            changed = True
            break
    return AlternatingForm(power, tuple(syl))


def act(state, w, x: int) -> int:
    """Evaluate the amalgam word ``w`` at ``x`` through alpha, beta, sigma."""
    alpha, sigma = state.alpha, state.sigma
    for f, word in reversed(AmalgamWord(w).runs()):
        if f == 2:
            x = sigma(x)
        for code in reversed(word):
            if code == 2:
                x += 1
            elif code == -2:
                x -= 1
            elif code == 1:
                x = alpha(x)
            else:
                x = alpha.inv(x)
        if f == 2:
            x = sigma.inv(x)
    return x


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def alternating_forms(c, max_syllables: int, max_letters: int, exact_letters: int | None = None):
    """All forms with zero leading power, ``1..max_syllables`` syllables and
    total letter length at most ``max_letters`` (or exactly
    ``exact_letters``), in a fixed order."""
    c = Word(c)
    lengths = range(1, max_letters + 1) if exact_letters is None else (exact_letters,)
    pools = {}

    def pool(n):
        if n not in pools:
            pools[n] = [w for w in reduced_words(n) if power_of(w, c) is None]
        return pools[n]

    for total in lengths:
        for n_syl in range(1, max_syllables + 1):
            if n_syl > total:
                break
            for comp in _compositions(total, n_syl):
                for first in (1, 2):
                    factors = [first if i % 2 == 0 else 3 - first for i in range(n_syl)]
                    yield from _product_forms(factors, [pool(k) for k in comp])


def _product_forms(factors, pools, prefix=()):
    if not pools:
        yield AlternatingForm(0, prefix)
        return
    for w in pools[0]:
        yield from _product_forms(factors[1:], pools[1:], prefix + ((factors[0], w),))


def within_bound(form: AlternatingForm, bound: int) -> bool:
    """Scheduling bound: total letters at most ``bound``, or at most two
    syllables each of at most ``bound`` letters."""
    if form.letter_length <= bound:
        return True
    return len(form.syllables) <= 2 and max(len(w) for _, w in form.syllables) <= bound


def sigma_forms(c, bound: int):
    """Forms that are within ``bound`` but not within ``bound - 1``."""
    c = Word(c)
    seen = set()
    pools = list(_nonpowers(c, bound))
    candidates = list(alternating_forms(c, bound, bound, exact_letters=bound))
    for first in (1, 2):
        for g in pools:
            for h in pools:
                if max(len(g), len(h)) == bound:
                    candidates.append(AlternatingForm(0, ((first, g), (3 - first, h))))
    for form in candidates:
        if form in seen or within_bound(form, bound - 1):
            continue
        seen.add(form)
        yield form


def _nonpowers(c, bound):
    for n in range(1, bound + 1):
        for w in reduced_words(n):
            if power_of(w, c) is None:
                yield w


def faithfulness_report(state, max_syllables: int, max_letters: int) -> list:
    """Rows ``(form text, moved point, image)`` for every alternating form in
    the bounds, creating movers through the engine where none is recorded.

    Raises ReportIncomplete if any form fails to move its point.
    """
    rows = []
    missing = []
    if max_syllables < 1 or max_letters < 1:
        return rows
    for form in alternating_forms(state.c, max_syllables, max_letters):
        key = str(form)
        if key not in state.movers:
            state.satisfy_sigma_faithful(form)
        x0, _ = state.movers[key]
        image = act(state, form.spell(state.c), x0)
        if image == x0:
            missing.append(key)
        rows.append((key, x0, image))
    if missing:
        raise ReportIncomplete(missing)
    return rows
