"""Nielsen moves that make a word special (S(a) divides S(b))."""
from f2double.autos import specialize
from f2double.words import Word, exponent_sums

for text in ("abAB", "bbb", "aab", "aabbbb", "abbAbbb"):
    auto, c = specialize(Word.parse(text))
    m = auto.matrix
    print(f"{text:8} sums={tuple(exponent_sums(Word.parse(text)))} moves={auto} "
          f"matrix=({m.p} {m.q}; {m.t} {m.r}) -> {c} sums={tuple(exponent_sums(c))}")
