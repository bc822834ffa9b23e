"""Word algebra: reduction, cyclic cores, conjugacy and powers of c."""
from f2double.words import Word, are_conjugate, cyclically_reduce, exponent_sums, power_of

W = Word.parse

for text in ("aAbB", "BabAB", "aBAbaBAb", "a^3 b^-2"):
    w = W(text)
    core, conj = cyclically_reduce(w)
    print(f"{text:10} core={core} conjugator={conj} sums={tuple(exponent_sums(w))}")

c = W("aBAb")
print("bab ~ aab:", are_conjugate(W("bab"), W("aab")))
print("aBAbaBAb is c^", power_of(W("aBAbaBAb"), c))
print("aB in <c>:", power_of(W("aB"), c))
