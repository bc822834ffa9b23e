"""The commutator preset c = abAB: Folner blocks are exactly a-invariant."""
from f2double import engine
from f2double.amalgam import AmalgamWord, act
from f2double.words import Word

state = engine.run(Word.parse("abAB"), 8)
for b in state.folner_blocks:
    ra, rb = engine.folner_ratios(state, b)
    print(f"block {b.lo}..{b.hi} size {len(b)}: a-ratio {ra}, b-ratio {rb}")
    if b.reserved:
        for h, (via, direct) in engine.transfer_counts(state, b).items():
            print(f"  {h}: |A ^ hA| = {via} = {direct}")
x = state.folner_blocks[0].lo
print("xyXY at", x, "->", act(state, AmalgamWord.parse("xyXY"), x),
      "and abAB ->", act(state, AmalgamWord.parse("abAB"), x))
