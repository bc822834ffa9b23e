"""Run a few stages for c = aBAb, then re-check everything and save the state."""
import sys
import tempfile
from pathlib import Path

from f2double import checks, engine, statefile
from f2double.words import Word

stages = int(sys.argv[1]) if len(sys.argv) > 1 else 6
state = engine.run(Word.parse("aBAb"), stages)
print(f"{stages} stages: {len(state.witnesses)} witnesses, {len(state.alpha)} alpha edges, "
      f"{len(state.sigma)} sigma edges, {len(state.folner_blocks)} Folner blocks")
for b in state.folner_blocks:
    print(f"  block {b.lo}..{b.hi}: ratios {engine.folner_ratios(state, b)} eps {b.epsilon}")
for r in checks.verify(state, "full"):
    print(r.line())
out = Path(tempfile.gettempdir()) / "aBAb.gam"
statefile.save(state, out)
print("saved", out)
