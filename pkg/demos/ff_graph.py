"""The folded graph for the fixed-point witness of (c, w), and where it lands."""
from types import SimpleNamespace

from f2double.graphs import build_ff_graph, embed, ff_type, to_dot
from f2double.perm import PartialInjection, apply_word
from f2double.words import Word

c, w = Word.parse("abAB"), Word.parse("aa")
q = build_ff_graph(c, w)
print(f"c={c} w={w}: {len(q.vertices)} vertices, {len(q.edges)} edges, type {ff_type(q)}")
print(to_dot(q))

state = SimpleNamespace(alpha=PartialInjection(), alpha_pins=set(), used_extent=0)
_, placement = embed(state, q)
z, wz = placement[q.anchors["v0"]], placement[q.anchors["wv0"]]
print(f"z={z}: c z={apply_word(state.alpha, c, z)}, w z={apply_word(state.alpha, w, z)}, "
      f"c w z={apply_word(state.alpha, c, wz)}")
