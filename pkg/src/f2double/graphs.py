"""Finite labeled graphs over ``{a, b}``: paths and cycles of words, folding,
the graph Q built from ``C(c, v0) u P(w, v0) u C(c, w v0)``, and embedding
into fresh regions of the point space.

Edges are stored with a positive label ``(src, dst, gen)``, ``gen`` in
``{1, 2}``; an edge read backwards carries the inverse label.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .perm import fresh_interval
from .words import (Word, is_reduced, is_weakly_cyclically_reduced,
                    power_of)


class GraphError(ValueError):
    pass


class AnchorCollision(GraphError):
    pass


class CycleCollapse(GraphError):
    pass


class AllBetaCycle(GraphError):
    pass


def _edge(u, v, code):
    return (u, v, code) if code > 0 else (v, u, -code)


@dataclass
class LabeledGraph:
    vertices: set = field(default_factory=set)
    edges: set = field(default_factory=set)
    anchors: dict = field(default_factory=dict)

    def add_edge(self, u, v, code: int) -> None:
        self.vertices.update((u, v))
        self.edges.add(_edge(u, v, code))

    def out_edges(self):
        """Map ``(vertex, signed label) -> list of targets``."""
        out = {}
        for u, v, g in self.edges:
            out.setdefault((u, g), []).append(v)
            out.setdefault((v, -g), []).append(u)
        return out

    def is_well_labeled(self) -> bool:
        return all(len(t) == 1 for t in self.out_edges().values())

    def read(self, v, w):
        """Read the word ``w`` (right to left) starting at ``v``."""
        out = self.out_edges()
        for code in reversed(w):
            targets = out.get((v, code))
            if not targets:
                return None
            v = targets[0]
        return v

    def rank(self) -> int:
        return len(self.edges) - len(self.vertices) + _components(self)

    def canonical_form(self, root=None) -> tuple:
        """Relabel vertices in BFS order from ``root`` (default anchor v0)."""
        if root is None:
            root = self.anchors.get("v0", min(self.vertices))
        out = self.out_edges()
        order = {root: 0}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for code in (1, -1, 2, -2):
                for t in sorted(out.get((v, code), []), key=repr):
                    if t not in order:
                        order[t] = len(order)
                        queue.append(t)
        for v in sorted(self.vertices, key=repr):
            if v not in order:
                order[v] = len(order)
        edges = tuple(sorted((order[u], order[v], g) for u, v, g in self.edges))
        anchors = tuple(sorted((k, order[v]) for k, v in self.anchors.items()))
        return len(self.vertices), edges, anchors


def _components(g: LabeledGraph) -> int:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in g.edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in g.vertices})


def path_graph(w, start: int = 0) -> LabeledGraph:
    w = tuple(w)
    if not w or not is_reduced(w):
        raise GraphError(f"path_graph needs a nonempty reduced word, got {Word(w)}")
    g = LabeledGraph(anchors={"v0": start, "wv0": start + len(w)})
    g.vertices.add(start)
    for j, code in enumerate(reversed(w)):
        g.add_edge(start + j, start + j + 1, code)
    return g


def cycle_graph(w, start: int = 0) -> LabeledGraph:
    w = tuple(w)
    if not w or not is_weakly_cyclically_reduced(w):
        raise GraphError(f"cycle_graph needs a nonempty weakly cyclically reduced word, got {Word(w)}")
    m = len(w)
    g = LabeledGraph(anchors={"v0": start})
    for j, code in enumerate(reversed(w)):
        g.add_edge(start + j, start + (j + 1) % m, code)
    return g


def fold(g: LabeledGraph, rng: random.Random | None = None) -> tuple:
    """Identify edges sharing source and label (or target and label) until
    the graph is well-labeled.

    Returns ``(folded graph, quotient map)``. Class representatives are the
    smallest original vertex, so the default order is deterministic; pass
    ``rng`` to pick identifications in random order.
    """
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = set(g.edges)
    while True:
        seen = {}
        clashes = []
        for u, v, lab in sorted(edges) if rng is None else edges:
            for key, other in (((u, lab), v), ((v, -lab), u)):
                prev = seen.setdefault(key, other)
                if prev != other:
                    clashes.append((prev, other))
        if not clashes:
            break
        a, b = clashes[0] if rng is None else rng.choice(clashes)
        a, b = find(a), find(b)
        lo, hi = min(a, b), max(a, b)
        parent[hi] = lo
        edges = {(find(u), find(v), lab) for u, v, lab in edges}
    quotient = {v: find(v) for v in g.vertices}
    folded = LabeledGraph(
        vertices=set(quotient.values()),
        edges=edges,
        anchors={k: quotient[v] for k, v in g.anchors.items()},
    )
    return folded, quotient


def build_ff_graph(c, w) -> LabeledGraph:
    """Folded ``C(c, v0) u P(w, v0) u C(c, w v0)`` with anchors ``v0``, ``wv0``.

    Raises AnchorCollision if the anchors fold together and CycleCollapse if
    either copy of the ``c``-cycle stops being embedded.
    """
    c, w = tuple(c), tuple(w)
    if not any(abs(x) == 1 for x in c):
        raise GraphError(f"{Word(c)} lies in <b>")
    if not is_reduced(w):
        raise GraphError(f"{Word(w)} is not reduced")
    if not w or power_of(w, c) is not None:
        raise GraphError(f"{Word(w)} is a power of {Word(c)}")
    m, k = len(c), len(w)
    q0 = LabeledGraph()
    c1 = cycle_graph(c, 0)
    p = path_graph(w, m - 1)
    # shift so the path starts at vertex 0
    path_ids = [0] + list(range(m, m + k))
    for u, v, lab in p.edges:
        q0.edges.add((path_ids[u - (m - 1)], path_ids[v - (m - 1)], lab))
    end = path_ids[-1]
    c2_ids = [end] + list(range(m + k, m + k + m - 1))
    for u, v, lab in c1.edges:
        q0.edges.add((c2_ids[u], c2_ids[v], lab))
    q0.edges |= c1.edges
    q0.vertices = set(range(m + k + m - 1))
    q0.anchors = {"v0": 0, "wv0": end}
    q, quotient = fold(q0)
    if q.anchors["v0"] == q.anchors["wv0"]:
        raise AnchorCollision(f"v0 and wv0 fold together for c={Word(c)}, w={Word(w)}")
    for ids in (list(range(m)), c2_ids):
        if len({quotient[i] for i in ids}) != m:
            raise CycleCollapse(f"a copy of C({Word(c)}) collapsed while folding with w={Word(w)}")
    return q


def ff_type(q: LabeledGraph) -> int:
    """Diagnostic shape of a folded FF graph.

    1: two disjoint cycles joined by a path; 2: two cycles sharing one
    vertex; 3: theta graph (the cycles share an arc); 4: a single cycle.
    """
    if q.rank() <= 1:
        return 4
    edges = sorted(q.edges)
    adj = {v: [] for v in q.vertices}
    for i, (u, v, _) in enumerate(edges):
        adj[u].append((i, v))
        adj[v].append((i, u))
    # strip dangling trees
    alive = dict(adj)
    leaves = [v for v, nb in alive.items() if len(nb) == 1]
    while leaves:
        v = leaves.pop()
        (i, u), = alive.pop(v)
        alive[u] = [(j, x) for j, x in alive[u] if j != i]
        if len(alive[u]) == 1:
            leaves.append(u)
    junctions = sorted(v for v, nb in alive.items() if len(nb) >= 3)
    if len(junctions) == 1:
        return 2
    a, b = junctions[:2]
    arcs = 0
    for i, cur in alive[a]:
        prev = i
        while cur not in (a, b):
            prev, cur = next((j, x) for j, x in alive[cur] if j != prev)
        arcs += cur == b
    return 3 if arcs == 3 else 1


def beta_chains(g: LabeledGraph) -> list:
    """Maximal ``b``-chains, each a list of vertices in successor order."""
    nxt = {u: v for u, v, lab in g.edges if lab == 2}
    prv = {v: u for u, v in nxt.items()}
    chains = []
    covered = set()
    for v in sorted(g.vertices):
        if v in prv:
            continue
        chain = [v]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
        covered.update(chain)
    if covered != g.vertices:
        loop = sorted(g.vertices - covered)
        raise AllBetaCycle(f"cycle labeled only by b through vertices {loop[:6]}")
    return chains


def embed(state, g: LabeledGraph) -> tuple:
    """Place ``g`` on fresh points of ``state`` and add its ``a``-edges.

    Each maximal ``b``-chain goes to a fresh interval; ``state`` needs
    ``alpha``, ``alpha_pins`` and ``used_extent`` attributes. Returns
    ``(assignments, placement)``.
    """
    if not g.is_well_labeled():
        raise GraphError("embed needs a well-labeled graph")
    chains = beta_chains(g)
    margin = max(len(ch) - 1 for ch in chains)
    placement = {}
    for chain in chains:
        lo, hi = fresh_interval(state.used_extent, len(chain), margin)
        state.used_extent = hi
        for i, v in enumerate(chain):
            placement[v] = lo + i
    assignments = []
    for u, v, lab in sorted(g.edges):
        if lab == 1:
            x, y = placement[u], placement[v]
            state.alpha.assign(x, y, state.alpha_pins)
            assignments.append((x, y))
    return assignments, placement


def to_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in sorted(g.vertices):
        tags = [k for k, a in sorted(g.anchors.items()) if a == v]
        label = f' [label="{v}' + (" " + ",".join(tags) if tags else "") + '"]'
        lines.append(f"  {v}{label};")
    for u, v, lab in sorted(g.edges):
        lines.append(_dot_edge(u, v, lab))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_edge(u, v, lab) -> str:
    if lab == 1:
        return f'  {u} -> {v} [label="a", style=solid];'
    return f'  {u} -> {v} [label="b", style=dashed];'


def ball_dot(alpha, center: int, radius: int, sigma=None) -> str:
    """DOT for the ball of ``radius`` around ``center`` in the Schreier graph
    of the ``<a, b>`` action."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    dist = {center: 0}
    frontier = [center]
    for r in range(radius):
        nxt = []
        for x in frontier:
            for y in (alpha(x), alpha.inv(x), x + 1, x - 1):
                if y not in dist:
                    dist[y] = r + 1
                    nxt.append(y)
        frontier = nxt
    pts = sorted(dist)
    inside = set(pts)
    lines = ["digraph ball {"]
    for x in pts:
        lines.append(f'  "{x}";')
    for x in pts:
        y = alpha(x)
        if y in inside:
            lines.append(f'  "{x}" -> "{y}" [label="a", style=solid];')
        if x + 1 in inside:
            lines.append(f'  "{x}" -> "{x + 1}" [label="b", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
