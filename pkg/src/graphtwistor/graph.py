"""Finite simple graphs, proper edge colourings, cycle bases and line graphs.

Vertex identifiers are strings.  Every iteration order exposed here is the
sorted string order, which is what makes the searches below deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[str, str]


class GraphError(ValueError):
    """Invalid graph construction input."""


class RecognitionBudgetError(RuntimeError):
    """Line-graph recognition refused: the input exceeds the vertex cap."""


def canonical_edge(u: str, v: str) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable finite simple undirected graph.

    ``vertices`` is the sorted tuple of identifiers and ``edges`` the sorted
    tuple of canonical pairs ``(u, v)`` with ``u < v``.
    """

    __slots__ = ("vertices", "edges", "_adj", "_index", "_edge_set")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        self.vertices: tuple[str, ...] = tuple(sorted(vertices))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.edges: tuple[Edge, ...] = tuple(sorted(canonical_edge(u, v) for u, v in edges))
        self._edge_set = frozenset(self.edges)
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self, v: str) -> int:
        return self._index[v]

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def degrees(self) -> dict[str, int]:
        return {v: len(self._adj[v]) for v in self.vertices}

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def is_regular(self, k: int | None = None) -> bool:
        ds = {len(ns) for ns in self._adj.values()}
        if len(ds) > 1:
            return False
        return k is None or not ds or ds == {k}

    def has_edge(self, u: str, v: str) -> bool:
        return canonical_edge(u, v) in self._edge_set

    def tangent(self, x: str) -> tuple[Edge, ...]:
        """Outward directed edges at ``x``."""
        return tuple((x, y) for y in self._adj[x])

    def directed_edges(self) -> Iterator[Edge]:
        for u, v in self.edges:
            yield (u, v)
            yield (v, u)

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, mapping: Mapping[str, str]) -> "Graph":
        return build_graph([mapping[v] for v in self.vertices],
                           [(mapping[u], mapping[v]) for u, v in self.edges])

    def induced(self, subset: Iterable[str]) -> "Graph":
        keep = set(subset)
        return Graph(keep, [(u, v) for u, v in self.edges if u in keep and v in keep])


def build_graph(vertices: Sequence, edges: Iterable[Sequence]) -> Graph:
    """Validate and build a :class:`Graph`.

    Raises :class:`GraphError` for duplicate vertices, loops, repeated edges
    and edges whose endpoints are not listed.
    """
    verts = [str(v) for v in vertices]
    if len(set(verts)) != len(verts):
        dup = sorted({v for v in verts if verts.count(v) > 1})
        raise GraphError(f"duplicate vertex identifiers: {dup}")
    known = set(verts)
    seen: set[Edge] = set()
    out = []
    for e in edges:
        u, v = (str(x) for x in e)
        if u == v:
            raise GraphError(f"loop edge at {u!r}")
        for w in (u, v):
            if w not in known:
                raise GraphError(f"edge ({u!r}, {v!r}) has endpoint {w!r} not in the vertex list")
        ce = canonical_edge(u, v)
        if ce in seen:
            raise GraphError(f"duplicate edge {ce}")
        seen.add(ce)
        out.append(ce)
    return Graph(verts, out)


# --------------------------------------------------------------------------
# edge colourings


class EdgeColoring:
    """Proper colouring of every edge of ``graph`` with colours ``1..m``."""

    __slots__ = ("graph", "m", "_color", "_by_color")

    def __init__(self, graph: Graph, colors: Mapping, m: int | None = None):
        color: dict[Edge, int] = {}
        for key, c in colors.items():
            u, v = tuple(key)
            e = canonical_edge(str(u), str(v))
            if not graph.has_edge(*e):
                raise GraphError(f"coloured pair {e} is not an edge")
            color[e] = int(c)
        missing = [e for e in graph.edges if e not in color]
        if missing:
            raise GraphError(f"colouring is not total, uncoloured edges: {missing[:5]}")
        if m is None:
            m = max(color.values(), default=0)
        bad = [e for e, c in color.items() if not 1 <= c <= m]
        if bad:
            raise GraphError(f"colours outside 1..{m} on {bad[:5]}")
        by_color: dict[str, dict[int, str]] = {v: {} for v in graph.vertices}
        for (u, v), c in color.items():
            for a, b in ((u, v), (v, u)):
                if c in by_color[a]:
                    raise GraphError(f"improper colouring: two edges of colour {c} at {a!r}")
                by_color[a][c] = b
        self.graph = graph
        self.m = m
        self._color = color
        self._by_color = by_color

    def __repr__(self):
        return f"EdgeColoring(m={self.m}, |E|={len(self._color)})"

    def __eq__(self, other):
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.graph == other.graph and self._color == other._color

    def color(self, u: str, v: str) -> int:
        return self._color[canonical_edge(u, v)]

    def items(self):
        return sorted(self._color.items())

    def as_dict(self) -> dict[Edge, int]:
        return dict(self.items())

    def neighbor(self, x: str, k: int) -> str:
        """The vertex joined to ``x`` by the colour-``k`` edge."""
        try:
            return self._by_color[x][k]
        except KeyError:
            raise KeyError(f"no edge of colour {k} at {x!r}") from None


def is_proper_coloring(graph: Graph, colors: Mapping[Edge, int]) -> bool:
    for x in graph.vertices:
        cs = [colors[canonical_edge(x, y)] for y in graph.neighbors(x)]
        if len(cs) != len(set(cs)):
            return False
    return all(e in colors for e in graph.edges)


def proper_edge_coloring(graph: Graph, m: int) -> EdgeColoring | None:
    """Backtracking edge colouring with at most ``m`` colours.

    Edges are visited in sorted order and colours tried in ascending order,
    so the first colouring found is deterministic.  Returns ``None`` when no
    proper colouring exists (always the case when ``m`` is below the maximum
    degree).
    """
    if m < graph.max_degree():
        return None
    edges = graph.edges
    used: dict[str, set[int]] = {v: set() for v in graph.vertices}
    assign: list[int] = [0] * len(edges)

    def place(i: int) -> bool:
        if i == len(edges):
            return True
        u, v = edges[i]
        for c in range(1, m + 1):
            if c in used[u] or c in used[v]:
                continue
            used[u].add(c)
            used[v].add(c)
            assign[i] = c
            if place(i + 1):
                return True
            used[u].discard(c)
            used[v].discard(c)
        return False

    if not place(0):
        return None
    return EdgeColoring(graph, dict(zip(edges, assign)), m)


# --------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles as closed sequences of directed edges."""

    cycles: tuple[tuple[Edge, ...], ...]

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


@dataclass(frozen=True)
class SpanningForest:
    parent: dict[str, str | None]
    depth: dict[str, int]
    order: tuple[str, ...]
    roots: tuple[str, ...]
    tree_edges: frozenset = field(default_factory=frozenset)


def bfs_forest(graph: Graph, roots: Sequence[str] = ()) -> SpanningForest:
    """Breadth-first spanning forest.

    Components are entered from ``roots`` when given, otherwise from their
    smallest vertex label.
    """
    parent: dict[str, str | None] = {}
    depth: dict[str, int] = {}
    order: list[str] = []
    used_roots: list[str] = []
    starts = list(roots) + [v for v in graph.vertices]
    tree: set[Edge] = set()
    for s in starts:
        if s in parent:
            continue
        used_roots.append(s)
        parent[s] = None
        depth[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in graph.neighbors(x):
                if y not in parent:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    tree.add(canonical_edge(x, y))
                    queue.append(y)
    return SpanningForest(parent, depth, tuple(order), tuple(used_roots), frozenset(tree))


def fundamental_cycle(forest: SpanningForest, u: str, v: str) -> tuple[Edge, ...]:
    """Closed walk ``u -> v -> ... -> lca -> ... -> u`` through tree paths."""
    up_u = [u]
    up_v = [v]
    a, b = u, v
    while forest.depth[a] > forest.depth[b]:
        a = forest.parent[a]
        up_u.append(a)
    while forest.depth[b] > forest.depth[a]:
        b = forest.parent[b]
        up_v.append(b)
    while a != b:
        a = forest.parent[a]
        b = forest.parent[b]
        up_u.append(a)
        up_v.append(b)
    # up_u: u .. lca, up_v: v .. lca
    walk = [(u, v)]
    walk += list(zip(up_v[:-1], up_v[1:]))
    down = list(reversed(up_u))
    walk += list(zip(down[:-1], down[1:]))
    return tuple(walk)


def cycle_basis(graph: Graph) -> CycleBasis:
    forest = bfs_forest(graph)
    cycles = [fundamental_cycle(forest, u, v)
              for u, v in graph.edges if (u, v) not in forest.tree_edges]
    return CycleBasis(tuple(cycles))


# --------------------------------------------------------------------------
# line graphs


@dataclass(frozen=True)
class LineGraphCorrespondence:
    """Bijection between edges of ``root`` and vertices of ``line``.

    ``clique_of[x]`` lists the line-graph vertices coming from edges at
    ``x``; it is complete in ``line`` and has ``root.degree(x)`` members.
    """

    root: Graph
    line: Graph
    edge_to_vertex: dict
    clique_of: dict

    @property
    def vertex_to_edge(self) -> dict:
        return {X: e for e, X in self.edge_to_vertex.items()}

    def cliques_containing(self, X: str) -> tuple[str, str]:
        return self.vertex_to_edge[X]


def _edge_names(graph: Graph) -> dict[Edge, str]:
    names = {e: f"{e[0]}-{e[1]}" for e in graph.edges}
    if len(set(names.values())) != len(names):
        width = len(str(max(len(names) - 1, 0)))
        names = {e: f"e{i:0{width}d}" for i, e in enumerate(graph.edges)}
    return names


def line_graph(graph: Graph) -> tuple[Graph, LineGraphCorrespondence]:
    """Line graph (twistor dual) with its vertex-clique correspondence.

    Line vertices are named ``"u-v"`` after the canonical root edge.
    """
    names = _edge_names(graph)
    ledges = []
    cliques = {}
    for x in graph.vertices:
        incident = [names[canonical_edge(x, y)] for y in graph.neighbors(x)]
        cliques[x] = tuple(sorted(incident))
        ledges.extend(combinations(incident, 2))
    line = build_graph(list(names.values()), ledges)
    return line, LineGraphCorrespondence(graph, line, names, cliques)


def _cliques_through(line: Graph, u: str, v: str, free: set, cnt: dict) -> list[tuple[str, ...]]:
    """All cliques of uncovered edges containing the uncovered edge ``uv``."""
    def ok(a, b):
        return canonical_edge(a, b) in free

    cand = sorted(w for w in line.neighbors(u)
                  if w != v and cnt[w] < 2 and ok(u, w) and line.has_edge(v, w) and ok(v, w))
    out = []

    def extend(chosen: list[str], start: int):
        out.append(tuple(sorted([u, v] + chosen)))
        for i in range(start, len(cand)):
            w = cand[i]
            if all(ok(w, c) for c in chosen):
                chosen.append(w)
                extend(chosen, i + 1)
                chosen.pop()

    extend([], 0)
    out.sort()
    return out


def recognize_line_graph(line: Graph, max_vertices: int = 64
                         ) -> tuple[Graph, LineGraphCorrespondence] | None:
    """Find a root graph ``G`` with ``L(G)`` isomorphic to ``line``.

    Searches for a Krausz partition: the edges of ``line`` split into
    cliques with every vertex in at most two of them.  Cliques are tried in
    lexicographic order of their sorted vertex tuples, so ``K3`` yields the
    root ``K3`` (its partition into three edges) rather than ``K_{1,3}``.
    Returns ``None`` when no partition exists.
    """
    if line.n > max_vertices:
        raise RecognitionBudgetError(
            f"line-graph recognition capped at {max_vertices} vertices, got {line.n}")
    free = set(line.edges)
    cnt = {v: 0 for v in line.vertices}
    chosen: list[tuple[str, ...]] = []

    def feasible(touched) -> bool:
        for z in touched:
            rest = [w for w in line.neighbors(z) if canonical_edge(z, w) in free]
            if not rest:
                continue
            if cnt[z] >= 2:
                return False
            if cnt[z] == 1:
                if any(cnt[w] >= 2 for w in rest):
                    return False
                for a, b in combinations(rest, 2):
                    if canonical_edge(a, b) not in free:
                        return False
        return True

    def search() -> bool:
        if not free:
            return True
        u, v = min(free)
        if cnt[u] >= 2 or cnt[v] >= 2:
            return False
        for K in _cliques_through(line, u, v, free, cnt):
            kedges = [canonical_edge(a, b) for a, b in combinations(K, 2)]
            for e in kedges:
                free.discard(e)
            for z in K:
                cnt[z] += 1
            chosen.append(K)
            if feasible(K) and search():
                return True
            chosen.pop()
            for z in K:
                cnt[z] -= 1
            free.update(kedges)
        return False

    if not search():
        return None

    # singleton cliques close up vertices that sit in fewer than two cliques
    cliques = list(chosen)
    for X in line.vertices:
        for _ in range(2 - cnt[X]):
            cliques.append((X,))
    width = len(str(max(len(cliques) - 1, 0)))
    names = [f"r{i:0{width}d}" for i in range(len(cliques))]
    member: dict[str, list[str]] = {X: [] for X in line.vertices}
    for name, K in zip(names, cliques):
        for X in K:
            member[X].append(name)
    edge_to_vertex = {}
    redges = []
    for X in line.vertices:
        a, b = member[X]
        e = canonical_edge(a, b)
        redges.append(e)
        edge_to_vertex[e] = X
    root = build_graph(names, redges)
    clique_of = {name: tuple(sorted(K)) for name, K in zip(names, cliques)}
    return root, LineGraphCorrespondence(root, line, edge_to_vertex, clique_of)


# --------------------------------------------------------------------------
# isomorphism (small graphs only)


def _iso_search(g: Graph, h: Graph, cap: int) -> Iterator[dict[str, str]]:
    if max(g.n, h.n) > cap:
        raise ValueError(f"brute-force isomorphism capped at {cap} vertices")
    if g.n != h.n or g.m != h.m:
        return
    if sorted(g.degrees().values()) != sorted(h.degrees().values()):
        return
    # most constrained (highest degree) vertices first
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    hdeg = h.degrees()
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def rec(i: int) -> Iterator[dict[str, str]]:
        if i == len(order):
            yield dict(mapping)
            return
        x = order[i]
        for y in h.vertices:
            if y in used or hdeg[y] != g.degree(x):
                continue
            if any(g.has_edge(x, a) != h.has_edge(y, b) for a, b in mapping.items()):
                continue
            mapping[x] = y
            used.add(y)
            yield from rec(i + 1)
            del mapping[x]
            used.discard(y)

    yield from rec(0)


def find_isomorphism(g: Graph, h: Graph, cap: int = 10) -> dict[str, str] | None:
    """Vertex bijection ``g -> h`` preserving adjacency, or ``None``."""
    return next(_iso_search(g, h, cap), None)


def is_isomorphic(g: Graph, h: Graph, cap: int = 10) -> bool:
    return find_isomorphism(g, h, cap) is not None


def automorphisms(g: Graph, cap: int = 10) -> list[dict[str, str]]:
    return list(_iso_search(g, g, cap))
