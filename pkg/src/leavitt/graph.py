"""Finite directed multigraphs and the path machinery built on them.

A graph is a finite set of vertex identifiers plus a finite set of
labelled edges (id, source, range).  Parallel edges and loops are fine;
edge ids are the identity of an edge, so two parallel edges are distinct
walks.

The key structural notion: a cycle *has an exit* when some vertex on it
emits an edge not belonging to the cycle.  ``no_exit_condition`` asks
that no simple cycle has an exit; all of the matrix decomposition theory
downstream is gated on it, and it is exactly what makes the path
enumerations here finite without a length bound.
"""

from __future__ import annotations

from dataclasses import dataclass


class GraphError(ValueError):
    """Malformed graph data: duplicate ids, dangling endpoints, bad paths."""


class InfiniteEnumerationError(RuntimeError):
    """A path enumeration was requested that is not guaranteed finite."""


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """A finite directed path: a base vertex and a composable edge id tuple.

    `base` is the source; `end` is the range.  The empty path at a vertex
    v has base == end == v and no edges.  `end` is stored so path algebra
    never needs a graph lookup, but only `Graph.path` and the helpers
    below construct paths, keeping the three fields consistent.
    """

    base: str
    edges: tuple
    end: str

    def __len__(self):
        return len(self.edges)

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def sort_key(self):
        return (len(self.edges), self.edges, self.base)

    def to_json(self) -> dict:
        return {"base": self.base, "edges": list(self.edges)}


@dataclass(frozen=True)
class Cycle:
    """A simple closed path, stored based at its minimal vertex.

    Simple means no repeated vertex except the base at the two ends.
    Two rotations of the same closed walk are the same cycle; the stored
    representative starts at the smallest vertex id on the walk.
    """

    path: Path

    @property
    def base(self) -> str:
        return self.path.base

    @property
    def length(self) -> int:
        return len(self.path.edges)

    def edge_set(self) -> frozenset:
        return frozenset(self.path.edges)

    def to_json(self) -> dict:
        return {"base": self.base, "edges": list(self.path.edges)}


class Graph:
    """A finite directed multigraph with string vertex and edge identifiers."""

    def __init__(self, vertices, edges):
        vs = tuple(str(v) for v in vertices)
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex identifiers")
        self.vertices = vs
        vset = set(vs)
        es = []
        for e in edges:
            if isinstance(e, Edge):
                eid, src, dst = e.id, e.src, e.dst
            else:
                eid, src, dst = e
            eid, src, dst = str(eid), str(src), str(dst)
            if src not in vset:
                raise GraphError(f"edge {eid}: unknown source vertex {src}")
            if dst not in vset:
                raise GraphError(f"edge {eid}: unknown range vertex {dst}")
            es.append(Edge(eid, src, dst))
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate edge identifiers")
        self.edges = tuple(es)
        self._by_id = {e.id: e for e in es}
        self._out = {v: [] for v in vs}
        self._in = {v: [] for v in vs}
        for e in es:
            self._out[e.src].append(e)
            self._in[e.dst].append(e)
        for v in vs:
            self._out[v].sort(key=lambda e: e.id)
            self._in[v].sort(key=lambda e: e.id)

    # -- basic queries ---------------------------------------------------

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphError(f"unknown edge identifier {eid}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def out_edges(self, v: str):
        try:
            return tuple(self._out[v])
        except KeyError:
            raise GraphError(f"unknown vertex identifier {v}") from None

    def in_edges(self, v: str):
        try:
            return tuple(self._in[v])
        except KeyError:
            raise GraphError(f"unknown vertex identifier {v}") from None

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def is_regular(self, v: str) -> bool:
        """A vertex that emits at least one edge (finite graphs: not a sink)."""
        return bool(self.out_edges(v))

    # -- path construction -------------------------------------------------

    def path(self, base: str, edge_ids=()) -> Path:
        if not self.has_vertex(base):
            raise GraphError(f"unknown vertex identifier {base}")
        at = base
        for eid in edge_ids:
            e = self.edge(eid)
            if e.src != at:
                raise GraphError(f"edges do not compose at {at}: got edge {eid} from {e.src}")
            at = e.dst
        return Path(base, tuple(edge_ids), at)

    def empty_path(self, v: str) -> Path:
        return self.path(v)

    def extend(self, p: Path, eid: str) -> Path:
        e = self.edge(eid)
        if e.src != p.end:
            raise GraphError(f"edge {eid} does not extend a path ending at {p.end}")
        return Path(p.base, p.edges + (eid,), e.dst)

    def cycle(self, edge_ids) -> Cycle:
        """Build the canonical cycle through the given closed simple edge walk."""
        if not edge_ids:
            raise GraphError("a cycle needs at least one edge")
        p = self.path(self.edge(edge_ids[0]).src, edge_ids)
        if p.end != p.base:
            raise GraphError("edge walk is not closed")
        visited = [self.edge(eid).src for eid in p.edges]
        if len(set(visited)) != len(visited):
            raise GraphError("closed walk revisits a vertex; not a simple cycle")
        k = visited.index(min(visited))
        rotated = p.edges[k:] + p.edges[:k]
        return Cycle(self.path(visited[k], rotated))

    # -- io -----------------------------------------------------------------

    @classmethod
    def from_json_dict(cls, data) -> "Graph":
        if not isinstance(data, dict):
            raise GraphError("graph serialization must be an object")
        try:
            vertices = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError):
            raise GraphError("graph serialization needs 'vertices' and 'edges'") from None
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise GraphError("'vertices' and 'edges' must be arrays")
        triples = []
        for rec in edges:
            try:
                triples.append((rec["id"], rec["src"], rec["dst"]))
            except (KeyError, TypeError):
                raise GraphError("each edge needs 'id', 'src' and 'dst'") from None
        return cls(vertices, triples)

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
        }

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and other.vertices == self.vertices
            and other.edges == self.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


# ---------------------------------------------------------------------------
# path helpers (graph-free thanks to the stored endpoints)
# ---------------------------------------------------------------------------


def concat(a: Path, b: Path) -> Path:
    if a.end != b.base:
        raise GraphError(f"paths do not compose: {a.end} != {b.base}")
    return Path(a.base, a.edges + b.edges, b.end)


def is_prefix(a: Path, b: Path) -> bool:
    """True when b = a . (something), as composable paths from the same base."""
    return a.base == b.base and b.edges[: len(a.edges)] == a.edges


def strip_prefix(a: Path, b: Path) -> Path:
    """The path r with b = a . r; requires is_prefix(a, b)."""
    if not is_prefix(a, b):
        raise GraphError("not a prefix")
    return Path(a.end, b.edges[len(a.edges):], b.end)


# ---------------------------------------------------------------------------
# structure queries
# ---------------------------------------------------------------------------


def sinks(g: Graph) -> set:
    return {v for v in g.vertices if g.is_sink(v)}


def simple_cycles(g: Graph):
    """All simple cycles, canonically based, sorted by (base, length, edges).

    Rooted search: for each base in increasing order, walk only through
    vertices strictly larger than the base, so every cycle is found once,
    already at its canonical rotation.  Parallel edges give distinct
    cycles.
    """
    found = []

    def walk(base, at, edges_so_far, visited):
        for e in g.out_edges(at):
            if e.dst == base:
                found.append(Cycle(Path(base, edges_so_far + (e.id,), base)))
            elif e.dst > base and e.dst not in visited:
                walk(base, e.dst, edges_so_far + (e.id,), visited | {e.dst})

    for base in sorted(g.vertices):
        walk(base, base, (), {base})
    found.sort(key=lambda c: (c.base, c.length, c.path.edges))
    return tuple(found)


def has_exit(g: Graph, c: Cycle) -> bool:
    """Does some vertex on the cycle emit an edge not belonging to it?"""
    cycle_edges = c.edge_set()
    on_cycle = {g.edge(eid).src for eid in c.path.edges}
    for v in on_cycle:
        for e in g.out_edges(v):
            if e.id not in cycle_edges:
                return True
    return False


def no_exit_condition(g: Graph) -> bool:
    """True when no simple cycle of g has an exit."""
    return all(not has_exit(g, c) for c in simple_cycles(g))


# ---------------------------------------------------------------------------
# path enumeration
# ---------------------------------------------------------------------------


def paths_up_to(g: Graph, max_len: int):
    """Every path of length <= max_len, sorted by (length, edges, base)."""
    out = [g.empty_path(v) for v in g.vertices]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in g.out_edges(p.end):
                nxt.append(Path(p.base, p.edges + (e.id,), e.dst))
        out.extend(nxt)
        frontier = nxt
    out.sort(key=Path.sort_key)
    return tuple(out)


def paths_into(g: Graph, v: str, length_bound=None):
    """All paths ending at the sink v (the empty path included).

    Without a bound this requires the no-exit condition and v a sink;
    everything feeding a sink is then cycle-free, so the enumeration is
    finite.  With `length_bound` set, paths of length <= bound ending at
    any vertex v are enumerated instead (truncated mode).
    """
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex identifier {v}")
    if length_bound is None:
        if not no_exit_condition(g):
            raise InfiniteEnumerationError(
                "a cycle with an exit feeds unboundedly many paths; pass length_bound"
            )
        if not g.is_sink(v):
            raise InfiniteEnumerationError(
                f"{v} is not a sink; unbounded enumeration is only supported into sinks"
            )

    out = []

    def grow(base, edge_ids):
        out.append(Path(base, edge_ids, v))
        if length_bound is not None and len(edge_ids) >= length_bound:
            return
        for e in g.in_edges(base):
            grow(e.src, (e.id,) + edge_ids)

    grow(v, ())
    out.sort(key=Path.sort_key)
    return tuple(out)


def paths_into_cycle(g: Graph, c: Cycle, length_bound=None):
    """All paths ending at c.base that do not contain the based cycle itself.

    These index the matrix block attached to c: every path into the cycle
    factors uniquely as (one of these) . c^k.  Containment means the full
    edge sequence of c occurring contiguously; under the no-exit
    condition the enumeration is finite without a bound.
    """
    if length_bound is None and not no_exit_condition(g):
        raise InfiniteEnumerationError(
            "a cycle with an exit feeds unboundedly many paths; pass length_bound"
        )
    cyc = c.path.edges
    t = len(cyc)

    out = []

    def grow(base, edge_ids):
        out.append(Path(base, edge_ids, c.base))
        if length_bound is not None and len(edge_ids) >= length_bound:
            return
        for e in g.in_edges(base):
            new = (e.id,) + edge_ids
            # occurrences deeper in `new` were ruled out when `edge_ids`
            # was emitted, so only the fresh front can complete a copy
            if len(new) >= t and new[:t] == cyc:
                continue
            grow(e.src, new)

    grow(c.base, ())
    out.sort(key=Path.sort_key)
    return tuple(out)


def cycle_power(c: Cycle, k: int) -> Path:
    """The path c^k based at c.base (k >= 0; k = 0 is the empty path)."""
    if k < 0:
        raise ValueError("negative cycle power")
    return Path(c.base, c.path.edges * k, c.base)


def factor_through_cycle(g: Graph, c: Cycle, p: Path):
    """Factor a path ending at c.base as q . c^k with q cycle-free.

    Returns (q, k).  Strips copies of the based cycle from the right; the
    remainder contains no full copy, and the factorization is unique.
    """
    if p.end != c.base:
        raise GraphError(f"path does not end at the cycle base {c.base}")
    cyc = c.path.edges
    t = len(cyc)
    edges = p.edges
    k = 0
    while len(edges) >= t and edges[-t:] == cyc:
        edges = edges[:-t]
        k += 1
    return Path(p.base, edges, c.base), k
