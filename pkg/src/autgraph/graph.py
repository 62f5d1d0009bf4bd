"""Loopless multigraphs with labeled external legs, and their block structure.

Vertices are the integers 1..n.  Internal edges are unordered pairs of
distinct vertices; parallel edges are allowed and stay distinguishable
because an edge's id is its position in the (canonically sorted) edge
tuple.  External legs are half-edges attached to a single vertex, each
carrying a unique label x1..xs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or operations applied outside their domain."""


def _label_index(label: str) -> int:
    if (
        isinstance(label, str)
        and len(label) >= 2
        and label[0] == "x"
        and label[1:].isdigit()
        and label[1] != "0"
    ):
        return int(label[1:])
    raise GraphError(f"leg labels must look like 'x1', 'x2', ...: got {label!r}")


@dataclass(frozen=True)
class Multigraph:
    """A loopless multigraph on vertices 1..n with labeled external legs.

    ``edges`` holds the internal edges as endpoint pairs; the constructor
    sorts each pair and the whole tuple, so equal graphs compare equal and
    an edge id is simply its position.  ``legs`` holds (label, vertex)
    pairs; the labels of a graph with s legs are exactly x1..xs.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    legs: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise GraphError(f"vertex count must be a positive integer: got {self.n!r}")
        norm = []
        for pair in self.edges:
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphError(f"edge endpoints must be integers: got {pair!r}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {pair!r} leaves the vertex range 1..{self.n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}: graphs are loopless")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        object.__setattr__(self, "edges", tuple(norm))
        indexed = []
        for label, v in self.legs:
            idx = _label_index(label)
            if not (isinstance(v, int) and 1 <= v <= self.n):
                raise GraphError(f"leg {label} attached to missing vertex {v!r}")
            indexed.append((idx, label, v))
        indexed.sort()
        if [idx for idx, _, _ in indexed] != list(range(1, len(indexed) + 1)):
            raise GraphError("leg labels must be exactly x1..xs with no repeats")
        object.__setattr__(self, "legs", tuple((label, v) for _, label, v in indexed))

    # ------------------------------------------------------------------
    # basic queries

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_legs(self) -> int:
        return len(self.legs)

    @cached_property
    def _incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n + 1)]
        for eid, (u, v) in enumerate(self.edges):
            inc[u].append(eid)
            inc[v].append(eid)
        return tuple(tuple(edge_ids) for edge_ids in inc)

    def check_vertex(self, v: int) -> int:
        if not (isinstance(v, int) and 1 <= v <= self.n):
            raise GraphError(f"vertex {v!r} is not in 1..{self.n}")
        return v

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Ids of the internal edges with one end at v (one id per parallel edge)."""
        return self._incidence[self.check_vertex(v)]

    def degree(self, v: int) -> int:
        return len(self.incident_edges(v))

    def other_end(self, edge_id: int, v: int) -> int:
        u, w = self.edges[edge_id]
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"edge {edge_id} is not incident to vertex {v}")

    def legs_at(self, v: int) -> tuple[str, ...]:
        self.check_vertex(v)
        return tuple(label for label, w in self.legs if w == v)

    @cached_property
    def multiplicities(self) -> Mapping[tuple[int, int], int]:
        """Edge multiplicity per unordered vertex pair (pairs stored as (u, v), u < v)."""
        mult: dict[tuple[int, int], int] = {}
        for pair in self.edges:
            mult[pair] = mult.get(pair, 0) + 1
        return mult

    def multiplicity(self, u: int, v: int) -> int:
        pair = (u, v) if u < v else (v, u)
        return self.multiplicities.get(pair, 0)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({self.other_end(eid, v) for eid in self.incident_edges(v)}))

    def relabeled(self, image: Sequence[int]) -> "Multigraph":
        """Apply the vertex permutation v -> image[v-1]."""
        if sorted(image) != list(range(1, self.n + 1)):
            raise GraphError("relabeling must be a permutation of 1..n")
        edges = [(image[u - 1], image[v - 1]) for u, v in self.edges]
        legs = [(label, image[v - 1]) for label, v in self.legs]
        return Multigraph(self.n, tuple(edges), tuple(legs))

    # ------------------------------------------------------------------
    # JSON encoding (shared across the package and the CLI)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [[u, v] for u, v in self.edges],
            "external": [{"label": label, "vertex": v} for label, v in self.legs],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Multigraph":
        try:
            n = data["n"]
            raw_edges = data.get("edges", [])
            raw_legs = data.get("external", [])
            edges = tuple((int(u), int(v)) for u, v in raw_edges)
            legs = tuple((entry["label"], int(entry["vertex"])) for entry in raw_legs)
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph record: {exc}") from exc
        return cls(n, edges, legs)


# ----------------------------------------------------------------------
# small factories

def path_graph(n: int) -> Multigraph:
    """The path on n vertices (n >= 2)."""
    if n < 2:
        raise GraphError("a path needs at least two vertices")
    return Multigraph(n, tuple((v, v + 1) for v in range(1, n)))


def cycle_graph(n: int) -> Multigraph:
    """The cycle on n vertices; for n = 2 this is the parallel pair."""
    if n < 2:
        raise GraphError("a cycle needs at least two vertices")
    if n == 2:
        return Multigraph(2, ((1, 2), (1, 2)))
    return Multigraph(n, tuple((v, v + 1) for v in range(1, n)) + ((1, n),))


def multi_edge_graph(multiplicity: int) -> Multigraph:
    """Two vertices joined by the given number of parallel edges."""
    if multiplicity < 1:
        raise GraphError("multiplicity must be positive")
    return Multigraph(2, ((1, 2),) * multiplicity)


# ----------------------------------------------------------------------
# connectivity

def connected_components(g: Multigraph) -> list[frozenset[int]]:
    seen: set[int] = set()
    components = []
    for start in range(1, g.n + 1):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        component = {start}
        while stack:
            v = stack.pop()
            for eid in g.incident_edges(v):
                w = g.other_end(eid, v)
                if w not in seen:
                    seen.add(w)
                    component.add(w)
                    stack.append(w)
        components.append(frozenset(component))
    return components


def is_connected(g: Multigraph) -> bool:
    return len(connected_components(g)) == 1


def cyclomatic_number(g: Multigraph) -> int:
    """Dimension of the cycle space: edge count - vertex count + component count."""
    return g.num_edges - g.n + len(connected_components(g))


# ----------------------------------------------------------------------
# biconnected components

@dataclass(frozen=True)
class Block:
    """One biconnected component: its vertex set and its internal edge ids."""

    vertices: frozenset[int]
    edge_ids: frozenset[int]


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    blocks_at: Mapping[int, tuple[int, ...]]

    def edge_block(self, edge_id: int) -> int:
        for index, block in enumerate(self.blocks):
            if edge_id in block.edge_ids:
                return index
        raise GraphError(f"edge {edge_id} belongs to no block")


def block_decomposition(g: Multigraph) -> BlockDecomposition:
    """Biconnected components of a connected multigraph.

    Depth-first lowpoint search adapted to parallel edges: only the tree
    edge itself is skipped on the way back, so a second copy of the same
    edge counts as a genuine cycle.  A bridge forms a single-edge block;
    a set of parallel edges between one vertex pair forms one block.
    """
    if not is_connected(g):
        raise GraphError("block decomposition is defined for connected graphs")
    block_edge_sets: list[frozenset[int]] = []
    if g.num_edges:
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        stack: list[int] = []
        clock = iter(range(g.n + g.num_edges + 1))

        def visit(u: int, via: int | None) -> None:
            disc[u] = low[u] = next(clock)
            for eid in g.incident_edges(u):
                if eid == via:
                    continue
                w = g.other_end(eid, u)
                if w not in disc:
                    stack.append(eid)
                    visit(w, eid)
                    low[u] = min(low[u], low[w])
                    if low[w] >= disc[u]:
                        edges = []
                        while True:
                            popped = stack.pop()
                            edges.append(popped)
                            if popped == eid:
                                break
                        block_edge_sets.append(frozenset(edges))
                elif disc[w] < disc[u]:
                    stack.append(eid)
                    low[u] = min(low[u], disc[w])

        visit(1, None)
    blocks = tuple(
        Block(
            vertices=frozenset(v for eid in edge_set for v in g.edges[eid]),
            edge_ids=edge_set,
        )
        for edge_set in block_edge_sets
    )
    membership: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for index, block in enumerate(blocks):
        for v in sorted(block.vertices):
            membership[v].append(index)
    cut_vertices = frozenset(v for v, ids in membership.items() if len(ids) >= 2)
    blocks_at = {v: tuple(ids) for v, ids in membership.items()}
    return BlockDecomposition(blocks=blocks, cut_vertices=cut_vertices, blocks_at=blocks_at)


def is_biconnected(g: Multigraph) -> bool:
    """Connected and without cut vertices; 2-vertex graphs with an edge qualify.

    A single vertex does not count as biconnected.
    """
    if g.n < 2 or not is_connected(g):
        return False
    return len(block_decomposition(g).blocks) == 1


def is_two_edge_connected(g: Multigraph) -> bool:
    """Connected and bridgeless (a bridge is a single-edge block)."""
    if g.n < 2 or not is_connected(g):
        return False
    return all(len(block.edge_ids) >= 2 for block in block_decomposition(g).blocks)
