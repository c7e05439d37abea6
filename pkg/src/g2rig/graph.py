"""Finite simple graphs: graph6 I/O, canonical keys, enumeration.

Vertices are numbered ``1..m``; an edge is a pair ``(i, j)`` with ``i < j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_VERTICES = 8
GRAPH6_MAX_VERTICES = 62


class GraphFormatError(ValueError):
    """Malformed graph input. ``offset`` is the offending byte position, if known."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        m = self.num_vertices
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"graph needs a positive vertex count, got {m!r}")
        edges = frozenset(self.edges)
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if i > j:
                raise ValueError(f"edge {e} must be written with i < j")
            if not (1 <= i and j <= m):
                raise ValueError(f"edge {e} has an endpoint outside 1..{m}")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]]) -> Graph:
        """Build a graph, sorting each pair; duplicate pairs collapse."""
        norm = set()
        for e in edges:
            i, j = e
            norm.add((min(i, j), max(i, j)))
        return cls(m, frozenset(norm))

    @classmethod
    def from_key(cls, m: int, key: str) -> Graph:
        pairs = list(itertools.combinations(range(1, m + 1), 2))
        if len(key) != len(pairs):
            raise ValueError(f"key length {len(key)} does not match m={m}")
        return cls(m, frozenset(p for p, b in zip(pairs, key) if b == "1"))

    # common families
    @classmethod
    def empty(cls, m: int) -> Graph:
        return cls(m)

    @classmethod
    def complete(cls, m: int) -> Graph:
        return cls(m, frozenset(itertools.combinations(range(1, m + 1), 2)))

    @classmethod
    def path(cls, m: int) -> Graph:
        return cls(m, frozenset((i, i + 1) for i in range(1, m)))

    @classmethod
    def cycle(cls, m: int) -> Graph:
        if m < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(m, [(i, i + 1) for i in range(1, m)] + [(1, m)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        """Star with center 1 and leaves 2..leaves+1."""
        return cls(leaves + 1, frozenset((1, k) for k in range(2, leaves + 2)))

    @property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def _check_vertex(self, i: int) -> None:
        if not 1 <= i <= self.num_vertices:
            raise IndexError(f"vertex {i} outside 1..{self.num_vertices}")

    def degree(self, i: int) -> int:
        return len(incident_edges(self, i))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image under the vertex map ``k -> perm[k-1]`` (``perm`` is 1-based)."""
        if sorted(perm) != list(range(1, self.num_vertices + 1)):
            raise ValueError("perm must be a permutation of 1..m")
        return Graph.from_edges(self.num_vertices, [(perm[i - 1], perm[j - 1]) for i, j in self.edges])

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.num_vertices, self.num_vertices), dtype=np.uint8)
        for i, j in self.edges:
            a[i - 1, j - 1] = a[j - 1, i - 1] = 1
        return a

    def to_json(self) -> dict:
        return {"vertices": self.num_vertices, "edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_json(cls, data: dict | str) -> Graph:
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"invalid JSON graph: {exc.msg}", exc.pos) from None
        try:
            m = int(data["vertices"])
            edges = [tuple(int(x) for x in e) for e in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"invalid JSON graph: {exc}") from None
        for e in edges:
            if len(e) != 2 or e[0] >= e[1]:
                raise GraphFormatError(f"JSON edge {list(e)} must be [i, j] with i < j")
        try:
            return cls(m, frozenset(edges))
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from None

    def __str__(self) -> str:
        body = ",".join(f"{i}-{j}" for i, j in self.sorted_edges)
        return f"G(m={self.num_vertices}; {body or 'no edges'})"


def incident_edges(g: Graph, i: int) -> frozenset[tuple[int, int]]:
    g._check_vertex(i)
    return frozenset(e for e in g.edges if i in e)


def isolated_vertices(g: Graph) -> frozenset[int]:
    touched = {v for e in g.edges for v in e}
    return frozenset(v for v in range(1, g.num_vertices + 1) if v not in touched)


def is_complete(g: Graph) -> bool:
    m = g.num_vertices
    return len(g.edges) == m * (m - 1) // 2


# -- graph6 -----------------------------------------------------------------


def _graph6_pairs(m: int):
    # column-major upper triangle: (1,2), (1,3), (2,3), (1,4), ...
    for j in range(2, m + 1):
        for i in range(1, j):
            yield i, j


def serialize_graph6(g: Graph) -> str:
    m = g.num_vertices
    if not 1 <= m <= GRAPH6_MAX_VERTICES:
        raise UnsupportedSizeError(f"graph6 short form supports 1..{GRAPH6_MAX_VERTICES} vertices, got {m}")
    bits = [1 if p in g.edges else 0 for p in _graph6_pairs(m)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(m + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    if not text:
        raise GraphFormatError("empty graph6 string", 0)
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ord(ch)} outside graph6 range 63..126", pos)
    m = ord(text[0]) - 63
    if m == 0 or m > GRAPH6_MAX_VERTICES:
        raise GraphFormatError(f"vertex count {m} not supported (need 1..{GRAPH6_MAX_VERTICES})", 0)
    nbits = m * (m - 1) // 2
    nbytes = -(-nbits // 6)
    if len(text) < 1 + nbytes:
        raise GraphFormatError(f"truncated graph6: need {nbytes} data bytes for m={m}", len(text))
    if len(text) > 1 + nbytes:
        raise GraphFormatError("trailing bytes after graph6 data", 1 + nbytes)
    bits = []
    for ch in text[1:]:
        val = ord(ch) - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits", len(text) - 1)
    edges = frozenset(p for p, b in zip(_graph6_pairs(m), bits) if b)
    return Graph(m, edges)


# -- isomorphism ------------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_table(m: int):
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.int8).reshape(-1, m)
    iu, ju = np.triu_indices(m, k=1)  # row-major upper triangle
    nbits = len(iu)
    weights = (1 << np.arange(nbits - 1, -1, -1, dtype=np.int64)) if nbits else np.zeros(0, dtype=np.int64)
    return perms[:, iu], perms[:, ju], weights


def canonical_key(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> str:
    """Lexicographically least row-major upper-triangle bitstring over all relabelings."""
    m = g.num_vertices
    if m > max_vertices:
        raise UnsupportedSizeError(f"canonical_key supports m <= {max_vertices}, got {m}")
    if m == 1:
        return ""
    pi, pj, weights = _perm_table(m)
    adj = g.adjacency()
    bits = adj[pi, pj]
    values = bits.astype(np.int64) @ weights
    best = bits[int(np.argmin(values))]
    return "".join("1" if b else "0" for b in best)


def canonical_form(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> Graph:
    return Graph.from_key(g.num_vertices, canonical_key(g, max_vertices))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.num_vertices == h.num_vertices and canonical_key(g) == canonical_key(h)


@lru_cache(maxsize=None)
def _enumerate(m: int) -> tuple[Graph, ...]:
    if m == 1:
        return (Graph(1),)
    found: dict[str, Graph] = {}
    for small in _enumerate(m - 1):
        deg = [small.degree(v) for v in range(1, m)]
        for size in range(m):
            for nbrs in itertools.combinations(range(1, m), size):
                # the new vertex must have minimum degree in the extension;
                # every graph arises this way by deleting a min-degree vertex
                if any(deg[v - 1] + (v in nbrs) < size for v in range(1, m)):
                    continue
                cand = Graph(m, small.edges | frozenset((v, m) for v in nbrs))
                key = canonical_key(cand, max_vertices=m)
                if key not in found:
                    found[key] = Graph.from_key(m, key)
    return tuple(found[k] for k in sorted(found))


def enumerate_graphs(m: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[Graph]:
    """One canonical representative per isomorphism class, ascending by key."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > max_vertices:
        raise UnsupportedSizeError(f"enumeration supports m <= {max_vertices}, got {m}")
    return list(_enumerate(m))


def parse_edge_shorthand(m: int, text: str) -> Graph:
    """Parse ``"1-2,3-4"`` (empty string means no edges)."""
    edges = []
    offset = 0
    for token in text.split(","):
        stripped = token.strip()
        if stripped:
            parts = stripped.split("-")
            if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise GraphFormatError(f"bad edge token {stripped!r}", offset)
            i, j = (int(p) for p in parts)
            if i == j or not (1 <= i <= m and 1 <= j <= m):
                raise GraphFormatError(f"bad edge token {stripped!r} for {m} vertices", offset)
            edges.append((i, j))
        offset += len(token) + 1
    return Graph.from_edges(m, edges)
