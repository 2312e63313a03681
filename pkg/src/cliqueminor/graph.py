"""Dense undirected simple graphs and the structural predicates used everywhere else.

A graph on ``n`` vertices has vertex ids ``0..n-1`` and stores one adjacency
bit row per vertex (a Python int).  Graphs are immutable; every operation in
this module is a pure function.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[int, int]
VertexSet = tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> VertexSet:
    return tuple(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        # skips validation; callers guarantee symmetric loop-free rows
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls._trusted(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def closed(self, v: int) -> int:
        """Closed neighbourhood of ``v`` as a bit mask."""
        return self.rows[v] | (1 << v)

    def closed_union(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            mask |= self.rows[v] | (1 << v)
        return mask

    def edges(self) -> list[Edge]:
        out = []
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", VertexSet]:
        """Induced subgraph, renumbered in increasing id order.

        Returns the subgraph and ``labels`` with ``labels[new] = old``.
        """
        labels = tuple(sorted(set(vertices)))
        index = {old: new for new, old in enumerate(labels)}
        rows = []
        for old in labels:
            row = 0
            for w in iter_bits(self.rows[old]):
                j = index.get(w)
                if j is not None:
                    row |= 1 << j
            rows.append(row)
        return Graph._trusted(len(labels), rows), labels

    def without(self, vertices: Iterable[int]) -> tuple["Graph", VertexSet]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            rows[perm[v]] = mask_of(perm[w] for w in iter_bits(row))
        return Graph._trusted(self.n, rows)


class GraphParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedLineError(GraphParseError):
    pass


class EndpointRangeError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


def _int_tokens(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise MalformedLineError(lineno, f"expected {count} integers, got {line!r}")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise MalformedLineError(lineno, f"non-integer token in {line!r}") from None
    if any(x < 0 for x in values):
        raise MalformedLineError(lineno, f"negative value in {line!r}")
    return values


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``u v``."""
    lines = text.splitlines()
    if not lines:
        raise MalformedLineError(1, "missing 'n m' header")
    n, m = _int_tokens(lines[0], 2, 1)
    body = lines[1:]
    # tolerate trailing blank lines only
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise MalformedLineError(len(body) + 2 if len(body) < m else m + 2,
                                 f"header announces {m} edges, found {len(body)} lines")
    rows = [0] * n
    for lineno, line in enumerate(body, start=2):
        u, v = _int_tokens(line, 2, lineno)
        if u >= n or v >= n:
            raise EndpointRangeError(lineno, f"endpoint of ({u}, {v}) is >= n = {n}")
        if u == v:
            raise SelfLoopError(lineno, f"self-loop at {u}")
        if rows[u] >> v & 1:
            raise DuplicateEdgeError(lineno, f"duplicate edge ({min(u, v)}, {max(u, v)})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, rows)


def write_graph(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(write_graph(g).encode("ascii")).hexdigest()[:16]


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph._trusted(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.rows)])


def antitriangle(g: Graph) -> Optional[tuple[int, int, int]]:
    """Lexicographically first stable triple, or None when ``g`` has none."""
    full = g.full_mask
    for u in range(g.n):
        later = full & ~((1 << (u + 1)) - 1)
        non_u = later & ~g.rows[u]
        for v in iter_bits(non_u):
            common = non_u & ~g.rows[v] & ~((1 << (v + 1)) - 1)
            if common:
                return (u, v, lowest_bit(common))
    return None


def is_antitriangle_free(g: Graph) -> bool:
    # graphs with n < 3 are vacuously in the class
    return antitriangle(g) is None


def dominating_edges(g: Graph) -> list[Edge]:
    full = g.full_mask
    return [(u, v) for u, v in g.edges() if g.closed(u) | g.closed(v) == full]


def is_c_twin_edge(g: Graph, u: int, v: int) -> bool:
    return u != v and g.closed(u) == g.closed(v)


def c_twin_classes(g: Graph) -> list[VertexSet]:
    """Partition into maximal classes of pairwise c-twins.

    Two vertices are c-twins when their closed neighbourhoods coincide; this
    already implies adjacency and is an equivalence relation.
    """
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.closed(v), []).append(v)
    return sorted(tuple(members) for members in groups.values())


def components(g: Graph, within: Optional[int] = None) -> list[int]:
    """Connected components of ``g[within]`` as bit masks, ordered by least vertex."""
    remaining = g.full_mask if within is None else within
    out = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.rows[v]
            frontier = reach & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected_set(g: Graph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices)
    return mask != 0 and len(components(g, mask)) == 1


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices)
    return all(mask & ~g.closed(v) == 0 for v in iter_bits(mask))


def touches(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """Whether two vertex sets intersect or are joined by an edge."""
    return bool(g.closed_union(a) & mask_of(b))


def blow_up(g: Graph, sizes: Sequence[int]) -> tuple[Graph, list[VertexSet]]:
    """Replace vertex ``i`` of ``g`` by a clique of ``sizes[i]`` c-twins.

    Classes get consecutive ids in the order of ``g``'s vertices.
    """
    if len(sizes) != g.n:
        raise ValueError(f"need {g.n} class sizes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValueError("class sizes must be positive")
    classes = []
    start = 0
    for s in sizes:
        classes.append(tuple(range(start, start + s)))
        start += s
    class_masks = [mask_of(c) for c in classes]
    rows = []
    for i, cls in enumerate(classes):
        nb = class_masks[i]
        for j in iter_bits(g.rows[i]):
            nb |= class_masks[j]
        for v in cls:
            rows.append(nb & ~(1 << v))
    return Graph._trusted(start, rows), classes


def _vertex_disjoint_paths(g: Graph, s: int, t: int, limit: int) -> tuple[int, Optional[VertexSet]]:
    """Push up to ``limit`` internally vertex-disjoint s-t paths (s, t non-adjacent).

    Runs augmenting-path max flow on the implicit vertex-split network: unit
    arcs ``v_in -> v_out`` for inner vertices and uncapacitated arcs
    ``u_out -> w_in`` along edges.  Returns the flow value and, when the flow
    stays below ``limit``, the minimum cut read off the last residual search.
    """
    n = g.n
    rows = g.rows
    arc_in = [-1] * n   # inner v: the u with flow on u_out -> v_in
    arc_out = [-1] * n  # inner v: the w with flow on v_out -> w_in
    flow = 0
    while flow < limit:
        # node key: 2*v for v_in, 2*v + 1 for v_out
        parent = {2 * s + 1: None, 2 * s: None}
        queue = [2 * s + 1]
        head = 0
        reached_t = False
        while head < len(queue) and not reached_t:
            node = queue[head]
            head += 1
            v, out = node >> 1, node & 1
            if out:
                for w in iter_bits(rows[v]):
                    key = 2 * w
                    if key not in parent:
                        parent[key] = node
                        queue.append(key)
                        if w == t:
                            reached_t = True
                            break
                if v != s and arc_in[v] != -1 and 2 * v not in parent:
                    parent[2 * v] = node
                    queue.append(2 * v)
            elif v != t and v != s:
                if arc_in[v] == -1:
                    key = 2 * v + 1
                    if key not in parent:
                        parent[key] = node
                        queue.append(key)
                else:
                    key = 2 * arc_in[v] + 1
                    if key not in parent:
                        parent[key] = node
                        queue.append(key)
        if not reached_t:
            cut = tuple(v for v in range(n)
                        if v not in (s, t) and 2 * v in parent and 2 * v + 1 not in parent)
            return flow, cut
        added, removed = [], []
        node = 2 * t
        while parent[node] is not None:
            prev = parent[node]
            u, w = prev >> 1, node >> 1
            if prev & 1 and not node & 1:
                added.append((u, w))
            elif not prev & 1 and node & 1 and u != w:
                removed.append((w, u))
            node = prev
        for u, w in removed:
            if arc_in[w] == u:
                arc_in[w] = -1
            if arc_out[u] == w:
                arc_out[u] = -1
        for u, w in added:
            if w != t:
                arc_in[w] = u
            if u != s:
                arc_out[u] = w
        flow += 1
    return flow, None


def min_vertex_cut(g: Graph, at_most: Optional[int] = None) -> Optional[tuple[int, VertexSet]]:
    """Minimum vertex cut as ``(size, vertices)``.

    Complete graphs have no cut and give None; disconnected graphs give
    ``(0, ())``.  With ``at_most`` set, only cuts of that size or smaller are
    reported and the search stops early otherwise.
    """
    n = g.n
    if n == 0 or all(g.closed(v) == g.full_mask for v in range(n)):
        return None
    if len(components(g)) > 1:
        return (0, ())
    cap = n if at_most is None else at_most
    order = sorted(range(n), key=lambda v: (g.degree(v), v))
    position = {v: i for i, v in enumerate(order)}
    best_size = n - 1
    best_cut: Optional[VertexSet] = None
    for i, s in enumerate(order):
        # some vertex among the first (kappa + 1) lies outside a minimum cut
        if i > min(best_size, cap):
            break
        for t in iter_bits(g.full_mask & ~g.closed(s)):
            if position[t] < i:
                continue
            limit = min(best_size, cap + 1)
            if limit <= 0:
                break
            value, cut = _vertex_disjoint_paths(g, s, t, limit)
            if value < limit:
                best_size = value
                best_cut = tuple(sorted(cut))
    if best_cut is None:
        return None
    return (best_size, best_cut)


def _color_sort(rows: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            v = lowest_bit(avail)
            avail &= ~rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(g: Graph) -> VertexSet:
    """Maximum clique by branch and bound with a greedy colouring bound.

    Meant for graphs up to roughly a hundred vertices.
    """
    rows = g.rows
    best: list[int] = []
    clique: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best
        order, bounds = _color_sort(rows, cand)
        for k in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[k] <= len(best):
                return
            v = order[k]
            clique.append(v)
            sub = cand & rows[v]
            if sub:
                expand(sub)
            elif len(clique) > len(best):
                best = clique[:]
            clique.pop()
            cand &= ~(1 << v)

    if g.n:
        expand(g.full_mask)
    return tuple(sorted(best))
